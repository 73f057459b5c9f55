#pragma once

// Socially fair low-rank approximation: the SVD baseline, the sketched
// bicriteria solver, and a guess-and-verify search over the fair cost.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fairsketch/errors.hpp"
#include "fairsketch/grouped.hpp"
#include "fairsketch/linalg.hpp"
#include "fairsketch/sampling.hpp"
#include "fairsketch/sketch.hpp"

namespace fairsketch {

namespace detail {

inline Seed mix_seed(Seed seed, Seed stream) {
    // splitmix64 finalizer
    Seed z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

}  // namespace detail

enum class ColumnSampler { Identity, LewisColumns };

struct BicriteriaConfig {
    Index k = 1;
    double c = 0.5;                      // trade-off parameter, p = max(1, round(c ln l)) unless overridden
    std::optional<double> p;             // explicit Lewis / Dvoretzky exponent
    Index g_rows = 30;                   // rows of G
    Index h_cols = 30;                   // columns of H
    int lewis_iters = kDefaultLewisIterations;
    std::optional<Index> lewis_samples;  // rows drawn into T; defaults to k
    ColumnSampler column_sampler = ColumnSampler::Identity;
    double column_constant = 1.0;        // C in the lewis-columns budget
    int repeats = 1;                     // independent runs, best cost kept
    bool squared_cost = false;
    Seed seed = 0;

    void validate() const {
        if (k < 1) detail::raise<InvalidParameter>("BicriteriaConfig", "k must be >= 1");
        if (!(c > 0.0 && c < 1.0)) detail::raise<InvalidParameter>("BicriteriaConfig", "c must lie in (0, 1)");
        if (p && !(*p >= 1.0)) detail::raise<InvalidParameter>("BicriteriaConfig", "p must be >= 1");
        if (g_rows < 1 || h_cols < 1) detail::raise<InvalidParameter>("BicriteriaConfig", "sketch dimensions must be >= 1");
        if (lewis_iters < 1) detail::raise<InvalidParameter>("BicriteriaConfig", "lewis_iters must be >= 1");
        if (lewis_samples && *lewis_samples < 1) detail::raise<InvalidParameter>("BicriteriaConfig", "lewis_samples must be >= 1");
        if (!(column_constant > 0.0)) detail::raise<InvalidParameter>("BicriteriaConfig", "column constant must be positive");
        if (repeats < 1) detail::raise<InvalidParameter>("BicriteriaConfig", "repeats must be >= 1");
    }

    [[nodiscard]] double resolved_p(std::size_t groups) const {
        if (p) return *p;
        return std::max(1.0, std::round(c * std::log(static_cast<double>(groups))));
    }

    [[nodiscard]] Index resolved_samples() const { return lewis_samples.value_or(k); }
};

/// Column budget of the lewis-columns sampler: ceil(C k loglog(k+2) log^2(d+1)), at least k.
inline Index lewis_column_budget(Index k, Index d, double constant) {
    const double kk = static_cast<double>(k);
    const double ld = std::log(static_cast<double>(d) + 1.0);
    const double t = std::ceil(constant * kk * std::log(std::log(kk + 2.0)) * ld * ld);
    return std::max<Index>(k, static_cast<Index>(t));
}

struct FairLraSolution {
    Matrix factor;  // V~, rows span the shared subspace
    Index rank = 0;
    double cost = 0.0;
    bool squared = false;
    Seed seed = 0;
    double p = 1.0;
    double c = 0.5;
    Index g_rows = 0;
    Index h_cols = 0;
    Index t_rows = 0;  // rows of T
    Index s_cols = 0;  // columns kept by S
    double total_seconds = 0.0;    // sketching, sampling and extraction
    double extract_seconds = 0.0;  // (T G A H S)^+ (T G A) only
};

/// Top-k right singular vectors of the vertically stacked groups.
inline Matrix svd_baseline(const GroupedMatrix& data, Index k) {
    if (k < 1 || k > data.cols()) {
        detail::raise<InvalidParameter>("svd_baseline", "k=" + std::to_string(k) + " outside [1, d]");
    }
    const Matrix a = data.stacked();
    if (k <= a.rows()) return best_rank_k(a, k);
    Eigen::JacobiSVD<Matrix> full(a, Eigen::ComputeFullV);
    if (full.info() != Eigen::Success) detail::raise<NumericFailure>("svd_baseline", "SVD did not converge");
    return full.matrixV().leftCols(k).transpose();
}

namespace detail {

inline FairLraSolution bicriteria_once(const GroupedMatrix& data, const BicriteriaConfig& cfg, Seed seed) {
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();

    const Matrix a = data.stacked();
    const Index n = a.rows();
    const Index d = a.cols();
    const double p = cfg.resolved_p(data.size());

    FairLraSolution out;
    out.squared = cfg.squared_cost;
    out.seed = seed;
    out.p = p;
    out.c = cfg.c;
    out.g_rows = cfg.g_rows;
    out.h_cols = cfg.h_cols;

    if (a.isZero(0.0)) {
        out.factor = Matrix::Zero(cfg.k, d);
        out.t_rows = cfg.resolved_samples();
        out.s_cols = cfg.h_cols;
        out.total_seconds = seconds_since(start);
        return out;
    }

    const Matrix g = dvoretzky_gaussian(cfg.g_rows, n, p, mix_seed(seed, 1)).G;
    const Matrix h = dvoretzky_gaussian(cfg.h_cols, d, p, mix_seed(seed, 2)).G.transpose();
    const Matrix ga = g * a;
    Matrix design = ga * h;

    if (cfg.column_sampler == ColumnSampler::LewisColumns) {
        const Index t = lewis_column_budget(cfg.k, d, cfg.column_constant);
        const Matrix cols = design.transpose();
        const SamplingMatrix s = lewis_sampling_matrix(lewis_weights(cols, p, cfg.lewis_iters), t, mix_seed(seed, 4));
        design = s.apply(cols).transpose();
    }
    out.s_cols = design.cols();

    const LewisWeights w = lewis_weights(design, p, cfg.lewis_iters);
    const SamplingMatrix t = lewis_sampling_matrix(w, cfg.resolved_samples(), mix_seed(seed, 3));
    out.t_rows = t.size();
    const Matrix t_design = t.apply(design);
    const Matrix t_ga = t.apply(ga);

    const auto extract_start = clock::now();
    out.factor = pseudoinverse(t_design) * t_ga;
    out.extract_seconds = seconds_since(extract_start);
    out.total_seconds = seconds_since(start);

    out.rank = numerical_rank(out.factor);
    return out;
}

}  // namespace detail

/// Sketched bicriteria solver: V~ = (T G A H S)^+ (T G A) with Dvoretzky
/// Gaussians G, H, an optional column sampler S and a Lewis-weight row sampler T.
/// With repeats > 1 the cheapest of the independent runs is returned.
inline FairLraSolution bicriteria_fair_lra(const GroupedMatrix& data, const BicriteriaConfig& cfg) {
    cfg.validate();
    std::optional<FairLraSolution> best;
    for (int r = 0; r < cfg.repeats; ++r) {
        const Seed seed = r == 0 ? cfg.seed : detail::mix_seed(cfg.seed, 100 + static_cast<Seed>(r));
        FairLraSolution sol = detail::bicriteria_once(data, cfg, seed);
        sol.cost = fair_lra_cost(data, sol.factor, cfg.squared_cost);
        if (!best || sol.cost < best->cost) best = std::move(sol);
    }
    return *best;
}

/// Certified lower bound on any rank-k fair cost: max_i of group i's Eckart-Young tail.
inline double fair_lra_lower_bound(const GroupedMatrix& data, Index k, bool squared = false) {
    double worst = 0.0;
    for (const auto& a : data.groups()) {
        const Vector sv = a.jacobiSvd().singularValues();
        double tail = 0.0;
        for (Index j = k; j < sv.size(); ++j) tail += sv(j) * sv(j);
        worst = std::max(worst, squared ? tail : std::sqrt(tail));
    }
    return worst;
}

struct AlternatingOptions {
    int iters = 200;
    Seed seed = 0;
    bool squared = false;
    double perturbation = 0.3;
};

/// Heuristic feasibility check for threshold alpha: does some rank-k V reach
/// fair cost <= alpha? Starts at the SVD baseline; if that does not qualify,
/// perturbs it and alternates X^(i) = A^(i) V^+ with a proximal step
/// V <- top-k(stack[sqrt(w_i) A^(i); sqrt(mu_t) V]), where w = softmax(10 cost_i / alpha)
/// and mu_t = ||A||_2^2 sqrt(1 + t). Not a certificate: "none" only means the
/// heuristic gave up.
inline std::optional<Matrix> alternating_feasibility(const GroupedMatrix& data, Index k, double alpha,
                                                     AlternatingOptions opt = {}) {
    if (opt.iters < 1) detail::raise<InvalidParameter>("alternating_feasibility", "iters must be >= 1");
    Matrix v = svd_baseline(data, k);
    if (fair_lra_cost(data, v, opt.squared) <= alpha) return v;
    if (!(alpha > 0.0)) return std::nullopt;

    const std::size_t l = data.size();
    const Index d = data.cols();
    const Matrix noise = gaussian_matrix(k, d, opt.seed);
    {
        Eigen::HouseholderQR<Matrix> qr((v + opt.perturbation * noise).transpose());
        v = qr.householderQ() * Matrix::Identity(d, k);
        v.transposeInPlace();
    }
    const double spectral = data.stacked().jacobiSvd().singularValues()(0);
    const double anchor = spectral * spectral;
    const double beta = 10.0 / alpha;

    Index rows = 0;
    for (const auto& a : data.groups()) rows += a.rows();
    Matrix stack(rows + k, d);

    for (int t = 0; t < opt.iters; ++t) {
        // X^(i) = A^(i) V^+ gives each group's residual at the current V.
        const Matrix vp = pseudoinverse(v);
        std::vector<double> cost(l);
        for (std::size_t i = 0; i < l; ++i) {
            const Matrix& a = data.group(i);
            const double r = (a * vp * v - a).squaredNorm();
            cost[i] = opt.squared ? r : std::sqrt(r);
        }
        const double top = *std::max_element(cost.begin(), cost.end());
        if (top <= alpha) return v;

        std::vector<double> w(l);
        double z = 0.0;
        for (std::size_t i = 0; i < l; ++i) z += (w[i] = std::exp(beta * (cost[i] - top)));
        Index at = 0;
        for (std::size_t i = 0; i < l; ++i) {
            const Matrix& a = data.group(i);
            stack.middleRows(at, a.rows()) = std::sqrt(w[i] / z) * a;
            at += a.rows();
        }
        stack.bottomRows(k) = std::sqrt(anchor * std::sqrt(1.0 + t)) * v;
        v = best_rank_k(stack, k);
    }
    if (fair_lra_cost(data, v, opt.squared) <= alpha) return v;
    return std::nullopt;
}

using LraFeasibilityOracle = std::function<std::optional<Matrix>(double alpha)>;

inline LraFeasibilityOracle make_alternating_oracle(const GroupedMatrix& data, Index k, AlternatingOptions opt = {}) {
    return [data, k, opt](double alpha) { return alternating_feasibility(data, k, alpha, opt); };
}

struct LraSearchResult {
    Matrix factor;
    double cost = 0.0;
    double alpha0 = 0.0;
    double final_alpha = 0.0;  // smallest threshold the oracle accepted
    int iterations = 0;        // accepted oracle calls
    std::vector<double> recorded_costs;
    bool fell_back_to_baseline = false;
};

/// Shrinks alpha by (1 + eps) while the oracle keeps producing a V with
/// cost <= alpha, and returns the best V seen. alpha0 defaults to the SVD
/// baseline cost; the search stops once alpha drops below 1e-9 * alpha0.
inline LraSearchResult binary_search_fair_lra(const GroupedMatrix& data, Index k, double eps,
                                              const LraFeasibilityOracle& oracle, std::optional<double> alpha0 = {},
                                              bool squared = false) {
    if (!(eps > 0.0 && eps < 1.0)) detail::raise<InvalidParameter>("binary_search_fair_lra", "eps must lie in (0, 1)");
    const Matrix baseline = svd_baseline(data, k);
    const double baseline_cost = fair_lra_cost(data, baseline, squared);

    LraSearchResult out;
    out.alpha0 = alpha0.value_or(baseline_cost);
    if (!(out.alpha0 >= 0.0)) detail::raise<InvalidParameter>("binary_search_fair_lra", "alpha0 must be >= 0");
    out.factor = baseline;
    out.cost = baseline_cost;
    out.final_alpha = out.alpha0;
    if (out.alpha0 == 0.0) {
        out.recorded_costs.push_back(baseline_cost);
        return out;
    }

    const double floor = 1e-9 * out.alpha0;
    double alpha = out.alpha0;
    bool any = false;
    while (alpha >= floor) {
        auto v = oracle(alpha);
        if (!v) break;
        const double c = fair_lra_cost(data, *v, squared);
        if (c > alpha * (1.0 + 1e-12) + 1e-300) {
            detail::raise<ContractViolation>("binary_search_fair_lra", "oracle returned V with cost above the threshold");
        }
        if (!any || c < out.cost) {
            out.factor = std::move(*v);
            out.cost = c;
        }
        any = true;
        out.final_alpha = alpha;
        out.recorded_costs.push_back(out.cost);
        ++out.iterations;
        alpha /= 1.0 + eps;
    }
    out.fell_back_to_baseline = !any;
    return out;
}

}  // namespace fairsketch
