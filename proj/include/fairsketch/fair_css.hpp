#pragma once

// Socially fair column subset selection: leverage-score sampling of the
// bicriteria factor's columns, plus an exhaustive oracle for small d.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "fairsketch/errors.hpp"
#include "fairsketch/fair_lra.hpp"
#include "fairsketch/grouped.hpp"
#include "fairsketch/linalg.hpp"
#include "fairsketch/sampling.hpp"

namespace fairsketch {

struct CssSolution {
    std::vector<Index> indices;  // ascending, distinct
    std::vector<Matrix> factors; // M^(i), |indices| x d, applied to the unscaled selected columns
    double cost = 0.0;
    bool squared = false;
    Seed seed = 0;
};

struct CssOptions {
    double budget_constant = 1.0;  // C_css in k' = ceil(C_css k ln(k+1))
    bool refit = false;            // replace M^(i) by the per-group least-squares optimum
    int max_retries = 8;
};

inline Index css_column_budget(Index k, Index d, double constant) {
    const double kk = static_cast<double>(k);
    const auto budget = static_cast<Index>(std::ceil(constant * kk * std::log(kk + 1.0)));
    return std::clamp<Index>(budget, 1, d);
}

/// Per-group least-squares factors pinv(A^(i)[:, S]) A^(i).
inline std::vector<Matrix> css_refit(const GroupedMatrix& data, const std::vector<Index>& indices) {
    std::vector<Matrix> factors;
    factors.reserve(data.size());
    for (const auto& a : data.groups()) factors.push_back(pseudoinverse(select_columns(a, indices)) * a);
    return factors;
}

/// Samples k' columns of V~ by leverage score and sets M^(i) = S^+ V~^+ V~.
/// M^(i) does not depend on i unless refit is requested.
inline CssSolution bicriteria_fair_css(const GroupedMatrix& data, const BicriteriaConfig& cfg, CssOptions opt = {}) {
    cfg.validate();
    const Index d = data.cols();
    if (cfg.k > d) detail::raise<InvalidParameter>("bicriteria_fair_css", "k exceeds column count");
    if (opt.max_retries < 0) detail::raise<InvalidParameter>("bicriteria_fair_css", "max_retries must be >= 0");

    const FairLraSolution lra = bicriteria_fair_lra(data, cfg);
    const Index budget = css_column_budget(cfg.k, d, opt.budget_constant);

    CssSolution out;
    out.squared = cfg.squared_cost;
    out.seed = cfg.seed;

    if (lra.factor.isZero(0.0)) {
        out.indices.resize(static_cast<std::size_t>(budget));
        std::iota(out.indices.begin(), out.indices.end(), Index{0});
        out.factors.assign(data.size(), Matrix::Zero(budget, d));
        out.cost = fair_css_cost(data, out.indices, out.factors, cfg.squared_cost);
        return out;
    }

    const LeverageScores lev = leverage_scores(lra.factor.transpose());
    SamplingMatrix chosen;
    for (int attempt = 0; attempt <= opt.max_retries; ++attempt) {
        chosen = leverage_sampling_matrix(lev, d, detail::mix_seed(cfg.seed, 200 + static_cast<Seed>(attempt)),
                                          std::ldexp(1.0, attempt));
        if (chosen.size() > 0) break;
    }
    if (chosen.size() == 0) detail::raise<NumericFailure>("bicriteria_fair_css", "no column sampled after retries");

    out.indices = chosen.indices;
    if (static_cast<Index>(out.indices.size()) > budget) {
        std::mt19937_64 engine(detail::mix_seed(cfg.seed, 300));
        std::shuffle(out.indices.begin(), out.indices.end(), engine);
        out.indices.resize(static_cast<std::size_t>(budget));
    }
    std::sort(out.indices.begin(), out.indices.end());

    if (opt.refit) {
        out.factors = css_refit(data, out.indices);
    } else {
        const Matrix proj = pseudoinverse(lra.factor) * lra.factor;
        Matrix m(static_cast<Index>(out.indices.size()), d);
        for (std::size_t j = 0; j < out.indices.size(); ++j) m.row(static_cast<Index>(j)) = proj.row(out.indices[j]);
        out.factors.assign(data.size(), m);
    }
    out.cost = fair_css_cost(data, out.indices, out.factors, cfg.squared_cost);
    return out;
}

inline double binomial(Index n, Index k) {
    double r = 1.0;
    for (Index i = 1; i <= k; ++i) r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

inline constexpr double kBruteForceBudget = 1e5;

/// Exhaustive search over all k-subsets with per-group least-squares factors.
/// Ties keep the lexicographically smallest subset.
inline CssSolution brute_force_css(const GroupedMatrix& data, Index k, bool squared = false) {
    const Index d = data.cols();
    if (k < 1 || k > d) detail::raise<InvalidParameter>("brute_force_css", "k outside [1, d]");
    if (binomial(d, k) > kBruteForceBudget) {
        detail::raise<InvalidParameter>("brute_force_css", "C(d, k) exceeds the enumeration budget");
    }
    std::vector<Index> subset(static_cast<std::size_t>(k));
    std::iota(subset.begin(), subset.end(), Index{0});

    CssSolution best;
    best.squared = squared;
    bool have = false;
    while (true) {
        auto factors = css_refit(data, subset);
        const double c = fair_css_cost(data, subset, factors, squared);
        if (!have || c < best.cost) {
            best.indices = subset;
            best.factors = std::move(factors);
            best.cost = c;
            have = true;
        }
        // next combination in lexicographic order
        Index i = k - 1;
        while (i >= 0 && subset[static_cast<std::size_t>(i)] == d - k + i) --i;
        if (i < 0) break;
        ++subset[static_cast<std::size_t>(i)];
        for (Index j = i + 1; j < k; ++j) subset[static_cast<std::size_t>(j)] = subset[static_cast<std::size_t>(j - 1)] + 1;
    }
    return best;
}

}  // namespace fairsketch
