#pragma once

// Min-max (socially fair) regression: min_x max_i ||A^(i) x - b^(i)|| in L1 or L2.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fairsketch/errors.hpp"
#include "fairsketch/grouped.hpp"
#include "fairsketch/linalg.hpp"

namespace fairsketch {

enum class RegressionMethod { Stacked, Subgradient, BinarySearch };

inline const char* to_string(RegressionMethod m) {
    switch (m) {
        case RegressionMethod::Stacked: return "stacked";
        case RegressionMethod::Subgradient: return "subgradient";
        default: return "binary-search";
    }
}

struct RegressionSolution {
    Vector x;
    std::vector<double> per_group_costs;
    double max_cost = 0.0;
    int iterations = 0;
    RegressionMethod method = RegressionMethod::Stacked;
    std::vector<double> thresholds;  // accepted thresholds, binary search only
};

namespace detail {

inline RegressionSolution make_solution(const GroupedMatrix& data, const GroupedLabels& labels, Vector x,
                                        RegressionNorm norm, RegressionMethod method, int iterations) {
    RegressionSolution s;
    s.per_group_costs = group_regression_costs(data, labels, x, norm);
    s.max_cost = *std::max_element(s.per_group_costs.begin(), s.per_group_costs.end());
    s.x = std::move(x);
    s.method = method;
    s.iterations = iterations;
    return s;
}

}  // namespace detail

/// x = A^+ b on the stacked system; its max group cost is at most l times optimal.
inline RegressionSolution stacked_least_squares(const GroupedMatrix& data, const GroupedLabels& labels,
                                                RegressionNorm norm = RegressionNorm::L2) {
    check_pairing(data, labels, "stacked_least_squares");
    Vector x = pseudoinverse(data.stacked()) * labels.stacked();
    return detail::make_solution(data, labels, std::move(x), norm, RegressionMethod::Stacked, 1);
}

/// 10 (max_i ||b^(i)|| / sigma_min(A) + 1), clipped to [1, 1e6].
inline double default_box_radius(const GroupedMatrix& data, const GroupedLabels& labels) {
    check_pairing(data, labels, "default_box_radius");
    double bmax = 0.0;
    for (const auto& b : labels.targets) bmax = std::max(bmax, b.norm());
    const Vector sv = data.stacked().jacobiSvd().singularValues();
    const double smin = data.total_rows() >= data.cols() ? sv(sv.size() - 1) : 0.0;
    const double radius = smin > 0.0 ? 10.0 * (bmax / smin + 1.0) : 1e6;
    return std::clamp(radius, 1.0, 1e6);
}

struct SubgradientOptions {
    double eps = 1e-7;     // stop once the level gap shrinks below this
    int max_iters = 200000;
    std::optional<double> box;     // radius Delta; default_box_radius when empty
    std::optional<double> target;  // known target value: Polyak step toward it, stop when reached
    std::optional<Vector> x0;
};

/// Value and a subgradient of g(x) = max_i ||A^(i) x - b^(i)|| (argmax group).
inline double minmax_value_and_subgradient(const GroupedMatrix& data, const GroupedLabels& labels, const Vector& x,
                                           RegressionNorm norm, Vector& grad) {
    double best = -1.0;
    std::size_t arg = 0;
    Vector best_r;
    for (std::size_t i = 0; i < data.size(); ++i) {
        Vector r = data.group(i) * x - labels.targets[i];
        const double v = residual_norm(r, norm);
        if (v > best) {
            best = v;
            arg = i;
            best_r = std::move(r);
        }
    }
    const Matrix& a = data.group(arg);
    if (norm == RegressionNorm::L2) {
        grad = best > 0.0 ? Vector(a.transpose() * best_r / best) : Vector::Zero(x.size());
    } else {
        grad = a.transpose() * best_r.unaryExpr([](double v) { return double((v > 0.0) - (v < 0.0)); });
    }
    return best;
}

/// Projected subgradient descent on g over the box [-Delta, Delta]^d.
/// Step: Polyak toward a moving level f_best - delta, delta halved whenever a
/// stretch of iterations fails to reach it; with a known target the level is
/// the target itself. Returns the best iterate.
inline RegressionSolution minmax_subgradient(const GroupedMatrix& data, const GroupedLabels& labels,
                                             RegressionNorm norm, SubgradientOptions opt = {}) {
    check_pairing(data, labels, "minmax_subgradient");
    if (!(opt.eps > 0.0)) detail::raise<InvalidParameter>("minmax_subgradient", "eps must be positive");
    if (opt.max_iters < 1) detail::raise<InvalidParameter>("minmax_subgradient", "max_iters must be >= 1");
    const double box = opt.box.value_or(default_box_radius(data, labels));
    if (!(box > 0.0)) detail::raise<InvalidParameter>("minmax_subgradient", "box radius must be positive");

    const Index d = data.cols();
    auto project = [box](Vector v) { return Vector(v.cwiseMax(-box).cwiseMin(box)); };

    Vector x = project(opt.x0 ? *opt.x0 : Vector(pseudoinverse(data.stacked()) * labels.stacked()));
    if (x.size() != d) detail::raise<ShapeError>("minmax_subgradient", "x0 has wrong length");

    Vector g;
    double f = minmax_value_and_subgradient(data, labels, x, norm, g);
    Vector best_x = x;
    double best_f = f;
    double delta = std::max(0.5 * best_f, opt.eps);
    const int patience = 20 + 5 * static_cast<int>(d);
    int stalled = 0;
    int iter = 0;

    for (; iter < opt.max_iters; ++iter) {
        if (opt.target && best_f <= *opt.target) break;
        if (!opt.target && delta < opt.eps) break;
        const double gn2 = g.squaredNorm();
        if (gn2 == 0.0) break;  // 0 is a subgradient: x is optimal

        const double level = opt.target ? *opt.target : best_f - delta;
        const double step = std::max(f - level, 0.0) / gn2;
        x = project(x - step * g);
        if (!x.allFinite()) {
            detail::raise<NumericFailure>("minmax_subgradient", "non-finite iterate at step " + std::to_string(iter) +
                                                                    " (step size " + std::to_string(step) + ")");
        }
        f = minmax_value_and_subgradient(data, labels, x, norm, g);
        if (f <= best_f - 0.5 * delta) {
            stalled = 0;
        } else if (++stalled >= patience) {
            delta *= 0.5;
            stalled = 0;
        }
        if (f < best_f) {
            best_f = f;
            best_x = x;
        }
    }
    return detail::make_solution(data, labels, std::move(best_x), norm, RegressionMethod::Subgradient, iter);
}

/// Textual optimization model (CPLEX LP syntax).
struct FeasibilityModel {
    std::string text;
    Index variables = 0;
    Index constraints = 0;
    RegressionNorm norm = RegressionNorm::L1;
    double threshold = 0.0;
};

namespace detail {

inline std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Appends " + c name" / " - c name", or the leading form without the plus.
inline void append_term(std::ostringstream& os, bool& first, double coef, const std::string& name) {
    if (coef == 0.0) return;
    if (first) {
        os << (coef < 0.0 ? "- " : "") << format_real(std::abs(coef)) << ' ' << name;
    } else {
        os << (coef < 0.0 ? " - " : " + ") << format_real(std::abs(coef)) << ' ' << name;
    }
    first = false;
}

inline std::string x_name(Index j) { return "x" + std::to_string(j + 1); }
inline std::string t_name(std::size_t i, Index j) { return "t_" + std::to_string(i + 1) + "_" + std::to_string(j + 1); }

inline void write_free_bounds(std::ostringstream& os, Index d) {
    os << "Bounds\n";
    for (Index j = 0; j < d; ++j) os << ' ' << x_name(j) << " free\n";
    os << "End\n";
}

}  // namespace detail

/// LP whose feasibility decides max_i ||A^(i) x - b^(i)||_1 <= L:
/// (A^(i) x - b^(i))_j <= t_ij, >= -t_ij, t_ij >= 0, sum_j t_ij <= L.
inline FeasibilityModel export_l1_feasibility(const GroupedMatrix& data, const GroupedLabels& labels, double threshold) {
    check_pairing(data, labels, "export_l1_feasibility");
    if (!(threshold >= 0.0)) detail::raise<InvalidParameter>("export_l1_feasibility", "L must be >= 0");
    const Index d = data.cols();
    std::ostringstream os;
    os << "\\ fairsketch min-max L1 regression feasibility, L = " << detail::format_real(threshold) << "\n";
    os << "\\ feasible iff min_x max_i ||A^(i) x - b^(i)||_1 <= L\n";
    os << "Minimize\n obj:";
    for (Index j = 0; j < d; ++j) os << (j == 0 ? " " : " + ") << detail::x_name(j);
    os << "\nSubject To\n";

    Index constraints = 0;
    Index tvars = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const Matrix& a = data.group(i);
        const Vector& b = labels.targets[i];
        const std::string g = "g" + std::to_string(i + 1);
        for (Index r = 0; r < a.rows(); ++r) {
            const std::string t = detail::t_name(i, r);
            const std::string row = g + "_r" + std::to_string(r + 1);
            for (int side = 0; side < 2; ++side) {
                std::ostringstream lhs;
                bool first = true;
                for (Index j = 0; j < d; ++j) detail::append_term(lhs, first, a(r, j), detail::x_name(j));
                detail::append_term(lhs, first, side == 0 ? -1.0 : 1.0, t);
                os << ' ' << row << (side == 0 ? "_upper: " : "_lower: ") << lhs.str()
                   << (side == 0 ? " <= " : " >= ") << detail::format_real(b(r)) << '\n';
            }
            os << ' ' << row << "_nonneg: 1 " << t << " >= 0\n";
            constraints += 3;
        }
        std::ostringstream sum;
        bool first = true;
        for (Index r = 0; r < a.rows(); ++r) detail::append_term(sum, first, 1.0, detail::t_name(i, r));
        os << ' ' << g << "_budget: " << sum.str() << " <= " << detail::format_real(threshold) << '\n';
        constraints += 1;
        tvars += a.rows();
    }
    detail::write_free_bounds(os, d);
    return {os.str(), d + tvars, constraints, RegressionNorm::L1, threshold};
}

/// QCQP whose feasibility decides max_i ||A^(i) x - b^(i)||_2^2 <= L:
/// x^T A^T A x - 2 <A x, b> + ||b||^2 <= L per group. Note L bounds the
/// squared residual, so the model is feasible iff L >= OPT^2.
inline FeasibilityModel export_l2_feasibility(const GroupedMatrix& data, const GroupedLabels& labels, double threshold) {
    check_pairing(data, labels, "export_l2_feasibility");
    if (!(threshold >= 0.0)) detail::raise<InvalidParameter>("export_l2_feasibility", "L must be >= 0");
    const Index d = data.cols();
    std::ostringstream os;
    os << "\\ fairsketch min-max L2 regression feasibility, L = " << detail::format_real(threshold) << "\n";
    os << "\\ feasible iff (min_x max_i ||A^(i) x - b^(i)||_2)^2 <= L\n";
    os << "Minimize\n obj: [";
    for (Index j = 0; j < d; ++j) os << (j == 0 ? " " : " + ") << "2 " << detail::x_name(j) << " ^ 2";
    os << " ] / 2\nSubject To\n";

    for (std::size_t i = 0; i < data.size(); ++i) {
        const Matrix& a = data.group(i);
        const Vector& b = labels.targets[i];
        const Matrix q = a.transpose() * a;
        const Vector lin = -2.0 * (a.transpose() * b);
        std::ostringstream lhs;
        bool first = true;
        for (Index j = 0; j < d; ++j) detail::append_term(lhs, first, lin(j), detail::x_name(j));
        std::ostringstream quad;
        bool qfirst = true;
        for (Index r = 0; r < d; ++r) {
            for (Index c = r; c < d; ++c) {
                const double coef = r == c ? q(r, c) : 2.0 * q(r, c);
                const std::string term = r == c ? detail::x_name(r) + " ^ 2"
                                                : detail::x_name(r) + " * " + detail::x_name(c);
                detail::append_term(quad, qfirst, coef, term);
            }
        }
        os << " g" << (i + 1) << ": " << lhs.str();
        if (!qfirst) os << (first ? "[ " : " + [ ") << quad.str() << " ]";
        if (first && qfirst) os << "0 " << detail::x_name(0);
        os << " <= " << detail::format_real(threshold - b.squaredNorm()) << '\n';
    }
    detail::write_free_bounds(os, d);
    return {os.str(), d, static_cast<Index>(data.size()), RegressionNorm::L2, threshold};
}

/// Decides threshold L: returns an x with max cost <= L (up to the oracle's slack), or nothing.
using RegressionFeasibilityOracle = std::function<std::optional<Vector>(double threshold)>;

/// Default oracle: target-driven subgradient run accepting once the value is <= L (1 + eps/4).
inline RegressionFeasibilityOracle make_subgradient_oracle(const GroupedMatrix& data, const GroupedLabels& labels,
                                                           RegressionNorm norm, double eps,
                                                           SubgradientOptions opt = {}) {
    return [data, labels, norm, eps, opt](double threshold) -> std::optional<Vector> {
        SubgradientOptions run = opt;
        const double accept = threshold * (1.0 + eps / 4.0);
        run.target = threshold;
        auto sol = minmax_subgradient(data, labels, norm, run);
        if (sol.max_cost <= accept) return sol.x;
        return std::nullopt;
    };
}

/// Starts at the stacked solution's cost L0 (within a factor l of optimal) and
/// divides the threshold by (1 + eps) while the oracle accepts. After the first
/// rejection the next smaller threshold is probed once; acceptance there means
/// the oracle is not monotone and raises ContractViolation.
inline RegressionSolution binary_search_fair_regression(const GroupedMatrix& data, const GroupedLabels& labels,
                                                        RegressionNorm norm, double eps,
                                                        std::optional<RegressionFeasibilityOracle> oracle = {}) {
    if (!(eps > 0.0 && eps < 1.0)) detail::raise<InvalidParameter>("binary_search_fair_regression", "eps must lie in (0, 1)");
    const RegressionFeasibilityOracle decide = oracle ? *oracle : make_subgradient_oracle(data, labels, norm, eps);

    RegressionSolution seed = stacked_least_squares(data, labels, norm);
    Vector best_x = seed.x;
    double best_cost = seed.max_cost;
    double threshold = seed.max_cost;
    std::vector<double> accepted{threshold};
    int calls = 0;

    // A (numerically) consistent system is already optimal.
    const double zero_level = 1e-12 * std::max(1.0, labels.stacked().norm());
    if (threshold > zero_level) {
        while (true) {
            const double next = threshold / (1.0 + eps);
            ++calls;
            auto x = decide(next);
            if (!x) {
                if (decide(next / (1.0 + eps))) {
                    detail::raise<ContractViolation>("binary_search_fair_regression",
                                                     "oracle accepted a threshold below one it rejected");
                }
                break;
            }
            const double c = fair_regression_cost(data, labels, *x, norm);
            if (c < best_cost) {
                best_cost = c;
                best_x = *x;
            }
            threshold = next;
            accepted.push_back(threshold);
            if (threshold == 0.0) break;
        }
    }
    auto out = detail::make_solution(data, labels, std::move(best_x), norm, RegressionMethod::BinarySearch, calls);
    out.thresholds = std::move(accepted);
    return out;
}

}  // namespace fairsketch
