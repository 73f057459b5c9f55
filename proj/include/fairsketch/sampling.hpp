#pragma once

// Row sampling by leverage scores and by Lp Lewis weights.

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "fairsketch/errors.hpp"
#include "fairsketch/linalg.hpp"
#include "fairsketch/sketch.hpp"

namespace fairsketch {

struct LeverageScores {
    Vector scores;
    Index rank = 0;

    [[nodiscard]] double sum() const { return scores.sum(); }
};

/// sigma_i = ||U_i||^2 for the thin left singular factor U.
inline LeverageScores leverage_scores(const Matrix& m) {
    const SvdFactors f = svd(m);
    return {f.U.rowwise().squaredNorm(), f.rank()};
}

/// Row selector with per-row rescaling; indices may repeat.
struct SamplingMatrix {
    std::vector<Index> indices;
    std::vector<double> scales;
    Index source_rows = 0;
    Seed seed = 0;

    [[nodiscard]] Index size() const { return static_cast<Index>(indices.size()); }

    /// Rows of m picked and rescaled: (size x m.cols()).
    [[nodiscard]] Matrix apply(const Matrix& m) const {
        if (m.rows() != source_rows) detail::raise<ShapeError>("SamplingMatrix::apply", "row count mismatch");
        Matrix out(size(), m.cols());
        for (std::size_t j = 0; j < indices.size(); ++j)
            out.row(static_cast<Index>(j)) = scales[j] * m.row(indices[j]);
        return out;
    }

    [[nodiscard]] Vector apply(const Vector& v) const {
        if (v.size() != source_rows) detail::raise<ShapeError>("SamplingMatrix::apply", "length mismatch");
        Vector out(size());
        for (std::size_t j = 0; j < indices.size(); ++j) out(static_cast<Index>(j)) = scales[j] * v(indices[j]);
        return out;
    }

    [[nodiscard]] Matrix dense() const {
        Matrix t = Matrix::Zero(size(), source_rows);
        for (std::size_t j = 0; j < indices.size(); ++j) t(static_cast<Index>(j), indices[j]) = scales[j];
        return t;
    }
};

/// Keeps row i independently with probability p_i = min(1, boost * sigma_i * max(1, ln n))
/// and rescales kept rows by 1/sqrt(p_i), so E||S v||^2 = ||v||^2.
inline SamplingMatrix leverage_sampling_matrix(const LeverageScores& scores, Index n, Seed seed, double boost = 1.0) {
    if (scores.scores.size() != n) detail::raise<ShapeError>("leverage_sampling_matrix", "scores length differs from n");
    if (!(boost > 0.0)) detail::raise<InvalidParameter>("leverage_sampling_matrix", "boost must be positive");
    const double oversample = std::max(1.0, std::log(static_cast<double>(n)));
    std::mt19937_64 engine(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    SamplingMatrix s;
    s.source_rows = n;
    s.seed = seed;
    for (Index i = 0; i < n; ++i) {
        const double prob = std::min(1.0, boost * std::max(0.0, scores.scores(i)) * oversample);
        // Draw for every row so the stream position does not depend on the scores.
        const double u = unit(engine);
        if (prob > 0.0 && u < prob) {
            s.indices.push_back(i);
            s.scales.push_back(1.0 / std::sqrt(prob));
        }
    }
    return s;
}

struct LewisWeights {
    Vector weights;
    double p = 2.0;
    int iterations = 0;
    double residual = 0.0;

    [[nodiscard]] double sum() const { return weights.sum(); }
};

inline constexpr int kDefaultLewisIterations = 10;

namespace detail {

// a_i^T (A^T diag(c) A)^{-1} a_i for every row, with a small ridge when the
// weighted Gram matrix is not numerically positive definite.
inline Vector weighted_quadratic_forms(const Matrix& a, const Vector& c) {
    const Matrix gram = a.transpose() * c.asDiagonal() * a;
    Eigen::LLT<Matrix> llt(gram);
    const double scale = gram.trace() / static_cast<double>(std::max<Index>(1, gram.rows()));
    const bool ill = llt.info() != Eigen::Success ||
                     llt.matrixL().toDenseMatrix().diagonal().minCoeff() <= 1e-8 * std::sqrt(std::max(scale, 0.0));
    if (ill) {
        if (!(scale > 0.0)) raise<NumericFailure>("lewis_weights", "Gram matrix is zero");
        llt.compute(gram + 1e-12 * scale * Matrix::Identity(gram.rows(), gram.cols()));
        if (llt.info() != Eigen::Success) raise<NumericFailure>("lewis_weights", "Gram matrix singular after regularization");
    }
    const Matrix x = llt.matrixL().solve(a.transpose());
    return x.colwise().squaredNorm().transpose();
}

inline Vector lewis_row_scaling(const Vector& w, double exponent) {
    Vector c(w.size());
    for (Index i = 0; i < w.size(); ++i) c(i) = w(i) > 0.0 ? std::pow(w(i), exponent) : 0.0;
    return c;
}

}  // namespace detail

/// max_i |w_i - tau_i(W^(1/2 - 1/p) A)|, with tau the SVD leverage scores.
inline double lewis_residual(const Matrix& a, const Vector& w, double p) {
    const Matrix reweighted = detail::lewis_row_scaling(w, 0.5 - 1.0 / p).asDiagonal() * a;
    return (w - leverage_scores(reweighted).scores).cwiseAbs().maxCoeff();
}

/// Lp Lewis weights by fixed-point iteration from w = d/n. The update
/// u_i = (a_i^T (A^T W^(1-2/p) A)^{-1} a_i)^(p/2) is applied in damped form
/// w <- w^(1-theta) u^theta with theta = min(1, 2/p); for p >= 4 the undamped
/// map oscillates instead of converging.
inline LewisWeights lewis_weights(const Matrix& a, double p, int iters = kDefaultLewisIterations) {
    if (!(p >= 1.0)) detail::raise<InvalidParameter>("lewis_weights", "p must be >= 1");
    if (iters < 1) detail::raise<InvalidParameter>("lewis_weights", "iters must be >= 1");
    if (a.rows() < 1 || a.cols() < 1) detail::raise<ShapeError>("lewis_weights", "empty matrix");
    require_finite(a, "lewis_weights");

    const double theta = std::min(1.0, 2.0 / p);
    Vector w = Vector::Constant(a.rows(), static_cast<double>(a.cols()) / static_cast<double>(a.rows()));
    for (int t = 0; t < iters; ++t) {
        const Vector q = detail::weighted_quadratic_forms(a, detail::lewis_row_scaling(w, 1.0 - 2.0 / p));
        Vector next(w.size());
        for (Index i = 0; i < w.size(); ++i) {
            const double u = std::pow(std::max(q(i), 0.0), p / 2.0);
            next(i) = theta == 1.0 ? u : std::pow(w(i), 1.0 - theta) * std::pow(u, theta);
        }
        if (!next.allFinite()) detail::raise<NumericFailure>("lewis_weights", "non-finite weight at iteration " + std::to_string(t));
        w = std::move(next);
    }
    return {w, p, iters, lewis_residual(a, w, p)};
}

/// s i.i.d. draws with q_i = w_i / sum(w); each drawn row is rescaled by (s q_i)^(-1/p).
inline SamplingMatrix lewis_sampling_matrix(const LewisWeights& weights, Index s, Seed seed) {
    if (s < 1) detail::raise<InvalidParameter>("lewis_sampling_matrix", "s must be >= 1");
    const Vector& w = weights.weights;
    if ((w.array() < 0.0).any() || !w.allFinite()) {
        detail::raise<InvalidParameter>("lewis_sampling_matrix", "weights must be finite and non-negative");
    }
    const double total = w.sum();
    if (!(total > 0.0)) detail::raise<InvalidParameter>("lewis_sampling_matrix", "weights sum to zero");

    std::mt19937_64 engine(seed);
    std::discrete_distribution<Index> pick(w.data(), w.data() + w.size());
    SamplingMatrix out;
    out.source_rows = w.size();
    out.seed = seed;
    const double ss = static_cast<double>(s);
    for (Index j = 0; j < s; ++j) {
        const Index i = pick(engine);
        out.indices.push_back(i);
        out.scales.push_back(std::pow(ss * w(i) / total, -1.0 / weights.p));
    }
    return out;
}

}  // namespace fairsketch
