#pragma once

// Dense linear-algebra kernel shared by every solver: SVD with a fixed
// numerical-rank cutoff, Moore-Penrose pseudoinverse, entrywise and mixed
// norms, closed-form least squares and the Eckart-Young rank-k factor.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <string>

#include "fairsketch/errors.hpp"

namespace fairsketch {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

// Singular values at or below this fraction of the largest one count as zero.
inline constexpr double kRankTolerance = 1e-10;

inline void require_finite(const Matrix& m, const std::string& where) {
    if (!m.allFinite()) detail::raise<InvalidParameter>(where, "matrix contains NaN or Inf");
}

inline void require_finite(const Vector& v, const std::string& where) {
    if (!v.allFinite()) detail::raise<InvalidParameter>(where, "vector contains NaN or Inf");
}

/// Thin SVD restricted to the numerical rank: M = U * diag(sigma) * V with
/// U (n x r), sigma (r, non-increasing) and V (r x d, orthonormal rows).
struct SvdFactors {
    Matrix U;
    Vector sigma;
    Matrix V;

    [[nodiscard]] Index rank() const { return sigma.size(); }
    [[nodiscard]] Matrix reconstruct() const { return U * sigma.asDiagonal() * V; }
};

namespace detail {

inline Eigen::BDCSVD<Matrix> full_thin_svd(const Matrix& m, const char* where) {
    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success || !svd.singularValues().allFinite()) {
        raise<NumericFailure>(where, "singular value decomposition did not converge");
    }
    return svd;
}

inline Index spectrum_rank(const Vector& sv) {
    if (sv.size() == 0 || !(sv(0) > 0.0)) return 0;
    const double cutoff = kRankTolerance * sv(0);
    Index r = 0;
    while (r < sv.size() && sv(r) > cutoff) ++r;
    return r;
}

}  // namespace detail

inline SvdFactors svd(const Matrix& m) {
    require_finite(m, "svd");
    SvdFactors out;
    if (m.size() == 0) {
        out.U = Matrix(m.rows(), 0);
        out.V = Matrix(0, m.cols());
        return out;
    }
    const auto dec = detail::full_thin_svd(m, "svd");
    const Index r = detail::spectrum_rank(dec.singularValues());
    out.U = dec.matrixU().leftCols(r);
    out.sigma = dec.singularValues().head(r);
    out.V = dec.matrixV().leftCols(r).transpose();
    return out;
}

inline Index numerical_rank(const Matrix& m) {
    require_finite(m, "numerical_rank");
    if (m.size() == 0) return 0;
    return detail::spectrum_rank(detail::full_thin_svd(m, "numerical_rank").singularValues());
}

inline Matrix pseudoinverse(const Matrix& m) {
    const SvdFactors f = svd(m);
    if (f.rank() == 0) return Matrix::Zero(m.cols(), m.rows());
    return f.V.transpose() * f.sigma.cwiseInverse().asDiagonal() * f.U.transpose();
}

/// (sum |M_ij|^p)^(1/p); p = 2 is the Frobenius norm.
inline double norm_entrywise(const Matrix& m, double p) {
    if (!(p >= 1.0)) detail::raise<InvalidParameter>("norm_entrywise", "p must be >= 1");
    if (p == 2.0) return m.norm();
    if (p == 1.0) return m.cwiseAbs().sum();
    return std::pow(m.cwiseAbs().array().pow(p).sum(), 1.0 / p);
}

/// L_(p,2): the p-norm of the vector of column Euclidean norms.
inline double norm_columns_p2(const Matrix& m, double p) {
    if (!(p >= 1.0)) detail::raise<InvalidParameter>("norm_columns_p2", "p must be >= 1");
    const Eigen::ArrayXd cols = m.colwise().norm().transpose().array();
    return std::pow(cols.pow(p).sum(), 1.0 / p);
}

/// Vector p-norm, p in [1, inf].
inline double vector_norm(const Vector& v, double p) {
    if (!(p >= 1.0)) detail::raise<InvalidParameter>("vector_norm", "p must be >= 1");
    if (std::isinf(p)) return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
    return std::pow(v.cwiseAbs().array().pow(p).sum(), 1.0 / p);
}

/// X = A * V^+ minimizes ||X V - A||_F over X (n x k).
inline Matrix least_squares_left(const Matrix& v, const Matrix& a) {
    if (v.cols() != a.cols()) {
        detail::raise<ShapeError>("least_squares_left",
                                  "V has " + std::to_string(v.cols()) + " columns, A has " +
                                      std::to_string(a.cols()));
    }
    require_finite(a, "least_squares_left");
    return a * pseudoinverse(v);
}

/// Top-k right singular vectors of M as the rows of a k x d matrix.
/// Rank-deficient inputs get an arbitrary orthonormal completion.
inline Matrix best_rank_k(const Matrix& m, Index k) {
    if (k < 1 || k > std::min(m.rows(), m.cols())) {
        detail::raise<InvalidParameter>("best_rank_k",
                                        "k=" + std::to_string(k) + " outside [1, min(rows, cols)]");
    }
    require_finite(m, "best_rank_k");
    const auto dec = detail::full_thin_svd(m, "best_rank_k");
    return dec.matrixV().leftCols(k).transpose();
}

/// Vertical concatenation A^(1) o ... o A^(l).
inline Matrix stack_rows(std::span<const Matrix> blocks) {
    if (blocks.empty()) return Matrix(0, 0);
    const Index d = blocks.front().cols();
    Index n = 0;
    for (const auto& b : blocks) {
        if (b.cols() != d) detail::raise<ShapeError>("stack_rows", "blocks disagree on column count");
        n += b.rows();
    }
    Matrix out(n, d);
    Index at = 0;
    for (const auto& b : blocks) {
        out.middleRows(at, b.rows()) = b;
        at += b.rows();
    }
    return out;
}

inline Vector stack_vectors(std::span<const Vector> parts) {
    Index n = 0;
    for (const auto& p : parts) n += p.size();
    Vector out(n);
    Index at = 0;
    for (const auto& p : parts) {
        out.segment(at, p.size()) = p;
        at += p.size();
    }
    return out;
}

}  // namespace fairsketch
