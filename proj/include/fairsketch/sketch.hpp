#pragma once

// Oblivious Gaussian sketches: Dvoretzky-type L2 -> Lp embeddings and dense
// affine embeddings for multi-response regression.

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>

#include "fairsketch/errors.hpp"
#include "fairsketch/linalg.hpp"

namespace fairsketch {

using Seed = std::uint64_t;

/// Fills an r x c matrix with i.i.d. N(0, 1) draws from a seeded engine.
inline Matrix gaussian_matrix(Index rows, Index cols, Seed seed) {
    std::mt19937_64 engine(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Matrix g(rows, cols);
    // Row-major fill so the stream order does not depend on Eigen's storage order.
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) g(i, j) = normal(engine);
    return g;
}

/// (E|g|^p)^(1/p) for a standard Gaussian g.
inline double gaussian_abs_moment(double p) {
    const double moment = std::pow(2.0, p / 2.0) * std::tgamma((p + 1.0) / 2.0) / std::sqrt(M_PI);
    return std::pow(moment, 1.0 / p);
}

struct DvoretzkyEmbedding {
    Matrix G;  // m x n
    double p = 2.0;
    double epsilon = 0.5;
    Seed seed = 0;

    [[nodiscard]] Index rows() const { return G.rows(); }
    [[nodiscard]] Index cols() const { return G.cols(); }
};

/// Gaussian map scaled by 1 / (m^(1/p) * gamma_p), so that E||G y||_p^p = ||y||_2^p.
inline DvoretzkyEmbedding dvoretzky_gaussian(Index m, Index n, double p, Seed seed, double epsilon = 0.5) {
    if (m < 1 || n < 1) detail::raise<InvalidParameter>("dvoretzky_gaussian", "dimensions must be >= 1");
    if (!(p >= 1.0)) detail::raise<InvalidParameter>("dvoretzky_gaussian", "p must be >= 1");
    const double scale = 1.0 / (std::pow(static_cast<double>(m), 1.0 / p) * gaussian_abs_moment(p));
    return {gaussian_matrix(m, n, seed) * scale, p, epsilon, seed};
}

struct DvoretzkyConstants {
    double scale = 1.0;     // multiplies the row count
    double boundary = 1.0;  // C in the (C p)^(p/2) n^(-(p-2)/(2(p-1))) regime boundary
};

namespace detail {

inline double dvoretzky_branch(int branch, double n, double p, double eps) {
    switch (branch) {
        case 1: return std::pow(p, p) * n / (eps * eps);
        case 2: return std::pow(n * p, p / 2.0) / eps;
        default:
            return std::pow(n, p / 2.0) / (std::pow(p, p / 2.0) * std::pow(eps, p / 2.0)) *
                   std::pow(std::log(1.0 / eps), p / 2.0);
    }
}

}  // namespace detail

/// Row count m(n, p, eps) of the three-regime Dvoretzky bound. The raw
/// piecewise expression can jump upward where the first regime ends; the
/// returned value is its non-increasing envelope sup_{eps' >= eps} m(eps').
inline Index dvoretzky_rows_needed(Index n, double p, double eps, DvoretzkyConstants c = {}) {
    if (n < 1) detail::raise<InvalidParameter>("dvoretzky_rows_needed", "n must be >= 1");
    if (!(p >= 1.0)) detail::raise<InvalidParameter>("dvoretzky_rows_needed", "p must be >= 1");
    if (!(eps > 0.0 && eps < 1.0)) detail::raise<InvalidParameter>("dvoretzky_rows_needed", "eps must lie in (0, 1)");

    const double nn = static_cast<double>(n);
    const double b1 = p == 1.0 ? std::numeric_limits<double>::infinity()
                               : std::pow(c.boundary * p, p / 2.0) * std::pow(nn, -(p - 2.0) / (2.0 * (p - 1.0)));
    const double b2 = 1.0 / p;

    // the 1/p < eps bound wins; the first boundary can exceed 1/p for small n
    auto branch_of = [&](double e) { return e > b2 ? 3 : (e <= b1 ? 1 : 2); };

    double value = detail::dvoretzky_branch(branch_of(eps), nn, p, eps);
    if (eps < b1 && b1 < b2) value = std::max(value, detail::dvoretzky_branch(2, nn, p, b1));
    if (eps <= b2 && b2 < 1.0) value = std::max(value, detail::dvoretzky_branch(3, nn, p, b2));

    const double rows = std::ceil(c.scale * value);
    if (!(rows < 9.0e15)) detail::raise<InvalidParameter>("dvoretzky_rows_needed", "row count overflows");
    return static_cast<Index>(std::max(1.0, rows));
}

/// Dense Gaussian S (n x m), entries N(0, 1/m), applied on the right: X V S vs A S.
struct AffineEmbedding {
    Matrix S;
    Index k = 1;
    double epsilon = 0.5;
    double delta = 0.1;
    Seed seed = 0;

    [[nodiscard]] Index sketch_size() const { return S.cols(); }
};

inline Index affine_sketch_size(Index k, double eps, double delta, double c_aff = 1.0) {
    if (k < 1) detail::raise<InvalidParameter>("affine_embedding", "k must be >= 1");
    if (!(eps > 0.0 && eps < 1.0)) detail::raise<InvalidParameter>("affine_embedding", "eps must lie in (0, 1)");
    if (!(delta > 0.0 && delta < 1.0)) detail::raise<InvalidParameter>("affine_embedding", "delta must lie in (0, 1)");
    if (!(c_aff > 0.0)) detail::raise<InvalidParameter>("affine_embedding", "C_aff must be positive");
    const double kk = static_cast<double>(k);
    return static_cast<Index>(std::ceil(c_aff * kk * kk / (eps * eps) * std::log(1.0 / delta)));
}

inline AffineEmbedding affine_embedding(Index n, Index k, double eps, double delta, Seed seed, double c_aff = 1.0) {
    if (n < 1) detail::raise<InvalidParameter>("affine_embedding", "n must be >= 1");
    const Index m = affine_sketch_size(k, eps, delta, c_aff);
    return {gaussian_matrix(n, m, seed) / std::sqrt(static_cast<double>(m)), k, eps, delta, seed};
}

}  // namespace fairsketch
