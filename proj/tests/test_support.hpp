#pragma once

// Shared helpers for the unit tests: seeded random matrices and a few
// independent reference computations that avoid the library's own kernels.

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>
#include <random>

#include "fairsketch/fairsketch.hpp"

namespace fstest {

using fairsketch::Index;
using fairsketch::Matrix;
using fairsketch::Vector;

inline Matrix random_matrix(Index rows, Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Matrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = n(rng);
    return m;
}

inline Vector random_vector(Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Vector v(n);
    for (Index i = 0; i < n; ++i) v(i) = g(rng);
    return v;
}

// rows x cols with rank exactly r (r <= min(rows, cols)) almost surely
inline Matrix random_rank(Index rows, Index cols, Index r, std::mt19937_64& rng) {
    if (r == 0) return Matrix::Zero(rows, cols);
    return random_matrix(rows, r, rng) * random_matrix(r, cols, rng);
}

// projection onto the row space of v, computed through a QR of v^T instead of an SVD
inline Matrix rowspace_projector(const Matrix& v) {
    Eigen::ColPivHouseholderQR<Matrix> qr(v.transpose());
    qr.setThreshold(1e-10);
    const Index r = qr.rank();
    const Matrix q = qr.householderQ() * Matrix::Identity(v.cols(), r);
    return q * q.transpose();
}

inline double sum_abs_pow(const Matrix& m, double p) {
    double s = 0.0;
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) s += std::pow(std::abs(m(i, j)), p);
    return s;
}

// Minimum of f over the box [-r, r]^d by a dense grid with n+1 points per
// axis, then `zooms` rounds of re-gridding around the best point. Meant for
// convex f and d <= 3.
template <class F>
std::pair<Vector, double> grid_min(const F& f, Index d, double r, int n, int zooms = 6) {
    Vector center = Vector::Zero(d);
    double half = r;
    Vector best = center;
    double best_f = f(center);
    for (int level = 0; level <= zooms; ++level) {
        const double h = 2 * half / n;
        const Vector c = center;
        std::vector<int> idx(static_cast<std::size_t>(d), 0);
        while (true) {
            Vector x(d);
            for (Index a = 0; a < d; ++a) x(a) = std::clamp(c(a) - half + idx[static_cast<std::size_t>(a)] * h, -r, r);
            const double v = f(x);
            if (v < best_f) {
                best_f = v;
                best = x;
            }
            Index a = 0;
            while (a < d && ++idx[static_cast<std::size_t>(a)] > n) idx[static_cast<std::size_t>(a++)] = 0;
            if (a == d) break;
        }
        center = best;
        half = 4 * h;
    }
    return {best, best_f};
}

}  // namespace fstest
