#pragma once

// Shared test helpers: literal (nested-loop) oracle implementations kept
// deliberately independent of the library's optimized paths, plus small
// random-input generators.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "tjade/ica.hpp"
#include "tjade/mdi.hpp"
#include "tjade/rng.hpp"
#include "tjade/tensor.hpp"

namespace tjade::testing {

inline Tensor random_tensor(const std::vector<int>& dims, Rng& rng) {
    Tensor t(dims);
    for (std::int64_t i = 0; i < t.size(); ++i) t[i] = rng.normal();
    return t;
}

inline Matrix random_matrix(int rows, int cols, Rng& rng) {
    Matrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = rng.normal();
    return m;
}

// advance a 0-based multi-index, first mode fastest; returns false on wrap
inline bool next_index(std::vector<int>& idx, const std::vector<int>& dims) {
    for (std::size_t m = 0; m < dims.size(); ++m) {
        if (++idx[m] < dims[m]) return true;
        idx[m] = 0;
    }
    return false;
}

// literal element-formula evaluation of the mode product
inline Tensor mode_product_literal(const Tensor& x, const Matrix& a, int mode) {
    Tensor out(x.dims());
    std::vector<int> idx(static_cast<std::size_t>(x.order()), 0);
    do {
        double acc = 0.0;
        std::vector<int> src = idx;
        for (int j = 0; j < x.dim(mode); ++j) {
            src[static_cast<std::size_t>(mode - 1)] = j;
            acc += x.at(src) * a(idx[static_cast<std::size_t>(mode - 1)], j);
        }
        out.at(idx) = acc;
    } while (next_index(idx, x.dims()));
    return out;
}

// literal double-loop contraction
inline Matrix contract_literal(const Tensor& x, const Tensor& y, int mode) {
    const int p = x.dim(mode);
    Matrix r = Matrix::Zero(p, p);
    std::vector<int> idx(static_cast<std::size_t>(x.order()), 0);
    do {
        if (idx[static_cast<std::size_t>(mode - 1)] != 0) continue;
        for (int j = 0; j < p; ++j) {
            std::vector<int> xi = idx, yi = idx;
            xi[static_cast<std::size_t>(mode - 1)] = j;
            for (int k = 0; k < p; ++k) {
                yi[static_cast<std::size_t>(mode - 1)] = k;
                r(j, k) += x.at(xi) * y.at(yi);
            }
        }
    } while (next_index(idx, x.dims()));
    return r;
}

// literal-sum estimates of the two cumulant families on a standardized sample
inline Matrix cumulant_literal(const Sample& st, int mode, int c, int i, int j) {
    const int p = st.dim(mode);
    const std::int64_t rho = st.co_dim(mode);
    const std::int64_t n = st.n();
    Matrix e_ij = Matrix::Zero(p, p), e_ji = Matrix::Zero(p, p);
    e_ij(i, j) = 1.0;
    e_ji(j, i) = 1.0;

    Matrix b = Matrix::Zero(p, p);
    Matrix xi = Matrix::Zero(p, p);
    for (std::int64_t a = 0; a < n; ++a) {
        const Tensor obs = st.observation(a);
        const Matrix s = contract_literal(obs, obs, mode);
        xi += s;
        if (c == 1)
            b += s(i, j) * s;
        else
            b += s * e_ij * s;
    }
    b /= static_cast<double>(n * rho);
    xi /= static_cast<double>(n * rho);

    const double dij = i == j ? 1.0 : 0.0;
    const Matrix eye = Matrix::Identity(p, p);
    if (c == 1) return b - xi * (dij * static_cast<double>(rho) * eye + e_ij + e_ji) * xi.transpose();
    return b - xi * (dij * eye + static_cast<double>(rho) * e_ij + e_ji) * xi.transpose();
}

// brute-force MDI: enumerate permutations, per-row optimal scale
inline double mdi_brute_force(const Matrix& g) {
    const int p = static_cast<int>(g.rows());
    std::vector<int> perm(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) perm[static_cast<std::size_t>(i)] = i;
    double best = std::numeric_limits<double>::infinity();
    do {
        double total = 0.0;
        for (int i = 0; i < p; ++i) {
            const auto row = g.row(perm[static_cast<std::size_t>(i)]);
            const double scale = row(i) / row.squaredNorm();
            Vector diff = scale * row.transpose();
            diff(i) -= 1.0;
            total += diff.squaredNorm();
        }
        best = std::min(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::sqrt(best / (p - 1.0));
}

// signed-permutation alignment: P D Phi ~ I, rows matched by |entry| assignment
inline Matrix align_to_identity(const Matrix& phi) {
    const int p = static_cast<int>(phi.rows());
    const std::vector<int> col_of_row = max_assignment(phi.cwiseAbs());
    Matrix out = Matrix::Zero(p, p);
    for (int r = 0; r < p; ++r) {
        const int c = col_of_row[static_cast<std::size_t>(r)];
        const double s = phi(r, c) >= 0 ? 1.0 : -1.0;
        out.row(c) = s * phi.row(r);
    }
    return out;
}

}  // namespace tjade::testing
