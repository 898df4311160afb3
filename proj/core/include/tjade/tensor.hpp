#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <span>
#include <vector>

#include "tjade/errors.hpp"

namespace tjade {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Dense real tensor of order r >= 1. The buffer is laid out with the FIRST
/// index varying fastest, so vectorize() is exactly the underlying buffer.
/// For r = 2 this coincides with a column-major matrix.
///
/// Modes are 1-based (m = 1..r) throughout the API; element indices are 0-based.
class Tensor {
public:
    Tensor() = default;

    /// Zero tensor with the given dimensions.
    explicit Tensor(std::vector<int> dims);

    Tensor(std::vector<int> dims, std::vector<double> data);

    static Tensor from_matrix(const Matrix& m);

    int order() const { return static_cast<int>(dims_.size()); }
    const std::vector<int>& dims() const { return dims_; }

    /// p_m for 1-based mode m.
    int dim(int m) const;

    /// rho_m = prod_{s != m} p_s, the number of m-mode vectors.
    std::int64_t co_dim(int m) const;

    std::int64_t size() const { return static_cast<std::int64_t>(data_.size()); }

    /// Stride of mode m in the flat buffer (mode 1 has stride 1).
    std::int64_t stride(int m) const;

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

    double operator[](std::int64_t i) const { return data_[static_cast<std::size_t>(i)]; }
    double& operator[](std::int64_t i) { return data_[static_cast<std::size_t>(i)]; }

    /// Element access by 0-based multi-index (one index per mode).
    double at(std::span<const int> idx) const;
    double& at(std::span<const int> idx);

    /// Zero-copy view of vec(X) (leftmost index fastest).
    Eigen::Map<const Vector> vec() const {
        return Eigen::Map<const Vector>(data_.data(), size());
    }

    /// The r <= 2 tensor as a p_1 x p_2 matrix (p_2 = 1 for vectors).
    Matrix as_matrix() const;

    Tensor& operator+=(const Tensor& other);
    Tensor& operator-=(const Tensor& other);
    Tensor& operator*=(double s);

    bool same_dims(const Tensor& other) const { return dims_ == other.dims_; }

private:
    std::vector<int> dims_;
    std::vector<std::int64_t> strides_;
    std::vector<double> data_;
};

/// X (x)_m A: transform mode m by the square matrix A (side p_m).
Tensor mode_product(const Tensor& x, const Matrix& a, int m);

/// X (x)_1 A_1 ... (x)_r A_r; mats.size() must equal the tensor order.
Tensor multi_mode_product(const Tensor& x, std::span<const Matrix> mats);

/// X (x)_{-m} Y: p_m x p_m contraction over all non-m indices.
Matrix contract(const Tensor& x, const Tensor& y, int m);

/// X (x)_{-m} X (symmetric positive semi-definite).
Matrix contract(const Tensor& x, int m);

/// Copy of vec(X).
Vector vectorize(const Tensor& x);

/// Inverse of vectorize.
Tensor reshape(const Vector& v, std::vector<int> dims);

/// m-flattening X_(m) in cyclic column order: the column index enumerates
/// (i_{m+1},...,i_r,i_1,...,i_{m-1}) with i_{m+1} varying slowest, so that
/// flatten(X x_1 A_1 ... x_r A_r, m)
///   = A_m flatten(X,m) (A_{m+1} (x) ... (x) A_r (x) A_1 (x) ... (x) A_{m-1})^T.
Matrix flatten(const Tensor& x, int m);

double frobenius_norm(const Tensor& x);

/// Kronecker product (a (x) b), block a_{ij} * b.
Matrix kronecker(const Matrix& a, const Matrix& b);

}  // namespace tjade
