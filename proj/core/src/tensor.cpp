#include "tjade/tensor.hpp"

#include <cmath>
#include <numeric>
#include <string>

namespace tjade {

namespace {

std::vector<std::int64_t> make_strides(const std::vector<int>& dims) {
    std::vector<std::int64_t> s(dims.size());
    std::int64_t acc = 1;
    for (std::size_t m = 0; m < dims.size(); ++m) {
        s[m] = acc;
        acc *= dims[m];
    }
    return s;
}

std::int64_t total_size(const std::vector<int>& dims) {
    if (dims.empty()) throw ArgumentError("tensor order must be >= 1");
    std::int64_t n = 1;
    for (int p : dims) {
        if (p < 1) throw ArgumentError("tensor dimensions must be positive");
        n *= p;
    }
    return n;
}

}  // namespace

Tensor::Tensor(std::vector<int> dims)
    : dims_(std::move(dims)),
      strides_(make_strides(dims_)),
      data_(static_cast<std::size_t>(total_size(dims_)), 0.0) {}

Tensor::Tensor(std::vector<int> dims, std::vector<double> data)
    : dims_(std::move(dims)), strides_(make_strides(dims_)), data_(std::move(data)) {
    if (static_cast<std::int64_t>(data_.size()) != total_size(dims_))
        throw ShapeError("tensor data length does not match product of dims");
}

Tensor Tensor::from_matrix(const Matrix& m) {
    std::vector<double> buf(m.data(), m.data() + m.size());  // column-major = mode-1 fastest
    return Tensor({static_cast<int>(m.rows()), static_cast<int>(m.cols())}, std::move(buf));
}

int Tensor::dim(int m) const {
    if (m < 1 || m > order()) throw ArgumentError("mode index out of range: " + std::to_string(m));
    return dims_[static_cast<std::size_t>(m - 1)];
}

std::int64_t Tensor::co_dim(int m) const {
    return size() / dim(m);
}

std::int64_t Tensor::stride(int m) const {
    if (m < 1 || m > order()) throw ArgumentError("mode index out of range: " + std::to_string(m));
    return strides_[static_cast<std::size_t>(m - 1)];
}

double Tensor::at(std::span<const int> idx) const {
    return const_cast<Tensor*>(this)->at(idx);
}

double& Tensor::at(std::span<const int> idx) {
    if (static_cast<int>(idx.size()) != order()) throw ArgumentError("multi-index arity mismatch");
    std::int64_t off = 0;
    for (std::size_t m = 0; m < idx.size(); ++m) {
        if (idx[m] < 0 || idx[m] >= dims_[m]) throw ArgumentError("multi-index out of range");
        off += idx[m] * strides_[m];
    }
    return data_[static_cast<std::size_t>(off)];
}

Matrix Tensor::as_matrix() const {
    if (order() > 2) throw ShapeError("as_matrix requires order <= 2");
    const int rows = dims_[0];
    const int cols = order() == 2 ? dims_[1] : 1;
    return Eigen::Map<const Matrix>(data_.data(), rows, cols);
}

Tensor& Tensor::operator+=(const Tensor& other) {
    if (!same_dims(other)) throw ShapeError("tensor += dims mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

Tensor& Tensor::operator-=(const Tensor& other) {
    if (!same_dims(other)) throw ShapeError("tensor -= dims mismatch");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

Tensor& Tensor::operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
}

Tensor mode_product(const Tensor& x, const Matrix& a, int m) {
    const int p = x.dim(m);
    if (a.rows() != p || a.cols() != p)
        throw ShapeError("mode_product: matrix must be square with side p_" + std::to_string(m));
    Tensor out(x.dims());
    const std::int64_t inner = x.stride(m);       // prod of dims before mode m
    const std::int64_t block = inner * p;
    const std::int64_t nblocks = x.size() / block;
    const Matrix at = a.transpose();
    for (std::int64_t b = 0; b < nblocks; ++b) {
        Eigen::Map<const Matrix> in(x.data() + b * block, inner, p);
        Eigen::Map<Matrix> dst(out.data() + b * block, inner, p);
        dst.noalias() = in * at;                  // dst(.,i) = sum_j a(i,j) in(.,j)
    }
    return out;
}

Tensor multi_mode_product(const Tensor& x, std::span<const Matrix> mats) {
    if (static_cast<int>(mats.size()) != x.order())
        throw ShapeError("multi_mode_product: need one matrix per mode");
    Tensor out = x;
    for (int m = 1; m <= x.order(); ++m) out = mode_product(out, mats[static_cast<std::size_t>(m - 1)], m);
    return out;
}

Matrix contract(const Tensor& x, const Tensor& y, int m) {
    if (!x.same_dims(y)) throw ShapeError("contract: tensors must have identical dims");
    const int p = x.dim(m);
    const std::int64_t inner = x.stride(m);
    const std::int64_t block = inner * p;
    const std::int64_t nblocks = x.size() / block;
    Matrix r = Matrix::Zero(p, p);
    for (std::int64_t b = 0; b < nblocks; ++b) {
        Eigen::Map<const Matrix> mx(x.data() + b * block, inner, p);
        Eigen::Map<const Matrix> my(y.data() + b * block, inner, p);
        r.noalias() += mx.transpose() * my;
    }
    return r;
}

Matrix contract(const Tensor& x, int m) {
    return contract(x, x, m);
}

Vector vectorize(const Tensor& x) {
    return x.vec();
}

Tensor reshape(const Vector& v, std::vector<int> dims) {
    return Tensor(std::move(dims), std::vector<double>(v.data(), v.data() + v.size()));
}

Matrix flatten(const Tensor& x, int m) {
    const int r = x.order();
    const int p = x.dim(m);
    const std::int64_t rho = x.co_dim(m);
    Matrix f(p, rho);
    // cyclic mode list (m+1,...,r,1,...,m-1); first entry varies slowest
    std::vector<int> cyc;
    for (int s = m + 1; s <= r; ++s) cyc.push_back(s);
    for (int s = 1; s < m; ++s) cyc.push_back(s);

    std::vector<int> idx(static_cast<std::size_t>(r), 0);
    const std::int64_t n = x.size();
    for (std::int64_t flat = 0; flat < n; ++flat) {
        std::int64_t col = 0;
        for (int s : cyc) col = col * x.dim(s) + idx[static_cast<std::size_t>(s - 1)];
        f(idx[static_cast<std::size_t>(m - 1)], col) = x[flat];
        // advance multi-index, first mode fastest
        for (int s = 0; s < r; ++s) {
            if (++idx[static_cast<std::size_t>(s)] < x.dims()[static_cast<std::size_t>(s)]) break;
            idx[static_cast<std::size_t>(s)] = 0;
        }
    }
    return f;
}

double frobenius_norm(const Tensor& x) {
    return x.vec().norm();
}

Matrix kronecker(const Matrix& a, const Matrix& b) {
    Matrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return k;
}

}  // namespace tjade
