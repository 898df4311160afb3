#include "tjade/ica.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace tjade {

namespace {

// Compensated (Kahan) matrix accumulator; the fourth-moment sums add n*p^4
// terms at n up to 1e5, which plain summation degrades by several digits.
class KahanMatrix {
public:
    KahanMatrix(Eigen::Index r, Eigen::Index c)
        : sum_(Matrix::Zero(r, c)), comp_(Matrix::Zero(r, c)) {}

    void add(const Matrix& x) {
        const Matrix y = x - comp_;
        const Matrix t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }

    const Matrix& sum() const { return sum_; }

private:
    Matrix sum_;
    Matrix comp_;
};

constexpr std::int64_t kObsBlock = 256;

// All m-mode vectors of all observations side by side: p_m x (rho_m * n).
// Column order is the buffer scan order (sufficient for contractions, which
// do not depend on the stacking order).
Matrix flatten_all(const Sample& s, int m) {
    const int p = s.dim(m);
    const std::int64_t rho = s.co_dim(m);
    const std::int64_t n = s.n();
    std::int64_t inner = 1;
    for (int mm = 1; mm < m; ++mm) inner *= s.dim(mm);
    const std::int64_t block = inner * p;
    const std::int64_t outer = s.tensor_size() / block;

    Matrix f(p, rho * n);
    const double* src = s.data().data();
    for (std::int64_t i = 0; i < n; ++i) {
        const std::int64_t col0 = i * rho;
        for (std::int64_t b = 0; b < outer; ++b) {
            for (int j = 0; j < p; ++j) {
                const double* fib = src + i * s.tensor_size() + b * block + j * inner;
                for (std::int64_t a = 0; a < inner; ++a) f(j, col0 + b * inner + a) = fib[a];
            }
        }
    }
    return f;
}

// In-place mode-m transform of every observation by A (side p_m).
void mode_transform(Sample& s, const Matrix& a, int m) {
    const int p = s.dim(m);
    std::int64_t inner = 1;
    for (int mm = 1; mm < m; ++mm) inner *= s.dim(mm);
    const std::int64_t block = inner * p;
    const std::int64_t nblocks = s.tensor_size() * s.n() / block;
    const Matrix at = a.transpose();
    Matrix out(s.tensor_size(), s.n());
    const double* src = s.data().data();
    double* dst = out.data();
    for (std::int64_t b = 0; b < nblocks; ++b) {
        Eigen::Map<const Matrix> in(src + b * block, inner, p);
        Eigen::Map<Matrix> o(dst + b * block, inner, p);
        o.noalias() = in * at;
    }
    s.data() = std::move(out);
}

Vector face_means(const Sample& geometry_ref, const Vector& cell_values, int m) {
    const int p = geometry_ref.dim(m);
    std::int64_t inner = 1;
    for (int mm = 1; mm < m; ++mm) inner *= geometry_ref.dim(mm);
    Vector acc = Vector::Zero(p);
    for (std::int64_t cell = 0; cell < cell_values.size(); ++cell) {
        const int k = static_cast<int>((cell / inner) % p);
        acc(k) += cell_values(cell);
    }
    return acc / static_cast<double>(geometry_ref.co_dim(m));
}

struct ModeFit {
    Matrix rotation;
    ModeDiagnostics diag;
};

ModeFit jade_rotation(const Sample& st, int m, int c, const JointDiagOptions& jd) {
    CumulantMatrixSet set = cumulant_set(st, m, c);
    RotationEstimate est = estimate_rotation(set, jd);
    return {est.rotation, est.diag};
}

ModeFit fobi_rotation(const Sample& st, int m) {
    const int p = st.dim(m);
    const std::int64_t rho = st.co_dim(m);
    const std::int64_t n = st.n();
    const Matrix f = flatten_all(st, m);
    KahanMatrix acc(p, p);
    Matrix sa(p, p);
    Matrix part = Matrix::Zero(p, p);
    for (std::int64_t a = 0; a < n; ++a) {
        const auto fa = f.middleCols(a * rho, rho);
        sa.noalias() = fa * fa.transpose();
        part.noalias() += sa * sa;
        if ((a + 1) % kObsBlock == 0 || a + 1 == n) {
            acc.add(part);
            part.setZero();
        }
    }
    const Matrix b = acc.sum() / static_cast<double>(n * rho);
    SymEigen es = sym_eigen(b);
    ModeFit out;
    out.rotation = es.vectors.transpose();
    double min_gap = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k + 1 < es.values.size(); ++k)
        min_gap = std::min(min_gap, es.values(k) - es.values(k + 1));
    const double scale = std::max(std::abs(es.values(0)), std::abs(es.values(es.values.size() - 1)));
    // eigenvalue gaps below sampling noise mean the rotation is statistically unidentified
    out.diag.degenerate = p > 1 && min_gap < 8.0 * scale / std::sqrt(static_cast<double>(n));
    return out;
}

UnmixingModel fit_impl(const Sample& sample, const FitOptions& opt, bool jade_path,
                       const std::string& method) {
    int pmax = 0;
    for (int m = 1; m <= sample.order(); ++m) pmax = std::max(pmax, sample.dim(m));
    if (sample.n() <= pmax)
        throw ArgumentError("fit requires n > max_m p_m (" + std::to_string(sample.n()) +
                            " <= " + std::to_string(pmax) + ")");
    if (opt.c != 1 && opt.c != 2) throw ArgumentError("cumulant variant c must be 1 or 2");

    auto [centered, mu] = center(sample);
    StandardizeResult st = standardize(centered);

    UnmixingModel model;
    model.dims = sample.dims();
    model.location = mu;
    model.method = method;
    model.c = jade_path ? opt.c : 0;

    const int r = sample.order();
    model.phis.resize(static_cast<std::size_t>(r));
    model.tau_sq.resize(static_cast<std::size_t>(r));
    model.diagnostics.resize(static_cast<std::size_t>(r));
    for (int m = 1; m <= r; ++m) {
        const Matrix xi = xi_matrix(st.sample, m);
        model.tau_sq[static_cast<std::size_t>(m - 1)] = xi.trace() / sample.dim(m);
        ModeFit mf;
        if (sample.dim(m) == 1) {
            mf.rotation = Matrix::Identity(1, 1);
        } else if (jade_path) {
            mf = jade_rotation(st.sample, m, opt.c, opt.joint_diag);
        } else {
            mf = fobi_rotation(st.sample, m);
        }
        model.phis[static_cast<std::size_t>(m - 1)] =
            mf.rotation * st.inv_sqrts[static_cast<std::size_t>(m - 1)];
        model.diagnostics[static_cast<std::size_t>(m - 1)] = mf.diag;
    }

    model.face_kurtosis = face_kurtosis_of(model, sample);
    if (opt.canonical) model = canonicalize(std::move(model), sample);
    return model;
}

}  // namespace

Sample::Sample(std::vector<int> dims, std::int64_t n) : dims_(std::move(dims)) {
    if (dims_.empty()) throw ArgumentError("sample order must be >= 1");
    std::int64_t sz = 1;
    for (int p : dims_) {
        if (p < 1) throw ArgumentError("sample dims must be positive");
        sz *= p;
    }
    if (n < 1) throw ArgumentError("sample size must be >= 1");
    data_ = Matrix::Zero(sz, n);
}

Sample Sample::from_tensors(std::span<const Tensor> tensors) {
    if (tensors.empty()) throw ArgumentError("empty tensor list");
    Sample s(tensors[0].dims(), static_cast<std::int64_t>(tensors.size()));
    for (std::size_t i = 0; i < tensors.size(); ++i) {
        if (!tensors[i].same_dims(tensors[0])) throw ShapeError("observations must share dims");
        s.data_.col(static_cast<Eigen::Index>(i)) = tensors[i].vec();
    }
    return s;
}

int Sample::dim(int m) const {
    if (m < 1 || m > order()) throw ArgumentError("mode index out of range");
    return dims_[static_cast<std::size_t>(m - 1)];
}

Tensor Sample::observation(std::int64_t i) const {
    const auto col = data_.col(i);
    return Tensor(dims_, std::vector<double>(col.data(), col.data() + col.size()));
}

void Sample::set_observation(std::int64_t i, const Tensor& x) {
    if (x.dims() != dims_) throw ShapeError("observation dims mismatch");
    data_.col(i) = x.vec();
}

Sample Sample::vectorized() const {
    Sample v({static_cast<int>(tensor_size())}, n());
    v.data() = data_;
    return v;
}

bool UnmixingModel::converged() const {
    for (const ModeDiagnostics& d : diagnostics)
        if (!d.converged) return false;
    return true;
}

const Matrix& CumulantMatrixSet::at(int i, int j) const {
    return matrices[index(i, j)];
}

std::size_t CumulantMatrixSet::index(int i, int j) const {
    if (i < 0 || j < 0 || i >= p || j >= p) throw ArgumentError("cumulant index out of range");
    if (c == 1) {
        if (i > j) std::swap(i, j);
        // row-wise upper triangle: (0,0)..(0,p-1),(1,1)..,(p-1,p-1)
        return static_cast<std::size_t>(i) * p - static_cast<std::size_t>(i) * (i - 1) / 2 +
               static_cast<std::size_t>(j - i);
    }
    return static_cast<std::size_t>(i) * p + static_cast<std::size_t>(j);
}

std::pair<Sample, Tensor> center(const Sample& sample) {
    if (sample.n() < 2) throw ArgumentError("center requires n >= 2");
    const Vector mean = sample.data().rowwise().mean();
    Sample out = sample;
    out.data().colwise() -= mean;
    return {std::move(out), reshape(mean, sample.dims())};
}

Matrix m_mode_covariance(const Sample& centered, int m) {
    const int p = centered.dim(m);
    const std::int64_t rho = centered.co_dim(m);
    const std::int64_t n = centered.n();
    const Matrix f = flatten_all(centered, m);
    KahanMatrix acc(p, p);
    const std::int64_t cols = f.cols();
    const std::int64_t blk = kObsBlock * std::max<std::int64_t>(rho, 1);
    for (std::int64_t c0 = 0; c0 < cols; c0 += blk) {
        const std::int64_t w = std::min(blk, cols - c0);
        acc.add(f.middleCols(c0, w) * f.middleCols(c0, w).transpose());
    }
    Matrix sigma = acc.sum() / static_cast<double>(n * rho);
    sigma = 0.5 * (sigma + sigma.transpose());
    const SymEigen es = sym_eigen(sigma);
    if (!(es.values(0) > 0.0) || es.values(es.values.size() - 1) <= 1e-12 * es.values(0))
        throw SingularityError("m-mode covariance is rank deficient (mode " + std::to_string(m) + ")", m);
    return sigma;
}

StandardizeResult standardize(const Sample& centered) {
    StandardizeResult res{centered, {}};
    const int r = centered.order();
    res.inv_sqrts.reserve(static_cast<std::size_t>(r));
    for (int m = 1; m <= r; ++m)
        res.inv_sqrts.push_back(inv_sqrt_sym(m_mode_covariance(centered, m), m));
    for (int m = 1; m <= r; ++m)
        mode_transform(res.sample, res.inv_sqrts[static_cast<std::size_t>(m - 1)], m);
    return res;
}

Matrix xi_matrix(const Sample& standardized, int m) {
    if (standardized.n() < 1) throw ArgumentError("empty sample");
    const int p = standardized.dim(m);
    const std::int64_t rho = standardized.co_dim(m);
    const Matrix f = flatten_all(standardized, m);
    KahanMatrix acc(p, p);
    const std::int64_t cols = f.cols();
    const std::int64_t blk = kObsBlock * std::max<std::int64_t>(rho, 1);
    for (std::int64_t c0 = 0; c0 < cols; c0 += blk) {
        const std::int64_t w = std::min(blk, cols - c0);
        acc.add(f.middleCols(c0, w) * f.middleCols(c0, w).transpose());
    }
    return acc.sum() / static_cast<double>(standardized.n() * rho);
}

CumulantMatrixSet cumulant_set(const Sample& standardized, int m, int c) {
    if (c != 1 && c != 2) throw ArgumentError("cumulant variant c must be 1 or 2");
    const int p = standardized.dim(m);
    const std::int64_t rho = standardized.co_dim(m);
    const std::int64_t n = standardized.n();
    const Matrix f = flatten_all(standardized, m);

    // vec(S_a) columns, then the p^2 x p^2 fourth-moment table M4 = sum_a v v^T
    Matrix v(static_cast<Eigen::Index>(p) * p, n);
    for (std::int64_t a = 0; a < n; ++a) {
        Eigen::Map<Matrix> sa(v.col(a).data(), p, p);
        const auto fa = f.middleCols(a * rho, rho);
        sa.noalias() = fa * fa.transpose();
    }
    KahanMatrix m4_acc(v.rows(), v.rows());
    KahanMatrix xi_acc(p, p);
    for (std::int64_t a0 = 0; a0 < n; a0 += kObsBlock) {
        const std::int64_t w = std::min<std::int64_t>(kObsBlock, n - a0);
        const auto vb = v.middleCols(a0, w);
        m4_acc.add(vb * vb.transpose());
        Vector rs = vb.rowwise().sum();
        xi_acc.add(Eigen::Map<const Matrix>(rs.data(), p, p));
    }
    const double denom = static_cast<double>(n * rho);
    const Matrix m4 = m4_acc.sum() / denom;
    const Matrix xi = xi_acc.sum() / denom;
    const Matrix xi2 = xi * xi.transpose();

    CumulantMatrixSet set;
    set.mode = m;
    set.c = c;
    set.p = p;
    set.rho = rho;
    set.matrices.reserve(c == 1 ? static_cast<std::size_t>(p) * (p + 1) / 2
                                : static_cast<std::size_t>(p) * p);
    for (int i = 0; i < p; ++i) {
        for (int j = (c == 1 ? i : 0); j < p; ++j) {
            Matrix b(p, p);
            if (c == 1) {
                const Vector row = m4.row(i + static_cast<Eigen::Index>(p) * j).transpose();
                b = Eigen::Map<const Matrix>(row.data(), p, p);
            } else {
                for (int k = 0; k < p; ++k)
                    for (int l = 0; l < p; ++l)
                        b(k, l) = m4(k + static_cast<Eigen::Index>(p) * i,
                                     j + static_cast<Eigen::Index>(p) * l);
            }
            const Vector xi_i = xi.col(i);
            const Vector xi_j = xi.col(j);
            Matrix cm = b;
            if (c == 1) {
                if (i == j) cm.noalias() -= static_cast<double>(rho) * xi2;
                cm.noalias() -= xi_i * xi_j.transpose();
                cm.noalias() -= xi_j * xi_i.transpose();
            } else {
                if (i == j) cm.noalias() -= xi2;
                cm.noalias() -= static_cast<double>(rho) * xi_i * xi_j.transpose();
                cm.noalias() -= xi_j * xi_i.transpose();
            }
            set.matrices.push_back(std::move(cm));
        }
    }
    return set;
}

RotationEstimate estimate_rotation(const CumulantMatrixSet& set, JointDiagOptions opt) {
    if (set.matrices.empty()) throw ArgumentError("estimate_rotation: empty cumulant set");
    const double sqrt2 = std::sqrt(2.0);
    std::vector<Matrix> sym;
    sym.reserve(set.matrices.size());
    std::size_t idx = 0;
    for (int i = 0; i < set.p; ++i) {
        for (int j = (set.c == 1 ? i : 0); j < set.p; ++j, ++idx) {
            const Matrix& cm = set.matrices[idx];
            Matrix s = 0.5 * (cm + cm.transpose());
            if (set.c == 1 && i != j) s *= sqrt2;  // triangle weight: keeps the full (i,j) double-sum objective
            sym.push_back(std::move(s));
        }
    }
    JointDiagResult jd = joint_diagonalize(sym, opt);
    RotationEstimate est;
    est.rotation = std::move(jd.rotation);
    est.diag.sweeps = jd.sweeps;
    est.diag.final_off = jd.final_off;
    est.diag.converged = jd.converged;
    return est;
}

UnmixingModel tjade_fit(const Sample& sample, FitOptions opt) {
    return fit_impl(sample, opt, true, "tjade");
}

UnmixingModel tfobi_fit(const Sample& sample, FitOptions opt) {
    return fit_impl(sample, opt, false, "tfobi");
}

UnmixingModel jade_fit(const Sample& vector_sample, FitOptions opt) {
    if (vector_sample.order() != 1) throw ArgumentError("jade_fit expects an order-1 sample");
    return fit_impl(vector_sample, opt, true, "jade");
}

UnmixingModel fobi_fit(const Sample& vector_sample, FitOptions opt) {
    if (vector_sample.order() != 1) throw ArgumentError("fobi_fit expects an order-1 sample");
    return fit_impl(vector_sample, opt, false, "fobi");
}

Tensor transform(const UnmixingModel& model, const Tensor& x) {
    if (x.dims() != model.dims) throw ShapeError("transform: dims mismatch");
    Tensor out = x;
    out -= model.location;
    for (int m = 1; m <= model.order(); ++m)
        out = mode_product(out, model.phis[static_cast<std::size_t>(m - 1)], m);
    return out;
}

Sample transform(const UnmixingModel& model, const Sample& sample) {
    if (sample.dims() != model.dims) throw ShapeError("transform: dims mismatch");
    Sample out = sample;
    out.data().colwise() -= model.location.vec();
    for (int m = 1; m <= model.order(); ++m)
        mode_transform(out, model.phis[static_cast<std::size_t>(m - 1)], m);
    return out;
}

Sample multi_mode_product(const Sample& sample, std::span<const Matrix> mats) {
    if (static_cast<int>(mats.size()) != sample.order())
        throw ShapeError("multi_mode_product: need one matrix per mode");
    Sample out = sample;
    for (int m = 1; m <= sample.order(); ++m)
        mode_transform(out, mats[static_cast<std::size_t>(m - 1)], m);
    return out;
}

Vector cell_kurtosis_of(const UnmixingModel& model, const Sample& sample) {
    const Sample z = transform(model, sample);
    const double n = static_cast<double>(z.n());
    Vector cell_kurt(z.tensor_size());
    for (std::int64_t cell = 0; cell < z.tensor_size(); ++cell) {
        const auto row = z.data().row(cell);
        const double m2 = row.squaredNorm() / n;
        const double m4 = row.array().square().square().sum() / n;
        cell_kurt(cell) = m2 > 0.0 ? m4 / (m2 * m2) - 3.0 : 0.0;
    }
    return cell_kurt;
}

std::vector<Vector> face_kurtosis_of(const UnmixingModel& model, const Sample& sample) {
    const Vector cell_kurt = cell_kurtosis_of(model, sample);
    std::vector<Vector> out;
    out.reserve(static_cast<std::size_t>(sample.order()));
    for (int m = 1; m <= sample.order(); ++m) out.push_back(face_means(sample, cell_kurt, m));
    return out;
}

UnmixingModel canonicalize(UnmixingModel model, const Sample& sample) {
    if (model.face_kurtosis.empty()) model.face_kurtosis = face_kurtosis_of(model, sample);
    for (int m = 1; m <= model.order(); ++m) {
        Matrix& phi = model.phis[static_cast<std::size_t>(m - 1)];
        Vector& kurt = model.face_kurtosis[static_cast<std::size_t>(m - 1)];
        const int p = static_cast<int>(phi.rows());
        std::vector<int> order(static_cast<std::size_t>(p));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return std::abs(kurt(a)) > std::abs(kurt(b));
        });
        Matrix phi_new(p, phi.cols());
        Vector kurt_new(p);
        for (int r = 0; r < p; ++r) {
            phi_new.row(r) = phi.row(order[static_cast<std::size_t>(r)]);
            kurt_new(r) = kurt(order[static_cast<std::size_t>(r)]);
            Eigen::Index imax = 0;
            phi_new.row(r).cwiseAbs().maxCoeff(&imax);
            if (phi_new(r, imax) < 0) phi_new.row(r) = -phi_new.row(r);
        }
        phi = std::move(phi_new);
        kurt = std::move(kurt_new);
    }
    return model;
}

std::vector<int> rows_by_ascending_kurtosis(const UnmixingModel& model, int m) {
    const Vector& kurt = model.face_kurtosis.at(static_cast<std::size_t>(m - 1));
    std::vector<int> order(static_cast<std::size_t>(kurt.size()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return kurt(a) < kurt(b); });
    return order;
}

}  // namespace tjade
