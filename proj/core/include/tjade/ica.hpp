#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tjade/linalg.hpp"
#include "tjade/tensor.hpp"

namespace tjade {

/// n tensor observations with common dims, stored contiguously as a
/// (tensor_size x n) matrix whose column i is vec(X_i).
class Sample {
public:
    Sample(std::vector<int> dims, std::int64_t n);
    static Sample from_tensors(std::span<const Tensor> tensors);

    const std::vector<int>& dims() const { return dims_; }
    int order() const { return static_cast<int>(dims_.size()); }
    int dim(int m) const;
    std::int64_t co_dim(int m) const { return tensor_size() / dim(m); }
    std::int64_t tensor_size() const { return data_.rows(); }
    std::int64_t n() const { return data_.cols(); }

    Matrix& data() { return data_; }
    const Matrix& data() const { return data_; }

    Tensor observation(std::int64_t i) const;
    void set_observation(std::int64_t i, const Tensor& x);

    /// Same data viewed as an order-1 sample of length prod(dims).
    Sample vectorized() const;

private:
    std::vector<int> dims_;
    Matrix data_;
};

struct ModeDiagnostics {
    int sweeps = 0;
    double final_off = 0.0;
    bool converged = true;
    bool degenerate = false;  // near-equal eigenvalues (TFOBI/FOBI)
};

/// Fitted unmixing model: per-mode matrices Phi_m = U_m^T Sigma_m^{-1/2},
/// the location estimate, per-mode tau^2 and face-kurtosis summaries.
struct UnmixingModel {
    std::vector<int> dims;
    std::vector<Matrix> phis;
    Tensor location;
    std::vector<double> tau_sq;
    std::vector<Vector> face_kurtosis;
    std::string method;
    int c = 1;
    std::vector<ModeDiagnostics> diagnostics;

    int order() const { return static_cast<int>(dims.size()); }
    bool converged() const;
};

/// The p_m^2 cumulant matrices C^{ij}_{c,m} for one mode. For c=1 only the
/// i <= j triangle is stored (C^{ij} = C^{ji} exactly).
struct CumulantMatrixSet {
    int mode = 0;
    int c = 1;
    int p = 0;
    std::int64_t rho = 0;
    std::vector<Matrix> matrices;

    const Matrix& at(int i, int j) const;
    std::size_t index(int i, int j) const;
};

struct FitOptions {
    int c = 1;
    JointDiagOptions joint_diag{};
    bool canonical = true;
};

/// Center the sample; returns (centered sample, mean tensor).
std::pair<Sample, Tensor> center(const Sample& sample);

/// Sigma_m = (1/(n rho_m)) sum_i X_i (x)_{-m} X_i of a centered sample.
Matrix m_mode_covariance(const Sample& centered, int m);

struct StandardizeResult {
    Sample sample;
    std::vector<Matrix> inv_sqrts;  // Sigma_m^{-1/2}, symmetric
};

/// Simultaneous standardization by the symmetric inverse square roots of all
/// m-mode covariances of the (original) centered sample.
StandardizeResult standardize(const Sample& centered);

/// Xi_m of a standardized sample; tau^2 estimate is trace(Xi_m)/p_m.
Matrix xi_matrix(const Sample& standardized, int m);

CumulantMatrixSet cumulant_set(const Sample& standardized, int m, int c);

struct RotationEstimate {
    Matrix rotation;  // U_m^T
    ModeDiagnostics diag;
};

/// Joint diagonalization of the (symmetrized) cumulant set. Off-diagonal pairs
/// of the c=1 triangle are weighted by sqrt(2) so the objective equals the full
/// double sum over (i,j). Non-convergence is reported in the diagnostics.
RotationEstimate estimate_rotation(const CumulantMatrixSet& set, JointDiagOptions opt = {});

UnmixingModel tjade_fit(const Sample& sample, FitOptions opt = {});
UnmixingModel tfobi_fit(const Sample& sample, FitOptions opt = {});

/// r = 1 specializations (exact same code path, different method tag).
UnmixingModel jade_fit(const Sample& vector_sample, FitOptions opt = {});
UnmixingModel fobi_fit(const Sample& vector_sample, FitOptions opt = {});

/// (X - location) (x)_1 Phi_1 ... (x)_r Phi_r.
Tensor transform(const UnmixingModel& model, const Tensor& x);
Sample transform(const UnmixingModel& model, const Sample& sample);

/// Every observation transformed by X (x)_1 mats[0] ... (x)_r mats[r-1].
Sample multi_mode_product(const Sample& sample, std::span<const Matrix> mats);

/// Deterministic component order and sign: rows of each Phi_m sorted by
/// descending |face kurtosis| (ties by original index), each row signed so its
/// largest-magnitude entry is positive. face_kurtosis is permuted to match.
UnmixingModel canonicalize(UnmixingModel model, const Sample& sample);

/// Empirical excess kurtosis of every recovered component cell (vec order).
Vector cell_kurtosis_of(const UnmixingModel& model, const Sample& sample);

/// Per-mode face means of the per-cell excess kurtoses of the recovered
/// components (the kappa-bar estimate used for ordering and reporting).
std::vector<Vector> face_kurtosis_of(const UnmixingModel& model, const Sample& sample);

/// Indices of the k smallest-|kurtosis| ... ascending-kurtosis components of
/// mode m (the "lowest kurtosis" accessor used by the digit workflow).
std::vector<int> rows_by_ascending_kurtosis(const UnmixingModel& model, int m);

}  // namespace tjade
