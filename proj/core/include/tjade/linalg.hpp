#pragma once

#include <span>
#include <vector>

#include "tjade/tensor.hpp"

namespace tjade {

/// Eigendecomposition of a symmetric matrix, eigenvalues sorted descending,
/// each eigenvector signed so its largest-magnitude entry is positive.
struct SymEigen {
    Vector values;
    Matrix vectors;  // columns are eigenvectors
};

SymEigen sym_eigen(const Matrix& s);

/// Symmetric inverse square root V diag(1/sqrt(lambda)) V^T of an SPD matrix.
/// Throws SingularityError (tagged with `mode` when nonzero) if the smallest
/// eigenvalue is <= 1e-12 times the largest.
Matrix inv_sqrt_sym(const Matrix& s, int mode = 0);

struct JointDiagOptions {
    double tol = 1e-8;    // convergence threshold on |sin(theta)| per rotation
    int max_sweeps = 100;
};

struct JointDiagResult {
    Matrix rotation;                  // orthogonal W with W C_k W^T ~ diagonal (the estimated U^T)
    int sweeps = 0;
    double final_off = 0.0;           // residual off-diagonal mass
    bool converged = false;
    std::vector<double> off_history;  // off-diagonal mass after each sweep
};

/// Orthogonal W maximizing sum_k ||diag(W C_k W^T)||^2 by cyclic Jacobi sweeps,
/// with each Givens angle chosen in closed form from the dominant eigenvector of
/// the 2x2 matrix accumulated from (C_ii - C_jj, C_ij + C_ji) over all C_k
/// (Cardoso-Souloumiac). Inputs are expected symmetric; same side p >= 1.
JointDiagResult joint_diagonalize(std::span<const Matrix> mats, JointDiagOptions opt = {});

/// sum_k ||W C_k W^T||_F^2 - sum_k ||diag(W C_k W^T)||^2.
double off_diag_mass(std::span<const Matrix> mats, const Matrix& w);

}  // namespace tjade
