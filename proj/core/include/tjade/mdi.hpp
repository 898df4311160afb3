#pragma once

#include <span>
#include <vector>

#include "tjade/ica.hpp"
#include "tjade/tensor.hpp"

namespace tjade {

/// M_r (x) ... (x) M_1 (the Kronecker order matching vec with leftmost index fastest).
Matrix kron_chain(std::span<const Matrix> mats);

/// Gain matrix G = (Phi_r (x) ... (x) Phi_1) (Omega_r (x) ... (x) Omega_1).
/// For r = 1 this is plain Phi * Omega.
Matrix kronecker_gain(const UnmixingModel& model, std::span<const Matrix> mixers);
Matrix kronecker_gain(std::span<const Matrix> phis, std::span<const Matrix> mixers);

/// Minimum distance index of a gain matrix, in [0, 1]:
///   D(G) = (p-1)^{-1/2} inf_{C in scaled signed permutations} ||C G - I||_F,
/// computed exactly via the row-normalized assignment reduction. Requires
/// p >= 2 and no all-zero row.
double mdi(const Matrix& gain);

/// n (p-1) d^2, the transformed MDI used for plotting/summary.
double transformed_mdi(double d, std::int64_t n, int p);

/// Maximum-total-score assignment of rows to columns (square score matrix);
/// returns col_of_row. O(p^3) augmenting-path method.
std::vector<int> max_assignment(const Matrix& score);

}  // namespace tjade
