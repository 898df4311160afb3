#pragma once

#include "tjade/settings.hpp"

namespace tjade {

/// Per-mode moment summary feeding the asymptotic-variance formulas:
/// face means of excess kurtosis, fourth moment, Var[z^3], and the face
/// covariance of fourth moments.
struct AsymptoticProfile {
    int mode = 0;
    int p = 0;
    std::int64_t rho = 0;  // face width (p_2 in the matrix-case notation)
    Vector kappa_bar;
    Vector beta_bar;
    Vector omega_bar;
    Matrix rho_cov;
};

AsymptoticProfile asv_profile(const SettingSpec& setting, int mode);

/// ASV(phi_kk) = (beta_bar_k - 1) / (4 rho).
double asv_diag(const AsymptoticProfile& prof, int k);

/// ASV(phi_kk'), k != k'; throws UndefinedVarianceError when both face
/// kurtosis means vanish.
double asv_offdiag(const AsymptoticProfile& prof, int k, int kp);

}  // namespace tjade
