#include "tjade/asv.hpp"

#include <cmath>

namespace tjade {

AsymptoticProfile asv_profile(const SettingSpec& setting, int mode) {
    setting.validate();
    const int r = static_cast<int>(setting.dims.size());
    if (mode < 1 || mode > r) throw ArgumentError("asv_profile: mode out of range");
    const int p = setting.dims[static_cast<std::size_t>(mode - 1)];
    const std::int64_t rho = setting.tensor_size() / p;
    std::int64_t inner = 1;
    for (int m = 1; m < mode; ++m) inner *= setting.dims[static_cast<std::size_t>(m - 1)];

    Matrix beta(p, rho), omega(p, rho);
    for (std::int64_t flat = 0; flat < setting.tensor_size(); ++flat) {
        const DistributionSpec& d = setting.cell(flat);
        if (!std::isfinite(d.m6))
            throw Error("asv_profile: sixth moment unavailable for " + d.name);
        const int k = static_cast<int>((flat / inner) % p);
        const std::int64_t l = flat % inner + inner * (flat / (inner * p));
        beta(k, l) = d.m4;
        omega(k, l) = d.omega();
    }

    AsymptoticProfile prof;
    prof.mode = mode;
    prof.p = p;
    prof.rho = rho;
    prof.beta_bar = beta.rowwise().mean();
    prof.omega_bar = omega.rowwise().mean();
    prof.kappa_bar = prof.beta_bar.array() - 3.0;
    prof.rho_cov = beta * beta.transpose() / static_cast<double>(rho) -
                   prof.beta_bar * prof.beta_bar.transpose();
    return prof;
}

double asv_diag(const AsymptoticProfile& prof, int k) {
    if (k < 0 || k >= prof.p) throw ArgumentError("asv_diag: index out of range");
    return (prof.beta_bar(k) - 1.0) / (4.0 * static_cast<double>(prof.rho));
}

double asv_offdiag(const AsymptoticProfile& prof, int k, int kp) {
    if (k < 0 || kp < 0 || k >= prof.p || kp >= prof.p || k == kp)
        throw ArgumentError("asv_offdiag: need distinct in-range indices");
    const double a = prof.kappa_bar(k);
    const double b = prof.kappa_bar(kp);
    if (std::abs(a) < 1e-12 && std::abs(b) < 1e-12)
        throw UndefinedVarianceError("asv_offdiag: both face kurtosis means are zero");
    const double rho = static_cast<double>(prof.rho);
    auto zeta = [&](int idx) {
        const double kap = prof.kappa_bar(idx);
        return kap * kap * (prof.omega_bar(idx) - prof.beta_bar(idx) * prof.beta_bar(idx)) +
               kap * kap * (kap - 2.0) * (rho - 1.0);
    };
    const double num = zeta(k) + zeta(kp) + b * b * b * b - 2.0 * a * b * prof.rho_cov(k, kp);
    const double den = rho * (a * a + b * b) * (a * a + b * b);
    return num / den;
}

}  // namespace tjade
