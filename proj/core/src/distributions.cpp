#include "tjade/distributions.hpp"

#include <array>
#include <cmath>
#include <unordered_map>

namespace tjade {

namespace {

const double kSqrt3 = std::sqrt(3.0);
const double kSqrt6 = std::sqrt(6.0);

enum class Family {
    Uniform, Triangular, Normal, T10, Gamma3, Laplace,
    ChiSq3, Gamma12, Exp, ChiSq15, ChiSq12, InvGauss,
};

struct Entry {
    DistributionSpec spec;
    Family family;
};

// Standardized moments are exact (symbolic integration, cross-checked by quadrature).
// Excess kurtoses: -1.2, -0.6, 0, 1, 2, 3, 4, 5, 6, 8, 10, 15.
const std::array<Entry, 12>& entries() {
    static const std::array<Entry, 12> table = {{
        {{"uniform", 0.0, 1.8, 27.0 / 7.0}, Family::Uniform},
        {{"triangular", 0.0, 2.4, 54.0 / 7.0}, Family::Triangular},
        {{"normal", 0.0, 3.0, 15.0}, Family::Normal},
        {{"t10", 0.0, 4.0, 40.0}, Family::T10},
        {{"gamma3", 2.0 / kSqrt3, 5.0, 215.0 / 3.0}, Family::Gamma3},
        {{"laplace", 0.0, 6.0, 90.0}, Family::Laplace},
        {{"chisq3", 2.0 * kSqrt6 / 3.0, 7.0, 155.0}, Family::ChiSq3},
        {{"gamma12", std::sqrt(30.0) / 3.0, 8.0, 620.0 / 3.0}, Family::Gamma12},
        {{"exp", 2.0, 9.0, 265.0}, Family::Exp},
        {{"chisq15", 4.0 / kSqrt3, 11.0, 1205.0 / 3.0}, Family::ChiSq15},
        {{"chisq12", 2.0 * std::sqrt(15.0) / 3.0, 13.0, 565.0}, Family::ChiSq12},
        {{"invgauss", 3.0, 18.0, 1275.0}, Family::InvGauss},
    }};
    return table;
}

const Entry& entry(std::string_view name) {
    static const std::unordered_map<std::string_view, std::size_t> aliases = {
        {"N", 2}, {"L", 5}, {"E", 8}, {"U", 0},
    };
    for (const Entry& e : entries())
        if (e.spec.name == name) return e;
    if (auto it = aliases.find(name); it != aliases.end()) return entries()[it->second];
    throw ArgumentError("unknown distribution: " + std::string(name));
}

double sample_family(Family f, Rng& rng) {
    auto& eng = rng.engine();
    switch (f) {
        case Family::Uniform:
            return rng.uniform(-kSqrt3, kSqrt3);
        case Family::Triangular: {
            const double u = rng.uniform01();
            return u < 0.5 ? kSqrt6 * (std::sqrt(2.0 * u) - 1.0)
                           : kSqrt6 * (1.0 - std::sqrt(2.0 * (1.0 - u)));
        }
        case Family::Normal:
            return rng.normal();
        case Family::T10: {
            std::student_t_distribution<double> d(10.0);
            return d(eng) / std::sqrt(1.25);
        }
        case Family::Gamma3: {
            std::gamma_distribution<double> d(3.0, 1.0 / kSqrt3);
            return d(eng) - kSqrt3;
        }
        case Family::Laplace: {
            const double v = rng.uniform01() - 0.5;
            const double b = 1.0 / std::sqrt(2.0);
            return v < 0 ? b * std::log(1.0 + 2.0 * v) : -b * std::log(1.0 - 2.0 * v);
        }
        case Family::ChiSq3: {
            std::chi_squared_distribution<double> d(3.0);
            return (d(eng) - 3.0) / kSqrt6;
        }
        case Family::Gamma12: {
            const double s = std::sqrt(1.2);
            std::gamma_distribution<double> d(1.2, 1.0 / s);
            return d(eng) - s;
        }
        case Family::Exp: {
            std::exponential_distribution<double> d(1.0);
            return d(eng) - 1.0;
        }
        case Family::ChiSq15: {
            std::chi_squared_distribution<double> d(1.5);
            return (d(eng) - 1.5) / kSqrt3;
        }
        case Family::ChiSq12: {
            std::chi_squared_distribution<double> d(1.2);
            return (d(eng) - 1.2) / std::sqrt(2.4);
        }
        case Family::InvGauss: {
            // Michael-Schucany-Haas for IG(1,1)
            const double nu = [&] { const double z = rng.normal(); return z * z; }();
            const double x = 1.0 + 0.5 * (nu - std::sqrt(4.0 * nu + nu * nu));
            const double u = rng.uniform01();
            return (u <= 1.0 / (1.0 + x) ? x : 1.0 / x) - 1.0;
        }
    }
    throw ArgumentError("unreachable distribution family");
}

}  // namespace

const DistributionSpec& catalog(std::string_view name) {
    return entry(name).spec;
}

const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const Entry& e : entries()) v.push_back(e.spec.name);
        return v;
    }();
    return names;
}

double sample_one(const DistributionSpec& spec, Rng& rng) {
    return sample_family(entry(spec.name).family, rng);
}

std::vector<double> sample_source(const DistributionSpec& spec, std::int64_t n, Rng& rng) {
    const Family f = entry(spec.name).family;
    std::vector<double> out(static_cast<std::size_t>(n));
    for (double& v : out) v = sample_family(f, rng);
    return out;
}

}  // namespace tjade
