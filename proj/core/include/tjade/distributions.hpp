#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tjade/rng.hpp"

namespace tjade {

/// One entry of the closed source-distribution catalog. Draws are standardized
/// (mean 0, variance 1) analytically; the higher standardized moments are exact.
struct DistributionSpec {
    std::string name;
    double m3;  // E[z^3]
    double m4;  // E[z^4]
    double m6;  // E[z^6]

    double kurtosis() const { return m4 - 3.0; }       // excess
    double omega() const { return m6 - m3 * m3; }      // Var[z^3]
};

/// Look up a catalog entry by name. Accepts the setting shorthands
/// N (normal), L (laplace), E (exp), U (uniform). Throws ArgumentError.
const DistributionSpec& catalog(std::string_view name);

/// All canonical catalog names in fixed order.
const std::vector<std::string>& catalog_names();

double sample_one(const DistributionSpec& spec, Rng& rng);

std::vector<double> sample_source(const DistributionSpec& spec, std::int64_t n, Rng& rng);

}  // namespace tjade
