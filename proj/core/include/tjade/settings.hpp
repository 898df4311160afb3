#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tjade/distributions.hpp"
#include "tjade/ica.hpp"

namespace tjade {

enum class MixingKind { Identity, Orthogonal, Gaussian, Uniform };

MixingKind mixing_from_name(std::string_view name);
std::string to_string(MixingKind kind);

/// One mixing matrix per mode. Random kinds are redrawn while the condition
/// number exceeds 1e6 (orthogonal draws are Haar-uniform via sign-corrected QR).
std::vector<Matrix> draw_mixing(MixingKind kind, std::span<const int> dims, Rng& rng);

/// A source distribution per tensor cell; `cells` is in vec order (leftmost
/// index fastest) and holds catalog names.
struct SettingSpec {
    std::string name;
    std::vector<int> dims;
    std::vector<std::string> cells;

    std::int64_t tensor_size() const;
    const DistributionSpec& cell(std::int64_t flat) const;
    void validate() const;
};

/// Built-in settings: "grid3x4" (the 3x4 kurtosis grid with excess kurtoses
/// -1.2..15), "setting1"/"setting2"/"setting3" (the 3x3x2 N/L/E/U grids), and
/// "gauss3x4" (all-Gaussian control).
SettingSpec builtin_setting(std::string_view name);
bool is_builtin_setting(std::string_view name);
const std::vector<std::string>& builtin_setting_names();

/// Draw n i.i.d. source tensors Z (independent standardized cells).
Sample draw_sample(const SettingSpec& setting, std::int64_t n, Rng& rng);

}  // namespace tjade
