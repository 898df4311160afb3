#pragma once

#include <iosfwd>
#include <string>

#include "tjade/ica.hpp"

namespace tjade {

/// Headerless comma-separated matrix (one row per line).
Matrix read_csv_matrix(std::istream& is);
void write_csv_matrix(std::ostream& os, const Matrix& m);

/// Headerless CSV of vectorized tensors, one observation per line in vec order.
Sample read_vectorized_sample(std::istream& is, const std::vector<int>& dims);

/// UnmixingModel round-trip as versioned JSON (schema 1).
std::string model_to_json(const UnmixingModel& model);
UnmixingModel model_from_json(const std::string& text);

}  // namespace tjade
