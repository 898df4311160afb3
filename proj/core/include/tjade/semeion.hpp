#pragma once

#include <iosfwd>
#include <vector>

#include "tjade/ica.hpp"
#include "tjade/rng.hpp"

namespace tjade {

/// One 16x16 binary digit image with its label (0-9).
struct SemeionRecord {
    Tensor image;  // dims {16,16}, values 0/1, file scan order = vec order
    int label = 0;
};

/// Parse the semeion wire format: per line 256 whitespace-separated pixel
/// values (0/1, decimal point allowed) followed by 10 one-hot label flags.
/// Errors carry the 1-based line number.
std::vector<SemeionRecord> parse_semeion(std::istream& is);

void write_semeion(std::ostream& os, std::span<const SemeionRecord> records);

/// Deterministic synthetic stand-in for the semeion digits: 1593 records with
/// the published per-digit class counts (161,162,159,159,161,159,161,158,155,158),
/// stroke templates with random shift and pixel noise.
std::vector<SemeionRecord> synthetic_semeion(std::uint64_t seed);

/// Records whose label is in `digits` (empty = all), as a {16,16} sample.
Sample semeion_sample(std::span<const SemeionRecord> records, std::span<const int> digits);
std::vector<int> semeion_labels(std::span<const SemeionRecord> records, std::span<const int> digits);

}  // namespace tjade
