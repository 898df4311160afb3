#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

#include "tjade/tensor.hpp"

namespace tjade {

/// splitmix64 step; used to derive independent substream seeds.
std::uint64_t splitmix64(std::uint64_t& state);

/// mt19937_64 wrapper with deterministic substream derivation, so that
/// replications can be generated independently and in any order.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    /// Stream deterministically derived from (seed, path words), e.g.
    /// Rng::substream(seed, {setting_idx, n, rep}).
    static Rng substream(std::uint64_t seed, std::initializer_list<std::uint64_t> path);

    std::mt19937_64& engine() { return engine_; }

    double uniform01();                 // [0,1)
    double uniform(double a, double b);
    double normal();

private:
    std::mt19937_64 engine_;
};

/// Random orthogonal matrix, uniform w.r.t. Haar measure: QR of a standard
/// Gaussian matrix with the signs of diag(R) folded into Q.
Matrix haar_orthogonal(int p, Rng& rng);

}  // namespace tjade
