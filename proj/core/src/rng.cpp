#include "tjade/rng.hpp"

namespace tjade {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed) {
    std::uint64_t s = seed;
    std::seed_seq seq{static_cast<std::uint32_t>(splitmix64(s)), static_cast<std::uint32_t>(splitmix64(s)),
                      static_cast<std::uint32_t>(splitmix64(s)), static_cast<std::uint32_t>(splitmix64(s))};
    engine_.seed(seq);
}

Rng Rng::substream(std::uint64_t seed, std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = seed;
    std::uint64_t h = splitmix64(s);
    for (std::uint64_t w : path) {
        s = h ^ (w + 0x9e3779b97f4a7c15ULL);
        h = splitmix64(s);
    }
    return Rng(h);
}

double Rng::uniform01() {
    // 53-bit mantissa from the top of the 64-bit output
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double a, double b) {
    return a + (b - a) * uniform01();
}

double Rng::normal() {
    std::normal_distribution<double> d;
    return d(engine_);
}

Matrix haar_orthogonal(int p, Rng& rng) {
    if (p < 1) throw ArgumentError("haar_orthogonal: p must be >= 1");
    Matrix g(p, p);
    std::normal_distribution<double> d;
    for (Eigen::Index j = 0; j < p; ++j)
        for (Eigen::Index i = 0; i < p; ++i) g(i, j) = d(rng.engine());
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < p; ++j)
        if (r(j, j) < 0) q.col(j) = -q.col(j);
    return q;
}

}  // namespace tjade
