#include <benchmark/benchmark.h>

#include "tjade/ica.hpp"
#include "tjade/mdi.hpp"
#include "tjade/settings.hpp"

using namespace tjade;

namespace {

Sample grid_sample(std::int64_t n, std::uint64_t seed) {
    Rng rng(seed);
    return draw_sample(builtin_setting("grid3x4"), n, rng);
}

void BM_ModeProduct(benchmark::State& state) {
    Rng rng(1);
    Tensor x({16, 16});
    for (std::int64_t i = 0; i < x.size(); ++i) x[i] = rng.normal();
    const Matrix a = haar_orthogonal(16, rng);
    for (auto _ : state) {
        Tensor y = mode_product(x, a, 1);
        benchmark::DoNotOptimize(y.data());
    }
}
BENCHMARK(BM_ModeProduct);

void BM_Contract(benchmark::State& state) {
    Rng rng(2);
    Tensor x({8, 8, 8});
    for (std::int64_t i = 0; i < x.size(); ++i) x[i] = rng.normal();
    for (auto _ : state) {
        Matrix s = contract(x, 2);
        benchmark::DoNotOptimize(s.data());
    }
}
BENCHMARK(BM_Contract);

void BM_CumulantSet(benchmark::State& state) {
    const Sample z = grid_sample(state.range(0), 3);
    auto [centered, mean] = center(z);
    const StandardizeResult st = standardize(centered);
    for (auto _ : state) {
        CumulantMatrixSet set = cumulant_set(st.sample, 2, 1);
        benchmark::DoNotOptimize(set.matrices.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CumulantSet)->Range(1000, 16000)->Complexity(benchmark::oN);

void BM_JointDiagonalize(benchmark::State& state) {
    const Sample z = grid_sample(4000, 4);
    auto [centered, mean] = center(z);
    const StandardizeResult st = standardize(centered);
    const CumulantMatrixSet set = cumulant_set(st.sample, 2, 1);
    std::vector<Matrix> sym;
    for (const Matrix& m : set.matrices) sym.push_back(0.5 * (m + m.transpose()));
    for (auto _ : state) {
        JointDiagResult res = joint_diagonalize(sym);
        benchmark::DoNotOptimize(res.rotation.data());
    }
}
BENCHMARK(BM_JointDiagonalize);

void BM_TJadeFit(benchmark::State& state) {
    const Sample z = grid_sample(state.range(0), 5);
    for (auto _ : state) {
        UnmixingModel model = tjade_fit(z);
        benchmark::DoNotOptimize(model.phis.data());
    }
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_TJadeFit)->Range(1000, 16000)->Complexity(benchmark::oN);

void BM_VJadeFit(benchmark::State& state) {
    const Sample z = grid_sample(state.range(0), 6).vectorized();
    for (auto _ : state) {
        UnmixingModel model = jade_fit(z);
        benchmark::DoNotOptimize(model.phis.data());
    }
}
BENCHMARK(BM_VJadeFit)->Arg(2000)->Arg(8000);

void BM_Mdi(benchmark::State& state) {
    Rng rng(7);
    const int p = static_cast<int>(state.range(0));
    Matrix g(p, p);
    for (Eigen::Index j = 0; j < p; ++j)
        for (Eigen::Index i = 0; i < p; ++i) g(i, j) = rng.normal();
    for (auto _ : state) benchmark::DoNotOptimize(mdi(g));
}
BENCHMARK(BM_Mdi)->Arg(12)->Arg(64)->Arg(256);

}  // namespace

BENCHMARK_MAIN();
