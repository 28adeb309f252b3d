#include <benchmark/benchmark.h>

#include <pairedfd/eigen_jacobi.hpp>
#include <pairedfd/fpca.hpp>
#include <pairedfd/harness.hpp>
#include <pairedfd/nulltests.hpp>
#include <pairedfd/random.hpp>
#include <pairedfd/ranks.hpp>
#include <pairedfd/simgen.hpp>
#include <pairedfd/summaries.hpp>

using namespace pairedfd;

namespace {

DifferenceSample random_differences(std::size_t n, std::size_t s) {
    RandomStream rng(1, 0);
    Matrix m(n, s);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < s; ++k) m(i, k) = rng.normal();
    }
    return {Grid::uniform(s), m};
}

void BM_WilcoxonNull(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    for (auto _ : state) {
        WilcoxonNull table(n);
        benchmark::DoNotOptimize(table.pmf().data());
    }
}
BENCHMARK(BM_WilcoxonNull)->Arg(34)->Arg(200)->Arg(1000);

void BM_BinomialP(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(binom_two_sided_p(23, 34));
}
BENCHMARK(BM_BinomialP);

void BM_SignedRankField(benchmark::State& state) {
    const auto d = random_differences(static_cast<std::size_t>(state.range(0)), static_cast<std::size_t>(state.range(1)));
    for (auto _ : state) benchmark::DoNotOptimize(t_sdrt(signed_rank_field(d)).scores.data());
}
BENCHMARK(BM_SignedRankField)->Args({30, 40})->Args({60, 120})->Args({60, 360});

void BM_Jacobi(benchmark::State& state) {
    const std::size_t s = static_cast<std::size_t>(state.range(0));
    RandomStream rng(2, 0);
    Matrix a(s, s);
    for (std::size_t i = 0; i < s; ++i) {
        for (std::size_t j = i; j < s; ++j) a(i, j) = a(j, i) = rng.normal();
    }
    for (auto _ : state) benchmark::DoNotOptimize(jacobi_eigen(a).values.data());
}
BENCHMARK(BM_Jacobi)->Arg(40)->Arg(80)->Arg(120)->Unit(benchmark::kMillisecond);

void BM_PreprocessPaired(benchmark::State& state) {
    SimConfig c;
    c.n = 30;
    c.grid_size = static_cast<std::size_t>(state.range(0));
    c.missing_frac = state.range(1) / 100.0;
    RandomStream rng(c.seed, 0);
    const auto paired = generate_dataset(rng, c);
    for (auto _ : state) {
        benchmark::DoNotOptimize(preprocess_paired(paired, kDefaultPve, default_bandwidth(paired.grid())));
    }
}
BENCHMARK(BM_PreprocessPaired)->Args({40, 0})->Args({80, 5})->Unit(benchmark::kMillisecond);

void BM_GenerateDataset(benchmark::State& state) {
    SimConfig c;
    c.n = 30;
    c.grid_size = static_cast<std::size_t>(state.range(0));
    const DatasetGenerator gen(c);
    std::uint64_t r = 0;
    for (auto _ : state) {
        RandomStream rng(c.seed, r++);
        benchmark::DoNotOptimize(gen.generate(rng));
    }
}
BENCHMARK(BM_GenerateDataset)->Arg(40)->Arg(80)->Unit(benchmark::kMillisecond);

void BM_Replicate(benchmark::State& state) {
    SimConfig c;
    c.replicates = 1;
    std::uint64_t seed = 1;
    for (auto _ : state) {
        c.seed = seed++;
        benchmark::DoNotOptimize(run_cells(c, kAllMethods, 0.05));
    }
}
BENCHMARK(BM_Replicate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
