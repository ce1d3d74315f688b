// Serial vs OpenMP row reduction over GF(2) on dense random matrices.
#include "pearl/gf2.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

pearl::gf2::BitMatrix random_matrix(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    pearl::gf2::BitMatrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c)
            if (rng() & 1) m.set(r, c);
    return m;
}

template <std::vector<std::size_t> (*Reduce)(pearl::gf2::BitMatrix&)>
void BM_rref(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto base = random_matrix(n, 17 + n);
    for (auto _ : state) {
        auto m = base;
        benchmark::DoNotOptimize(Reduce(m));
    }
    state.counters["threads"] = pearl::gf2::max_threads();
}

}  // namespace

BENCHMARK_TEMPLATE(BM_rref, pearl::gf2::rref_serial)->RangeMultiplier(2)->Range(64, 1024);
BENCHMARK_TEMPLATE(BM_rref, pearl::gf2::rref_parallel)->RangeMultiplier(2)->Range(64, 1024);

BENCHMARK_MAIN();
