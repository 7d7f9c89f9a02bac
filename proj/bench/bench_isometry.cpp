#include <benchmark/benchmark.h>

#include "handlecalc/isometry.hpp"

using namespace handlecalc;

namespace {

DecoratedModule form_for(int which) {
    switch (which) {
    case 0:
        return DecoratedModule::free_module(IntMatrix{{0, 1}, {1, 0}});
    case 1:
        return DecoratedModule::free_module(IntMatrix{{1, 0, 0}, {0, -1, 0}, {0, 0, 1}});
    default:
        return DecoratedModule({0, 0, 2}, IntMatrix{{1, 1, 0}, {1, -1, 0}, {0, 0, 0}});
    }
}

void BM_Enumerate(benchmark::State& state) {
    const DecoratedModule d = form_for(static_cast<int>(state.range(0)));
    const long bound = state.range(1);
    std::size_t found = 0;
    for (auto _ : state) {
        found = enumerate_isometries(d, d, bound).size();
        benchmark::DoNotOptimize(found);
    }
    state.counters["isometries"] = static_cast<double>(found);
}

void BM_EnumerateReference(benchmark::State& state) {
    const DecoratedModule d = form_for(static_cast<int>(state.range(0)));
    const long bound = state.range(1);
    std::size_t found = 0;
    for (auto _ : state) {
        found = enumerate_isometries_reference(d, d, bound, 50'000'000).size();
        benchmark::DoNotOptimize(found);
    }
    state.counters["isometries"] = static_cast<double>(found);
}

// X + Z with Z a rank-2 zero form: the shape that dominates stability checks.
void BM_EquivalenceWithRadical(benchmark::State& state) {
    GTable g;
    for (long a = -1; a <= 1; ++a) {
        for (long b = -1; b <= 1; ++b) {
            for (long c = -1; c <= 1; ++c) {
                for (long e = -1; e <= 1; ++e) {
                    g.emplace(IntVector{a, b, c, e}, OrderedValue(std::abs(a) + 2 * std::abs(c) + std::abs(e)));
                }
            }
        }
    }
    IntMatrix q(4, 4);
    q(0, 0) = 2;
    q(0, 1) = q(1, 0) = 1;
    q(1, 1) = 2;
    const DecoratedModule d1 = DecoratedModule::free_module(q, g);
    const DecoratedModule d2 = DecoratedModule::free_module(q);
    for (auto _ : state) {
        benchmark::DoNotOptimize(algebraically_equivalent(d1, d2.with_gvalues(g), state.range(0)).equivalent());
    }
}

}  // namespace

BENCHMARK(BM_Enumerate)->Args({0, 1})->Args({0, 2})->Args({1, 1})->Args({2, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnumerateReference)->Args({0, 1})->Args({0, 2})->Args({1, 1})->Args({2, 1})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EquivalenceWithRadical)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
