// Serial reference kernels vs their OpenMP counterparts.

#include <benchmark/benchmark.h>

#include "loopforge/enumerate.hpp"
#include "loopforge/structure.hpp"

using namespace loopforge;

namespace {

CayleyLoop big_loop() {
    // direct-product tower: a roomy associative Bol loop
    CayleyLoop X = validate_loop(1, {0});
    FiniteGroup g = cyclic_group(48);
    return CayleyLoop{g.m, g.mul_table};
}

void bm_bol_serial(benchmark::State& state) {
    CayleyLoop X = big_loop();
    for (auto _ : state) benchmark::DoNotOptimize(is_bol_serial(X));
}
BENCHMARK(bm_bol_serial);

void bm_bol_parallel(benchmark::State& state) {
    CayleyLoop X = big_loop();
    for (auto _ : state) benchmark::DoNotOptimize(is_bol(X));
}
BENCHMARK(bm_bol_parallel);

void bm_folder_check_fast(benchmark::State& state) {
    FiniteGroup g = cyclic_group(60);
    LoopFolder f = verify_folder(g, {0}, [&] {
        ElementSet K(60);
        for (int i = 0; i < 60; ++i) K[i] = i;
        return K;
    }());
    for (auto _ : state)
        benchmark::DoNotOptimize(folder_invariants_hold(f.group, f.H, f.K, true));
}
BENCHMARK(bm_folder_check_fast);

void bm_folder_check_parallel(benchmark::State& state) {
    FiniteGroup g = cyclic_group(60);
    LoopFolder f = verify_folder(g, {0}, [&] {
        ElementSet K(60);
        for (int i = 0; i < 60; ++i) K[i] = i;
        return K;
    }());
    for (auto _ : state)
        benchmark::DoNotOptimize(folder_invariants_hold(f.group, f.H, f.K, false));
}
BENCHMARK(bm_folder_check_parallel);

void bm_enumerate_serial(benchmark::State& state) {
    EnumerationTask t;
    t.order = 5;
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_loops(t));
}
BENCHMARK(bm_enumerate_serial);

void bm_enumerate_parallel(benchmark::State& state) {
    EnumerationTask t;
    t.order = 5;
    t.parallel_depth = 4;
    for (auto _ : state) benchmark::DoNotOptimize(enumerate_loops(t));
}
BENCHMARK(bm_enumerate_parallel);

}  // namespace

BENCHMARK_MAIN();
