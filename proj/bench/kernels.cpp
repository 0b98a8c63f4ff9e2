// Serial reference versus OpenMP path for every parallel kernel.
#include <benchmark/benchmark.h>

#include <numeric>

#include "dtc/coincidence.hpp"
#include "dtc/groups.hpp"
#include "dtc/planner.hpp"
#include "dtc/simplicial.hpp"

namespace {

dtc::Execution mode(const benchmark::State& state) {
    return state.range(0) == 0 ? dtc::Execution::Serial : dtc::Execution::Parallel;
}

void BM_VerifyPlanner(benchmark::State& state) {
    dtc::VerifyOptions opt;
    opt.p = 5;
    opt.n = 2;
    opt.samples = 100;
    opt.seed = 1;
    for (auto _ : state) benchmark::DoNotOptimize(dtc::verify_planner(opt, mode(state)));
}
BENCHMARK(BM_VerifyPlanner)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_ReducedHomology(benchmark::State& state) {
    const auto k = dtc::measure_skeleton(9, 3);
    for (auto _ : state) benchmark::DoNotOptimize(dtc::reduced_homology(k, mode(state)));
}
BENCHMARK(BM_ReducedHomology)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_CoincidenceSet(benchmark::State& state) {
    const auto x = dtc::build_sphere(2, 3, 4);
    const auto f = dtc::sine_function(x);
    for (auto _ : state) benchmark::DoNotOptimize(dtc::coincidence_set(x, f, mode(state)));
}
BENCHMARK(BM_CoincidenceSet)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_OrbitSpread(benchmark::State& state) {
    const auto x = dtc::build_sphere(2, 3, 4);
    const auto f = dtc::sine_function(x);
    for (auto _ : state) benchmark::DoNotOptimize(dtc::orbit_spread(x, f, mode(state)));
}
BENCHMARK(BM_OrbitSpread)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_Search(benchmark::State& state) {
    const auto x = dtc::build_sphere(1, 3, 4);
    dtc::SearchOptions opt;
    opt.restarts = 8;
    opt.iterations = 200;
    opt.seed = 3;
    for (auto _ : state) benchmark::DoNotOptimize(dtc::search_coincidence_free(x, opt, mode(state)));
}
BENCHMARK(BM_Search)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_SimplexIsotropy(benchmark::State& state) {
    const auto g = dtc::FiniteGroup::symmetric(4);
    std::vector<dtc::Element> all(g.order());
    std::iota(all.begin(), all.end(), 0);
    const auto z = dtc::SimplexPoint::uniform(all);
    for (auto _ : state) benchmark::DoNotOptimize(dtc::simplex_isotropy(g, z, mode(state)));
}
BENCHMARK(BM_SimplexIsotropy)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
