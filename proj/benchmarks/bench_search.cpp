#include "hindman/coloring.hpp"
#include "hindman/numerics.hpp"
#include "hindman/search.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace hindman;

namespace {

void BM_EnumerateSums(benchmark::State& state) {
    std::vector<u64> ground;
    for (int i = 0; i < state.range(0); ++i) ground.push_back(u64{1} << (2 * i));
    const FiniteSet h(ground);
    for (auto _ : state) {
        benchmark::DoNotOptimize(enumerate_sums(h, LengthSpec::at_most(3)));
    }
}
BENCHMARK(BM_EnumerateSums)->Arg(8)->Arg(16)->Arg(24);

void BM_ApartSearch(benchmark::State& state) {
    const auto f = parse_rule("summod 3 0 1 1", Arity::nat(), 2);
    SearchBudget budget;
    budget.target_size = static_cast<unsigned>(state.range(0));
    budget.max_exponent = 24;
    for (auto _ : state) {
        benchmark::DoNotOptimize(search_apart_homogeneous(f, LengthSpec::at_most(2), 2, budget));
    }
}
BENCHMARK(BM_ApartSearch)->Arg(3)->Arg(4)->Arg(5);

void BM_PlainSearchPruning(benchmark::State& state) {
    const auto f = Coloring::hash(Arity::nat(), 2, 7);
    SearchBudget budget;
    budget.target_size = 4;
    budget.max_exponent = 10;
    SearchOptions options;
    options.prune = state.range(0) != 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(search_plain_homogeneous(f, LengthSpec::at_most(2), budget, options));
    }
}
BENCHMARK(BM_PlainSearchPruning)->Arg(1)->Arg(0);

void BM_CanonicalAssignments(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        u64 seen = 0;
        for_each_canonical_assignment(n, 2, u64{1} << 30, [&](std::span<const unsigned>) {
            ++seen;
            return true;
        });
        benchmark::DoNotOptimize(seen);
    }
}
BENCHMARK(BM_CanonicalAssignments)->Arg(10)->Arg(14)->Arg(18);

void BM_WitnessNumber(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(witness_number(LengthSpec::at_most(1), 2, 3, 2));
    }
}
BENCHMARK(BM_WitnessNumber);

}  // namespace

BENCHMARK_MAIN();
