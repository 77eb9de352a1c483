#include <benchmark/benchmark.h>

#include "cofix/contraction.hpp"
#include "cofix/generator.hpp"
#include "cofix/reduction.hpp"
#include "cofix/solver.hpp"
#include "cofix/synthesis.hpp"

using namespace cofix;

namespace {

Instance instance(std::size_t n, Arity arity = Arity::Two) {
  InstanceRecipe rec;
  rec.seed = 42;
  rec.n = n;
  rec.arity = arity;
  return generate_instance(rec);
}

void BM_PicardAllStarts(benchmark::State& state) {
  const Instance inst = instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    for (std::size_t x0 = 0; x0 < inst.space.size(); ++x0) {
      benchmark::DoNotOptimize(
          picard_solve(inst.space, inst.maps.S, inst.maps.T, Point::at(x0), inst.coefficients).limit);
    }
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PicardAllStarts)->RangeMultiplier(2)->Range(8, 64);

void BM_CheckConditionExhaustive(benchmark::State& state) {
  const Instance inst = instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        check_condition(inst.space, inst.maps, inst.coefficients, PairSource::exhaustive()).worst_margin);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_CheckConditionExhaustive)->RangeMultiplier(2)->Range(8, 64);

void BM_Synthesize(benchmark::State& state) {
  const Instance inst = instance(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(synthesize_coefficients(inst.space, inst.maps, PairSource::exhaustive()).rows);
  }
}
BENCHMARK(BM_Synthesize)->RangeMultiplier(2)->Range(4, 16);

void BM_SolveThree(benchmark::State& state) {
  const Instance inst = instance(static_cast<std::size_t>(state.range(0)), Arity::Three);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        solve_three(inst.space, inst.maps.S, inst.maps.T, inst.maps.get_f(), inst.coefficients, Point::at(0))
            .common_fixed_point);
  }
}
BENCHMARK(BM_SolveThree)->RangeMultiplier(2)->Range(8, 64);

void BM_AffineLine(benchmark::State& state) {
  const MetricSpace line = MetricSpace::euclidean(1);
  const Mapping S = Mapping::affine(Matrix::Constant(1, 1, 1.0 / 3.0), Vector::Zero(1));
  const Mapping T = Mapping::affine(Matrix::Constant(1, 1, 0.25), Vector::Zero(1));
  const Coefficients c{0, 0, 0.6, 0, 2500};
  SolveOptions o;
  o.tol = 1e-12;
  for (auto _ : state) benchmark::DoNotOptimize(picard_solve(line, S, T, Point::coords({1.0}), c, o).limit);
}
BENCHMARK(BM_AffineLine);

}  // namespace

BENCHMARK_MAIN();
