#include <benchmark/benchmark.h>

#include "aflt/criteria.hpp"

using namespace aflt;

namespace {

const std::vector<long> kCubic{-85, -51, 0, 1};
const std::vector<long> kQuintic{-20, 50, -10, -25, 0, 1};

void BM_MaximalOrderCubic(benchmark::State& state) {
  for (auto _ : state) {
    NumberField k = NumberField::make(kCubic);
    benchmark::DoNotOptimize(k.basis_denominator());
  }
}
BENCHMARK(BM_MaximalOrderCubic);

void BM_MaximalOrderQuintic(benchmark::State& state) {
  for (auto _ : state) {
    NumberField k = NumberField::make(kQuintic);
    benchmark::DoNotOptimize(k.basis_denominator());
  }
}
BENCHMARK(BM_MaximalOrderQuintic);

void BM_FactorPrime(benchmark::State& state) {
  NumberField k = NumberField::make(kQuintic);
  long p = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(factor_prime(k, p));
}
BENCHMARK(BM_FactorPrime)->Arg(2)->Arg(3)->Arg(5)->Arg(101);

void BM_ClassGroupCubic(benchmark::State& state) {
  ClassGroupOptions opt;
  opt.max_relations = 0;
  for (auto _ : state) {
    NumberField k = NumberField::make(std::vector<long>{13, -40, -1, 1});
    benchmark::DoNotOptimize(class_group(k, opt).order);
  }
}
BENCHMARK(BM_ClassGroupCubic)->Unit(benchmark::kMillisecond);

void BM_UnitGroupCubic(benchmark::State& state) {
  for (auto _ : state) {
    NumberField k = NumberField::make(kCubic);
    benchmark::DoNotOptimize(unit_group(k).fundamental_units.size());
  }
}
BENCHMARK(BM_UnitGroupCubic)->Unit(benchmark::kMillisecond);

void BM_UnitEquation(benchmark::State& state) {
  NumberField k = NumberField::quadratic(13);
  SUnitGroup G = s_unit_group(k, factor_prime(k, 2));
  long bound = state.range(0);
  for (auto _ : state) benchmark::DoNotOptimize(solve_unit_equation(G, k.one(), k.one(), G.S, bound).solutions.size());
  state.counters["candidates"] = search_size(G, bound);
}
BENCHMARK(BM_UnitEquation)->Arg(5)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

void BM_FreyInvariants(benchmark::State& state) {
  NumberField k = NumberField::quadratic(13);
  FieldElement a = k.from_integer(2), b = k.one(), c = k.from_integer(3);
  for (auto _ : state) benchmark::DoNotOptimize(frey_pp2(a, b, c, 3).disc);
}
BENCHMARK(BM_FreyInvariants);

void BM_QuadCriterion(benchmark::State& state) {
  for (auto _ : state)
    for (long d = 1; d < 500; ++d) benchmark::DoNotOptimize(check_quad(d, Signature::pp2).verdict);
}
BENCHMARK(BM_QuadCriterion)->Unit(benchmark::kMillisecond);

void BM_LocalCriterionCubic(benchmark::State& state) {
  NumberField k = NumberField::make(kCubic);
  CheckOptions opt;
  opt.replay_bound = 6;
  for (auto _ : state) benchmark::DoNotOptimize(check_local(k, 17, Signature::pp2, opt).verdict);
}
BENCHMARK(BM_LocalCriterionCubic)->Unit(benchmark::kMillisecond)->Iterations(1);

}  // namespace

BENCHMARK_MAIN();
