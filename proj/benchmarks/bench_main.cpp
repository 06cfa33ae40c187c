#include <benchmark/benchmark.h>

#include "rank3/geometry.hpp"
#include "rank3/group_action.hpp"
#include "rank3/linalg.hpp"
#include "rank3/perm_module.hpp"
#include "rank3/structure.hpp"

using namespace rank3;

namespace {

SpaceSpec spec_of(const benchmark::State& st) {
  const auto fam = static_cast<Family>(st.range(0));
  return {fam, static_cast<int>(st.range(1))};
}

void BM_EnumeratePoints(benchmark::State& st) {
  const Space sp(spec_of(st));
  for (auto _ : st) benchmark::DoNotOptimize(enumerate_points(sp));
}

void BM_BruteParams(benchmark::State& st) {
  const PointSets ps = enumerate_points(Space(spec_of(st)));
  for (auto _ : st) benchmark::DoNotOptimize(brute_params(ps));
}

void BM_BuildGroup(benchmark::State& st) {
  const Space sp(spec_of(st));
  const PointSets ps = enumerate_points(sp);
  for (auto _ : st) benchmark::DoNotOptimize(build_group(sp, ps, 0));
}

void BM_GraphSubmodule(benchmark::State& st) {
  const SpaceSpec s = spec_of(st);
  const Space sp(s);
  const PointSets ps = enumerate_points(sp);
  const GroupInfo g = build_group(sp, ps, 0);
  const PrimeField f = PrimeField::make(st.range(2));
  const PermModule pm(f, ps, g.perms);
  const long long c = closed_roots(s).c;
  for (auto _ : st) benchmark::DoNotOptimize(pm.graph_submodule(c));
}

void BM_Chop(benchmark::State& st) {
  const Space sp(spec_of(st));
  const PointSets ps = enumerate_points(sp);
  const GroupInfo g = build_group(sp, ps, 0);
  const PrimeField f = PrimeField::make(st.range(2));
  const PermModule pm(f, ps, g.perms);
  for (auto _ : st) benchmark::DoNotOptimize(chop(pm.on_P(), 0));
}

void BM_Lattice(benchmark::State& st) {
  const Space sp(spec_of(st));
  const PointSets ps = enumerate_points(sp);
  const GroupInfo g = build_group(sp, ps, 0);
  const PrimeField f = PrimeField::make(st.range(2));
  const PermModule pm(f, ps, g.perms);
  const StructureAnalyzer sa(pm.on_P(), 0);
  for (auto _ : st) benchmark::DoNotOptimize(sa.lattice());
}

void BM_RankDense(benchmark::State& st) {
  const PrimeField f = PrimeField::make(3);
  const auto n = static_cast<std::size_t>(st.range(0));
  Matrix m(n, n);
  std::uint32_t x = 12345;
  for (auto& e : m.flat()) {
    x = x * 1103515245u + 12345u;
    e = Fe((x >> 16) % 3);
  }
  for (auto _ : st) benchmark::DoNotOptimize(rank(f, m));
}

constexpr int kOP = static_cast<int>(Family::OPlus);
constexpr int kOM = static_cast<int>(Family::OMinus);
constexpr int kU = static_cast<int>(Family::Unitary);

}  // namespace

BENCHMARK(BM_EnumeratePoints)->Args({kOP, 10})->Args({kU, 7})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BruteParams)->Args({kOM, 10})->Args({kU, 7})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_BuildGroup)->Args({kOP, 8})->Args({kU, 5})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_GraphSubmodule)->Args({kU, 5, 5})->Args({kOM, 8, 17})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Chop)->Args({kOP, 8, 3})->Args({kU, 5, 3})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Lattice)->Args({kU, 5, 3})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RankDense)->Arg(256)->Arg(672)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
