#include <benchmark/benchmark.h>

#include "cremona/geometry/orbits.hpp"
#include "cremona/lattice/classes.hpp"
#include "cremona/links/link.hpp"
#include "cremona/prover/contrast.hpp"
#include "cremona/prover/prover.hpp"

using namespace cremona;

static void BM_TorusOrbits(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_orbits(ModelId::X_torus, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_TorusOrbits)->Arg(3)->Arg(5);

static void BM_QuadricOrbits(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_orbits(ModelId::X2_quadric, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_QuadricOrbits)->Arg(3)->Arg(5);

// Degree 1 surface: 240 (-1)-classes.
static void BM_MinusOneClassesDegreeOne(benchmark::State& state) {
  const auto l = blow_up_coset_space(quadric_lattice(), generated_by({GroupElem::tau()}), "F").lattice;
  for (auto _ : state) benchmark::DoNotOptimize(minus_one_classes(l));
}
BENCHMARK(BM_MinusOneClassesDegreeOne);

static void BM_OracleFormula(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(oracle_formula(LinkKind::PHI_8_6, 6));
}
BENCHMARK(BM_OracleFormula);

static void BM_CaseTree(benchmark::State& state) {
  const auto table = default_link_table();
  for (auto _ : state) benchmark::DoNotOptimize(build_case_tree(table));
}
BENCHMARK(BM_CaseTree)->Unit(benchmark::kMillisecond);

static void BM_S3Contrast(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(s3_contrast(42, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_S3Contrast)->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
