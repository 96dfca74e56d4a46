#include <benchmark/benchmark.h>

#include "conehull/arrangement.hpp"
#include "conehull/densities.hpp"
#include "conehull/profiles.hpp"
#include "conehull/samplers.hpp"
#include "conehull/stats.hpp"
#include "conehull/tessellation.hpp"

using namespace conehull;

static void BM_Philox(benchmark::State& state) {
  RngStream rng(1, 2);
  for (auto _ : state) benchmark::DoNotOptimize(rng.next_u64());
}
BENCHMARK(BM_Philox);

static void BM_EnumerateCones(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  RngStream rng(3, 4);
  std::vector<Vec> normals;
  for (int i = 0; i < n; ++i) normals.push_back(sample_uniform_sphere(2, rng).coords());
  const HyperplaneSet hs = make_hyperplanes(normals);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_cones(hs).size());
  state.counters["cells"] = static_cast<double>(schlaefli_count(n, 3));
}
BENCHMARK(BM_EnumerateCones)->Arg(10)->Arg(32)->Arg(64);

static void BM_CauchyHull(benchmark::State& state) {
  RngStream rng(5, 6);
  std::vector<Vec> pts;
  for (long i = 0; i < state.range(0); ++i) pts.push_back(sample_cauchy_point(2, rng));
  for (auto _ : state) benchmark::DoNotOptimize(Polytope::hull_of(pts, 2).num_vertices());
}
BENCHMARK(BM_CauchyHull)->Arg(1000)->Arg(10000);

static void BM_PnStar(benchmark::State& state) {
  RngStream rng(7, 8);
  for (auto _ : state) benchmark::DoNotOptimize(sample_Pn_star(static_cast<int>(state.range(0)), 2, rng).attempts);
}
BENCHMARK(BM_PnStar)->Arg(100)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_QnStar(benchmark::State& state) {
  RngStream rng(9, 10);
  for (auto _ : state) benchmark::DoNotOptimize(sample_Qn_star(static_cast<int>(state.range(0)), 2, rng).attempts);
}
BENCHMARK(BM_QnStar)->Arg(16)->Arg(256);

static void BM_ZeroCell(benchmark::State& state) {
  RngStream rng(11, 12);
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_zero_cell(d, intensity_gamma(d), rng).num_vertices());
}
BENCHMARK(BM_ZeroCell)->Arg(2)->Arg(3);

static void BM_PoissonPi(benchmark::State& state) {
  RngStream rng(13, 14);
  for (auto _ : state) benchmark::DoNotOptimize(sample_poisson_Pi(2, rng).size());
}
BENCHMARK(BM_PoissonPi);

static void BM_PhiN(benchmark::State& state) {
  RngStream rng(15, 16);
  const CoordinateRep x = coordinate_representation(Polytope::hull_of(sample_poisson_Pi(static_cast<int>(state.range(0)), rng),
                                                                      static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(eval_phi_n(x, 10000).log_value);
}
BENCHMARK(BM_PhiN)->Arg(2)->Arg(3);

static void BM_EnergyTest(benchmark::State& state) {
  RngStream rng(17, 18);
  std::vector<std::vector<double>> a, b;
  for (long i = 0; i < state.range(0); ++i) {
    a.push_back({rng.normal(), rng.normal(), rng.normal(), rng.normal()});
    b.push_back({rng.normal(), rng.normal(), rng.normal(), rng.normal()});
  }
  for (auto _ : state) benchmark::DoNotOptimize(energy_test(a, b, 19, rng).p_value);
}
BENCHMARK(BM_EnergyTest)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
