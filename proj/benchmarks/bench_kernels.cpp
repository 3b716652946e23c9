#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "abscat/amplitude.hpp"
#include "abscat/oracle.hpp"
#include "abscat/phase_shift.hpp"
#include "abscat/special_fn.hpp"

using namespace abscat;

static void BM_BesselQuad(benchmark::State& state) {
  const double nu = static_cast<double>(state.range(0)) / 4.0;
  const double x = static_cast<double>(state.range(1)) / 4.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel_quad(nu, x));
  }
}
BENCHMARK(BM_BesselQuad)
    ->Args({2, 1})      // Temme region
    ->Args({7, 20})     // Steed region
    ->Args({2, 400})    // Hankel asymptotics
    ->Args({120, 40});  // order above argument

static void BM_SMatrix(benchmark::State& state) {
  const SectorParams s(1, 0.5, 1.0, BoundaryCondition::robin(1.0));
  const double k = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(s_matrix(s, k));
  }
}
BENCHMARK(BM_SMatrix)->Arg(1)->Arg(15)->Arg(300);

static void BM_RadiusCorrection(benchmark::State& state) {
  const double k = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        RadiusCorrection::build(k, 0.5, 1.0, BoundaryCondition::robin(0.1), 1e-10));
  }
}
BENCHMARK(BM_RadiusCorrection)->Arg(1)->Arg(30)->Arg(200);

static void BM_CrossSectionSweep(benchmark::State& state) {
  std::vector<double> ks(static_cast<std::size_t>(state.range(0)));
  for (std::size_t i = 0; i < ks.size(); ++i) {
    ks[i] = 0.05 * std::pow(400.0, static_cast<double>(i) / (ks.size() - 1));
  }
  std::vector<double> thetas(64);
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    thetas[i] = 0.01 + (std::numbers::pi - 0.01) * i / (thetas.size() - 1);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(cross_section_table(
        ks, thetas, 0.5, 1.0, BoundaryCondition::robin(1.0), 1e-8, 1));
  }
  state.SetItemsProcessed(state.iterations() * ks.size() * thetas.size());
}
BENCHMARK(BM_CrossSectionSweep)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_RadialOde(benchmark::State& state) {
  const SectorParams s(2, 0.3, 1.0, BoundaryCondition::robin(1.0));
  const double k = static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ode_phase_shift(s, k));
  }
}
BENCHMARK(BM_RadialOde)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
