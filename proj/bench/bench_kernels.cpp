#include <benchmark/benchmark.h>

#include <numbers>

#include "quasilattice/diffraction.hpp"
#include "quasilattice/environment.hpp"
#include "quasilattice/structure.hpp"

using namespace ql;

namespace {

const SpinSet& spins() {
  static const SpinSet s = select_spins(patch_covering(Pentagrid::penrose(), 12.0), 12.0);
  return s;
}

CorrelationTable& table() {
  static CorrelationTable t = [] {
    CorrelationTable c(0.7);
    chi_map(spins(), c, Regime::high_temperature, {6.0, {2}});
    return c;
  }();
  return t;
}

const QGrid kGrid{64, -4 * std::numbers::pi, 4 * std::numbers::pi};

void BM_chi_grouped(benchmark::State& st) {
  table();  // memo warm-up stays out of the timing
  for (auto _ : st) benchmark::DoNotOptimize(chi_map(spins(), table(), Regime::high_temperature, {6.0, kGrid}));
}
void BM_chi_naive(benchmark::State& st) {
  table();
  for (auto _ : st) benchmark::DoNotOptimize(chi_map_naive(spins(), table(), Regime::high_temperature, {6.0, kGrid}));
}
void BM_bragg_parallel(benchmark::State& st) {
  const auto p = EllipticParams::make(0.7, Regime::low_temperature);
  for (auto _ : st) benchmark::DoNotOptimize(bragg_map(spins(), p, kGrid));
}
void BM_bragg_serial(benchmark::State& st) {
  const auto p = EllipticParams::make(0.7, Regime::low_temperature);
  for (auto _ : st) benchmark::DoNotOptimize(bragg_map_serial(spins(), p, kGrid));
}
void BM_diffraction_parallel(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(intensity_map({}));
}
void BM_diffraction_serial(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(intensity_map_serial({}));
}
void BM_config_regions(benchmark::State& st) {
  for (auto _ : st) benchmark::DoNotOptimize(config_regions(static_cast<int>(st.range(0))));
}

}  // namespace

BENCHMARK(BM_chi_grouped)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_chi_naive)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_bragg_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_bragg_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_diffraction_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_diffraction_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_config_regions)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
