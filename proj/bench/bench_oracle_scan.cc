// Serial vs OpenMP grid scan of the scalar oracle. The range argument is the
// grid half-width; step stays at the default 0.05.

#include <benchmark/benchmark.h>

#include "ncare/examples.h"
#include "ncare/verification.h"

namespace {

using ncare::verify::OracleOptions;

const ncare::verify::ScalarSystem& example1_system() {
  static const auto sys =
      ncare::verify::scalar_system(ncare::builtin_example(1).spec);
  return sys;
}

OracleOptions options(const benchmark::State& state) {
  OracleOptions opt;
  opt.half_width = static_cast<double>(state.range(0));
  return opt;
}

void BM_ScanSerial(benchmark::State& state) {
  const OracleOptions opt = options(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ncare::verify::scan_cells_serial(example1_system(), opt));
  }
  const double side = 2.0 * opt.half_width / opt.step;
  state.counters["cells"] = side * side;
}

void BM_ScanParallel(benchmark::State& state) {
  const OracleOptions opt = options(state);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ncare::verify::scan_cells_parallel(example1_system(), opt));
  }
  const double side = 2.0 * opt.half_width / opt.step;
  state.counters["cells"] = side * side;
}

void BM_OracleFull(benchmark::State& state) {
  const auto spec = ncare::builtin_example(1).spec;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ncare::verify::scalar_oracle(spec));
  }
}

}  // namespace

BENCHMARK(BM_ScanSerial)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanParallel)->Arg(10)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleFull)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
