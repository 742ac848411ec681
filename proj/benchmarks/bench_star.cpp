#include <benchmark/benchmark.h>

#include "mgw/lattice.hpp"
#include "mgw/moyal.hpp"

namespace {

using namespace mgw;

struct Operands {
  Lattice lat;
  ThetaStructure th;
  Field f, g;
};

Operands operands(int D, int N) {
  Operands o{Lattice::cube(D, N, 12.0), ThetaStructure::uniform(D, 1.0), {}, {}};
  o.f = lattice::gaussian(o.lat, std::vector<double>(D, 0.15), 0.9, 1.0);
  o.g = lattice::gaussian(o.lat, std::vector<double>(D, -0.1), 0.9, cplx(0.5, 0.5));
  return o;
}

void run(benchmark::State& state, const StarBackend& b) {
  const int D = static_cast<int>(state.range(0));
  const int N = static_cast<int>(state.range(1));
  const Operands o = operands(D, N);
  for (auto _ : state) {
    Field h = moyal::star(o.f, o.g, o.th, b);
    benchmark::DoNotOptimize(h);
  }
  state.SetItemsProcessed(state.iterations() * o.lat.size());
}

void BM_StarSpectral(benchmark::State& s) { run(s, StarBackend::spectral()); }
void BM_StarSeries4(benchmark::State& s) { run(s, StarBackend::series(4)); }
void BM_StarSeries8(benchmark::State& s) { run(s, StarBackend::series(8)); }
void BM_StarKernel4(benchmark::State& s) { run(s, StarBackend::kernel(4)); }

}  // namespace

BENCHMARK(BM_StarSpectral)->Args({2, 16})->Args({2, 32})->Args({2, 64})->Args({2, 128})->Args({4, 16})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StarSeries4)->Args({2, 16})->Args({2, 32})->Args({2, 64})->Args({2, 128})->Args({4, 16})
    ->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StarSeries8)->Args({2, 32})->Args({2, 64})->Unit(benchmark::kMillisecond);
// the kernel backend is guarded above 32 points per axis
BENCHMARK(BM_StarKernel4)->Args({2, 16})->Args({2, 32})->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
