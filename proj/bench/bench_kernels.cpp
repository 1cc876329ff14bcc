// Serial reference against the OpenMP kernels. Run with
//   bench_kernels --benchmark_counters_tabular=true
// and set OMP_NUM_THREADS to vary the thread count.

#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>

#include "qpic/fock_oracle.hpp"
#include "qpic/kernels.hpp"

using namespace qpic;
using namespace qpic::kernels;

namespace {

const GaussianState& state() {
  static const GaussianState s = ideal_squeezed(-2.0, squeeze_for_sigma_x(1.0));
  return s;
}

const DriveSpec& drive() {
  static const DriveSpec d = DriveSpec::linear(1.0, LinearDrive{5.0, 1.0, -1.0, 2.0});
  return d;
}

const fock::FockDensity& density() {
  static const fock::FockDensity rho = fock::squeezed_density({1.0, 0.5}, squeeze_for_sigma_x(1.0), 60);
  return rho;
}

template <auto Fn>
void evolve_batch(benchmark::State& st) {
  const std::vector<double> times = uniform_times(2 * std::numbers::pi, static_cast<int>(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(Fn(state(), drive(), PictureTag::sp, times));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}

template <auto Fn>
void wigner_grid(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const Axis x{-8.0, 16.0 / (n - 1), n};
  for (auto _ : st) benchmark::DoNotOptimize(Fn(state(), x, x));
  st.SetItemsProcessed(st.iterations() * n * n);
}

template <auto Fn>
void characteristic(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const Axis k{-6.0, 12.0 / (n - 1), n};
  for (auto _ : st) benchmark::DoNotOptimize(Fn(density().matrix(), density().dim(), k, k));
  st.SetItemsProcessed(st.iterations() * n * n);
}

template <auto Fn>
void fourier(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const Axis k{-6.0, 12.0 / 127, 128};
  const CharacteristicGrid chi = serial::characteristic_lattice(density().matrix(), density().dim(), k, k);
  const Axis x{-8.0, 16.0 / (n - 1), n};
  for (auto _ : st) benchmark::DoNotOptimize(Fn(chi, x, x));
  st.SetItemsProcessed(st.iterations() * n * n);
}

}  // namespace

BENCHMARK(evolve_batch<serial::evolve_batch>)->Name("evolve_batch/serial")->Arg(4096)->Arg(65536);
BENCHMARK(evolve_batch<omp::evolve_batch>)->Name("evolve_batch/omp")->Arg(4096)->Arg(65536);
BENCHMARK(wigner_grid<serial::gaussian_wigner_grid>)->Name("gaussian_wigner_grid/serial")->Arg(256)->Arg(1024);
BENCHMARK(wigner_grid<omp::gaussian_wigner_grid>)->Name("gaussian_wigner_grid/omp")->Arg(256)->Arg(1024);
BENCHMARK(characteristic<serial::characteristic_lattice>)->Name("characteristic_lattice/serial")->Arg(32)->Arg(64);
BENCHMARK(characteristic<omp::characteristic_lattice>)->Name("characteristic_lattice/omp")->Arg(32)->Arg(64);
BENCHMARK(fourier<serial::fourier_to_wigner>)->Name("fourier_to_wigner/serial")->Arg(64);
BENCHMARK(fourier<omp::fourier_to_wigner>)->Name("fourier_to_wigner/omp")->Arg(64);

BENCHMARK_MAIN();
