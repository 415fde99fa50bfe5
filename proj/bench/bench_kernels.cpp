// Reference (naive serial) kernels against the sequential and OpenMP paths.
//
//   bench_kernels --benchmark_filter=Stft

#include <benchmark/benchmark.h>

#include <random>

#include "qgabor/gabor.hpp"
#include "qgabor/kernels.hpp"

using namespace qgabor;

namespace {

CVector random_vector(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  CVector v(n);
  for (int i = 0; i < n; ++i) v(i) = cplx(nd(rng), nd(rng));
  return v;
}

CMatrix random_matrix(int rows, int cols, unsigned seed) {
  CMatrix m(rows, cols);
  for (int j = 0; j < cols; ++j) m.col(j) = random_vector(rows, seed + j);
  return m;
}

void StftReference(benchmark::State& state) {
  const int L = static_cast<int>(state.range(0));
  const CVector f = random_vector(L, 1), g = random_vector(L, 2);
  for (auto _ : state) benchmark::DoNotOptimize(reference::stft_finite(f, g));
}

void StftKernel(benchmark::State& state, Exec exec) {
  const int L = static_cast<int>(state.range(0));
  const CVector f = random_vector(L, 1), g = random_vector(L, 2);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::stft_finite(f, g, exec));
}

void OuterReference(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CMatrix phi = random_matrix(n, 2 * n, 3), psi = random_matrix(n, 2 * n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(reference::outer_sum(phi, psi));
}

void OuterKernel(benchmark::State& state, Exec exec) {
  const int n = static_cast<int>(state.range(0));
  const CMatrix phi = random_matrix(n, 2 * n, 3), psi = random_matrix(n, 2 * n, 4);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::outer_sum(phi, psi, exec));
}

void SymplecticReference(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const CMatrix F = random_matrix(n, n, 5);
  for (auto _ : state) benchmark::DoNotOptimize(reference::symplectic_fourier(F, true, 1.0 / n));
}

void SymplecticKernel(benchmark::State& state, Exec exec) {
  const int n = static_cast<int>(state.range(0));
  const CMatrix F = random_matrix(n, n, 5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::symplectic_fourier(F, true, 1.0 / n, exec));
  }
}

void FrameOperator(benchmark::State& state, Exec exec) {
  const int L = static_cast<int>(state.range(0));
  const FiniteGaborSystem sys = make_gabor_system(random_vector(L, 6), make_finite_lattice(L, 4, 4));
  for (auto _ : state) benchmark::DoNotOptimize(frame_operator_matrix(sys, exec));
}

}  // namespace

BENCHMARK(StftReference)->Arg(32)->Arg(64)->Arg(128);
BENCHMARK_CAPTURE(StftKernel, sequential, Exec::sequential)->Arg(32)->Arg(64)->Arg(128)->Arg(512);
BENCHMARK_CAPTURE(StftKernel, parallel, Exec::parallel)->Arg(32)->Arg(64)->Arg(128)->Arg(512);

BENCHMARK(OuterReference)->Arg(64)->Arg(144);
BENCHMARK_CAPTURE(OuterKernel, sequential, Exec::sequential)->Arg(64)->Arg(144);
BENCHMARK_CAPTURE(OuterKernel, parallel, Exec::parallel)->Arg(64)->Arg(144);

BENCHMARK(SymplecticReference)->Arg(16)->Arg(32);
BENCHMARK_CAPTURE(SymplecticKernel, sequential, Exec::sequential)->Arg(16)->Arg(32)->Arg(256);
BENCHMARK_CAPTURE(SymplecticKernel, parallel, Exec::parallel)->Arg(16)->Arg(32)->Arg(256);

BENCHMARK_CAPTURE(FrameOperator, sequential, Exec::sequential)->Arg(144);
BENCHMARK_CAPTURE(FrameOperator, parallel, Exec::parallel)->Arg(144);

BENCHMARK_MAIN();
