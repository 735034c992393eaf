// Serial reference vs OpenMP kernels.

#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "probkin/kernels.hpp"

using namespace probkin;

namespace {

FockDensityMatrix random_fock(int n_max, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  ComplexMatrix a(n_max + 1, n_max + 1);
  for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = cplx{g(rng), g(rng)};
  ComplexMatrix rho = a * a.adjoint();
  rho /= rho.trace();
  return FockDensityMatrix(0.5 * (rho + rho.adjoint()));
}

std::vector<double> grid(int n) {
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) xs[i] = -6.0 + 12.0 * i / (n - 1);
  return xs;
}

std::vector<ProbTriple> initial_states(int n) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.3, 0.7);
  std::vector<ProbTriple> out(n);
  for (auto& p : out) p = {u(rng), u(rng), u(rng)};
  return out;
}

Hamiltonian test_hamiltonian() {
  ComplexMatrix h(2, 2);
  h << 0.3, cplx{0.2, -0.4}, cplx{0.2, 0.4}, -0.1;
  return Hamiltonian(h);
}

void BM_KernelGridSerial(benchmark::State& state) {
  const auto rho = random_fock(16, 1);
  const auto xs = grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::position_kernel_grid(rho, xs, xs));
}
void BM_KernelGridOmp(benchmark::State& state) {
  const auto rho = random_fock(16, 1);
  const auto xs = grid(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(kernels::position_kernel_grid(rho, xs, xs));
}

void BM_DiagonalIntegralSerial(benchmark::State& state) {
  const auto rho = random_fock(12, 2);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::serial::diagonal_integral(rho, -10, 10, 2001));
}
void BM_DiagonalIntegralOmp(benchmark::State& state) {
  const auto rho = random_fock(12, 2);
  for (auto _ : state) benchmark::DoNotOptimize(kernels::diagonal_integral(rho, -10, 10, 2001));
}

void BM_KineticBatchSerial(benchmark::State& state) {
  const auto p0 = initial_states(static_cast<int>(state.range(0)));
  const auto h = test_hamiltonian();
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::serial::propagate_kinetic_batch(h, p0, 1.0, 1e-3, 100));
}
void BM_KineticBatchOmp(benchmark::State& state) {
  const auto p0 = initial_states(static_cast<int>(state.range(0)));
  const auto h = test_hamiltonian();
  for (auto _ : state)
    benchmark::DoNotOptimize(kernels::propagate_kinetic_batch(h, p0, 1.0, 1e-3, 100));
}

}  // namespace

BENCHMARK(BM_KernelGridSerial)->Arg(64)->Arg(256);
BENCHMARK(BM_KernelGridOmp)->Arg(64)->Arg(256);
BENCHMARK(BM_DiagonalIntegralSerial);
BENCHMARK(BM_DiagonalIntegralOmp);
BENCHMARK(BM_KineticBatchSerial)->Arg(16)->Arg(64);
BENCHMARK(BM_KineticBatchOmp)->Arg(16)->Arg(64);

BENCHMARK_MAIN();
