#pragma once

#include <span>
#include <vector>

#include "probkin/dynamics.hpp"
#include "probkin/qudit_osc.hpp"

// Data-parallel sweeps. The top-level functions use OpenMP; the `serial`
// namespace keeps straightforward one-item-at-a-time versions that the tests
// compare against and the benchmark times.
namespace probkin::kernels {

/// out(i, j) = rho(xs[i], xps[j]).
ComplexMatrix position_kernel_grid(const FockDensityMatrix& rho, std::span<const double> xs,
                                   std::span<const double> xps);

/// Composite Simpson rule for the integral of rho(x, x) over [lo, hi];
/// `nodes` must be odd and >= 3.
double diagonal_integral(const FockDensityMatrix& rho, double lo, double hi, int nodes);

/// One independent kinetic trajectory per initial triple.
std::vector<Trajectory<SixVector>> propagate_kinetic_batch(const Hamiltonian& h,
                                                           std::span<const ProbTriple> p0,
                                                           double t, double step,
                                                           int sample_every = 1);

std::vector<ProbTriple> propagate_unitary_batch(const Hamiltonian& h,
                                                std::span<const ProbTriple> p0, double t);

int max_threads();

namespace serial {
ComplexMatrix position_kernel_grid(const FockDensityMatrix& rho, std::span<const double> xs,
                                   std::span<const double> xps);
double diagonal_integral(const FockDensityMatrix& rho, double lo, double hi, int nodes);
std::vector<Trajectory<SixVector>> propagate_kinetic_batch(const Hamiltonian& h,
                                                           std::span<const ProbTriple> p0,
                                                           double t, double step,
                                                           int sample_every = 1);
std::vector<ProbTriple> propagate_unitary_batch(const Hamiltonian& h,
                                                std::span<const ProbTriple> p0, double t);
}  // namespace serial

}  // namespace probkin::kernels
