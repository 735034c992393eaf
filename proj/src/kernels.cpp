#include "probkin/kernels.hpp"

#include <exception>
#include <mutex>

#include <omp.h>

namespace probkin::kernels {

namespace {
void check_simpson(double lo, double hi, int nodes) {
  if (nodes < 3 || nodes % 2 == 0)
    throw Error(Errc::RangeExceeded, "Simpson rule needs an odd node count >= 3");
  if (!(hi > lo)) throw Error(Errc::RangeExceeded, "integration interval is empty");
}

double simpson_weight(int i, int nodes) {
  if (i == 0 || i == nodes - 1) return 1.0;
  return i % 2 == 1 ? 4.0 : 2.0;
}

// OpenMP regions cannot propagate exceptions; capture the first one and
// rethrow after the loop.
class FirstError {
 public:
  template <typename F>
  void run(F&& f) {
    try {
      f();
    } catch (...) {
      std::lock_guard lock(mu_);
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::mutex mu_;
  std::exception_ptr error_;
};

void check_coordinates(std::span<const double> xs) {
  for (double x : xs)
    if (!(std::abs(x) <= kMaxKernelCoordinate))
      throw Error(Errc::RangeExceeded, "kernel coordinates must satisfy |x| <= 12");
}
}  // namespace

int max_threads() { return omp_get_max_threads(); }

ComplexMatrix position_kernel_grid(const FockDensityMatrix& rho, std::span<const double> xs,
                                   std::span<const double> xps) {
  check_coordinates(xs);
  check_coordinates(xps);
  const int n = rho.n_max() + 1;
  const auto nx = static_cast<Eigen::Index>(xs.size());
  const auto nxp = static_cast<Eigen::Index>(xps.size());
  ComplexMatrix basis_x(n, nx), basis_xp(n, nxp);

#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < nx; ++i) basis_x.col(i) = hermite_functions(n - 1, xs[i]).cast<cplx>();
#pragma omp parallel for schedule(static)
  for (Eigen::Index j = 0; j < nxp; ++j)
    basis_xp.col(j) = hermite_functions(n - 1, xps[j]).cast<cplx>();

  const ComplexMatrix right = rho.matrix() * basis_xp;
  ComplexMatrix out(nx, nxp);
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < nx; ++i) out.row(i) = basis_x.col(i).transpose() * right;
  return out;
}

double diagonal_integral(const FockDensityMatrix& rho, double lo, double hi, int nodes) {
  check_simpson(lo, hi, nodes);
  const double h = (hi - lo) / (nodes - 1);
  const ComplexMatrix& m = rho.matrix();
  FirstError err;
  double sum = 0.0;
#pragma omp parallel for reduction(+ : sum) schedule(static)
  for (int i = 0; i < nodes; ++i) {
    err.run([&] {
      const double x = lo + i * h;
      const RealVector phi = hermite_functions(rho.n_max(), x);
      const double value = phi.cast<cplx>().dot(m * phi.cast<cplx>()).real();
      sum += simpson_weight(i, nodes) * value;
    });
  }
  err.rethrow();
  return sum * h / 3.0;
}

std::vector<Trajectory<SixVector>> propagate_kinetic_batch(const Hamiltonian& h,
                                                           std::span<const ProbTriple> p0,
                                                           double t, double step,
                                                           int sample_every) {
  const KineticGenerator g = kinetic_generator(h);
  std::vector<Trajectory<SixVector>> out(p0.size());
  FirstError err;
#pragma omp parallel for schedule(dynamic)
  for (std::size_t i = 0; i < p0.size(); ++i)
    err.run([&] { out[i] = integrate_kinetic(g, p0[i], t, step, sample_every); });
  err.rethrow();
  return out;
}

std::vector<ProbTriple> propagate_unitary_batch(const Hamiltonian& h,
                                                std::span<const ProbTriple> p0, double t) {
  std::vector<ProbTriple> out(p0.size());
  FirstError err;
#pragma omp parallel for schedule(static)
  for (std::size_t i = 0; i < p0.size(); ++i)
    err.run([&] { out[i] = propagate_unitary(h, p0[i], t); });
  err.rethrow();
  return out;
}

namespace serial {

ComplexMatrix position_kernel_grid(const FockDensityMatrix& rho, std::span<const double> xs,
                                   std::span<const double> xps) {
  ComplexMatrix out(static_cast<Eigen::Index>(xs.size()), static_cast<Eigen::Index>(xps.size()));
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < xps.size(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          position_kernel(rho, xs[i], xps[j]);
  return out;
}

double diagonal_integral(const FockDensityMatrix& rho, double lo, double hi, int nodes) {
  check_simpson(lo, hi, nodes);
  const double h = (hi - lo) / (nodes - 1);
  double sum = 0.0;
  for (int i = 0; i < nodes; ++i) {
    const double x = lo + i * h;
    sum += simpson_weight(i, nodes) * position_kernel(rho, x, x).real();
  }
  return sum * h / 3.0;
}

std::vector<Trajectory<SixVector>> propagate_kinetic_batch(const Hamiltonian& h,
                                                           std::span<const ProbTriple> p0,
                                                           double t, double step,
                                                           int sample_every) {
  std::vector<Trajectory<SixVector>> out;
  out.reserve(p0.size());
  for (const ProbTriple& p : p0) out.push_back(propagate_kinetic(h, p, t, step, sample_every));
  return out;
}

std::vector<ProbTriple> propagate_unitary_batch(const Hamiltonian& h,
                                                std::span<const ProbTriple> p0, double t) {
  std::vector<ProbTriple> out;
  out.reserve(p0.size());
  for (const ProbTriple& p : p0) out.push_back(propagate_unitary(h, p, t));
  return out;
}

}  // namespace serial

}  // namespace probkin::kernels
