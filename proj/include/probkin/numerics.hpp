#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "probkin/error.hpp"

namespace probkin {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using RealMatrix = Eigen::MatrixXd;

namespace tol {
inline constexpr double hermitian = 1e-10;   // Hamiltonians, eigen input
inline constexpr double state = 1e-12;       // density-matrix Hermiticity / trace
inline constexpr double positivity = 1e-10;  // lambda_min >= -positivity is nonnegative
inline constexpr double unitary = 1e-9;
inline constexpr double kraus = 1e-10;
// Slack on [0,1] for probabilities that come out of an evolution step.
inline constexpr double probability = 1e-9;
}  // namespace tol

/// Largest entry magnitude, used for all "max-norm" tolerances.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

void require_square(const ComplexMatrix& a);
void require_finite(const ComplexMatrix& a);
double hermiticity_defect(const ComplexMatrix& a);
bool is_unitary(const ComplexMatrix& u, double tolerance = tol::unitary);

struct EigenDecomposition {
  RealVector values;     // ascending
  ComplexMatrix vectors; // columns, orthonormal
};

/// Spectrum of a Hermitian matrix. Order inside a degenerate cluster is
/// unspecified; compare spectra as multisets.
EigenDecomposition hermitian_eigen(const ComplexMatrix& a);

/// Smallest eigenvalue of a Hermitian matrix.
double min_eigenvalue(const ComplexMatrix& a);

/// exp(a) by scaling and squaring of a Taylor polynomial.
ComplexMatrix mat_exp(const ComplexMatrix& a);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// The 4-vector (rho11, rho12, rho21, rho22, ...): entries in row-major
/// order. kron(u, conj(u)) maps stack(rho) to stack(u rho u^dagger).
Eigen::VectorXcd stack(const ComplexMatrix& a);
ComplexMatrix unstack(const Eigen::VectorXcd& v, Eigen::Index dim);

template <typename State>
struct Trajectory {
  std::vector<double> times;
  std::vector<State> states;

  const State& final_state() const { return states.back(); }
};

/// Step boundaries of a fixed-step march from t0 to t1: t0 + k * step, with
/// the last step shortened to land exactly on t1.
class StepPlan {
 public:
  StepPlan(double t0, double t1, double step);

  long long steps() const { return total_; }
  double time(long long k) const {
    return k >= total_ ? t1_ : t0_ + static_cast<double>(k) * step_;
  }
  /// t0, every `sample_every`-th boundary, and t1.
  std::vector<double> sample_times(int sample_every) const;

 private:
  double t0_, t1_, step_;
  long long total_ = 0;
};

namespace detail {
inline bool all_finite(double v) { return std::isfinite(v); }
template <typename Derived>
bool all_finite(const Eigen::DenseBase<Derived>& v) {
  return v.allFinite();
}
}  // namespace detail

/// Classical fixed-step fourth-order Runge-Kutta from t0 to t1. The last step
/// is shortened to land exactly on t1. The trajectory holds t0, every
/// `sample_every`-th accepted step, and always the final state.
template <typename State>
Trajectory<State> rk4_integrate(const std::function<State(const State&, double)>& rhs,
                                const State& y0, double t0, double t1, double step,
                                int sample_every = 1) {
  if (sample_every < 1) throw Error(Errc::RangeExceeded, "sample_every must be >= 1");

  const StepPlan plan(t0, t1, step);
  auto eval = [&](const State& y, double t) {
    State d = rhs(y, t);
    if (!detail::all_finite(d)) throw Error(Errc::NonFiniteDerivative, "rhs returned NaN/Inf");
    return d;
  };

  Trajectory<State> out;
  out.times.push_back(t0);
  out.states.push_back(y0);
  State y = y0;
  const long long total = plan.steps();
  for (long long k = 0; k < total; ++k) {
    const double t = plan.time(k);
    const double t_next = plan.time(k + 1);
    const double h = t_next - t;
    const State k1 = eval(y, t);
    const State k2 = eval(State(y + (h / 2) * k1), t + h / 2);
    const State k3 = eval(State(y + (h / 2) * k2), t + h / 2);
    const State k4 = eval(State(y + h * k3), t_next);
    y = y + (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if ((k + 1) % sample_every == 0 || k + 1 == total) {
      out.times.push_back(t_next);
      out.states.push_back(y);
    }
  }
  return out;
}

}  // namespace probkin
