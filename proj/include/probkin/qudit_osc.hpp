#pragma once

#include <array>
#include <string>
#include <vector>

#include "probkin/numerics.hpp"

namespace probkin {

/// Probability parametrization of an N x N density matrix. Indices are
/// 0-based: `offdiag` holds (p1, p2) for every pair j < k in row-major order
/// (0,1), (0,2), ..., (1,2), ...; `diag` holds p3 for j = 0 .. N-2. The last
/// diagonal element is fixed by the trace.
struct QuditProbFamily {
  int dim = 2;
  std::vector<std::array<double, 2>> offdiag;
  std::vector<double> diag;

  static std::size_t pair_index(int dim, int j, int k);
  const std::array<double, 2>& pair(int j, int k) const { return offdiag[pair_index(dim, j, k)]; }
  std::array<double, 2>& pair(int j, int k) { return offdiag[pair_index(dim, j, k)]; }

  /// Every off-diagonal pair at (1/2, 1/2) and the given diagonal.
  static QuditProbFamily centred(int dim, std::vector<double> diag);

  /// offdiag pairs flattened as p1, p2, then the diagonal.
  std::vector<double> flatten() const;
  /// Column names matching flatten(), e.g. p1_0_1, p2_0_1, ..., p3_0.
  static std::vector<std::string> column_names(int dim);
};

struct QuditProbs {
  QuditProbFamily family;
  /// Set when some element maps outside [0,1], which happens for Hermitian
  /// unit-trace inputs that are not positive.
  bool out_of_range = false;
};

ComplexMatrix qudit_probs_to_rho(const QuditProbFamily& f);
QuditProbs qudit_rho_to_probs(const ComplexMatrix& rho);

/// Smallest eigenvalue; nonnegative (within tol::positivity) for states.
double qudit_positivity(const ComplexMatrix& rho);

/// Truncated oscillator state in the Fock basis, indices 0 .. n_max.
class FockDensityMatrix {
 public:
  explicit FockDensityMatrix(ComplexMatrix rho);

  /// |psi><psi| for normalized amplitudes, zero-padded to n_max.
  static FockDensityMatrix pure(const Eigen::VectorXcd& amplitudes, int n_max);
  /// Zero-pads `rho` to dimension n_max + 1.
  static FockDensityMatrix embed(const ComplexMatrix& rho, int n_max);

  const ComplexMatrix& matrix() const { return rho_; }
  int n_max() const { return static_cast<int>(rho_.rows()) - 1; }

 private:
  ComplexMatrix rho_;
};

inline constexpr int kMaxHermiteDegree = 200;
inline constexpr double kMaxKernelCoordinate = 12.0;

/// Physicists' Hermite polynomial H_n(x) by the three-term recurrence.
double hermite_poly(int n, double x);

/// <x|k> for k = 0 .. n_max, i.e. pi^{-1/4} (2^k k!)^{-1/2} H_k(x) e^{-x^2/2}.
/// The normalization is evaluated in log space.
RealVector hermite_functions(int n_max, double x);

/// rho(x, x') = sum_{k,j} <x|k> rho_kj <j|x'>.
cplx position_kernel(const FockDensityMatrix& rho, double x, double xp);

QuditProbs fock_probs(const FockDensityMatrix& rho);

/// Free evolution with H = n + 1/2: rho_kj(t) = exp(-i (k - j) t) rho_kj(0).
FockDensityMatrix oscillator_evolve(const FockDensityMatrix& rho0, double t);

}  // namespace probkin
