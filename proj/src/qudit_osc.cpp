#include "probkin/qudit_osc.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace probkin {

namespace {
void check_unit(double v, const char* what) {
  if (!std::isfinite(v) || v < -tol::probability || v > 1.0 + tol::probability)
    throw Error(Errc::OutOfRangeProbability, std::string(what) + " = " + std::to_string(v) +
                                                 " outside [0,1]");
}

bool outside_unit(double v) { return v < -tol::probability || v > 1.0 + tol::probability; }
}  // namespace

std::size_t QuditProbFamily::pair_index(int dim, int j, int k) {
  if (!(0 <= j && j < k && k < dim))
    throw Error(Errc::RangeExceeded, "pair index requires 0 <= j < k < dim");
  // Pairs before row j: sum_{r<j} (dim - 1 - r).
  const auto row_start = static_cast<std::size_t>(j) * (2 * dim - j - 1) / 2;
  return row_start + static_cast<std::size_t>(k - j - 1);
}

QuditProbFamily QuditProbFamily::centred(int dim, std::vector<double> diag) {
  QuditProbFamily f;
  f.dim = dim;
  f.offdiag.assign(static_cast<std::size_t>(dim) * (dim - 1) / 2, {0.5, 0.5});
  f.diag = std::move(diag);
  return f;
}

std::vector<double> QuditProbFamily::flatten() const {
  std::vector<double> out;
  out.reserve(2 * offdiag.size() + diag.size());
  for (const auto& [p1, p2] : offdiag) {
    out.push_back(p1);
    out.push_back(p2);
  }
  out.insert(out.end(), diag.begin(), diag.end());
  return out;
}

std::vector<std::string> QuditProbFamily::column_names(int dim) {
  std::vector<std::string> names;
  for (int j = 0; j < dim; ++j)
    for (int k = j + 1; k < dim; ++k) {
      const std::string suffix = "_" + std::to_string(j) + "_" + std::to_string(k);
      names.push_back("p1" + suffix);
      names.push_back("p2" + suffix);
    }
  for (int j = 0; j + 1 < dim; ++j) names.push_back("p3_" + std::to_string(j));
  return names;
}

ComplexMatrix qudit_probs_to_rho(const QuditProbFamily& f) {
  const int n = f.dim;
  if (n < 2) throw Error(Errc::WrongDimension, "qudit dimension must be >= 2");
  if (f.offdiag.size() != static_cast<std::size_t>(n) * (n - 1) / 2 ||
      f.diag.size() != static_cast<std::size_t>(n - 1))
    throw Error(Errc::WrongDimension, "family sizes do not match dim");

  ComplexMatrix rho(n, n);
  double diag_sum = 0.0;
  for (int j = 0; j + 1 < n; ++j) {
    check_unit(f.diag[j], "p3");
    rho(j, j) = f.diag[j];
    diag_sum += f.diag[j];
  }
  if (diag_sum > 1.0 + tol::state)
    throw Error(Errc::DiagonalOverflow, "diagonal probabilities sum to " + std::to_string(diag_sum));
  rho(n - 1, n - 1) = 1.0 - diag_sum;

  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      const auto& [p1, p2] = f.pair(j, k);
      check_unit(p1, "p1");
      check_unit(p2, "p2");
      rho(j, k) = cplx{p1 - 0.5, -(p2 - 0.5)};
      rho(k, j) = std::conj(rho(j, k));
    }
  return rho;
}

QuditProbs qudit_rho_to_probs(const ComplexMatrix& rho) {
  if (rho.rows() != rho.cols() || rho.rows() < 2)
    throw Error(Errc::InvalidDensityMatrix, "density matrix must be square with dim >= 2");
  if (!rho.allFinite()) throw Error(Errc::InvalidDensityMatrix, "non-finite entries");
  if (hermiticity_defect(rho) > tol::hermitian)
    throw Error(Errc::InvalidDensityMatrix, "density matrix is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > tol::hermitian)
    throw Error(Errc::InvalidDensityMatrix, "density matrix trace differs from 1");

  const int n = static_cast<int>(rho.rows());
  QuditProbs out;
  out.family.dim = n;
  out.family.offdiag.resize(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int j = 0; j < n; ++j)
    for (int k = j + 1; k < n; ++k) {
      const double p1 = rho(j, k).real() + 0.5;
      const double p2 = -rho(j, k).imag() + 0.5;
      out.family.pair(j, k) = {p1, p2};
      out.out_of_range = out.out_of_range || outside_unit(p1) || outside_unit(p2);
    }
  for (int j = 0; j + 1 < n; ++j) {
    out.family.diag.push_back(rho(j, j).real());
    out.out_of_range = out.out_of_range || outside_unit(rho(j, j).real());
  }
  return out;
}

double qudit_positivity(const ComplexMatrix& rho) { return min_eigenvalue(rho); }

FockDensityMatrix::FockDensityMatrix(ComplexMatrix rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() < 1)
    throw Error(Errc::InvalidDensityMatrix, "Fock density matrix must be square");
  if (!rho_.allFinite()) throw Error(Errc::InvalidDensityMatrix, "non-finite entries");
  if (hermiticity_defect(rho_) > tol::state)
    throw Error(Errc::InvalidDensityMatrix, "Fock density matrix is not Hermitian");
  if (std::abs(rho_.trace() - 1.0) > 1e-10)
    throw Error(Errc::InvalidDensityMatrix, "Fock density matrix trace differs from 1");
  if (min_eigenvalue(rho_) < -1e-8)
    throw Error(Errc::InvalidDensityMatrix, "Fock density matrix has a negative eigenvalue");
}

FockDensityMatrix FockDensityMatrix::pure(const Eigen::VectorXcd& amplitudes, int n_max) {
  if (amplitudes.size() > n_max + 1)
    throw Error(Errc::DimensionMismatch, "more amplitudes than Fock levels");
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(n_max + 1);
  psi.head(amplitudes.size()) = amplitudes;
  return FockDensityMatrix(psi * psi.adjoint());
}

FockDensityMatrix FockDensityMatrix::embed(const ComplexMatrix& rho, int n_max) {
  if (rho.rows() != rho.cols() || rho.rows() > n_max + 1)
    throw Error(Errc::DimensionMismatch, "matrix does not fit in the requested truncation");
  ComplexMatrix big = ComplexMatrix::Zero(n_max + 1, n_max + 1);
  big.topLeftCorner(rho.rows(), rho.cols()) = rho;
  return FockDensityMatrix(std::move(big));
}

double hermite_poly(int n, double x) {
  if (n < 0 || n > kMaxHermiteDegree)
    throw Error(Errc::DegreeTooLarge, "Hermite degree " + std::to_string(n) + " out of range");
  if (n == 0) return 1.0;
  double prev = 1.0, cur = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

RealVector hermite_functions(int n_max, double x) {
  if (n_max < 0 || n_max > kMaxHermiteDegree)
    throw Error(Errc::DegreeTooLarge, "truncation " + std::to_string(n_max) + " out of range");
  RealVector out(n_max + 1);
  const double gauss = -0.5 * x * x - 0.25 * std::log(std::numbers::pi);
  double prev = 0.0, cur = 1.0;  // H_{-1}, H_0
  for (int k = 0; k <= n_max; ++k) {
    if (k > 0) {
      const double next = 2.0 * x * cur - 2.0 * (k - 1) * prev;
      prev = cur;
      cur = next;
    }
    const double log_norm = -0.5 * (std::lgamma(k + 1.0) + k * std::numbers::ln2);
    out(k) = cur * std::exp(gauss + log_norm);
  }
  return out;
}

cplx position_kernel(const FockDensityMatrix& rho, double x, double xp) {
  if (!(std::abs(x) <= kMaxKernelCoordinate && std::abs(xp) <= kMaxKernelCoordinate))
    throw Error(Errc::RangeExceeded, "kernel coordinates must satisfy |x| <= 12");
  const RealVector a = hermite_functions(rho.n_max(), x);
  const RealVector b = hermite_functions(rho.n_max(), xp);
  return a.cast<cplx>().dot(rho.matrix() * b.cast<cplx>());
}

QuditProbs fock_probs(const FockDensityMatrix& rho) {
  if (rho.n_max() < 1) throw Error(Errc::WrongDimension, "fock_probs needs n_max >= 1");
  return qudit_rho_to_probs(rho.matrix());
}

FockDensityMatrix oscillator_evolve(const FockDensityMatrix& rho0, double t) {
  if (!std::isfinite(t)) throw Error(Errc::RangeExceeded, "time must be finite");
  const ComplexMatrix& r0 = rho0.matrix();
  ComplexMatrix r = r0;
  for (Eigen::Index k = 0; k < r.rows(); ++k)
    for (Eigen::Index j = k + 1; j < r.cols(); ++j) {
      const double phase = -static_cast<double>(k - j) * t;
      r(k, j) = r0(k, j) * cplx{std::cos(phase), std::sin(phase)};
      r(j, k) = std::conj(r(k, j));
    }
  return FockDensityMatrix(std::move(r));
}

}  // namespace probkin
