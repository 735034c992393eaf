#include "probkin/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace probkin {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::NotSquare: return "NotSquare";
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::NonFiniteEntry: return "NonFiniteEntry";
    case Errc::NonFiniteDerivative: return "NonFiniteDerivative";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::WrongDimension: return "WrongDimension";
    case Errc::OutOfRangeProbability: return "OutOfRangeProbability";
    case Errc::InvalidDensityMatrix: return "InvalidDensityMatrix";
    case Errc::InvalidMarginal: return "InvalidMarginal";
    case Errc::NonAdmissibleState: return "NonAdmissibleState";
    case Errc::NotUnitary: return "NotUnitary";
    case Errc::EmptySet: return "EmptySet";
    case Errc::InvalidKrausSet: return "InvalidKrausSet";
    case Errc::WeightsNotNormalized: return "WeightsNotNormalized";
    case Errc::DiagonalOverflow: return "DiagonalOverflow";
    case Errc::DegreeTooLarge: return "DegreeTooLarge";
    case Errc::RangeExceeded: return "RangeExceeded";
    case Errc::SchemaError: return "SchemaError";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

void require_square(const ComplexMatrix& a) {
  if (a.rows() != a.cols() || a.rows() == 0)
    throw Error(Errc::NotSquare, "expected a nonempty square matrix, got " +
                                     std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
}

void require_finite(const ComplexMatrix& a) {
  if (!a.allFinite()) throw Error(Errc::NonFiniteEntry, "matrix has NaN/Inf entries");
}

double hermiticity_defect(const ComplexMatrix& a) { return max_abs(a - a.adjoint()); }

bool is_unitary(const ComplexMatrix& u, double tolerance) {
  if (u.rows() != u.cols()) return false;
  return max_abs(u * u.adjoint() - ComplexMatrix::Identity(u.rows(), u.cols())) <= tolerance;
}

EigenDecomposition hermitian_eigen(const ComplexMatrix& a) {
  require_square(a);
  require_finite(a);
  if (hermiticity_defect(a) > tol::hermitian)
    throw Error(Errc::NotHermitian, "hermitian_eigen input deviates from its adjoint");
  // Symmetrize so the solver sees an exactly Hermitian matrix.
  const ComplexMatrix sym = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym);
  if (solver.info() != Eigen::Success)
    throw Error(Errc::NonFiniteEntry, "eigen solver failed to converge");
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double min_eigenvalue(const ComplexMatrix& a) { return hermitian_eigen(a).values(0); }

ComplexMatrix mat_exp(const ComplexMatrix& a) {
  require_square(a);
  require_finite(a);
  const Eigen::Index n = a.rows();
  // Scale so that the 1-norm is at most 1/2, where a degree-24 Taylor
  // polynomial is accurate to machine precision, then square back.
  const double norm1 = a.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm1 > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm1 / 0.5)));
  const ComplexMatrix scaled = a / std::ldexp(1.0, squarings);

  ComplexMatrix result = ComplexMatrix::Identity(n, n);
  ComplexMatrix term = ComplexMatrix::Identity(n, n);
  for (int k = 1; k <= 24; ++k) {
    term = (term * scaled) / static_cast<double>(k);
    result += term;
    if (max_abs(term) <= 1e-18 * std::max(1.0, max_abs(result))) break;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

StepPlan::StepPlan(double t0, double t1, double step) : t0_(t0), t1_(t1), step_(step) {
  if (!(step > 0.0) || !std::isfinite(step))
    throw Error(Errc::RangeExceeded, "step must be positive and finite");
  if (!std::isfinite(t0) || !std::isfinite(t1) || !(t1 >= t0))
    throw Error(Errc::RangeExceeded, "time span must be finite with t1 >= t0");
  const double ratio = (t1 - t0) / step;
  auto full = static_cast<long long>(std::floor(ratio));
  if (std::abs(ratio - std::round(ratio)) < 1e-9) full = std::llround(ratio);
  const double reached = t0 + static_cast<double>(full) * step;
  total_ = full + ((t1 - reached) > 1e-12 * step ? 1 : 0);
}

std::vector<double> StepPlan::sample_times(int sample_every) const {
  if (sample_every < 1) throw Error(Errc::RangeExceeded, "sample_every must be >= 1");
  std::vector<double> times{t0_};
  for (long long k = 1; k <= total_; ++k)
    if (k % sample_every == 0 || k == total_) times.push_back(time(k));
  return times;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Eigen::VectorXcd stack(const ComplexMatrix& a) {
  Eigen::VectorXcd v(a.size());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) v(i * a.cols() + j) = a(i, j);
  return v;
}

ComplexMatrix unstack(const Eigen::VectorXcd& v, Eigen::Index dim) {
  if (v.size() != dim * dim)
    throw Error(Errc::DimensionMismatch, "stacked vector length does not match dim^2");
  ComplexMatrix a(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = v(i * dim + j);
  return a;
}

}  // namespace probkin
