#include "probkin/qubit_map.hpp"

#include <cmath>
#include <string>

namespace probkin {

namespace {
constexpr cplx I{0.0, 1.0};

ComplexMatrix mat2(cplx a, cplx b, cplx c, cplx d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}
}  // namespace

ComplexMatrix identity2() { return ComplexMatrix::Identity(2, 2); }
ComplexMatrix sigma_x() { return mat2(0.0, 1.0, 1.0, 0.0); }
ComplexMatrix sigma_y() { return mat2(0.0, -I, I, 0.0); }
ComplexMatrix sigma_z() { return mat2(1.0, 0.0, 0.0, -1.0); }
ComplexMatrix sigma_minus() { return mat2(0.0, 0.0, 1.0, 0.0); }
ComplexMatrix sigma_plus() { return mat2(0.0, 1.0, 0.0, 0.0); }

void check_probabilities(const ProbTriple& p) {
  for (int a = 0; a < 3; ++a) {
    const double v = p[a];
    if (!std::isfinite(v) || v < -tol::probability || v > 1.0 + tol::probability)
      throw Error(Errc::OutOfRangeProbability,
                  "p" + std::to_string(a + 1) + " = " + std::to_string(v) + " outside [0,1]");
  }
}

void check_qubit_rho(const ComplexMatrix& rho) {
  if (rho.rows() != 2 || rho.cols() != 2)
    throw Error(Errc::InvalidDensityMatrix, "qubit density matrix must be 2x2");
  if (!rho.allFinite()) throw Error(Errc::InvalidDensityMatrix, "non-finite entries");
  if (hermiticity_defect(rho) > tol::state)
    throw Error(Errc::InvalidDensityMatrix, "density matrix is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > tol::state)
    throw Error(Errc::InvalidDensityMatrix, "density matrix trace differs from 1");
}

ComplexMatrix probs_to_rho(const ProbTriple& p) {
  check_probabilities(p);
  const cplx off{p.p1 - 0.5, -(p.p2 - 0.5)};
  return mat2(p.p3, off, std::conj(off), 1.0 - p.p3);
}

ProbTriple rho_to_probs(const ComplexMatrix& rho) {
  check_qubit_rho(rho);
  return {rho(0, 1).real() + 0.5, -rho(0, 1).imag() + 0.5, rho(0, 0).real()};
}

double quantumness_defect(const ProbTriple& p) {
  check_probabilities(p);
  const double x = p.p1 - 0.5, y = p.p2 - 0.5, z = p.p3 - 0.5;
  return 0.25 - (x * x + y * y + z * z);
}

bool is_admissible(const ProbTriple& p, double tolerance) {
  return quantumness_defect(p) >= -tolerance;
}

const std::array<ComplexMatrix, 3>& measurement_basis() {
  static const std::array<ComplexMatrix, 3> basis{
      mat2(0.5, 0.5, 0.5, 0.5),
      mat2(0.5, -0.5 * I, 0.5 * I, 0.5),
      mat2(1.0, 0.0, 0.0, 0.0),
  };
  return basis;
}

double born_probability(const ComplexMatrix& rho, const ComplexMatrix& effect) {
  for (const ComplexMatrix* m : {&rho, &effect}) {
    check_qubit_rho(*m);
    if (min_eigenvalue(*m) < -tol::positivity)
      throw Error(Errc::InvalidDensityMatrix, "density matrix has a negative eigenvalue");
  }
  return (rho * effect).trace().real();
}

SixVector to_six_vector(const ProbTriple& p) {
  check_probabilities(p);
  SixVector v;
  v << p.p1, 1.0 - p.p1, p.p2, 1.0 - p.p2, p.p3, 1.0 - p.p3;
  return v / 3.0;
}

ProbTriple from_six_vector(const SixVector& v) {
  ProbTriple p;
  for (int a = 0; a < 3; ++a) p[a] = 0.5 + 1.5 * (v(2 * a) - v(2 * a + 1));
  return p;
}

SixVector joint_distribution(const ProbTriple& p, const Eigen::Vector3d& marginal) {
  check_probabilities(p);
  if (!marginal.allFinite() || marginal.minCoeff() < 0.0 ||
      std::abs(marginal.sum() - 1.0) > tol::state)
    throw Error(Errc::InvalidMarginal, "marginal must be a probability distribution");
  SixVector v;
  for (int j = 0; j < 3; ++j) {
    v(2 * j) = p[j] * marginal(j);
    v(2 * j + 1) = (1.0 - p[j]) * marginal(j);
  }
  return v;
}

SixAffine lift_to_six(const TripleAffine& a, double kappa) {
  // Even rows carry p_a / 3 and read the even inputs; odd rows carry
  // (kappa - p_a) / 3 and read the odd inputs (1 - p_b) / 3.
  SixAffine out;
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      out.matrix(2 * r, 2 * c) = a.linear(r, c);
      out.matrix(2 * r + 1, 2 * c + 1) = a.linear(r, c);
    }
    out.offset(2 * r) = a.offset(r) / 3.0;
    out.offset(2 * r + 1) = (kappa - a.offset(r) - a.linear.row(r).sum()) / 3.0;
  }
  // Columns 2c and 2c+1 only ever see inputs whose sum is 1/3, so adding
  // delta/2 to the whole 2x2 block and removing delta/6 from the offset is
  // invisible on 6-vectors but fixes the column sums to kappa.
  for (int c = 0; c < 3; ++c) {
    const double delta = kappa - a.linear.col(c).sum();
    out.matrix.block<2, 2>(2 * c, 2 * c).array() += delta / 2.0;
    out.offset.segment<2>(2 * c).array() -= delta / 6.0;
  }
  return out;
}

}  // namespace probkin
