#pragma once

#include <array>

#include "probkin/numerics.hpp"

namespace probkin {

/// Probabilities of spin projection +1/2 along x, y and z.
struct ProbTriple {
  double p1 = 0.5;
  double p2 = 0.5;
  double p3 = 0.5;

  double operator[](int axis) const { return axis == 0 ? p1 : axis == 1 ? p2 : p3; }
  double& operator[](int axis) { return axis == 0 ? p1 : axis == 1 ? p2 : p3; }
  Eigen::Vector3d vec() const { return {p1, p2, p3}; }
  static ProbTriple from(const Eigen::Vector3d& v) { return {v(0), v(1), v(2)}; }

  friend bool operator==(const ProbTriple&, const ProbTriple&) = default;
};

using SixVector = Eigen::Matrix<double, 6, 1>;
using SixMatrix = Eigen::Matrix<double, 6, 6>;

/// Affine map (or affine vector field) p -> linear * p + offset on triples.
struct TripleAffine {
  Eigen::Matrix3d linear = Eigen::Matrix3d::Zero();
  Eigen::Vector3d offset = Eigen::Vector3d::Zero();

  Eigen::Vector3d apply(const Eigen::Vector3d& p) const { return linear * p + offset; }
};

/// Affine map (or vector field) on probability 6-vectors.
struct SixAffine {
  SixMatrix matrix = SixMatrix::Zero();
  SixVector offset = SixVector::Zero();

  SixVector apply(const SixVector& v) const { return matrix * v + offset; }
};

ComplexMatrix identity2();
ComplexMatrix sigma_x();
ComplexMatrix sigma_y();
ComplexMatrix sigma_z();
/// [[0,0],[1,0]]: moves population from rho11 (p3 = 1) to rho22.
ComplexMatrix sigma_minus();
/// [[0,1],[0,0]]: moves population from rho22 to rho11 (p3 = 1).
ComplexMatrix sigma_plus();

void check_probabilities(const ProbTriple& p);

/// Hermitian and unit trace within tol::state. Positivity is not checked.
void check_qubit_rho(const ComplexMatrix& rho);

ComplexMatrix probs_to_rho(const ProbTriple& p);
ProbTriple rho_to_probs(const ComplexMatrix& rho);

/// 1/4 - sum (p_i - 1/2)^2. Nonnegative exactly on the quantum ball and
/// zero on pure states.
double quantumness_defect(const ProbTriple& p);
bool is_admissible(const ProbTriple& p, double tolerance = tol::positivity);

/// Projectors onto spin +1/2 along x, y, z.
const std::array<ComplexMatrix, 3>& measurement_basis();

/// Re Tr(rho * effect); both arguments must be valid density matrices.
double born_probability(const ComplexMatrix& rho, const ComplexMatrix& effect);

/// (1/3)(p1, 1-p1, p2, 1-p2, p3, 1-p3).
SixVector to_six_vector(const ProbTriple& p);

/// Inverse of to_six_vector, read from the difference within each pair so
/// that it stays exact on vectors whose pairs sum to 1/3.
ProbTriple from_six_vector(const SixVector& v);

/// P(m, j) = P(m | j) * marginal(j), ordered (+1, -1, +2, -2, +3, -3).
SixVector joint_distribution(const ProbTriple& p, const Eigen::Vector3d& marginal);

/// Lifts an affine map on triples to 6-vector coordinates. `kappa` is 1 for
/// a map between states and 0 for a time derivative. The result satisfies
/// 1^T matrix = kappa 1^T and 1^T offset = 0, so the component sum is
/// conserved for every input, not only for well-formed 6-vectors.
SixAffine lift_to_six(const TripleAffine& a, double kappa);

}  // namespace probkin
