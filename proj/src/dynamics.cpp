#include "probkin/dynamics.hpp"

#include <string>

namespace probkin {

namespace {
constexpr cplx I{0.0, 1.0};

void require_admissible(const ProbTriple& p) {
  const double defect = quantumness_defect(p);
  if (defect < -tol::positivity)
    throw Error(Errc::NonAdmissibleState,
                "initial triple lies outside the quantum ball (quantumness_defect = " +
                    std::to_string(defect) + ")");
}

void require_same_dim(const Hamiltonian& h, const ComplexMatrix& rho) {
  if (rho.rows() != h.dim() || rho.cols() != h.dim())
    throw Error(Errc::DimensionMismatch, "density matrix and Hamiltonian dimensions differ");
}

// Derivative of a qubit density matrix expressed on triples.
Eigen::Vector3d triple_rate(const ComplexMatrix& drho) {
  return {drho(0, 1).real(), -drho(0, 1).imag(), drho(0, 0).real()};
}
}  // namespace

Hamiltonian::Hamiltonian(ComplexMatrix m) : m_(std::move(m)) {
  require_square(m_);
  require_finite(m_);
  if (hermiticity_defect(m_) > tol::hermitian)
    throw Error(Errc::NotHermitian, "Hamiltonian is not Hermitian");
}

Hamiltonian operator+(const Hamiltonian& a, const Hamiltonian& b) {
  if (a.dim() != b.dim()) throw Error(Errc::DimensionMismatch, "Hamiltonian dimensions differ");
  return Hamiltonian(a.m_ + b.m_);
}

ComplexMatrix von_neumann_rhs(const Hamiltonian& h, const ComplexMatrix& rho) {
  require_same_dim(h, rho);
  const ComplexMatrix& H = h.matrix();
  return -I * (H * rho - rho * H);
}

ComplexMatrix gksl_rhs(const Hamiltonian& h, const LindbladSet& ls, const ComplexMatrix& rho) {
  ComplexMatrix out = von_neumann_rhs(h, rho);
  for (const ComplexMatrix& L : ls) {
    if (L.rows() != h.dim() || L.cols() != h.dim())
      throw Error(Errc::DimensionMismatch, "jump operator dimension differs from Hamiltonian");
    if (!L.allFinite()) throw Error(Errc::NonFiniteEntry, "jump operator has NaN/Inf entries");
    const ComplexMatrix LdL = L.adjoint() * L;
    out += L * rho * L.adjoint() - 0.5 * (LdL * rho + rho * LdL);
  }
  return out;
}

KineticGenerator kinetic_generator(const Hamiltonian& h) {
  if (h.dim() != 2) throw Error(Errc::WrongDimension, "kinetic_generator needs a 2x2 Hamiltonian");
  const ComplexMatrix& H = h.matrix();
  const Eigen::Vector3d b{H(0, 1).real(), -H(0, 1).imag(), 0.5 * (H(0, 0) - H(1, 1)).real()};
  Eigen::Matrix3d cross;
  cross << 0.0, -b(2), b(1),
           b(2), 0.0, -b(0),
           -b(1), b(0), 0.0;
  // dp/dt = b x (2p - 1)
  KineticGenerator g;
  g.triple_flow.linear = 2.0 * cross;
  g.triple_flow.offset = -cross * Eigen::Vector3d::Ones();
  const SixAffine six = lift_to_six(g.triple_flow, 0.0);
  g.gen = six.matrix;
  g.affine = six.offset;
  return g;
}

KineticGenerator gksl_kinetic_generator(const Hamiltonian& h, const LindbladSet& ls) {
  if (h.dim() != 2)
    throw Error(Errc::WrongDimension, "gksl_kinetic_generator needs 2x2 operators");
  auto rate_at = [&](const ProbTriple& p) { return triple_rate(gksl_rhs(h, ls, probs_to_rho(p))); };

  const ProbTriple centre{0.5, 0.5, 0.5};
  const Eigen::Vector3d f0 = rate_at(centre);
  KineticGenerator g;
  for (int a = 0; a < 3; ++a) {
    ProbTriple probe = centre;
    probe[a] = 1.0;
    g.triple_flow.linear.col(a) = (rate_at(probe) - f0) / 0.5;
  }
  g.triple_flow.offset = f0 - g.triple_flow.linear * centre.vec();
  const SixAffine six = lift_to_six(g.triple_flow, 0.0);
  g.gen = six.matrix;
  g.affine = six.offset;
  return g;
}

std::optional<ProbTriple> kinetic_fixed_point(const KineticGenerator& g) {
  Eigen::FullPivLU<Eigen::Matrix3d> lu(g.triple_flow.linear);
  if (!lu.isInvertible()) return std::nullopt;
  return ProbTriple::from(lu.solve(-g.triple_flow.offset));
}

ProbTriple propagate_unitary(const Hamiltonian& h, const ProbTriple& p0, double t) {
  if (h.dim() != 2) throw Error(Errc::WrongDimension, "propagate_unitary needs a 2x2 Hamiltonian");
  if (!std::isfinite(t)) throw Error(Errc::RangeExceeded, "time must be finite");
  require_admissible(p0);
  const ComplexMatrix U = mat_exp(-I * t * h.matrix());
  ComplexMatrix rho = U * probs_to_rho(p0) * U.adjoint();
  rho = 0.5 * (rho + rho.adjoint());
  return rho_to_probs(rho);
}

Trajectory<SixVector> integrate_kinetic(const KineticGenerator& g, const ProbTriple& p0,
                                        double t, double step, int sample_every) {
  require_admissible(p0);
  const std::function<SixVector(const SixVector&, double)> rhs =
      [&g](const SixVector& v, double) { return g.derivative(v); };
  return rk4_integrate<SixVector>(rhs, to_six_vector(p0), 0.0, t, step, sample_every);
}

Trajectory<SixVector> propagate_kinetic(const Hamiltonian& h, const ProbTriple& p0, double t,
                                        double step, int sample_every) {
  return integrate_kinetic(kinetic_generator(h), p0, t, step, sample_every);
}

Trajectory<SixVector> propagate_kinetic(const std::function<Hamiltonian(double)>& h,
                                        const ProbTriple& p0, double t, double step,
                                        int sample_every) {
  require_admissible(p0);
  const std::function<SixVector(const SixVector&, double)> rhs =
      [&h](const SixVector& v, double time) { return kinetic_generator(h(time)).derivative(v); };
  return rk4_integrate<SixVector>(rhs, to_six_vector(p0), 0.0, t, step, sample_every);
}

Trajectory<ComplexMatrix> integrate_gksl(const Hamiltonian& h, const LindbladSet& ls,
                                         const ComplexMatrix& rho0, double t, double step,
                                         int sample_every) {
  require_same_dim(h, rho0);
  const std::function<ComplexMatrix(const ComplexMatrix&, double)> rhs =
      [&](const ComplexMatrix& rho, double) { return gksl_rhs(h, ls, rho); };
  return rk4_integrate<ComplexMatrix>(rhs, rho0, 0.0, t, step, sample_every);
}

ComplexMatrix vectorized_unitary(const ComplexMatrix& u) {
  if (!is_unitary(u)) throw Error(Errc::NotUnitary, "vectorized_unitary input is not unitary");
  return kron(u, u.conjugate());
}

}  // namespace probkin
