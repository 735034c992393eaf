#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "probkin/numerics.hpp"
#include "probkin/qubit_map.hpp"

namespace probkin {

/// Hermitian Hamiltonian in units with hbar = 1.
class Hamiltonian {
 public:
  explicit Hamiltonian(ComplexMatrix m);

  static Hamiltonian zero(Eigen::Index dim) {
    return Hamiltonian(ComplexMatrix::Zero(dim, dim));
  }

  const ComplexMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }

  friend Hamiltonian operator+(const Hamiltonian& a, const Hamiltonian& b);

 private:
  ComplexMatrix m_;
};

/// Linear kinetic equation dP/dt = gen P + affine on probability 6-vectors,
/// together with the equivalent flow dp/dt = linear p + offset on triples.
struct KineticGenerator {
  SixMatrix gen = SixMatrix::Zero();
  SixVector affine = SixVector::Zero();
  TripleAffine triple_flow;

  SixVector derivative(const SixVector& v) const { return gen * v + affine; }
};

using LindbladSet = std::vector<ComplexMatrix>;

/// -i [H, rho].
ComplexMatrix von_neumann_rhs(const Hamiltonian& h, const ComplexMatrix& rho);

/// -i [H, rho] + sum_k (L rho L^dagger - {L^dagger L, rho} / 2).
ComplexMatrix gksl_rhs(const Hamiltonian& h, const LindbladSet& ls, const ComplexMatrix& rho);

/// Closed form through the Bloch picture: with H = h0 I + h . sigma and
/// r = 2p - 1, the commutator equation reads dr/dt = 2 h x r.
KineticGenerator kinetic_generator(const Hamiltonian& h);

/// Probes gksl_rhs at the centre of the ball and at the three pure axis
/// states, then lifts the resulting affine field to 6-vectors.
KineticGenerator gksl_kinetic_generator(const Hamiltonian& h, const LindbladSet& ls);

/// Stationary triple of a kinetic flow, when it is unique.
std::optional<ProbTriple> kinetic_fixed_point(const KineticGenerator& g);

/// p(t) from U rho(p0) U^dagger with U = exp(-i t H).
ProbTriple propagate_unitary(const Hamiltonian& h, const ProbTriple& p0, double t);

/// RK4 integration of a kinetic generator from to_six_vector(p0).
Trajectory<SixVector> integrate_kinetic(const KineticGenerator& g, const ProbTriple& p0,
                                        double t, double step, int sample_every = 1);

Trajectory<SixVector> propagate_kinetic(const Hamiltonian& h, const ProbTriple& p0, double t,
                                        double step, int sample_every = 1);

/// Time-dependent Hamiltonian; the generator is rebuilt at every RK4 stage.
Trajectory<SixVector> propagate_kinetic(const std::function<Hamiltonian(double)>& h,
                                        const ProbTriple& p0, double t, double step,
                                        int sample_every = 1);

/// RK4 integration of the density matrix itself under gksl_rhs (any dimension).
Trajectory<ComplexMatrix> integrate_gksl(const Hamiltonian& h, const LindbladSet& ls,
                                         const ComplexMatrix& rho0, double t, double step,
                                         int sample_every = 1);

/// kron(u, conj(u)), acting on stack(rho).
ComplexMatrix vectorized_unitary(const ComplexMatrix& u);

}  // namespace probkin
