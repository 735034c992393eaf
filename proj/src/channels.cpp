#include "probkin/channels.hpp"

#include <cmath>
#include <string>

namespace probkin {

double kraus_completeness_defect(const std::vector<ComplexMatrix>& ops) {
  if (ops.empty()) throw Error(Errc::EmptySet, "Kraus set is empty");
  ComplexMatrix sum = ComplexMatrix::Zero(2, 2);
  for (const ComplexMatrix& s : ops) {
    if (s.rows() != 2 || s.cols() != 2)
      throw Error(Errc::WrongDimension, "Kraus operators must be 2x2");
    sum += s.adjoint() * s;
  }
  return max_abs(sum - identity2());
}

KrausSet::KrausSet(std::vector<ComplexMatrix> ops) : ops_(std::move(ops)) {
  double defect = 0.0;
  try {
    for (const ComplexMatrix& s : ops_) require_finite(s);
    defect = kraus_completeness_defect(ops_);
  } catch (const Error& e) {
    throw Error(Errc::InvalidKrausSet, e.what());
  }
  if (!(defect <= tol::kraus))
    throw Error(Errc::InvalidKrausSet,
                "completeness defect " + std::to_string(defect) + " exceeds tolerance");
}

ComplexMatrix channel_superoperator(const KrausSet& ks) {
  ComplexMatrix v = ComplexMatrix::Zero(4, 4);
  for (const ComplexMatrix& s : ks.ops()) v += kron(s, s.conjugate());
  return v;
}

ComplexMatrix apply_channel(const KrausSet& ks, const ComplexMatrix& rho) {
  if (rho.rows() != 2 || rho.cols() != 2)
    throw Error(Errc::DimensionMismatch, "channel acts on 2x2 matrices");
  ComplexMatrix out = ComplexMatrix::Zero(2, 2);
  for (const ComplexMatrix& s : ks.ops()) out += s * rho * s.adjoint();
  return out;
}

ProbTriple apply_channel_probs(const KrausSet& ks, const ProbTriple& p) {
  const double defect = quantumness_defect(p);
  if (defect < -tol::positivity)
    throw Error(Errc::NonAdmissibleState,
                "triple outside the quantum ball (quantumness_defect = " +
                    std::to_string(defect) + ")");
  ComplexMatrix rho = apply_channel(ks, probs_to_rho(p));
  rho = 0.5 * (rho + rho.adjoint());
  return rho_to_probs(rho);
}

KrausSet compose(const KrausSet& first, const KrausSet& second) {
  std::vector<ComplexMatrix> ops;
  ops.reserve(first.size() * second.size());
  for (const ComplexMatrix& b : second.ops())
    for (const ComplexMatrix& a : first.ops()) ops.push_back(b * a);
  return KrausSet(std::move(ops));
}

TripleAffine channel_triple_map(const KrausSet& ks) {
  const ProbTriple centre{0.5, 0.5, 0.5};
  const Eigen::Vector3d f0 = apply_channel_probs(ks, centre).vec();
  TripleAffine map;
  for (int a = 0; a < 3; ++a) {
    ProbTriple probe = centre;
    probe[a] = 1.0;
    map.linear.col(a) = (apply_channel_probs(ks, probe).vec() - f0) / 0.5;
  }
  map.offset = f0 - map.linear * centre.vec();
  return map;
}

SixAffine pseudostochastic_matrix(const KrausSet& ks) {
  return lift_to_six(channel_triple_map(ks), 1.0);
}

KrausSet mixed_unitary_to_kraus(const MixedUnitarySpec& spec) {
  if (spec.weights.size() != spec.unitaries.size() || spec.weights.empty())
    throw Error(Errc::WeightsNotNormalized, "weights and unitaries must be nonempty and equal length");
  double total = 0.0;
  for (double w : spec.weights) {
    if (!(w >= 0.0 && w <= 1.0))
      throw Error(Errc::WeightsNotNormalized, "weight outside [0,1]");
    total += w;
  }
  if (std::abs(total - 1.0) > tol::state)
    throw Error(Errc::WeightsNotNormalized, "weights do not sum to 1");
  std::vector<ComplexMatrix> ops;
  for (std::size_t k = 0; k < spec.weights.size(); ++k) {
    const ComplexMatrix& u = spec.unitaries[k];
    if (u.rows() != 2 || u.cols() != 2 || !is_unitary(u))
      throw Error(Errc::NotUnitary, "mixed-unitary component " + std::to_string(k) + " is not unitary");
    ops.push_back(std::sqrt(spec.weights[k]) * u);
  }
  return KrausSet(std::move(ops));
}

}  // namespace probkin
