#pragma once

#include <vector>

#include "probkin/numerics.hpp"
#include "probkin/qubit_map.hpp"

namespace probkin {

/// Qubit channel rho -> sum_k S_k rho S_k^dagger, validated on construction
/// (nonempty, 2x2, sum_k S_k^dagger S_k = I within tol::kraus).
class KrausSet {
 public:
  explicit KrausSet(std::vector<ComplexMatrix> ops);

  const std::vector<ComplexMatrix>& ops() const { return ops_; }
  std::size_t size() const { return ops_.size(); }

 private:
  std::vector<ComplexMatrix> ops_;
};

struct MixedUnitarySpec {
  std::vector<double> weights;
  std::vector<ComplexMatrix> unitaries;
};

/// max |sum_k S_k^dagger S_k - I|.
double kraus_completeness_defect(const std::vector<ComplexMatrix>& ops);

/// V = sum_k kron(S_k, conj(S_k)), acting on stack(rho).
ComplexMatrix channel_superoperator(const KrausSet& ks);

ComplexMatrix apply_channel(const KrausSet& ks, const ComplexMatrix& rho);
ProbTriple apply_channel_probs(const KrausSet& ks, const ProbTriple& p);

/// `second` applied after `first`: Kraus operators B_j A_i.
KrausSet compose(const KrausSet& first, const KrausSet& second);

/// The channel as an affine map on triples (exact: channels are linear in rho).
TripleAffine channel_triple_map(const KrausSet& ks);

/// Affine map P' = M P + c on 6-vectors that reproduces apply_channel_probs.
/// Built by probing the centre and the three +axis pure states. M may have
/// negative entries; its column sums are 1 and c sums to 0.
SixAffine pseudostochastic_matrix(const KrausSet& ks);

KrausSet mixed_unitary_to_kraus(const MixedUnitarySpec& spec);

}  // namespace probkin
