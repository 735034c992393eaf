#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "probkin/qubit_map.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace probkin;
using namespace probkin::testing;

namespace {
constexpr cplx I{0.0, 1.0};

template <typename F>
Errc error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return Errc::SchemaError;
}

ComplexMatrix m2(cplx a, cplx b, cplx c, cplx d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}
}  // namespace

TEST_CASE("probs_to_rho examples") {
  CHECK(max_abs(probs_to_rho({0.5, 0.5, 0.5}) - 0.5 * identity2()) == 0.0);
  // The projectors displayed for spin +1/2 along z and x.
  CHECK(max_abs(probs_to_rho({0.5, 0.5, 1.0}) - m2(1.0, 0.0, 0.0, 0.0)) == 0.0);
  CHECK(max_abs(probs_to_rho({1.0, 0.5, 0.5}) - m2(0.5, 0.5, 0.5, 0.5)) == 0.0);
  CHECK(max_abs(probs_to_rho({1.0, 0.5, 0.5}) - measurement_basis()[0]) == 0.0);
  CHECK(max_abs(probs_to_rho({0.5, 1.0, 0.5}) - measurement_basis()[1]) == 0.0);
  CHECK(max_abs(probs_to_rho({0.5, 0.5, 1.0}) - measurement_basis()[2]) == 0.0);
}

TEST_CASE("probs_to_rho accepts non-quantum triples but rejects out-of-range") {
  const ComplexMatrix r = probs_to_rho({1.0, 1.0, 1.0});
  CHECK(hermiticity_defect(r) == 0.0);
  CHECK(r.trace().real() == 1.0);
  CHECK(error_of([] { probs_to_rho({1.2, 0.5, 0.5}); }) == Errc::OutOfRangeProbability);
  CHECK(error_of([] { probs_to_rho({0.5, -0.1, 0.5}); }) == Errc::OutOfRangeProbability);
}

TEST_CASE("rho_to_probs examples") {
  const ProbTriple p2 = rho_to_probs(m2(0.5, -0.5 * I, 0.5 * I, 0.5));
  CHECK(p2 == ProbTriple{0.5, 1.0, 0.5});
  CHECK(rho_to_probs(0.5 * identity2()) == ProbTriple{0.5, 0.5, 0.5});
  CHECK(rho_to_probs(m2(0.0, 0.0, 0.0, 1.0)) == ProbTriple{0.5, 0.5, 0.0});
}

TEST_CASE("rho_to_probs rejects invalid matrices") {
  CHECK(error_of([] { rho_to_probs(m2(0.6, 0.0, 0.0, 0.6)); }) == Errc::InvalidDensityMatrix);
  CHECK(error_of([] { rho_to_probs(m2(0.5, 0.1, 0.2, 0.5)); }) == Errc::InvalidDensityMatrix);
  CHECK(error_of([] { rho_to_probs(ComplexMatrix::Identity(3, 3) / 3.0); }) == Errc::InvalidDensityMatrix);
}

TEST_CASE("quantumness_defect examples") {
  CHECK(quantumness_defect({0.5, 0.5, 0.5}) == 0.25);
  CHECK(quantumness_defect({0.5, 0.5, 1.0}) == 0.0);
  CHECK(quantumness_defect({1.0, 1.0, 1.0}) == -0.5);
  CHECK(min_eigenvalue(probs_to_rho({1.0, 1.0, 1.0})) < 0.0);
  CHECK(error_of([] { quantumness_defect({0.5, 2.0, 0.5}); }) == Errc::OutOfRangeProbability);
}

TEST_CASE("born_probability examples") {
  const auto& basis = measurement_basis();
  CHECK(born_probability(basis[2], basis[2]) == doctest::Approx(1.0));
  CHECK(born_probability(0.5 * identity2(), basis[0]) == doctest::Approx(0.5));
  // Tr(rho1 rho2) = (1/4)(1 + i - i + 1) = 1/2
  CHECK(born_probability(basis[0], basis[1]) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(error_of([] { born_probability(probs_to_rho({1, 1, 1}), 0.5 * identity2()); }) ==
        Errc::InvalidDensityMatrix);
}

TEST_CASE("measurement basis states are rank-1 projectors") {
  for (const ComplexMatrix& r : measurement_basis()) {
    CHECK(std::abs(r.trace() - 1.0) <= 1e-12);
    CHECK(max_abs(r * r - r) <= 1e-12);
  }
}

TEST_CASE("to_six_vector examples") {
  SixVector expected;
  expected.setConstant(1.0 / 6.0);
  CHECK(max_abs(to_six_vector({0.5, 0.5, 0.5}) - expected) <= 1e-16);
  expected << 1.0 / 3, 0.0, 0.0, 1.0 / 3, 1.0 / 6, 1.0 / 6;
  CHECK(max_abs(to_six_vector({1.0, 0.0, 0.5}) - expected) <= 1e-16);
  expected << 1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 6, 1.0 / 3, 0.0;
  CHECK(max_abs(to_six_vector({0.5, 0.5, 1.0}) - expected) <= 1e-16);
}

TEST_CASE("joint_distribution examples") {
  Gen g(11);
  const Eigen::Vector3d uniform = Eigen::Vector3d::Constant(1.0 / 3.0);
  for (int i = 0; i < 100; ++i) {
    const ProbTriple p = g.triple();
    CHECK(max_abs(joint_distribution(p, uniform) - to_six_vector(p)) <= 1e-16);
  }
  SixVector expected;
  expected << 1, 0, 0, 0, 0, 0;
  CHECK(max_abs(joint_distribution({1.0, 0.3, 0.9}, {1.0, 0.0, 0.0}) - expected) == 0.0);
  expected << 0.25, 0.25, 0.25, 0.25, 0, 0;
  CHECK(max_abs(joint_distribution({0.5, 0.5, 0.5}, {0.5, 0.5, 0.0}) - expected) == 0.0);
  CHECK(error_of([] { joint_distribution({0.5, 0.5, 0.5}, {0.5, 0.6, 0.0}); }) == Errc::InvalidMarginal);
  CHECK(error_of([] { joint_distribution({0.5, 0.5, 0.5}, {1.5, -0.5, 0.0}); }) == Errc::InvalidMarginal);
}

TEST_CASE("property: triple round trip") {
  Gen g(12);
  for (int i = 0; i < 10000; ++i) {
    const ProbTriple p = g.triple();
    const ProbTriple q = rho_to_probs(probs_to_rho(p));
    REQUIRE(max_triple_diff(p, q) <= 1e-14);
  }
}

TEST_CASE("property: Born probabilities reproduce the triple") {
  Gen g(13);
  for (int i = 0; i < 1000; ++i) {
    const ComplexMatrix rho = g.density_matrix(2, g.integer(1, 2));
    const ProbTriple p = rho_to_probs(rho);
    for (int k = 0; k < 3; ++k) REQUIRE(std::abs(born_probability(rho, measurement_basis()[k]) - p[k]) <= 1e-12);
  }
}

TEST_CASE("property: defect sign agrees with the spectrum") {
  Gen g(14);
  int inside = 0, outside = 0;
  for (int i = 0; i < 10000; ++i) {
    const ProbTriple p = g.triple();
    const bool by_defect = quantumness_defect(p) >= -1e-10;
    const bool by_spectrum = min_eigenvalue(probs_to_rho(p)) >= -1e-10;
    REQUIRE(by_defect == by_spectrum);
    (by_defect ? inside : outside)++;
  }
  CHECK(inside > 1000);
  CHECK(outside > 1000);
}

TEST_CASE("property: zero defect iff pure") {
  Gen g(15);
  for (int i = 0; i < 2000; ++i) {
    const ComplexMatrix rho = g.density_matrix(2, i % 2 == 0 ? 1 : 2);
    const ProbTriple p = rho_to_probs(rho);
    const bool pure_by_defect = std::abs(quantumness_defect(p)) <= 1e-12;
    const bool pure_by_purity = std::abs((rho * rho).trace().real() - 1.0) <= 1e-10;
    REQUIRE(pure_by_defect == pure_by_purity);
    if (i % 2 == 0) CHECK(pure_by_defect);
  }
}

TEST_CASE("property: six-vectors are distributions with components in [0, 1/3]") {
  Gen g(16);
  for (int i = 0; i < 2000; ++i) {
    const SixVector v = to_six_vector(g.triple());
    REQUIRE(std::abs(v.sum() - 1.0) <= 1e-15);
    REQUIRE(v.minCoeff() >= 0.0);
    REQUIRE(v.maxCoeff() <= 1.0 / 3.0 + 1e-16);
    const ProbTriple back = from_six_vector(v);
    REQUIRE(max_triple_diff(back, from_six_vector(v)) == 0.0);
  }
}

TEST_CASE("lift_to_six reproduces the triple map and conserves the component sum") {
  Gen g(17);
  for (double kappa : {0.0, 1.0}) {
    TripleAffine a;
    for (int i = 0; i < 9; ++i) a.linear(i) = g.uniform(-1, 1);
    a.offset = Eigen::Vector3d{g.uniform(-1, 1), g.uniform(-1, 1), g.uniform(-1, 1)};
    const SixAffine six = lift_to_six(a, kappa);
    for (int c = 0; c < 6; ++c) CHECK(six.matrix.col(c).sum() == doctest::Approx(kappa).epsilon(1e-14));
    CHECK(std::abs(six.offset.sum()) <= 1e-14);
    for (int i = 0; i < 50; ++i) {
      const ProbTriple p = g.triple();
      const Eigen::Vector3d q = a.apply(p.vec());
      SixVector expected;
      for (int r = 0; r < 3; ++r) {
        expected(2 * r) = q(r) / 3.0;
        expected(2 * r + 1) = (kappa - q(r)) / 3.0;
      }
      CHECK(max_abs(six.apply(to_six_vector(p)) - expected) <= 1e-14);
    }
  }
  // The identity map lifts to the identity.
  TripleAffine id;
  id.linear.setIdentity();
  const SixAffine six = lift_to_six(id, 1.0);
  CHECK(max_abs(six.matrix - SixMatrix::Identity()) == 0.0);
  CHECK(max_abs(six.offset) == 0.0);
}
