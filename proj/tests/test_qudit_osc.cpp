#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numbers>

#include "probkin/qubit_map.hpp"
#include "probkin/qudit_osc.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace probkin;
using namespace probkin::testing;

namespace {
constexpr double pi = std::numbers::pi;

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

double max_family_diff(const QuditProbFamily& a, const QuditProbFamily& b) {
  const auto x = a.flatten();
  const auto y = b.flatten();
  REQUIRE(x.size() == y.size());
  double m = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
  return m;
}

// Kernel from the oracle eigenfunctions, sum_{kj} psi_k(x) rho_kj psi_j(x').
cplx kernel_oracle(const ComplexMatrix& rho, double x, double xp) {
  cplx acc = 0.0;
  for (int k = 0; k < rho.rows(); ++k)
    for (int j = 0; j < rho.cols(); ++j)
      acc += oscillator_eigenfunction(k, x) * rho(k, j) * oscillator_eigenfunction(j, xp);
  return acc;
}

// Composite Simpson rule over [a, b] with an odd node count.
template <typename F>
double simpson(F&& f, double a, double b, int nodes) {
  const double h = (b - a) / (nodes - 1);
  double acc = f(a) + f(b);
  for (int i = 1; i < nodes - 1; ++i) acc += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return acc * h / 3.0;
}

// i d/dt rho + (1/2)(d2/dx2 - d2/dx'2) rho - ((x^2 - x'^2)/2) rho by central differences.
cplx pde_residual(const FockDensityMatrix& rho0, double x, double xp, double t, double d) {
  auto at = [&](double xx, double yy, double tt) {
    return position_kernel(oscillator_evolve(rho0, tt), xx, yy);
  };
  const cplx c = at(x, xp, t);
  const cplx dt = (at(x, xp, t + d) - at(x, xp, t - d)) / (2 * d);
  const cplx dxx = (at(x + d, xp, t) - 2.0 * c + at(x - d, xp, t)) / (d * d);
  const cplx dyy = (at(x, xp + d, t) - 2.0 * c + at(x, xp - d, t)) / (d * d);
  return cplx{0.0, 1.0} * dt + 0.5 * (dxx - dyy) - 0.5 * (x * x - xp * xp) * c;
}

Eigen::VectorXcd superposition01() {
  Eigen::VectorXcd a(2);
  a << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return a;
}
}  // namespace

TEST_CASE("qudit_probs_to_rho examples") {
  QuditProbFamily q2 = QuditProbFamily::centred(2, {1.0});
  ComplexMatrix expect = ComplexMatrix::Zero(2, 2);
  expect(0, 0) = 1.0;
  CHECK(max_abs(qudit_probs_to_rho(q2) - expect) == 0.0);

  const QuditProbFamily q3 = QuditProbFamily::centred(3, {1.0 / 3, 1.0 / 3});
  CHECK(max_abs(qudit_probs_to_rho(q3) - ComplexMatrix::Identity(3, 3) / 3.0) <= 1e-16);

  QuditProbFamily f = QuditProbFamily::centred(3, {0.5, 0.5});
  f.pair(0, 1) = {1.0, 0.5};
  const ComplexMatrix r = qudit_probs_to_rho(f);
  CHECK(r(0, 1) == cplx{0.5, 0.0});
  CHECK(r(1, 0) == cplx{0.5, 0.0});
  CHECK(r(2, 2) == cplx{0.0, 0.0});
}

TEST_CASE("qudit_probs_to_rho errors") {
  QuditProbFamily f = QuditProbFamily::centred(3, {0.6, 0.6});
  CHECK(error_of([&] { qudit_probs_to_rho(f); }) == Errc::DiagonalOverflow);
  f = QuditProbFamily::centred(3, {0.2, 0.2});
  f.pair(1, 2) = {1.2, 0.5};
  CHECK(error_of([&] { qudit_probs_to_rho(f); }) == Errc::OutOfRangeProbability);
  f = QuditProbFamily::centred(3, {-0.1, 0.2});
  CHECK(error_of([&] { qudit_probs_to_rho(f); }) == Errc::OutOfRangeProbability);
}

TEST_CASE("qudit_rho_to_probs examples") {
  const QuditProbs m = qudit_rho_to_probs(ComplexMatrix::Identity(3, 3) / 3.0);
  CHECK_FALSE(m.out_of_range);
  CHECK(max_family_diff(m.family, QuditProbFamily::centred(3, {1.0 / 3, 1.0 / 3})) <= 1e-16);

  const QuditProbs q = qudit_rho_to_probs(measurement_basis()[0]);
  CHECK(q.family.pair(0, 1)[0] == 1.0);
  CHECK(q.family.pair(0, 1)[1] == 0.5);
  CHECK(q.family.diag[0] == 0.5);

  const ComplexMatrix pure = ComplexMatrix::Constant(3, 3, cplx{1.0 / 3, 0.0});
  const QuditProbs s = qudit_rho_to_probs(pure);
  for (int j = 0; j < 3; ++j)
    for (int k = j + 1; k < 3; ++k) {
      CHECK(s.family.pair(j, k)[0] == doctest::Approx(5.0 / 6).epsilon(1e-15));
      CHECK(s.family.pair(j, k)[1] == 0.5);
    }
  CHECK(s.family.diag[0] == doctest::Approx(1.0 / 3).epsilon(1e-15));

  ComplexMatrix bad = ComplexMatrix::Identity(3, 3);
  CHECK(error_of([&] { qudit_rho_to_probs(bad); }) == Errc::InvalidDensityMatrix);
  bad = ComplexMatrix::Identity(3, 3) / 3.0;
  bad(0, 1) = 0.1;
  CHECK(error_of([&] { qudit_rho_to_probs(bad); }) == Errc::InvalidDensityMatrix);

  // Hermitian, unit trace, not positive, and outside the box.
  ComplexMatrix wild = ComplexMatrix::Identity(2, 2) / 2.0;
  wild(0, 1) = wild(1, 0) = 0.9;
  CHECK(qudit_rho_to_probs(wild).out_of_range);
}

TEST_CASE("qudit_positivity examples") {
  CHECK(qudit_positivity(ComplexMatrix::Identity(4, 4) / 4.0) == doctest::Approx(0.25).epsilon(1e-14));
  ComplexMatrix e = ComplexMatrix::Zero(3, 3);
  e(0, 0) = 1.0;
  CHECK(std::abs(qudit_positivity(e)) <= 1e-15);

  QuditProbFamily ones = QuditProbFamily::centred(3, {1.0 / 3, 1.0 / 3});
  for (auto& pr : ones.offdiag) pr = {1.0, 1.0};
  const ComplexMatrix r = qudit_probs_to_rho(ones);
  // Independent check: the real part alone already has a negative direction.
  const Eigen::Vector3d v{1.0, -1.0, 0.0};
  CHECK((v.transpose() * r.real() * v)(0) < 0.0);
  CHECK(qudit_positivity(r) < 0.0);

  ComplexMatrix nh = ComplexMatrix::Identity(2, 2);
  nh(0, 1) = 1.0;
  CHECK(error_of([&] { qudit_positivity(nh); }) == Errc::NotHermitian);
}

TEST_CASE("property: qudit map round trip") {
  Gen g(61);
  for (int dim : {2, 3, 5, 8}) {
    for (int i = 0; i < 1000; ++i) {
      const QuditProbFamily f = g.family(dim);
      const ComplexMatrix r = qudit_probs_to_rho(f);
      REQUIRE(hermiticity_defect(r) == 0.0);
      REQUIRE(std::abs(r.trace() - 1.0) <= 1e-14);
      REQUIRE(max_family_diff(qudit_rho_to_probs(r).family, f) <= 1e-14);
    }
  }
}

TEST_CASE("property: qudit map at N=2 agrees with the qubit map") {
  Gen g(62);
  for (int i = 0; i < 1000; ++i) {
    const ProbTriple p = g.triple();
    QuditProbFamily f = QuditProbFamily::centred(2, {p.p3});
    f.pair(0, 1) = {p.p1, p.p2};
    const ComplexMatrix a = qudit_probs_to_rho(f);
    REQUIRE(a == probs_to_rho(p));
    const QuditProbFamily back = qudit_rho_to_probs(a).family;
    REQUIRE((ProbTriple{back.pair(0, 1)[0], back.pair(0, 1)[1], back.diag[0]} == rho_to_probs(a)));
  }
}

TEST_CASE("hermite_poly examples") {
  CHECK(hermite_poly(0, 3.7) == 1.0);
  CHECK(hermite_poly(1, 3.0) == 6.0);
  CHECK(hermite_poly(2, 1.0) == 2.0);
  CHECK(hermite_poly(3, 0.0) == 0.0);
  CHECK(hermite_poly(4, 0.5) == doctest::Approx(16 * 0.0625 - 48 * 0.25 + 12));
  CHECK(std::isfinite(hermite_poly(200, 0.3)));
  CHECK(error_of([] { hermite_poly(201, 0.0); }) == Errc::DegreeTooLarge);
}

TEST_CASE("hermite_functions match the oracle eigenfunctions") {
  for (double x : {-11.5, -3.0, -0.2, 0.0, 1.0, 4.5, 9.0}) {
    const RealVector h = hermite_functions(40, x);
    for (int n = 0; n <= 40; ++n) CHECK(std::abs(h(n) - oscillator_eigenfunction(n, x)) <= 1e-12);
  }
}

TEST_CASE("position_kernel examples") {
  Eigen::VectorXcd g0(1);
  g0 << 1.0;
  const FockDensityMatrix ground = FockDensityMatrix::pure(g0, 6);
  CHECK(std::abs(position_kernel(ground, 0.0, 0.0) - 1.0 / std::sqrt(pi)) <= 1e-15);
  CHECK(std::abs(position_kernel(ground, 0.0, 0.0) - 0.5641895835) <= 1e-10);
  for (double x : {-2.0, 0.4, 1.3})
    CHECK(std::abs(position_kernel(ground, x, x) - std::exp(-x * x) / std::sqrt(pi)) <= 1e-15);

  Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(2);
  e1(1) = 1.0;
  CHECK(std::abs(position_kernel(FockDensityMatrix::pure(e1, 4), 0.0, 0.0)) <= 1e-16);

  CHECK(error_of([&] { position_kernel(ground, 12.5, 0.0); }) == Errc::RangeExceeded);
  CHECK(error_of([&] { position_kernel(ground, 0.0, -13.0); }) == Errc::RangeExceeded);
}

TEST_CASE("property: position_kernel matches the oracle and is conjugate symmetric") {
  Gen g(63);
  for (int i = 0; i < 30; ++i) {
    const int n = g.integer(0, 12);
    const FockDensityMatrix rho(g.density_matrix(n + 1));
    for (int j = 0; j < 10; ++j) {
      const double x = g.uniform(-5, 5);
      const double y = g.uniform(-5, 5);
      const cplx v = position_kernel(rho, x, y);
      CHECK(std::abs(v - kernel_oracle(rho.matrix(), x, y)) <= 1e-12);
      CHECK(std::abs(v - std::conj(position_kernel(rho, y, x))) <= 1e-10);
    }
  }
}

TEST_CASE("FockDensityMatrix validation") {
  CHECK(error_of([] { FockDensityMatrix r(ComplexMatrix::Identity(3, 3)); }) == Errc::InvalidDensityMatrix);
  ComplexMatrix neg = ComplexMatrix::Zero(2, 2);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK(error_of([&] { FockDensityMatrix r(neg); }) == Errc::InvalidDensityMatrix);
  ComplexMatrix nh = ComplexMatrix::Identity(2, 2) / 2.0;
  nh(0, 1) = 0.1;
  CHECK(error_of([&] { FockDensityMatrix r(nh); }) == Errc::InvalidDensityMatrix);
}

TEST_CASE("fock_probs examples") {
  Eigen::VectorXcd g0(1);
  g0 << 1.0;
  const QuditProbFamily ground = fock_probs(FockDensityMatrix::pure(g0, 2)).family;
  CHECK(ground.dim == 3);
  CHECK(ground.diag == std::vector<double>{1.0, 0.0});
  for (const auto& pr : ground.offdiag) CHECK(pr == std::array<double, 2>{0.5, 0.5});

  ComplexMatrix th = ComplexMatrix::Zero(3, 3);
  th.diagonal() << 0.6, 0.3, 0.1;
  const QuditProbFamily thermal = fock_probs(FockDensityMatrix(th)).family;
  CHECK(thermal.diag == std::vector<double>{0.6, 0.3});
  for (const auto& pr : thermal.offdiag) CHECK(pr == std::array<double, 2>{0.5, 0.5});

  const QuditProbFamily sup = fock_probs(FockDensityMatrix::pure(superposition01(), 1)).family;
  CHECK(sup.pair(0, 1)[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(sup.pair(0, 1)[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(sup.diag[0] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("oscillator_evolve examples") {
  ComplexMatrix th = ComplexMatrix::Zero(4, 4);
  th.diagonal() << 0.4, 0.3, 0.2, 0.1;
  const FockDensityMatrix diag(th);
  for (double t : {0.3, 1.0, 17.0}) CHECK(max_abs(oscillator_evolve(diag, t).matrix() - th) == 0.0);

  const FockDensityMatrix sup = FockDensityMatrix::pure(superposition01(), 3);
  const ComplexMatrix back = oscillator_evolve(sup, 2 * pi).matrix();
  CHECK(std::abs(back(0, 1) - sup.matrix()(0, 1)) <= 1e-15);

  const FockDensityMatrix half = oscillator_evolve(sup, pi);
  CHECK(std::abs(half.matrix()(0, 1) + sup.matrix()(0, 1)) <= 1e-15);
  CHECK(fock_probs(sup).family.pair(0, 1)[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(fock_probs(half).family.pair(0, 1)[0]) <= 1e-15);
}

TEST_CASE("property: kernel normalization by Simpson quadrature") {
  Gen g(64);
  for (int i = 0; i < 20; ++i) {
    const int n = g.integer(0, 12);
    const FockDensityMatrix rho(g.density_matrix(n + 1, g.integer(1, n + 1)));
    const double norm = simpson([&](double x) { return position_kernel(rho, x, x).real(); }, -10.0, 10.0, 2001);
    CHECK(std::abs(norm - 1.0) <= 1e-6);
  }
}

TEST_CASE("property: evolved kernel satisfies the position-space equation") {
  Gen g(65);
  for (int i = 0; i < 20; ++i) {
    const int n = g.integer(1, 8);
    const FockDensityMatrix rho(g.density_matrix(n + 1));
    const double x = g.uniform(-3, 3);
    const double y = g.uniform(-3, 3);
    const double t = g.uniform(0, 2 * pi);
    CHECK(std::abs(pde_residual(rho, x, y, t, 1e-3)) <= 1e-4);
  }
}

TEST_CASE("property: free evolution preserves spectrum, populations and the box") {
  Gen g(66);
  for (int i = 0; i < 100; ++i) {
    const int n = g.integer(1, 10);
    const FockDensityMatrix rho(g.density_matrix(n + 1, g.integer(1, n + 1)));
    const double t = g.uniform(-20, 20);
    const FockDensityMatrix out = oscillator_evolve(rho, t);
    CHECK(max_abs(hermitian_eigen(out.matrix()).values - hermitian_eigen(rho.matrix()).values) <= 1e-10);
    const QuditProbs a = fock_probs(rho);
    const QuditProbs b = fock_probs(out);
    CHECK(a.family.diag == b.family.diag);
    CHECK_FALSE(b.out_of_range);
    for (double v : b.family.flatten()) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
  }
}
