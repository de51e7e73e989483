#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "quadext/pencil.hpp"
#include "quadext/verify.hpp"

#include <cmath>

using namespace quadext;

namespace {

SymForm diag(double a, double b) {
  Vector d(2);
  d << a, b;
  return SymForm::diagonal(d);
}

}  // namespace

TEST_CASE("pencil_min_eig") {
  const SymForm id = SymForm::identity(2);
  CHECK(pencil_min_eig(id, id, 0.0) == doctest::Approx(1.0));
  CHECK(pencil_min_eig(id, id, 0.7) == doctest::Approx(1.0));
  CHECK(pencil_min_eig(diag(-1, 1), diag(1, -1), 0.5) == doctest::Approx(0.0));
  CHECK(pencil_min_eig(diag(-1, 2), diag(2, -1), 0.25) == doctest::Approx(-0.25));
}

TEST_CASE("golden-section maximization") {
  SUBCASE("interior maximum") {
    const ConcaveMax m = maximize_concave_on_unit_interval([](double a) { return -(a - 0.3) * (a - 0.3); });
    CHECK(m.argmax == doctest::Approx(0.3).epsilon(1e-8));
    CHECK(m.value == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("constant") {
    CHECK(maximize_concave_on_unit_interval([](double) { return 5.0; }).value == 5.0);
  }
  SUBCASE("boundary maxima are hit exactly") {
    CHECK(maximize_concave_on_unit_interval([](double a) { return a; }).argmax == 1.0);
    CHECK(maximize_concave_on_unit_interval([](double a) { return -a; }).argmax == 0.0);
  }
  SUBCASE("pencil agrees with a dense grid") {
    const SymForm m0 = diag(-1, 2);
    const SymForm m1 = diag(2, -1);
    const ConcaveMax m = maximize_concave_on_unit_interval([&](double a) { return pencil_min_eig(m0, m1, a); });
    const double grid = oracle::grid_pencil_max(m0.matrix(), m1.matrix());
    // The grid contains alpha = 0.5 exactly, where the maximum 0.5 sits.
    CHECK(grid == doctest::Approx(0.5));
    CHECK(std::abs(m.value - grid) < 1e-9);
  }
}

TEST_CASE("lemma_a_combination") {
  SUBCASE("equal PSD forms") {
    Matrix s(2, 2);
    s << 2, 1, 1, 1;
    const double a = lemma_a_combination(SymForm(s), SymForm(s));
    CHECK(a >= 0.0);
    CHECK(a <= 1.0);
    CHECK(oracle::eig2(s).first >= 0.0);
  }
  SUBCASE("opposite forms combine to zero") {
    CHECK(lemma_a_combination(diag(1, -1), diag(-1, 1)) == doctest::Approx(0.5).epsilon(1e-8));
  }
  SUBCASE("planted instances") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const LemmaAInstance inst = lemma_a_instance(seed);
      const double a = lemma_a_combination(inst.p, inst.q);
      const Matrix comb = a * inst.p.matrix() + (1.0 - a) * inst.q.matrix();
      CHECK(oracle::eig2(comb).first >= -1e-9);
    }
  }
  SUBCASE("plug-in construction") {
    const LemmaAInstance inst = lemma_a_instance(SymForm::zero(2), diag(1, -1), 0.5);
    CHECK(inst.p.matrix().isApprox(diag(0.5, -0.5).matrix()));
    CHECK(inst.q.matrix().isApprox(diag(-0.5, 0.5).matrix()));
  }
  SUBCASE("infeasible") {
    const SymForm neg = diag(-1, -1);
    CHECK_THROWS_AS(lemma_a_combination(neg, neg), Infeasible);
    try {
      lemma_a_combination(neg, diag(-2, -0.5));
      FAIL("expected Infeasible");
    } catch (const Infeasible& e) {
      CHECK(e.best_min_eig() < 0.0);
      CHECK(e.kind() == ErrorKind::infeasible);
    }
  }
}

TEST_CASE("check_pointwise_max") {
  CHECK(check_pointwise_max(SymForm::identity(2), diag(-3, 7)));
  CHECK_FALSE(check_pointwise_max(diag(-1, -1), diag(-1, -1)));
  CHECK(check_pointwise_max(diag(1, -1), diag(-1, 1)));
  // Both negative along (1,1)/sqrt2 only.
  Matrix p(2, 2);
  p << 1, -2, -2, 1;
  CHECK_FALSE(check_pointwise_max(SymForm(p), SymForm(p)));
  CHECK_THROWS_AS(check_pointwise_max(SymForm::identity(3), SymForm::identity(3)), InvalidInput);
  CHECK_THROWS_AS(check_pointwise_max(diag(1, 1), diag(1, 1), 10), InvalidInput);
}

TEST_CASE("psd_interval") {
  const SymForm a1 = diag(2, 1);
  const SymForm a2 = diag(1, 2);
  SUBCASE("zero form: everything") {
    const FeasibleInterval iv = psd_interval(a1, a2, SymForm::zero(2));
    CHECK_FALSE(iv.empty);
    CHECK(iv.lo == 0.0);
    CHECK(iv.hi == 1.0);
  }
  SUBCASE("degenerates to a point") {
    // A_alpha - B = diag(alpha - 0.5, 0.5 - alpha).
    const FeasibleInterval iv = psd_interval(a1, a2, diag(1.5, 1.5));
    CHECK_FALSE(iv.empty);
    CHECK(std::abs(iv.lo - 0.5) < 1e-8);
    CHECK(std::abs(iv.hi - 0.5) < 1e-8);
    CHECK(iv.contains(0.5));
  }
  SUBCASE("half interval") {
    const FeasibleInterval iv = psd_interval(a1, a2, diag(1.5, -1.5));
    CHECK(std::abs(iv.lo - 0.5) < 1e-8);
    CHECK(iv.hi == 1.0);
    // Grid oracle: the pencil is PSD exactly on alpha >= 0.5.
    for (int i = 0; i <= 100; ++i) {
      const double a = i / 100.0;
      const Matrix m = a * a1.matrix() + (1 - a) * a2.matrix() - diag(1.5, -1.5).matrix();
      CHECK((oracle::eig2(m).first >= -1e-12) == (a >= 0.5));
    }
  }
  SUBCASE("empty") {
    const FeasibleInterval iv = psd_interval(a1, a2, diag(3, 3));
    CHECK(iv.empty);
    CHECK(iv.best_value < 0.0);
    CHECK_FALSE(iv.contains(iv.best_alpha));
  }
}

TEST_CASE("dominating_combination") {
  SUBCASE("all identity") {
    const SymForm id = SymForm::identity(2);
    const SandwichCertificate c = dominating_combination(id, id, id);
    CHECK(c.alpha == doctest::Approx(0.5));
    CHECK(c.beta == doctest::Approx(0.5));
  }
  SUBCASE("diagonal example") {
    const SandwichCertificate c = dominating_combination(diag(2, 1), diag(1, 2), diag(1.5, -1.5));
    CHECK(c.alpha == doctest::Approx(0.75).epsilon(1e-8));
    CHECK(c.beta == doctest::Approx(0.25).epsilon(1e-8));
    const auto [upper, lower] = certificate_margins(diag(2, 1), diag(1, 2), diag(1.5, -1.5), c);
    CHECK(upper == doctest::Approx(0.25));
    CHECK(lower == doctest::Approx(0.25));
  }
  SUBCASE("zero form") {
    const SandwichCertificate c = dominating_combination(diag(2, 1), diag(1, 2), SymForm::zero(2));
    CHECK(c.alpha == 0.5);
    CHECK(c.beta == 0.5);
  }
  SUBCASE("violated on each side") {
    try {
      dominating_combination(diag(1, 1), diag(1, 1), diag(3, 0));
      FAIL("expected HypothesisViolated");
    } catch (const HypothesisViolated& e) {
      CHECK(e.upper_side());
      CHECK(e.sweep_min() == doctest::Approx(-2.0));
    }
    try {
      dominating_combination(diag(1, 1), diag(1, 1), diag(0, -3));
      FAIL("expected HypothesisViolated");
    } catch (const HypothesisViolated& e) {
      CHECK_FALSE(e.upper_side());
    }
  }
  SUBCASE("planted sandwiches in higher dimension") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const SandwichInstance inst = sandwich_instance(2 + static_cast<Eigen::Index>(seed % 5), seed);
      const SandwichCertificate c = dominating_combination(inst.a1, inst.a2, inst.b);
      const auto [upper, lower] = certificate_margins(inst.a1, inst.a2, inst.b, c);
      CHECK(upper >= -2e-9);
      CHECK(lower >= -2e-9);
    }
  }
}
