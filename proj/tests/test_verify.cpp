#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "heis/parallel.hpp"
#include "heis/verify.hpp"
#include "reference.hpp"

using namespace heis;
using namespace heis::testing;

namespace {

// The two displayed exponent ranges, written out independently.
bool admissible_direct(double p, double q, int n) {
  const double Q = 2.0 * n + 2.0;
  if (p <= 1.0 || q < 1.0) return false;
  if (p <= 2.0 && q < p * Q / (Q - p)) return true;
  return p >= 2.0 && q < 2.0 * Q / (Q - 2.0);
}

SuiteConfig small_config() {
  SuiteConfig c = reference_config();
  c.ball = QuadSpec::grid(8);
  c.domain = QuadSpec::grid(8);
  c.fine_domain = QuadSpec::grid(24);
  c.r_grid = ScaleGrid{1e-2, 1e1, 4};
  c.t_grid = ScaleGrid{1e-3, 1e1, 4};
  c.box_radius = 3.0;
  return c;
}

bool reports_equal(const std::vector<RatioReport>& a, const std::vector<RatioReport>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].name != b[i].name || a[i].lhs != b[i].lhs || a[i].rhs != b[i].rhs || a[i].params != b[i].params ||
        a[i].truncation_lhs != b[i].truncation_lhs)
      return false;
  }
  return true;
}

}  // namespace

TEST(ExponentGate, Examples) {
  EXPECT_TRUE(gate_exponents(2.0, 2.0, 1).admissible);
  EXPECT_FALSE(gate_exponents(2.0, 4.0, 1).admissible);
  EXPECT_TRUE(gate_exponents(1.5, 1.0, 1).admissible);
  EXPECT_EQ(gate_exponents(2.0, 2.0, 1).Q, 4);
  EXPECT_FALSE(gate_exponents(1.0, 1.0, 1).admissible);
  EXPECT_FALSE(gate_exponents(2.0, 0.5, 1).admissible);
  // Strict boundary in the low range: q = pQ/(Q-p).
  const double p = 1.5, Q = 6.0;
  EXPECT_FALSE(gate_exponents(p, p * Q / (Q - p), 2).admissible);
  EXPECT_TRUE(gate_exponents(p, std::nextafter(p * Q / (Q - p), 0.0), 2).admissible);
  // Large p only needs q < 2Q/(Q-2).
  EXPECT_TRUE(gate_exponents(10.0, 3.9, 1).admissible);
  EXPECT_FALSE(gate_exponents(10.0, 4.0, 1).admissible);
}

TEST(ExponentGate, AgreesWithDirectEvaluation) {
  std::mt19937_64 gen(2024);
  std::uniform_real_distribution<double> up(0.8, 6.0), uq(0.8, 8.0);
  std::uniform_int_distribution<int> un(1, 4);
  int admitted = 0;
  for (int k = 0; k < 1000; ++k) {
    const int n = un(gen);
    const double p = k % 10 == 0 ? 2.0 : up(gen);
    double q = uq(gen);
    // Every fourth case sits exactly on the boundary of its range.
    if (k % 4 == 1) {
      const double Q = 2.0 * n + 2.0;
      q = p <= 2.0 ? p * Q / (Q - p) : 2.0 * Q / (Q - 2.0);
    }
    const bool want = admissible_direct(p, q, n);
    EXPECT_EQ(gate_exponents(p, q, n).admissible, want) << "p=" << p << " q=" << q << " n=" << n;
    admitted += want;
  }
  EXPECT_GT(admitted, 100);
  EXPECT_LT(admitted, 900);
}

TEST(DorronsoroRatio, RejectsBadInput) {
  const SuiteConfig c = small_config();
  EXPECT_THROW(dorronsoro_ratio(catalog("gaussian", 1), 2.0, 4.0, c), InvalidInput);
  EXPECT_THROW(dorronsoro_ratio(catalog("gaussian", 1), 1.0, 1.0, c), InvalidInput);
  ScalarField no_grad;
  no_grad.n = 1;
  no_grad.eval = [](const Point& x) { return x.t; };
  EXPECT_THROW(dorronsoro_ratio(no_grad, 2.0, 1.0, c), InvalidInput);
}

TEST(DorronsoroRatio, AffineFields) {
  const SuiteConfig c = small_config();
  const RatioReport flat = dorronsoro_ratio(catalog("affine", {{"a", "0,0"}, {"b", "1"}}, 1), 2.0, 2.0, c);
  EXPECT_LE(flat.lhs, 1e-10);
  EXPECT_TRUE(flat.degenerate);
  EXPECT_EQ(flat.ratio, 0.0);
  EXPECT_TRUE(flat.ok);
  const RatioReport tilted = dorronsoro_ratio(catalog("affine", {{"a", "1,-1"}, {"b", "0"}}, 1), 2.0, 1.0, c);
  EXPECT_LE(tilted.lhs, 1e-10);
  EXPECT_GT(tilted.rhs, 0.0);
  EXPECT_FALSE(tilted.degenerate);
  EXPECT_LE(tilted.ratio, 1e-10);
}

TEST(DorronsoroRatio, GaussianIsFiniteWithReportedTruncation) {
  const RatioReport r = dorronsoro_ratio(catalog("gaussian", 1), 2.0, 2.0, small_config());
  EXPECT_TRUE(r.ok);
  EXPECT_FALSE(r.degenerate);
  EXPECT_GT(r.ratio, 0.0);
  EXPECT_TRUE(std::isfinite(r.ratio));
  EXPECT_GE(r.truncation_lhs, 0.0);
  EXPECT_GE(r.truncation_rhs, 0.0);
  EXPECT_EQ(r.params.at("q"), 2.0);
}

TEST(PoincareRatio, RejectsBadExponents) {
  const SuiteConfig c = small_config();
  EXPECT_THROW(poincare_ratio(catalog("gaussian", 1), 1.0, c), InvalidInput);
  EXPECT_THROW(poincare_ratio(catalog("gaussian", 1), 2.5, c), InvalidInput);
}

TEST(PoincareRatio, HorizontalOnlyFieldHasNoVerticalVariation) {
  const SuiteConfig c = small_config();
  const RatioReport r = poincare_ratio(catalog("quadratic", {{"j", "1"}, {"k", "2"}}, 1), 2.0, c);
  EXPECT_LE(r.lhs, 1e-10);
  EXPECT_GT(r.rhs, 0.0);
  EXPECT_EQ(r.truncation_lhs, 0.0);
  const RatioReport z1 = poincare_ratio(catalog("coordinate", {{"j", "1"}}, 1), 1.5, c);
  EXPECT_LE(z1.lhs, 1e-10);
}

TEST(PoincareRatio, GaussianNearFixture) {
  SuiteConfig c = reference_config();
  c.fine_domain = QuadSpec::grid(48);
  const RatioReport r = poincare_ratio(catalog("gaussian", 1), 2.0, c);
  EXPECT_TRUE(r.ok);
  EXPECT_TRUE(within_drift(r.ratio, kFixtures.at("poincare gaussian"))) << r.ratio;
  EXPECT_LT(r.truncation_lhs, 0.1 * r.lhs);
}

TEST(IdentitySuite, AllWithinTolerance) {
  const auto reports = run_identity_suite(reference_config());
  EXPECT_EQ(reports.size(), 16u);
  for (const auto& r : reports) {
    EXPECT_TRUE(r.ok) << r.name << " ratio=" << r.ratio << " tol=" << r.params.at("tolerance");
    EXPECT_FALSE(r.degenerate) << r.name;
  }
}

TEST(IdentitySuite, UnitDilationIsExact) {
  for (const auto& r : run_identity_suite(small_config())) {
    if (r.params.count("s") && r.params.at("s") == 1.0) EXPECT_EQ(r.ratio, 1.0) << r.name;
  }
}

TEST(IdentitySuite, StarvedBudgetsFail) {
  SuiteConfig c = small_config();
  c.ball = QuadSpec::montecarlo(10, 1);
  c.domain = QuadSpec::montecarlo(10, 1);
  c.fine_domain = QuadSpec::montecarlo(10, 1);
  const auto reports = run_identity_suite(c);
  EXPECT_TRUE(std::any_of(reports.begin(), reports.end(), [](const RatioReport& r) { return !r.ok; }));
}

TEST(LemmaSuite, FiniteAndFixtureLocked) {
  const auto reports = run_lemma_suite(reference_config());
  EXPECT_EQ(reports.size(), 18u);
  for (const auto& r : reports) {
    EXPECT_TRUE(r.ok) << r.name;
    EXPECT_TRUE(std::isfinite(r.ratio)) << r.name;
    const auto it = kFixtures.find("lemma " + r.name);
    ASSERT_NE(it, kFixtures.end()) << r.name;
    if (r.name.rfind("g-vs-2s", 0) == 0) {
      EXPECT_LE(r.ratio, 1.0) << "G <= 2S";
    } else {
      EXPECT_TRUE(within_drift(r.ratio, it->second)) << r.name << " " << r.ratio << " vs " << it->second;
    }
  }
}

TEST(Suites, DeterministicAcrossWorkerCounts) {
  const SuiteConfig c = small_config();
  set_workers(1);
  const auto a = run_lemma_suite(c);
  const auto ia = run_identity_suite(c);
  set_workers(4);
  const auto b = run_lemma_suite(c);
  const auto ib = run_identity_suite(c);
  set_workers(0);
  EXPECT_TRUE(reports_equal(a, b));
  EXPECT_TRUE(reports_equal(ia, ib));
}
