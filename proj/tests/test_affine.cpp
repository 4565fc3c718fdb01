#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "heis/affine.hpp"
#include "heis/squarefn.hpp"

using namespace heis;

namespace {

double max_coef_diff(const AffineMap& a, const AffineMap& b) {
  double m = std::abs(a.b - b.b);
  for (int j = 0; j < 2 * a.base.n; ++j) m = std::max(m, std::abs(a.a[j] - b.a[j]));
  return m;
}

std::string exact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ScalarField affine_field(const std::vector<double>& a, double b) {
  std::string s;
  for (std::size_t j = 0; j < a.size(); ++j) s += (j ? "," : "") + exact(a[j]);
  return catalog("affine", {{"a", s}, {"b", exact(b)}}, static_cast<int>(a.size()) / 2);
}

ScalarField from_map(const AffineMap& A) {
  ScalarField f;
  f.n = A.base.n;
  f.eval = [A](const Point& y) { return A(y); };
  return f;
}

const QuadSpec kGrid = QuadSpec::grid(16);

}  // namespace

TEST(FitMoment, ConstantsAreFixed) {
  ScalarField c;
  c.n = 1;
  c.eval = [](const Point&) { return 2.5; };
  for (int d : {0, 1}) {
    const AffineMap A = fit_moment(c, Point({1.0, -1.0}, 3.0), 0.4, d, kGrid);
    EXPECT_NEAR(A.b, 2.5, 1e-14);
    EXPECT_NEAR(A.a[0], 0.0, 1e-13);
    EXPECT_NEAR(A.a[1], 0.0, 1e-13);
  }
}

TEST(FitMoment, CoordinateFieldsAtOrigin) {
  const AffineMap z1 = fit_moment(catalog("coordinate", {{"j", "1"}}, 1), origin(1), 1.0, 1, kGrid);
  EXPECT_NEAR(z1.a[0], 1.0, 1e-12);
  EXPECT_NEAR(z1.a[1], 0.0, 1e-14);
  EXPECT_NEAR(z1.b, 0.0, 1e-14);
  const AffineMap t = fit_moment(catalog("coordinate", {{"j", "t"}}, 1), origin(1), 1.0, 1, kGrid);
  EXPECT_NEAR(t.a[0], 0.0, 1e-14);
  EXPECT_NEAR(t.a[1], 0.0, 1e-14);
  EXPECT_NEAR(t.b, 0.0, 1e-14);
}

TEST(FitMoment, DegreeZeroHasNoSlope) {
  const AffineMap A = fit_moment(catalog("gaussian", 1), Point({0.5, 0.5}, 0.0), 1.0, 0, kGrid);
  EXPECT_EQ(A.a[0], 0.0);
  EXPECT_EQ(A.a[1], 0.0);
  EXPECT_EQ(A.degree, 0);
  EXPECT_THROW(fit_moment(catalog("gaussian", 1), origin(1), 1.0, 2, kGrid), InvalidInput);
  EXPECT_THROW(fit_moment(catalog("gaussian", 1), origin(1), 0.0, 1, kGrid), InvalidInput);
}

TEST(Projection, AffineFieldsAreRecovered) {
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int n : {1, 2}) {
    for (int k = 0; k < 20; ++k) {
      std::vector<double> a(2 * n);
      for (double& v : a) v = u(gen);
      const double b = u(gen);
      const ScalarField f = affine_field(a, b);
      Point x(n);
      for (int j = 0; j < 2 * n; ++j) x.z[j] = u(gen);
      x.t = u(gen);
      const double r = std::exp(u(gen));
      // f(y) = b + a.z_x + a.(y - x) around x.
      double bx = b;
      for (int j = 0; j < 2 * n; ++j) bx += a[j] * x.z[j];
      for (auto fit : {fit_moment, fit_normal_equations}) {
        const AffineMap A = fit(f, x, r, 1, QuadSpec::grid(n == 1 ? 16 : 8));
        EXPECT_NEAR(A.b, bx, 1e-10 * (1 + std::abs(bx)));
        for (int j = 0; j < 2 * n; ++j) EXPECT_NEAR(A.a[j], a[j], 1e-10 * (1 + std::abs(a[j])));
      }
    }
  }
}

TEST(Projection, MomentAndNormalEquationsAgree) {
  const ScalarField g = catalog("gaussian", 1);
  for (const Point& x : {origin(1), Point({0.4, -0.3}, 0.2)}) {
    for (double r : {0.1, 1.0, 5.0}) {
      const AffineMap m = fit_moment(g, x, r, 1, kGrid);
      const AffineMap ne = fit_normal_equations(g, x, r, 1, kGrid);
      // Compare b and r a_j, the coefficients in unit-ball coordinates.
      const double scale = std::max({std::abs(m.b), std::abs(m.a[0]) * r, std::abs(m.a[1]) * r});
      double diff = std::abs(m.b - ne.b);
      for (int j = 0; j < 2; ++j) diff = std::max(diff, r * std::abs(m.a[j] - ne.a[j]));
      EXPECT_LE(diff / scale, 1e-6) << "r=" << r;
    }
  }
}

TEST(Projection, SquaredCoordinateMatchesSecondMoment) {
  const ScalarField q = catalog("quadratic", {{"j", "1"}, {"k", "1"}}, 1);
  const QuadSpec fine = QuadSpec::grid(64);
  const AffineMap A = fit_normal_equations(q, origin(1), 1.0, 1, fine);
  EXPECT_NEAR(A.b / (2.0 / (3.0 * M_PI)), 1.0, 5e-3);
  EXPECT_NEAR(A.a[0], 0.0, 1e-12);
  EXPECT_NEAR(A.a[1], 0.0, 1e-12);
  EXPECT_DOUBLE_EQ(fit_moment(q, origin(1), 1.0, 1, fine).b, ball_rule(1, fine)->second_moment[0]);
}

TEST(Projection, Idempotent) {
  const ScalarField w = catalog("vertical-wave", {{"omega", "4"}}, 1);
  const Point x({0.3, 0.1}, -0.2);
  for (auto fit : {fit_moment, fit_normal_equations}) {
    const AffineMap A = fit(w, x, 0.9, 1, kGrid);
    const AffineMap AA = fit(from_map(A), x, 0.9, 1, kGrid);
    EXPECT_LE(max_coef_diff(A, AA), 1e-10);
  }
}

TEST(Projection, Linear) {
  const ScalarField f = catalog("gaussian", 1);
  const ScalarField g = catalog("vertical-wave", {{"omega", "2"}}, 1);
  const ScalarField h = linear_combination(2.0, f, -3.0, g);
  const Point x({0.2, 0.7}, 0.5);
  for (auto fit : {fit_moment, fit_normal_equations}) {
    const AffineMap F = fit(f, x, 1.2, 1, kGrid), G = fit(g, x, 1.2, 1, kGrid), H = fit(h, x, 1.2, 1, kGrid);
    EXPECT_NEAR(H.b, 2.0 * F.b - 3.0 * G.b, 1e-12);
    for (int j = 0; j < 2; ++j) EXPECT_NEAR(H.a[j], 2.0 * F.a[j] - 3.0 * G.a[j], 1e-12);
  }
}

TEST(Projection, IndependentOfVerticalCoordinate) {
  const AffineMap A = fit_moment(catalog("gaussian", 1), Point({0.3, 0.2}, 0.0), 1.0, 1, kGrid);
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int k = 0; k < 100; ++k) {
    const Point p({u(gen), u(gen)}, u(gen));
    Point q = p;
    q.t = u(gen);
    EXPECT_EQ(A(p), A(q));
  }
}

TEST(Projection, SupBoundedByAverage) {
  // ||A||_{L^inf(B)} <= K avg_B |f| with K from projection_sup_constant.
  std::mt19937_64 gen(31);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (const ScalarField& f : {catalog("gaussian", 1), catalog("bump", 1),
                               catalog("vertical-wave", {{"omega", "4"}}, 1)}) {
    for (int k = 0; k < 20; ++k) {
      const Point x({u(gen), u(gen)}, u(gen));
      const double r = std::exp(2.0 * u(gen));
      for (int d : {0, 1}) {
        const AffineMap A = fit_moment(f, x, r, d, kGrid);
        const double avg = ball_integrate([&](const Point& y) { return std::abs(f(y)); }, x, r, kGrid).value;
        if (avg < 1e-300) continue;
        EXPECT_LE(A.sup_on_ball(r), projection_sup_constant(1, d) * avg * (1 + 1e-9)) << f.label;
      }
    }
  }
}

TEST(ResidualOrthogonality, Examples) {
  const ScalarField aff = affine_field({1.5, -0.5}, 2.0);
  const Point x({0.2, 0.3}, 0.4);
  const AffineMap A = fit_moment(aff, x, 0.8, 1, kGrid);
  for (const Estimate& e : residual_orthogonality(aff, A, x, 0.8, kGrid)) EXPECT_LE(std::abs(e.value), 1e-10);

  AffineMap shifted = A;
  shifted.b += 1.0;
  EXPECT_NEAR(residual_orthogonality(aff, shifted, x, 0.8, kGrid)[0].value, -1.0, 1e-12);

  const ScalarField g = catalog("gaussian", 1);
  const AffineMap G = fit_moment(g, x, 0.8, 1, kGrid);
  for (const Estimate& e : residual_orthogonality(g, G, x, 0.8, kGrid)) EXPECT_LE(std::abs(e.value), 1e-10);

  // A random template has nonzero mixed moments, so only the normal
  // equations are orthogonal on it.
  const QuadSpec mc = QuadSpec::montecarlo(100000, 11);
  const AffineMap M = fit_normal_equations(g, x, 0.8, 1, mc);
  for (const Estimate& e : residual_orthogonality(g, M, x, 0.8, mc)) {
    EXPECT_LE(std::abs(e.value), 3.0 * e.stderr_);
  }
}
