#pragma once

// beta_{f,d,q}(B(x,r)) = ( avg_{B(x,r)} |f - A^d_{x,r}|^q )^{1/q}.

#include <cmath>
#include <limits>
#include <vector>

#include "heis/affine.hpp"
#include "heis/errors.hpp"
#include "heis/fields.hpp"
#include "heis/parallel.hpp"
#include "heis/quad.hpp"

namespace heis {

inline void check_q(double q) {
  if (!(q >= 1.0) || !std::isfinite(q)) {
    throw InvalidInput("beta exponent q must be finite and >= 1, got " + std::to_string(q));
  }
}

struct BetaSample {
  double value = 0.0;
  // Sample standard error of avg |f - A|^q, propagated through the q-th root.
  double mc_stderr = 0.0;
};

// beta from field values already evaluated on the template nodes of B(x,r).
inline BetaSample beta_from_values(const BallRule& rule, const std::vector<double>& values,
                                   const Point& x, double r, int d, double q) {
  const AffineMap A = fit_moment_values(rule, values, x, r, d);
  const std::size_t m = values.size();
  double s = 0.0, s2 = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double dev = std::abs(values[k] - A.at_template(rule.points[k], r));
    const double e = q == 1.0 ? dev : std::pow(dev, q);
    s += e;
    s2 += e * e;
  }
  const double mq = s / static_cast<double>(m);
  BetaSample out;
  out.value = q == 1.0 ? mq : std::pow(mq, 1.0 / q);
  if (m > 1) {
    const double var = std::max(0.0, (s2 - s * mq) / static_cast<double>(m - 1));
    const double se = std::sqrt(var / static_cast<double>(m));
    out.mc_stderr = mq > 0.0 ? se * std::pow(mq, 1.0 / q - 1.0) / q : 0.0;
  } else {
    out.mc_stderr = std::numeric_limits<double>::infinity();
  }
  return out;
}

// Value only; the workhorse of scale profiles.
template <class F>
double beta_value(const BallRule& rule, F&& f, const Point& x, double r, int d, double q,
                  std::vector<double>& scratch) {
  evaluate_on_ball(rule, f, x, r, scratch);
  return beta_from_values(rule, scratch, x, r, d, q).value;
}

inline Estimate beta_number(const ScalarField& f, const Point& x, double r, int d, double q,
                            const QuadSpec& spec) {
  check_degree(d);
  check_q(q);
  check_radius(r);
  require_same_dim(Point(f.n), x);
  const auto rule = ball_rule(x.n, spec);
  std::vector<double> values;
  evaluate_on_ball(*rule, f.eval, x, r, values);
  const BetaSample fine = beta_from_values(*rule, values, x, r, d, q);
  Estimate e{fine.value, fine.mc_stderr};
  if (spec.mode == QuadMode::grid) {
    if (rule->coarse) {
      std::vector<double> coarse_values;
      evaluate_on_ball(*rule->coarse, f.eval, x, r, coarse_values);
      e.stderr_ = std::abs(fine.value -
                           beta_from_values(*rule->coarse, coarse_values, x, r, d, q).value);
    } else {
      e.stderr_ = std::numeric_limits<double>::infinity();
    }
  }
  return e;
}

struct BetaProfile {
  Point x;
  int d = 1;
  double q = 1.0;
  ScaleGrid grid;
  std::vector<double> radii;
  std::vector<double> values;
  std::vector<double> stderrs;
};

inline BetaProfile beta_profile(const ScalarField& f, const Point& x, int d, double q,
                                const ScaleGrid& grid, const QuadSpec& spec) {
  check_degree(d);
  check_q(q);
  BetaProfile p;
  p.x = x;
  p.d = d;
  p.q = q;
  p.grid = grid;
  p.radii = grid.nodes();
  p.values.resize(p.radii.size());
  p.stderrs.resize(p.radii.size());
  ball_rule(x.n, spec);  // build the template before fanning out
  parallel_for(p.radii.size(), [&](std::size_t i) {
    const Estimate e = beta_number(f, x, p.radii[i], d, q, spec);
    p.values[i] = e.value;
    p.stderrs[i] = e.stderr_;
  });
  return p;
}

// Both betas below this are treated as zero (the comparison is vacuous).
inline constexpr double kDegenerateBeta = 1e-12;

struct MonotonicityResult {
  double ratio = 0.0;
  double inner_beta = 0.0;
  double outer_beta = 0.0;
  bool degenerate = false;
};

// beta_{f,1}(B(x1,r1)) / beta_{f,1}(B(x2,r2)) for nested balls.
inline MonotonicityResult check_monotonicity(const ScalarField& f, const Point& x1, double r1,
                                             const Point& x2, double r2, const QuadSpec& spec) {
  check_radius(r1);
  check_radius(r2);
  const double gap = distance(x1, x2) + r1;
  if (gap > r2 * (1.0 + 1e-12)) {
    throw InvalidInput("inner ball B(x1,r1) is not contained in B(x2,r2): d(x1,x2)+r1=" +
                       std::to_string(gap) + " > r2=" + std::to_string(r2));
  }
  MonotonicityResult out;
  out.inner_beta = beta_number(f, x1, r1, 1, 1.0, spec).value;
  out.outer_beta = beta_number(f, x2, r2, 1, 1.0, spec).value;
  if (out.outer_beta <= kDegenerateBeta) {
    out.degenerate = true;
    out.ratio = out.inner_beta <= kDegenerateBeta ? 0.0 : std::numeric_limits<double>::infinity();
  } else {
    out.ratio = out.inner_beta / out.outer_beta;
  }
  return out;
}

}  // namespace heis
