#pragma once

// Square functions
//
//   G_a f(x) = ( int_0^inf [ r^{-a} beta_{f,floor(a),q}(B(x,r)) ]^2 dr/r )^{1/2},
//   S_a f(x) = ( int_0^inf [ r^{-a} avg_{B(r)} |f(x.y) - f(x)| dy ]^2 dr/r )^{1/2},
//
// truncated to a ScaleGrid. Each result carries bounds for the discarded
// head (r < r_min, from the measured small-r slope) and tail (r > r_max,
// from the L^1 decay of ball averages).

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "heis/beta.hpp"
#include "heis/fields.hpp"
#include "heis/parallel.hpp"
#include "heis/quad.hpp"

namespace heis {

struct SquareFnResult {
  Point x;
  double alpha = 1.0;
  double value = 0.0;
  double truncation_low = 0.0;
  double truncation_high = 0.0;
  ScaleGrid grid;

  // sqrt(value^2 + low^2 + high^2): an upper estimate of the untruncated
  // square function.
  double upper() const {
    return std::sqrt(value * value + truncation_low * truncation_low +
                     truncation_high * truncation_high);
  }
};

inline int degree_for_alpha(double alpha) { return static_cast<int>(std::floor(alpha)); }

inline void check_alpha(double alpha, double hi) {
  if (!(alpha > 0.0 && alpha < hi)) {
    throw InvalidInput("alpha must lie in (0, " + std::to_string(static_cast<int>(hi)) +
                       "), got " + std::to_string(alpha));
  }
}

// Constant K with ||A^d_{x,r}||_{L^inf(B)} <= K avg_B |f| for the exact
// projection: |b| <= avg|f| and |a_j| r <= avg|f| / avg_{B(0,1)} w_j^2.
inline double projection_sup_constant(int n, int d) {
  if (d == 0) return 1.0;
  return 1.0 + std::sqrt(2.0 * n) / unit_ball_second_moment(n);
}

namespace detail {

// Slope of log(v) against log(r) over the first few positive nodes.
inline std::optional<double> head_slope(const std::vector<double>& radii,
                                        const std::vector<double>& v, int points = 4) {
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < v.size() && static_cast<int>(lx.size()) < points; ++i) {
    if (v[i] > 0.0) {
      lx.push_back(std::log(radii[i]));
      ly.push_back(std::log(v[i]));
    } else if (!lx.empty()) {
      break;
    }
  }
  if (lx.size() < 2) return std::nullopt;
  const double m = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double den = m * sxx - sx * sx;
  if (den == 0.0) return std::nullopt;
  return (m * sxy - sx * sy) / den;
}

// Head bound: if the scale quantity behaves like r^slope below r_min, then
// int_0^{r_min} [r^{-a} v]^2 dr/r = [r_min^{-a} v_0]^2 / (2 (slope - a)).
inline double head_truncation(const std::vector<double>& radii, const std::vector<double>& v,
                              double alpha) {
  if (std::all_of(v.begin(), v.end(), [](double a) { return a <= kDegenerateBeta; })) return 0.0;
  const double g0 = std::pow(radii.front(), -alpha) * v.front();
  double peak = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) peak = std::max(peak, std::pow(radii[i], -alpha) * v[i]);
  // Far from the mass of f the small-r profile is rounding noise with no
  // usable slope; it sits many orders below the peak and is reported as is.
  if (g0 <= 1e-10 * peak) return g0;
  const auto slope = head_slope(radii, v);
  if (!slope || *slope <= alpha) return std::numeric_limits<double>::infinity();
  return std::sqrt(g0 * g0 / (2.0 * (*slope - alpha)));
}

inline double scale_integral_sqrt(const std::vector<double>& radii, const std::vector<double>& v,
                                  double alpha, const ScaleGrid& grid) {
  std::vector<double> integrand(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double g = std::pow(radii[i], -alpha) * v[i];
    integrand[i] = g * g;
  }
  return std::sqrt(log_scale_integrate(integrand, grid));
}

}  // namespace detail

// Tail bound for G: beta_{f,d,q}(B(x,r)) <= (1+K) sup^{1-1/q} (||f||_1 / |B(r)|)^{1/q}.
inline double g_alpha_tail(const ScalarField& f, double alpha, double q, int d, double r_max) {
  if (!f.l1_bound) return std::numeric_limits<double>::infinity();
  if (q > 1.0 && !f.sup_bound) return std::numeric_limits<double>::infinity();
  const int n = f.n;
  const double K = projection_sup_constant(n, d);
  const double c = (1.0 + K) * (q > 1.0 ? std::pow(*f.sup_bound, 1.0 - 1.0 / q) : 1.0) *
                   std::pow(*f.l1_bound / unit_ball_volume(n), 1.0 / q);
  const double kappa = alpha + homogeneous_dimension(n) / q;
  return c * std::pow(r_max, -kappa) / std::sqrt(2.0 * kappa);
}

// G_a with an explicit ball rule; q selects the L^q beta-numbers.
inline SquareFnResult g_alpha_with_rule(const ScalarField& f, const BallRule& rule, const Point& x,
                                        double alpha, const ScaleGrid& grid, double q,
                                        std::vector<double>& scratch) {
  const int d = degree_for_alpha(alpha);
  const auto radii = grid.nodes();
  std::vector<double> betas(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    betas[i] = beta_value(rule, f.eval, x, radii[i], d, q, scratch);
  }
  SquareFnResult out;
  out.x = x;
  out.alpha = alpha;
  out.grid = grid;
  out.value = detail::scale_integral_sqrt(radii, betas, alpha, grid);
  out.truncation_low = detail::head_truncation(radii, betas, alpha);
  const bool negligible =
      std::all_of(betas.begin(), betas.end(), [](double b) { return b <= kDegenerateBeta; });
  out.truncation_high = negligible ? 0.0 : g_alpha_tail(f, alpha, q, d, grid.r_max);
  return out;
}

inline SquareFnResult g_alpha(const ScalarField& f, const Point& x, double alpha,
                              const ScaleGrid& grid, const QuadSpec& spec, double q = 1.0) {
  check_alpha(alpha, 2.0);
  check_q(q);
  grid.validate();
  require_same_dim(Point(f.n), x);
  const auto rule = ball_rule(x.n, spec);
  std::vector<double> scratch;
  return g_alpha_with_rule(f, *rule, x, alpha, grid, q, scratch);
}

inline SquareFnResult s_alpha(const ScalarField& f, const Point& x, double alpha,
                              const ScaleGrid& grid, const QuadSpec& spec) {
  check_alpha(alpha, 1.0);
  grid.validate();
  require_same_dim(Point(f.n), x);
  const auto rule = ball_rule(x.n, spec);
  const double fx = f.eval(x);
  const auto radii = grid.nodes();
  std::vector<double> diffs(radii.size()), scratch;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    evaluate_on_ball(*rule, f.eval, x, radii[i], scratch);
    double s = 0.0;
    for (double v : scratch) s += std::abs(v - fx);
    diffs[i] = s / static_cast<double>(scratch.size());
  }
  SquareFnResult out;
  out.x = x;
  out.alpha = alpha;
  out.grid = grid;
  out.value = detail::scale_integral_sqrt(radii, diffs, alpha, grid);
  out.truncation_low = detail::head_truncation(radii, diffs, alpha);
  // avg |f(x.y) - f(x)| <= |f(x)| + L r^{-Q} with L = ||f||_1 / |B(0,1)|.
  const double a = alpha;
  const double rm = grid.r_max;
  const double f0 = std::abs(fx);
  if (std::all_of(diffs.begin(), diffs.end(), [](double v) { return v <= kDegenerateBeta; })) {
    out.truncation_high = 0.0;
  } else if (f.l1_bound) {
    const int Q = homogeneous_dimension(f.n);
    const double L = *f.l1_bound / unit_ball_volume(f.n);
    const double t2 = f0 * f0 * std::pow(rm, -2 * a) / (2 * a) +
                      2 * f0 * L * std::pow(rm, -2 * a - Q) / (2 * a + Q) +
                      L * L * std::pow(rm, -2 * a - 2 * Q) / (2 * a + 2 * Q);
    out.truncation_high = std::sqrt(t2);
  } else if (f.sup_bound) {
    out.truncation_high = (f0 + *f.sup_bound) * std::pow(rm, -a) / std::sqrt(2 * a);
  } else {
    out.truncation_high = std::numeric_limits<double>::infinity();
  }
  return out;
}

struct SquareFnNorm {
  double value = 0.0;
  // Upper estimate minus value: what the r-range truncation could add.
  double scale_truncation = 0.0;
  // Estimate of the L^p mass outside the box (shell extrapolation, see below).
  double tail_bound = 0.0;
  std::vector<double> node_values;
};

inline SquareFnNorm g_alpha_lp_norm_on_rule(const ScalarField& f, double alpha, double p,
                                            const DomainRule& domain, const ScaleGrid& grid,
                                            const QuadSpec& ball_spec, double q = 1.0) {
  check_alpha(alpha, 2.0);
  check_q(q);
  if (!(p > 1.0)) throw InvalidInput("L^p exponent must be > 1, got " + std::to_string(p));
  grid.validate();
  const auto rule = ball_rule(f.n, ball_spec);
  std::vector<double> values(domain.size()), uppers(domain.size());
  parallel_for(domain.size(), [&](std::size_t i) {
    thread_local std::vector<double> scratch;
    const SquareFnResult g = g_alpha_with_rule(f, *rule, domain.nodes[i], alpha, grid, q, scratch);
    values[i] = g.value;
    uppers[i] = g.upper();
  });
  SquareFnNorm out;
  out.value = weighted_lp(domain, values, p);
  const double upper = weighted_lp(domain, uppers, p);
  out.scale_truncation = std::isfinite(upper) ? upper - out.value : upper;

  // Outside the box G is extrapolated from the shell R/2 <= N < R under the
  // decay G ~ N^{-(alpha + Q/q)} of a field with integrable mass:
  // int_{N>R} G^p = int_{shell} G^p / (2^{p kappa - Q} - 1).
  const int Q = homogeneous_dimension(f.n);
  const double kappa = alpha + Q / q;
  const double R = domain.box_radius;
  double shell = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < domain.size(); ++i) {
    const double N = gauge(domain.nodes[i]);
    if (N >= 0.5 * R && N < R) {
      any = true;
      shell += domain.weights[i] * std::pow(uppers[i], p);
    }
  }
  if (!any || !(p * kappa > Q) || !std::isfinite(shell)) {
    out.tail_bound = std::numeric_limits<double>::infinity();
  } else {
    out.tail_bound = std::pow(shell / (std::pow(2.0, p * kappa - Q) - 1.0), 1.0 / p);
  }
  out.node_values = std::move(values);
  return out;
}

inline SquareFnNorm g_alpha_lp_norm(const ScalarField& f, double alpha, double p,
                                    double box_radius, const ScaleGrid& grid,
                                    const QuadSpec& ball_spec, const QuadSpec& domain_spec,
                                    double q = 1.0, double stretch = kDefaultStretch) {
  const DomainRule domain = domain_rule(f.n, box_radius, domain_spec, stretch);
  return g_alpha_lp_norm_on_rule(f, alpha, p, domain, grid, ball_spec, q);
}

struct GradientComparison {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool degenerate = false;
};

// lhs = beta_{f,1}(B(x,r)), rhs = r sum_j beta_{X_j f,0}(B(x,Cr)).
inline GradientComparison gradient_comparison(const ScalarField& f, const Point& x, double r,
                                              double C = 4.0, const QuadSpec& spec = {}) {
  if (!(C >= 1.0)) throw InvalidInput("enlargement constant C must be >= 1");
  check_radius(r);
  GradientComparison out;
  out.lhs = beta_number(f, x, r, 1, 1.0, spec).value;
  for (int j = 0; j < 2 * f.n; ++j) {
    out.rhs += beta_number(horizontal_partial(f, j), x, C * r, 0, 1.0, spec).value;
  }
  out.rhs *= r;
  if (out.rhs <= kDegenerateBeta) {
    out.degenerate = true;
    out.ratio = out.lhs <= kDegenerateBeta ? 0.0 : std::numeric_limits<double>::infinity();
  } else {
    out.ratio = out.lhs / out.rhs;
  }
  return out;
}

}  // namespace heis
