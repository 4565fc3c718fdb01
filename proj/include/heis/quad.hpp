#pragma once

// Quadrature over Koranyi balls, over a truncated copy of H^n, and over
// logarithmic scale ranges.
//
// Ball averages use a *centered template*: a fixed point set in the unit
// ball B(0,1), mapped to B(x,r) by y = x . delta_r(w). Reusing the template
// across centers and radii makes translation and dilation identities hold
// to rounding error (common random numbers).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "heis/errors.hpp"
#include "heis/hgroup.hpp"
#include "heis/parallel.hpp"
#include "heis/rng.hpp"

namespace heis {

enum class QuadMode { grid, montecarlo };

inline std::string to_string(QuadMode m) { return m == QuadMode::grid ? "grid" : "mc"; }

struct QuadSpec {
  QuadMode mode = QuadMode::grid;
  // Monte Carlo: number of accepted points.
  std::int64_t samples = 100000;
  std::uint64_t seed = 42;
  // Grid: midpoints per axis of the bounding box.
  int grid_per_axis = 16;

  void validate() const {
    if (samples < 1) throw InvalidInput("quadrature samples must be >= 1");
    if (grid_per_axis < 1) throw InvalidInput("grid_per_axis must be >= 1");
  }

  static QuadSpec grid(int per_axis) {
    QuadSpec s;
    s.mode = QuadMode::grid;
    s.grid_per_axis = per_axis;
    return s;
  }
  static QuadSpec montecarlo(std::int64_t samples, std::uint64_t seed) {
    QuadSpec s;
    s.mode = QuadMode::montecarlo;
    s.samples = samples;
    s.seed = seed;
    return s;
  }
};

struct Estimate {
  double value = 0.0;
  double stderr_ = 0.0;
};

// Geometric scale nodes r_min = r_0 < ... < r_K = r_max with uniform
// spacing in log r.
struct ScaleGrid {
  double r_min = 1e-3;
  double r_max = 1e2;
  int points_per_decade = 16;

  void validate() const {
    if (!(r_min > 0.0) || !(r_max > r_min) || !std::isfinite(r_max)) {
      throw InvalidInput("scale grid needs 0 < r_min < r_max < inf");
    }
    if (points_per_decade < 1) throw InvalidInput("points_per_decade must be >= 1");
  }

  int intervals() const {
    validate();
    const double decades = std::log10(r_max / r_min);
    return std::max(1, static_cast<int>(std::ceil(decades * points_per_decade - 1e-9)));
  }

  double log_step() const { return std::log(r_max / r_min) / intervals(); }

  std::vector<double> nodes() const {
    const int k = intervals();
    const double h = log_step();
    std::vector<double> r(k + 1);
    for (int i = 0; i <= k; ++i) r[i] = r_min * std::exp(h * i);
    r.back() = r_max;
    return r;
  }
};

// ---------------------------------------------------------------------------
// Closed-form unit-ball constants for the gauge (|z|^4 + 16 t^2)^{1/4}.
// Slicing in z gives |B(0,1)| = int_{|z|<1} sqrt(1 - |z|^4) / 2 dz.

inline double unit_ball_volume(int n) {
  GroupParams g(n);
  // pi^n B(n/2, 3/2) / (4 Gamma(n))
  const double beta = std::tgamma(0.5 * n) * std::tgamma(1.5) / std::tgamma(0.5 * n + 1.5);
  return std::pow(M_PI, n) * beta / (4.0 * std::tgamma(static_cast<double>(n)));
}

// Average of z_1^2 over B(0,1).
inline double unit_ball_second_moment(int n) {
  const double sphere = 2.0 * std::pow(M_PI, n) / std::tgamma(static_cast<double>(n));
  const double beta =
      std::tgamma(0.5 * (n + 1)) * std::tgamma(1.5) / std::tgamma(0.5 * (n + 1) + 1.5);
  const double integral = sphere * 0.125 * beta / (2.0 * n);
  return integral / unit_ball_volume(n);
}

inline double ball_volume(double r, int n) {
  if (!(r > 0.0)) throw InvalidInput("ball radius must be positive");
  return unit_ball_volume(n) * std::pow(r, homogeneous_dimension(n));
}

// ---------------------------------------------------------------------------
// Centered unit-ball template.

struct BallRule {
  int n = 1;
  QuadSpec spec;
  std::vector<Point> points;  // all with N(w) < 1
  // Template averages of w_j^2 (j < 2n): the field-independent
  // denominators of the degree-one projection, at r = 1.
  HVec second_moment{};
  // Grid mode: the same construction at half resolution, for error estimates.
  std::shared_ptr<const BallRule> coarse;

  std::size_t size() const { return points.size(); }
};

namespace detail {

inline std::shared_ptr<BallRule> build_ball_rule(int n, const QuadSpec& spec, bool with_coarse) {
  spec.validate();
  auto rule = std::make_shared<BallRule>();
  rule->n = n;
  rule->spec = spec;
  const int dim = 2 * n;
  if (spec.mode == QuadMode::grid) {
    const int g = spec.grid_per_axis;
    std::vector<int> idx(dim + 1, 0);
    const double hz = 2.0 / g;
    const double ht = 0.5 / g;
    for (;;) {
      Point w(n);
      for (int j = 0; j < dim; ++j) w.z[j] = -1.0 + (idx[j] + 0.5) * hz;
      w.t = -0.25 + (idx[dim] + 0.5) * ht;
      if (gauge_pow4(w) < 1.0) rule->points.push_back(w);
      int a = 0;
      while (a <= dim && ++idx[a] == g) idx[a++] = 0;
      if (a > dim) break;
    }
    if (with_coarse && g >= 4) {
      QuadSpec cs = spec;
      cs.grid_per_axis = g / 2;
      rule->coarse = build_ball_rule(n, cs, false);
    }
  } else {
    Rng rng(spec.seed, Stream::kBallTemplate);
    rule->points.reserve(static_cast<std::size_t>(spec.samples));
    while (static_cast<std::int64_t>(rule->points.size()) < spec.samples) {
      Point w(n);
      for (int j = 0; j < dim; ++j) w.z[j] = rng.uniform(-1.0, 1.0);
      w.t = rng.uniform(-0.25, 0.25);
      if (gauge_pow4(w) < 1.0) rule->points.push_back(w);
    }
  }
  if (rule->points.empty()) {
    throw NumericError("ball template is empty; increase grid_per_axis");
  }
  for (int j = 0; j < dim; ++j) {
    double s = 0.0;
    for (const auto& w : rule->points) s += w.z[j] * w.z[j];
    rule->second_moment[j] = s / static_cast<double>(rule->points.size());
  }
  return rule;
}

}  // namespace detail

// Cached template for (n, spec); built once, read-only afterwards.
inline std::shared_ptr<const BallRule> ball_rule(int n, const QuadSpec& spec) {
  GroupParams g(n);
  using Key = std::tuple<int, int, std::int64_t, std::uint64_t, int>;
  static std::mutex mutex;
  static std::map<Key, std::shared_ptr<const BallRule>> cache;
  const Key key = spec.mode == QuadMode::grid
                      ? Key{n, 0, 0, 0, spec.grid_per_axis}
                      : Key{n, 1, spec.samples, spec.seed, 0};
  std::lock_guard lock(mutex);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto rule = detail::build_ball_rule(n, spec, true);
  cache.emplace(key, rule);
  return rule;
}

// y = center . delta_r(w), written into out.
inline void map_template_point(const Point& center, double r, const Point& w, Point& out) {
  out.n = center.n;
  double sym = 0.0;
  for (int j = 0; j < center.n; ++j) {
    sym += center.z[j] * w.z[center.n + j] - center.z[center.n + j] * w.z[j];
  }
  for (int j = 0; j < 2 * center.n; ++j) out.z[j] = center.z[j] + r * w.z[j];
  out.t = center.t + r * r * w.t + 0.5 * r * sym;
}

inline void check_radius(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw InvalidInput("ball radius must be positive and finite, got " + std::to_string(r));
  }
}

// Evaluates f on every node of B(center, r); values[k] pairs with
// rule.points[k].
template <class F>
void evaluate_on_ball(const BallRule& rule, F&& f, const Point& center, double r,
                      std::vector<double>& values) {
  values.resize(rule.size());
  Point y;
  for (std::size_t k = 0; k < rule.size(); ++k) {
    map_template_point(center, r, rule.points[k], y);
    const double v = f(y);
    if (!std::isfinite(v)) {
      throw NumericError("non-finite integrand at node " + to_string(y));
    }
    values[k] = v;
  }
}

inline double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline double mc_stderr(const std::vector<double>& v, double m) {
  if (v.size() < 2) return std::numeric_limits<double>::infinity();
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

// Average of f over B(center, r) with an error estimate (MC standard error,
// or the fine/coarse grid discrepancy).
template <class F>
Estimate ball_integrate(F&& f, const Point& center, double r, const QuadSpec& spec) {
  check_radius(r);
  const auto rule = ball_rule(center.n, spec);
  std::vector<double> values;
  evaluate_on_ball(*rule, f, center, r, values);
  Estimate e;
  e.value = mean(values);
  if (spec.mode == QuadMode::montecarlo) {
    e.stderr_ = mc_stderr(values, e.value);
  } else if (rule->coarse) {
    std::vector<double> coarse;
    evaluate_on_ball(*rule->coarse, f, center, r, coarse);
    e.stderr_ = std::abs(e.value - mean(coarse));
  } else {
    e.stderr_ = std::numeric_limits<double>::infinity();
  }
  return e;
}

// ---------------------------------------------------------------------------
// Scale integrals.

// Weights (in units of the log step) of the composite Simpson rule on k
// intervals; an odd k closes with the 3/8 rule, k = 1 is the trapezoid.
// The plain trapezoid is off by ~(ch)^2/12 on r^c integrands, which is
// 2e-3 at 32 nodes per decade for c = 2.
inline std::vector<double> log_scale_weights(int k) {
  std::vector<double> w(k + 1, 0.0);
  if (k == 1) {
    w[0] = w[1] = 0.5;
    return w;
  }
  const int simpson = k % 2 == 0 ? k : k - 3;
  for (int i = 0; i < simpson; i += 2) {
    w[i] += 1.0 / 3.0;
    w[i + 1] += 4.0 / 3.0;
    w[i + 2] += 1.0 / 3.0;
  }
  if (simpson != k) {
    w[k - 3] += 3.0 / 8.0;
    w[k - 2] += 9.0 / 8.0;
    w[k - 1] += 9.0 / 8.0;
    w[k] += 3.0 / 8.0;
  }
  return w;
}

// Simpson rule in log r of precomputed node values.
inline double log_scale_integrate(const std::vector<double>& values, const ScaleGrid& grid) {
  const int k = grid.intervals();
  if (static_cast<int>(values.size()) != k + 1) {
    throw InvalidInput("scale values do not match the grid node count");
  }
  const double h = grid.log_step();
  const auto nodes = grid.nodes();
  const auto w = log_scale_weights(k);
  double s = 0.0;
  for (int i = 0; i <= k; ++i) {
    if (!std::isfinite(values[i])) {
      throw NumericError("non-finite scale integrand at r=" + std::to_string(nodes[i]));
    }
    s += w[i] * values[i];
  }
  return s * h;
}

inline double log_scale_integrate(const std::function<double(double)>& g, const ScaleGrid& grid) {
  const auto nodes = grid.nodes();
  std::vector<double> values(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) values[i] = g(nodes[i]);
  return log_scale_integrate(values, grid);
}

// ---------------------------------------------------------------------------
// Truncated-domain integration.
//
// The domain is the gauge box |z_j| <= R, |t| <= R^2, which contains
// B(0,R). Nodes are a tensor rule in u in (-1,1)^{2n+1} pushed through the
// stretch map L sinh(k u) / sinh(k) (L = R for z, R^2 for t; k for z and
// 2k for t), which resolves both narrow and wide fields without a
// prohibitive node count. stretch = 0 gives a uniform grid.

struct DomainRule {
  int n = 1;
  double box_radius = 1.0;
  std::vector<Point> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

inline constexpr double kDefaultStretch = 3.0;

namespace detail {

struct AxisMap {
  double length;
  double k;
  double value(double u) const { return k > 0 ? length * std::sinh(k * u) / std::sinh(k) : length * u; }
  double derivative(double u) const {
    return k > 0 ? length * k * std::cosh(k * u) / std::sinh(k) : length;
  }
};

}  // namespace detail

inline DomainRule domain_rule(int n, double box_radius, const QuadSpec& spec,
                              double stretch = kDefaultStretch) {
  GroupParams gp(n);
  spec.validate();
  if (!(box_radius > 0.0)) throw InvalidInput("box_radius must be positive");
  if (!(stretch >= 0.0)) throw InvalidInput("stretch must be >= 0");
  DomainRule rule;
  rule.n = n;
  rule.box_radius = box_radius;
  const int dim = 2 * n;
  const detail::AxisMap zmap{box_radius, stretch};
  const detail::AxisMap tmap{box_radius * box_radius, 2.0 * stretch};

  if (spec.mode == QuadMode::grid) {
    const int g = spec.grid_per_axis;
    const double du = 2.0 / g;
    std::vector<double> zv(g), zw(g), tv(g), tw(g);
    for (int i = 0; i < g; ++i) {
      const double u = -1.0 + (i + 0.5) * du;
      zv[i] = zmap.value(u);
      zw[i] = zmap.derivative(u) * du;
      tv[i] = tmap.value(u);
      tw[i] = tmap.derivative(u) * du;
    }
    std::vector<int> idx(dim + 1, 0);
    for (;;) {
      Point x(n);
      double w = 1.0;
      for (int j = 0; j < dim; ++j) {
        x.z[j] = zv[idx[j]];
        w *= zw[idx[j]];
      }
      x.t = tv[idx[dim]];
      w *= tw[idx[dim]];
      rule.nodes.push_back(x);
      rule.weights.push_back(w);
      int a = 0;
      while (a <= dim && ++idx[a] == g) idx[a++] = 0;
      if (a > dim) break;
    }
  } else {
    Rng rng(spec.seed, Stream::kDomain);
    const auto m = static_cast<std::size_t>(spec.samples);
    rule.nodes.reserve(m);
    rule.weights.reserve(m);
    for (std::size_t s = 0; s < m; ++s) {
      Point x(n);
      double w = 1.0 / static_cast<double>(m);
      for (int j = 0; j < dim; ++j) {
        const double u = rng.uniform(-1.0, 1.0);
        x.z[j] = zmap.value(u);
        w *= 2.0 * zmap.derivative(u);
      }
      const double u = rng.uniform(-1.0, 1.0);
      x.t = tmap.value(u);
      w *= 2.0 * tmap.derivative(u);
      rule.nodes.push_back(x);
      rule.weights.push_back(w);
    }
  }
  return rule;
}

// Evaluates g on every domain node, in parallel, deterministically.
template <class G>
std::vector<double> evaluate_on_domain(const DomainRule& rule, G&& g) {
  std::vector<double> values(rule.size());
  parallel_for(rule.size(), [&](std::size_t i) {
    const double v = g(rule.nodes[i]);
    if (!std::isfinite(v)) {
      throw NumericError("non-finite integrand at domain node " + to_string(rule.nodes[i]));
    }
    values[i] = v;
  });
  return values;
}

// (sum_i w_i |v_i|^p)^{1/p}, summed in node order.
inline double weighted_lp(const DomainRule& rule, const std::vector<double>& values, double p) {
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) s += rule.weights[i] * std::pow(std::abs(values[i]), p);
  return std::pow(s, 1.0 / p);
}

// Upper bound for (int_{N(x) >= rho0} bound(N(x))^p dx)^{1/p}, assuming
// |g| <= bound(N) beyond support_radius and |g| <= sup_bound inside it.
// Shell sums use ball_volume differences and the larger endpoint value.
inline double tail_lp_bound(const std::function<double(double)>& bound, double support_radius,
                            std::optional<double> sup_bound, double rho0, double p, int n) {
  if (!bound) return std::numeric_limits<double>::infinity();
  double total = 0.0;
  double start = rho0;
  if (rho0 < support_radius) {
    if (!sup_bound) return std::numeric_limits<double>::infinity();
    total += std::pow(*sup_bound, p) * ball_volume(support_radius, n);
    start = support_radius;
  }
  const double ratio = 1.0 + 1.0 / 128.0;
  double rho = std::max(start, 1e-12);
  double prev_vol = start > 0.0 ? ball_volume(start, n) : 0.0;
  double prev_b = std::pow(std::abs(bound(rho)), p);
  for (int iter = 0; iter < 200000; ++iter) {
    const double next = rho * ratio;
    const double vol = ball_volume(next, n);
    const double nb = std::pow(std::abs(bound(next)), p);
    total += std::max(prev_b, nb) * (vol - prev_vol);
    prev_vol = vol;
    prev_b = nb;
    rho = next;
    // Stop once the remaining mass is negligible (bound must decay faster
    // than rho^{-Q}; polynomially decaying bounds are handled by callers).
    if (nb * vol < 1e-30 * std::max(total, 1e-300) || (nb == 0.0 && rho > 2.0 * start)) break;
    if (!std::isfinite(total)) return std::numeric_limits<double>::infinity();
  }
  return std::pow(total, 1.0 / p);
}

struct LpResult {
  double value = 0.0;
  double tail_bound = 0.0;
};

// L^p norm over the gauge box plus an explicit bound for the complement
// (infinite when no decay information is supplied).
struct TailInfo {
  std::function<double(double)> decay_bound;
  double support_radius = 0.0;
  std::optional<double> sup_bound;
};

template <class F>
LpResult domain_integrate_lp(F&& f, double p, double box_radius, const QuadSpec& spec, int n,
                             const std::optional<TailInfo>& tail = std::nullopt,
                             double stretch = kDefaultStretch) {
  if (!(p >= 1.0)) throw InvalidInput("L^p exponent must be >= 1, got " + std::to_string(p));
  const DomainRule rule = domain_rule(n, box_radius, spec, stretch);
  const auto values = evaluate_on_domain(rule, f);
  LpResult out;
  out.value = weighted_lp(rule, values, p);
  out.tail_bound = tail ? tail_lp_bound(tail->decay_bound, tail->support_radius, tail->sup_bound,
                                        box_radius, p, n)
                        : std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace heis
