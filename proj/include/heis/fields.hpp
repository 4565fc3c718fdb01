#pragma once

// Scalar test fields on H^n with closed-form horizontal gradients and
// decay metadata used for truncation accounting.

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heis/errors.hpp"
#include "heis/hgroup.hpp"

namespace heis {

struct ScalarField {
  int n = 1;
  std::function<double(const Point&)> eval;
  // Optional closed-form (X_1 f, ..., X_{2n} f).
  std::function<HVec(const Point&)> analytic_hgrad;
  // |f(x)| <= decay_bound(N(x)) whenever N(x) >= support_radius.
  std::optional<double> support_radius;
  std::function<double(double)> decay_bound;
  // Same contract for |grad_H f|.
  std::function<double(double)> hgrad_decay_bound;
  std::optional<double> sup_bound;
  std::optional<double> l1_bound;
  std::string label;

  double operator()(const Point& x) const { return eval(x); }
  bool has_hgrad() const { return static_cast<bool>(analytic_hgrad); }
  bool has_decay() const { return support_radius.has_value() && static_cast<bool>(decay_bound); }
};

using FieldParams = std::map<std::string, std::string>;

// X_j f(x) (zero-based j): the analytic component if the field has one,
// otherwise the group-native central difference with step h
// (h <= 0 selects the default step 1e-4 (1 + N(x))).
inline double horizontal_derivative(const ScalarField& f, int j, const Point& x, double h = 0.0) {
  check_horizontal_index(f.n, j);
  require_same_dim(Point(f.n), x);
  if (f.has_hgrad()) {
    const double v = f.analytic_hgrad(x)[j];
    if (!std::isfinite(v)) {
      throw NumericError("non-finite analytic gradient at x=" + to_string(x) +
                         ", j=" + std::to_string(j));
    }
    return v;
  }
  return horizontal_difference(f.eval, j, x, h > 0.0 ? h : default_fd_step(x));
}

inline double horizontal_derivative_fd(const ScalarField& f, int j, const Point& x, double h) {
  return horizontal_difference(f.eval, j, x, h);
}

inline HVec hgrad(const ScalarField& f, const Point& x) {
  if (f.has_hgrad()) return f.analytic_hgrad(x);
  HVec g{};
  for (int j = 0; j < 2 * f.n; ++j) g[j] = horizontal_derivative(f, j, x);
  return g;
}

inline double hgrad_norm(const ScalarField& f, const Point& x) {
  const HVec g = hgrad(f, x);
  double s = 0.0;
  for (int j = 0; j < 2 * f.n; ++j) s += g[j] * g[j];
  return std::sqrt(s);
}

namespace detail {

inline double param_double(const FieldParams& params, const std::string& field,
                           const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) {
    throw InvalidInput("catalog field '" + field + "' requires parameter '" + key + "'");
  }
  try {
    std::size_t used = 0;
    const double v = std::stod(it->second, &used);
    if (used != it->second.size() || !std::isfinite(v)) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw InvalidInput("parameter '" + key + "' of field '" + field +
                       "' is not a finite number: '" + it->second + "'");
  }
}

inline std::vector<double> param_list(const FieldParams& params, const std::string& field,
                                      const std::string& key) {
  auto it = params.find(key);
  if (it == params.end()) {
    throw InvalidInput("catalog field '" + field + "' requires parameter '" + key + "'");
  }
  std::vector<double> out;
  std::string item;
  std::string s = it->second;
  for (char& c : s)
    if (c == '(' || c == ')' || c == '[' || c == ']') c = ' ';
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t next = s.find(',', pos);
    item = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    const FieldParams one{{key, b == std::string::npos ? "" : item.substr(b, e - b + 1)}};
    out.push_back(param_double(one, field, key));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return out;
}

// Horizontal index parameter: 1-based in the catalog ("1".."2n"), or "t".
inline int param_index(const FieldParams& params, const std::string& field,
                       const std::string& key, int n, bool allow_t) {
  auto it = params.find(key);
  if (it == params.end()) {
    throw InvalidInput("catalog field '" + field + "' requires parameter '" + key + "'");
  }
  if (allow_t && it->second == "t") return -1;
  int j = 0;
  try {
    std::size_t used = 0;
    j = std::stoi(it->second, &used);
    if (used != it->second.size()) throw std::invalid_argument("");
  } catch (const std::exception&) {
    throw InvalidInput("parameter '" + key + "' of field '" + field + "' must be an index in 1.." +
                       std::to_string(2 * n) + (allow_t ? " or 't'" : ""));
  }
  if (j < 1 || j > 2 * n) {
    throw InvalidInput("parameter '" + key + "' of field '" + field + "' out of range 1.." +
                       std::to_string(2 * n));
  }
  return j - 1;
}

inline std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

// |z|^2 + t^2 >= min(N^2, N^4 / 16) on the gauge sphere of radius N.
inline double gaussian_decay(double rho) {
  return std::exp(-std::min(rho * rho, rho * rho * rho * rho / 16.0));
}

}  // namespace detail

// Catalog of test fields. Names: gaussian, bump, affine (a, b),
// vertical-wave (omega), coordinate (j in 1..2n or t), quadratic (j, k).
inline ScalarField catalog(const std::string& name, const FieldParams& params, int n) {
  const GroupParams g(n);
  ScalarField f;
  f.n = n;
  f.label = name;

  if (name == "gaussian") {
    f.eval = [](const Point& x) { return std::exp(-horizontal_norm_sq(x) - x.t * x.t); };
    f.analytic_hgrad = [](const Point& x) {
      const double v = std::exp(-horizontal_norm_sq(x) - x.t * x.t);
      HVec out{};
      for (int j = 0; j < 2 * x.n; ++j) out[j] = v * (-2.0 * x.z[j] - 2.0 * x.t * frame_dt(x, j));
      return out;
    };
    f.support_radius = 1.0;
    f.decay_bound = detail::gaussian_decay;
    // |X_j f| <= f (2|z_j| + |t||z|) and |z| <= N, |t| <= N^2 / 4.
    f.hgrad_decay_bound = [n](double rho) {
      return std::sqrt(2.0 * n) * (2.0 * rho + 0.25 * rho * rho * rho) *
             detail::gaussian_decay(rho);
    };
    f.sup_bound = 1.0;
    f.l1_bound = std::pow(M_PI, n) * std::sqrt(M_PI);
    return f;
  }

  if (name == "vertical-wave") {
    const double omega = detail::param_double(params, name, "omega");
    f.label = name + "(omega=" + params.at("omega") + ")";
    f.eval = [omega](const Point& x) {
      return std::exp(-horizontal_norm_sq(x) - x.t * x.t) * std::sin(omega * x.t);
    };
    f.analytic_hgrad = [omega](const Point& x) {
      const double e = std::exp(-horizontal_norm_sq(x) - x.t * x.t);
      const double s = std::sin(omega * x.t);
      const double c = std::cos(omega * x.t);
      HVec out{};
      for (int j = 0; j < 2 * x.n; ++j) {
        const double dt = frame_dt(x, j);
        out[j] = e * (-2.0 * x.z[j] - 2.0 * x.t * dt) * s + e * omega * c * dt;
      }
      return out;
    };
    f.support_radius = 1.0;
    f.decay_bound = detail::gaussian_decay;
    f.hgrad_decay_bound = [n, omega](double rho) {
      return std::sqrt(2.0 * n) *
             (2.0 * rho + 0.25 * rho * rho * rho + 0.5 * std::abs(omega) * rho) *
             detail::gaussian_decay(rho);
    };
    f.sup_bound = 1.0;
    f.l1_bound = std::pow(M_PI, n) * std::sqrt(M_PI);
    return f;
  }

  if (name == "bump") {
    // exp(-1/(1 - N^2)) on N < 1, zero outside.
    f.eval = [](const Point& x) {
      const double s = std::sqrt(gauge_pow4(x));  // N^2
      return s < 1.0 ? std::exp(-1.0 / (1.0 - s)) : 0.0;
    };
    f.analytic_hgrad = [](const Point& x) {
      HVec out{};
      const double s = std::sqrt(gauge_pow4(x));
      if (s >= 1.0 || s == 0.0) return out;
      const double v = std::exp(-1.0 / (1.0 - s));
      const double r2 = horizontal_norm_sq(x);
      const double scale = -v / ((1.0 - s) * (1.0 - s));
      for (int j = 0; j < 2 * x.n; ++j) {
        // X_j N^2 = (4 |z|^2 z_j + 32 t X_j t) / (2 N^2)
        const double ds = (4.0 * r2 * x.z[j] + 32.0 * x.t * frame_dt(x, j)) / (2.0 * s);
        out[j] = scale * ds;
      }
      return out;
    };
    f.support_radius = 1.0;
    f.decay_bound = [](double) { return 0.0; };
    f.hgrad_decay_bound = [](double) { return 0.0; };
    f.sup_bound = std::exp(-1.0);
    return f;
  }

  if (name == "affine") {
    const std::vector<double> a = detail::param_list(params, name, "a");
    const double b = detail::param_double(params, name, "b");
    if (static_cast<int>(a.size()) != 2 * n) {
      throw InvalidInput("affine field needs " + std::to_string(2 * n) + " coefficients, got " +
                         std::to_string(a.size()));
    }
    HVec coef{};
    for (int j = 0; j < 2 * n; ++j) coef[j] = a[j];
    f.eval = [coef, b](const Point& x) {
      double v = b;
      for (int j = 0; j < 2 * x.n; ++j) v += coef[j] * x.z[j];
      return v;
    };
    f.analytic_hgrad = [coef](const Point&) { return coef; };
    return f;
  }

  if (name == "coordinate") {
    const int j = detail::param_index(params, name, "j", n, true);
    f.label = name + "(" + params.at("j") + ")";
    if (j < 0) {
      f.eval = [](const Point& x) { return x.t; };
      f.analytic_hgrad = [](const Point& x) {
        HVec out{};
        for (int i = 0; i < 2 * x.n; ++i) out[i] = frame_dt(x, i);
        return out;
      };
    } else {
      f.eval = [j](const Point& x) { return x.z[j]; };
      f.analytic_hgrad = [j](const Point&) {
        HVec out{};
        out[j] = 1.0;
        return out;
      };
    }
    return f;
  }

  if (name == "quadratic") {
    const int j = detail::param_index(params, name, "j", n, false);
    const int k = detail::param_index(params, name, "k", n, false);
    f.label = name + "(" + params.at("j") + "," + params.at("k") + ")";
    f.eval = [j, k](const Point& x) { return x.z[j] * x.z[k]; };
    f.analytic_hgrad = [j, k](const Point& x) {
      HVec out{};
      out[j] += x.z[k];
      out[k] += x.z[j];
      return out;
    };
    return f;
  }

  throw InvalidInput("unknown catalog field '" + name +
                     "' (known: gaussian, bump, affine, vertical-wave, coordinate, quadratic)");
}

inline ScalarField catalog(const std::string& name, int n) { return catalog(name, {}, n); }

// x -> f(x . (0, tau)). (0, tau) is central, so horizontal derivatives commute
// with the translation.
inline ScalarField vertical_translate(const ScalarField& f, double tau) {
  if (!std::isfinite(tau)) throw InvalidInput("vertical translation must be finite");
  ScalarField g = f;
  auto base = f.eval;
  g.eval = [base, tau](const Point& x) {
    Point y = x;
    y.t += tau;
    return base(y);
  };
  if (f.has_hgrad()) {
    auto grad = f.analytic_hgrad;
    g.analytic_hgrad = [grad, tau](const Point& x) {
      Point y = x;
      y.t += tau;
      return grad(y);
    };
  }
  // N(x . (0,tau)) >= N(x) - 2 sqrt|tau|.
  if (f.has_decay()) {
    const double shift = 2.0 * std::sqrt(std::abs(tau));
    g.support_radius = *f.support_radius + shift;
    auto d = f.decay_bound;
    g.decay_bound = [d, shift](double rho) { return d(rho - shift); };
    if (f.hgrad_decay_bound) {
      auto dg = f.hgrad_decay_bound;
      g.hgrad_decay_bound = [dg, shift](double rho) { return dg(rho - shift); };
    }
  }
  g.label = f.label + " @t+" + detail::short_num(tau);
  return g;
}

// f_s = f o delta_s, with grad_H f_s = s (grad_H f) o delta_s.
inline ScalarField precompose_dilation(const ScalarField& f, double s) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw InvalidInput("dilation factor must be positive, got " + std::to_string(s));
  }
  ScalarField g = f;
  auto base = f.eval;
  g.eval = [base, s](const Point& x) { return base(dilate(s, x)); };
  if (f.has_hgrad()) {
    auto grad = f.analytic_hgrad;
    g.analytic_hgrad = [grad, s](const Point& x) {
      HVec v = grad(dilate(s, x));
      for (int j = 0; j < 2 * x.n; ++j) v[j] *= s;
      return v;
    };
  }
  if (f.support_radius) g.support_radius = *f.support_radius / s;
  if (f.decay_bound) {
    auto d = f.decay_bound;
    g.decay_bound = [d, s](double rho) { return d(s * rho); };
  }
  if (f.hgrad_decay_bound) {
    auto d = f.hgrad_decay_bound;
    g.hgrad_decay_bound = [d, s](double rho) { return s * d(s * rho); };
  }
  if (f.l1_bound) g.l1_bound = *f.l1_bound * std::pow(s, -homogeneous_dimension(f.n));
  g.label = f.label + " dil(" + detail::short_num(s) + ")";
  return g;
}

// X_j f as a field of its own (zero-based j), used by the gradient
// comparison. Finite differences are used when no analytic gradient exists.
inline ScalarField horizontal_partial(const ScalarField& f, int j) {
  check_horizontal_index(f.n, j);
  ScalarField g;
  g.n = f.n;
  g.label = "X" + std::to_string(j + 1) + "(" + f.label + ")";
  g.eval = [f, j](const Point& x) { return horizontal_derivative(f, j, x); };
  if (f.has_decay() && f.hgrad_decay_bound) {
    g.support_radius = f.support_radius;
    g.decay_bound = f.hgrad_decay_bound;
  }
  return g;
}

// Pointwise linear combination alpha f + beta g (no decay metadata).
inline ScalarField linear_combination(double alpha, const ScalarField& f, double beta,
                                      const ScalarField& g) {
  if (f.n != g.n) throw InvalidInput("linear combination of fields with different n");
  ScalarField h;
  h.n = f.n;
  h.label = "lincomb";
  h.eval = [=](const Point& x) { return alpha * f.eval(x) + beta * g.eval(x); };
  return h;
}

}  // namespace heis
