#pragma once

// Heisenberg group H^n = R^{2n} x R with the law
//
//   (z, t) . (z', t') = (z + z', t + t' + 1/2 sum_j (x_j y'_j - y_j x'_j)),
//
// where z = (x_1..x_n, y_1..y_n). Under this law the left-invariant fields
//   X_j     = d/dx_j - (y_j / 2) d/dt
//   X_{n+j} = d/dy_j + (x_j / 2) d/dt
// satisfy X_j(0) = e_j. Distances come from the Koranyi gauge
// N(z, t) = (|z|^4 + 16 t^2)^{1/4}.

#include <array>
#include <cmath>
#include <span>
#include <sstream>
#include <string>

#include "heis/errors.hpp"

namespace heis {

// Points store their horizontal part inline so that the hot quadrature
// loops never allocate. n is bounded by kMaxN.
inline constexpr int kMaxN = 4;
inline constexpr int kMaxHorizontal = 2 * kMaxN;

using HVec = std::array<double, kMaxHorizontal>;

struct GroupParams {
  int n = 1;

  explicit GroupParams(int n_) : n(n_) {
    if (n < 1 || n > kMaxN) {
      throw InvalidInput("Heisenberg dimension n must lie in [1, " + std::to_string(kMaxN) +
                         "], got " + std::to_string(n));
    }
  }

  // Homogeneous dimension.
  int Q() const { return 2 * n + 2; }
  int horizontal_dim() const { return 2 * n; }
};

inline int homogeneous_dimension(int n) { return GroupParams(n).Q(); }

struct Point {
  int n = 1;
  HVec z{};
  double t = 0.0;

  Point() = default;
  explicit Point(int n_) : n(GroupParams(n_).n) {}

  // Builds a point from 2n horizontal coordinates and t.
  Point(std::span<const double> horizontal, double t_) : t(t_) {
    if (horizontal.size() % 2 != 0 || horizontal.empty() ||
        horizontal.size() > static_cast<std::size_t>(kMaxHorizontal)) {
      throw InvalidInput("horizontal part must have even length 2n with 1 <= n <= " +
                         std::to_string(kMaxN));
    }
    n = static_cast<int>(horizontal.size()) / 2;
    for (std::size_t i = 0; i < horizontal.size(); ++i) z[i] = horizontal[i];
  }

  Point(std::initializer_list<double> horizontal, double t_)
      : Point(std::span<const double>(horizontal.begin(), horizontal.size()), t_) {}

  int dim() const { return 2 * n; }
  double x(int j) const { return z[j]; }
  double y(int j) const { return z[n + j]; }

  std::span<double> horizontal() { return {z.data(), static_cast<std::size_t>(2 * n)}; }
  std::span<const double> horizontal() const {
    return {z.data(), static_cast<std::size_t>(2 * n)};
  }

  bool is_finite() const {
    for (int j = 0; j < 2 * n; ++j)
      if (!std::isfinite(z[j])) return false;
    return std::isfinite(t);
  }

  friend bool operator==(const Point& a, const Point& b) {
    if (a.n != b.n || a.t != b.t) return false;
    for (int j = 0; j < 2 * a.n; ++j)
      if (a.z[j] != b.z[j]) return false;
    return true;
  }
};

inline Point origin(int n) { return Point(n); }

inline std::string to_string(const Point& p) {
  std::ostringstream os;
  os.precision(17);
  os << '(';
  for (int j = 0; j < p.dim(); ++j) os << p.z[j] << ", ";
  os << p.t << ')';
  return os.str();
}

inline void require_same_dim(const Point& a, const Point& b) {
  if (a.n != b.n) {
    throw InvalidInput("dimension mismatch: n=" + std::to_string(a.n) + " vs n=" +
                       std::to_string(b.n));
  }
}

// Symplectic term 1/2 sum_j (x_j y'_j - y_j x'_j).
inline double symplectic_half(const Point& a, const Point& b) {
  double s = 0.0;
  for (int j = 0; j < a.n; ++j) s += a.z[j] * b.z[a.n + j] - a.z[a.n + j] * b.z[j];
  return 0.5 * s;
}

// out = a . b without dimension checks; out may alias neither input.
inline void mul_into(const Point& a, const Point& b, Point& out) {
  out.n = a.n;
  for (int j = 0; j < 2 * a.n; ++j) out.z[j] = a.z[j] + b.z[j];
  out.t = a.t + b.t + symplectic_half(a, b);
}

inline Point group_mul(const Point& a, const Point& b) {
  require_same_dim(a, b);
  Point out;
  mul_into(a, b, out);
  return out;
}

inline Point inverse(const Point& a) {
  Point out = a;
  for (int j = 0; j < 2 * a.n; ++j) out.z[j] = -a.z[j];
  out.t = -a.t;
  return out;
}

inline Point dilate(double s, const Point& a) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw InvalidInput("dilation factor must be positive and finite, got " + std::to_string(s));
  }
  Point out = a;
  for (int j = 0; j < 2 * a.n; ++j) out.z[j] = s * a.z[j];
  out.t = s * s * a.t;
  return out;
}

inline double horizontal_norm_sq(const Point& a) {
  double s = 0.0;
  for (int j = 0; j < 2 * a.n; ++j) s += a.z[j] * a.z[j];
  return s;
}

// N(a)^4 = |z|^4 + 16 t^2.
inline double gauge_pow4(const Point& a) {
  const double r2 = horizontal_norm_sq(a);
  return r2 * r2 + 16.0 * a.t * a.t;
}

inline double gauge(const Point& a) {
  // sqrt(sqrt(.)) keeps N(delta_s a) = s N(a) to within an ulp or two.
  return std::sqrt(std::sqrt(gauge_pow4(a)));
}

inline double distance(const Point& a, const Point& b) {
  require_same_dim(a, b);
  // inverse(a) . b, expanded to avoid a temporary.
  Point d;
  d.n = a.n;
  for (int j = 0; j < 2 * a.n; ++j) d.z[j] = b.z[j] - a.z[j];
  d.t = b.t - a.t - symplectic_half(a, b);
  return gauge(d);
}

// Horizontal unit step (h e_j, 0).
inline Point horizontal_step(int n, int j, double h) {
  Point e(n);
  e.z[j] = h;
  return e;
}

inline void check_horizontal_index(int n, int j) {
  if (j < 0 || j >= 2 * n) {
    throw InvalidInput("horizontal index " + std::to_string(j) + " outside [0, " +
                       std::to_string(2 * n) + ")");
  }
}

inline double default_fd_step(const Point& x) { return 1e-4 * (1.0 + gauge(x)); }

// Group-native central difference along X_j:
//   [f(x . (h e_j, 0)) - f(x . (-h e_j, 0))] / (2h).
// j is zero-based.
template <class F>
double horizontal_difference(F&& f, int j, const Point& x, double h) {
  check_horizontal_index(x.n, j);
  if (!(h > 0.0)) throw InvalidInput("finite-difference step must be positive");
  Point plus, minus;
  mul_into(x, horizontal_step(x.n, j, h), plus);
  mul_into(x, horizontal_step(x.n, j, -h), minus);
  const double fp = f(plus);
  const double fm = f(minus);
  if (!std::isfinite(fp) || !std::isfinite(fm)) {
    throw NumericError("non-finite evaluation in horizontal derivative at x=" + to_string(x) +
                       ", j=" + std::to_string(j));
  }
  return (fp - fm) / (2.0 * h);
}

// X_j t, the only non-trivial vertical contribution of the frame.
inline double frame_dt(const Point& x, int j) {
  return j < x.n ? -0.5 * x.z[x.n + j] : 0.5 * x.z[j - x.n];
}

}  // namespace heis
