#pragma once

// L^2(B(x,r)) projection of a field onto A_d, the polynomials of degree
// d <= 1 in the horizontal variables (constant in t).
//
// Two independent routes: the closed-form moment formulas
//   b   = <f>_{B(x,r)},
//   a_j = avg f(y)(y_j - x_j) / avg (y_j - x_j)^2,
// which silently assume that mixed moments over the ball vanish, and an
// explicit solve of the (2n+1)x(2n+1) normal equations.

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "heis/errors.hpp"
#include "heis/fields.hpp"
#include "heis/hgroup.hpp"
#include "heis/quad.hpp"

namespace heis {

struct AffineMap {
  int degree = 1;
  Point base;
  double b = 0.0;
  HVec a{};

  // b + sum_j a_j (y_j - x_j); never reads y.t.
  double operator()(const Point& y) const {
    double v = b;
    for (int j = 0; j < 2 * base.n; ++j) v += a[j] * (y.z[j] - base.z[j]);
    return v;
  }

  // Value at the template node w of B(base, r), where y_j - x_j = r w_j.
  double at_template(const Point& w, double r) const {
    double v = b;
    for (int j = 0; j < 2 * base.n; ++j) v += a[j] * r * w.z[j];
    return v;
  }

  // sup over B(base, r): the horizontal offsets fill the disc |z| < r.
  double sup_on_ball(double r) const {
    double s = 0.0;
    for (int j = 0; j < 2 * base.n; ++j) s += a[j] * a[j];
    return std::abs(b) + r * std::sqrt(s);
  }
};

inline void check_degree(int d) {
  if (d != 0 && d != 1) throw InvalidInput("polynomial degree must be 0 or 1, got " + std::to_string(d));
}

// Moment fit from field values on the template nodes of B(x, r).
inline AffineMap fit_moment_values(const BallRule& rule, const std::vector<double>& values,
                                   const Point& x, double r, int d) {
  AffineMap A;
  A.degree = d;
  A.base = x;
  A.b = mean(values);
  if (d == 1) {
    const int dim = 2 * x.n;
    HVec num{};
    for (std::size_t k = 0; k < values.size(); ++k) {
      const Point& w = rule.points[k];
      for (int j = 0; j < dim; ++j) num[j] += values[k] * w.z[j];
    }
    const double m = static_cast<double>(values.size());
    for (int j = 0; j < dim; ++j) {
      const double denom = rule.second_moment[j];
      if (!(denom > 0.0)) {
        throw NumericError("degenerate second moment on axis " + std::to_string(j) +
                           " for ball at " + to_string(x));
      }
      // avg f r w_j / (r^2 avg w_j^2)
      A.a[j] = (num[j] / m) / (r * denom);
    }
  }
  return A;
}

inline AffineMap fit_moment(const ScalarField& f, const Point& x, double r, int d,
                            const QuadSpec& spec) {
  check_degree(d);
  check_radius(r);
  require_same_dim(Point(f.n), x);
  const auto rule = ball_rule(x.n, spec);
  std::vector<double> values;
  evaluate_on_ball(*rule, f.eval, x, r, values);
  return fit_moment_values(*rule, values, x, r, d);
}

// Normal-equation fit. Monomials are taken in unit-ball coordinates
// {1, w_1, ..., w_2n} and rescaled by 1/r afterwards, which keeps the Gram
// matrix well conditioned at every scale.
inline AffineMap fit_normal_equations_values(const BallRule& rule, const std::vector<double>& values,
                                             const Point& x, double r, int d) {
  const int m = d == 0 ? 1 : 2 * x.n + 1;
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
  Eigen::VectorXd mono(m);
  for (std::size_t k = 0; k < values.size(); ++k) {
    const Point& w = rule.points[k];
    mono(0) = 1.0;
    for (int j = 1; j < m; ++j) mono(j) = w.z[j - 1];
    gram.noalias() += mono * mono.transpose();
    rhs += values[k] * mono;
  }
  const double count = static_cast<double>(values.size());
  gram /= count;
  rhs /= count;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(gram);
  lu.setThreshold(1e-12);
  if (lu.rank() < m) {
    throw NumericError("singular Gram matrix for ball at " + to_string(x) + ", r=" +
                       std::to_string(r));
  }
  const Eigen::VectorXd c = lu.solve(rhs);
  AffineMap A;
  A.degree = d;
  A.base = x;
  A.b = c(0);
  for (int j = 1; j < m; ++j) A.a[j - 1] = c(j) / r;
  return A;
}

inline AffineMap fit_normal_equations(const ScalarField& f, const Point& x, double r, int d,
                                      const QuadSpec& spec) {
  check_degree(d);
  check_radius(r);
  require_same_dim(Point(f.n), x);
  const auto rule = ball_rule(x.n, spec);
  std::vector<double> values;
  evaluate_on_ball(*rule, f.eval, x, r, values);
  return fit_normal_equations_values(*rule, values, x, r, d);
}

// avg (f - A) m_k over B(x, r) for m = {1, y_1 - x_1, ..., y_2n - x_2n},
// each with its quadrature error estimate.
inline std::vector<Estimate> residual_orthogonality(const ScalarField& f, const AffineMap& A,
                                                    const Point& x, double r,
                                                    const QuadSpec& spec) {
  check_radius(r);
  require_same_dim(A.base, x);
  const int dim = 2 * x.n;
  std::vector<Estimate> out;
  out.reserve(dim + 1);
  for (int k = 0; k <= dim; ++k) {
    auto integrand = [&](const Point& y) {
      const double res = f.eval(y) - A(y);
      return k == 0 ? res : res * (y.z[k - 1] - x.z[k - 1]);
    };
    out.push_back(ball_integrate(integrand, x, r, spec));
  }
  return out;
}

}  // namespace heis
