#pragma once

// Budgets shared by the unit tests, the acceptance run and the fixture
// generator. Fixtures are produced with oversampled() copies of these.

#include <cmath>
#include <string>

#include "heis/verify.hpp"

namespace heis::testing {

inline SuiteConfig reference_config() {
  SuiteConfig c;
  c.ball = QuadSpec::grid(10);
  c.domain = QuadSpec::grid(16);
  c.fine_domain = QuadSpec::grid(96);
  c.r_grid = ScaleGrid{1e-3, 1e2, 8};
  c.t_grid = ScaleGrid{1e-4, 1e2, 16};
  c.box_radius = 8.0;
  c.stretch = 3.0;
  return c;
}

// Wider box for the Dorronsoro ratio: ||G_1^{(2)} f||_2 has a slowly
// decaying outer mass (G ~ N^{-3}), so R = 12 keeps it under a few percent.
inline SuiteConfig dorronsoro_config() {
  SuiteConfig c = reference_config();
  c.p = 2.0;
  c.q = 2.0;
  c.box_radius = 12.0;
  c.stretch = 4.0;
  c.domain = QuadSpec::grid(24);
  return c;
}

// Roughly four times the points of every rule (grid sizes scale by
// 4^{1/(2n+1)} per axis).
inline QuadSpec oversampled(const QuadSpec& s, int n) {
  QuadSpec o = s;
  if (s.mode == QuadMode::grid) {
    o.grid_per_axis = static_cast<int>(std::lround(s.grid_per_axis * std::pow(4.0, 1.0 / (2 * n + 1))));
  } else {
    o.samples = 4 * s.samples;
  }
  return o;
}

inline SuiteConfig oversampled(const SuiteConfig& c) {
  SuiteConfig o = c;
  o.ball = oversampled(c.ball, c.n);
  o.domain = oversampled(c.domain, c.n);
  o.fine_domain = oversampled(c.fine_domain, c.n);
  return o;
}

inline const double kPoincareOmegas[] = {1.0, 4.0, 16.0};

inline ScalarField wave(double omega, int n = 1) {
  return catalog("vertical-wave", {{"omega", detail::num(omega)}}, n);
}

// Fixture drift allowance: value / fixture must lie in [1/3, 3]. A zero
// fixture is an exact cancellation and has to stay at rounding level.
inline bool within_drift(double value, double fixture) {
  if (fixture == 0.0) return std::abs(value) <= 1e-12;
  if (!(fixture > 0.0) || !(value > 0.0)) return false;
  const double r = value / fixture;
  return r >= 1.0 / 3.0 && r <= 3.0;
}

}  // namespace heis::testing
