// Beta profile and G_1 of the Gaussian at a few points, straight from the
// library (no CLI).

#include <cstdio>

#include "heis/squarefn.hpp"

int main() {
  using namespace heis;
  const ScalarField f = catalog("gaussian", 1);
  const ScaleGrid grid{1e-2, 1e1, 4};
  const QuadSpec spec = QuadSpec::grid(12);

  const BetaProfile prof = beta_profile(f, Point(1), 1, 1.0, grid, spec);
  std::printf("%10s %14s %12s\n", "r", "beta", "stderr");
  for (std::size_t i = 0; i < prof.radii.size(); ++i) {
    std::printf("%10.4g %14.6e %12.3e\n", prof.radii[i], prof.values[i], prof.stderrs[i]);
  }

  for (double x1 : {0.0, 0.5, 1.0, 2.0}) {
    const Point x({x1, 0.0}, 0.0);
    const SquareFnResult g = g_alpha(f, x, 1.0, ScaleGrid{1e-3, 1e2, 8}, spec);
    std::printf("G_1 f(%g,0,0) = %.6f  (+head %.1e, +tail %.1e)\n", x1, g.value, g.truncation_low,
                g.truncation_high);
  }
  return 0;
}
