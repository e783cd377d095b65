#pragma once

// The C-infinity bump exp(-1/(1 - |y|^2)) on the unit ball, normalized to unit
// integral in 1, 3 or 4 dimensions.

#include <cmath>

namespace wavemaps {

/// exp(-1/(1 - r2)) for r2 < 1, else 0.
inline double bump_profile(double r2) {
  return r2 < 1 ? std::exp(-1 / (1 - r2)) : 0.0;
}

/// d/d(r2) of bump_profile.
inline double bump_profile_slope(double r2) {
  if (r2 >= 1) return 0.0;
  const double s = 1 - r2;
  return -std::exp(-1 / s) / (s * s);
}

/// Integral of bump_profile(|y|^2) over R^dim; dim in {1, 2, 3, 4}.
double bump_mass(int dim);

}  // namespace wavemaps
