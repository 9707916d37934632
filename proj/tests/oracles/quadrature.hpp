#pragma once

// Grid utilities for checking density output: trapezoidal mass and a count
// of strict interior local maxima (modes).

#include <cstddef>
#include <vector>

namespace oracle {

inline double trapezoid_mass(const std::vector<double>& xs,
                             const std::vector<double>& ys) {
  double mass = 0.0;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    mass += 0.5 * (ys[i] + ys[i - 1]) * (xs[i] - xs[i - 1]);
  }
  return mass;
}

inline int count_modes(const std::vector<double>& ys) {
  int modes = 0;
  for (std::size_t i = 1; i + 1 < ys.size(); ++i) {
    modes += ys[i] > ys[i - 1] && ys[i] > ys[i + 1];
  }
  return modes;
}

} // namespace oracle
