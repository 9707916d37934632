#pragma once

#include <Eigen/Dense>
#include <vector>

#include "msfuzzy/types.hpp"

namespace msfuzzy {

// Cross-tabulation of two partitions of the same T observations.
struct ContingencyTable {
  Eigen::MatrixXi counts; // k1 x k2, entries sum to T

  static ContingencyTable from_paths(const StatePath& a, const StatePath& b);
};

// Plain Rand index via the contingency-table closed form
//   R = [C(T,2) - 1/2 (sum_i r_i^2 + sum_j c_j^2) + sum_ij n_ij^2] / C(T,2),
// algebraically equal to (agreeing pairs) / (all pairs). Requires T >= 2.
double rand_index(const StatePath& a, const StatePath& b);

struct FiveNumberSummary {
  double min = 0.0, q1 = 0.0, median = 0.0, q3 = 0.0, max = 0.0;
};

// Minimum, quartiles (linear interpolation), maximum.
FiveNumberSummary rand_summary(const std::vector<double>& values);

// Centered equal-weight moving average; window odd, output length
// T - window + 1, labels trimmed symmetrically.
TimeSeries moving_average(const TimeSeries& y, int window);

} // namespace msfuzzy
