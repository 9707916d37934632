#pragma once

#include <cstdint>
#include <vector>

#include "msfuzzy/types.hpp"

namespace msfuzzy {

struct FuzzyConfig {
  int n_starts = 10;     // quantile-seeded initializations; start 0 is unjittered
  int max_iter = 300;
  double tol = 1e-9;     // convergence: max |change in any membership|
  std::uint64_t seed = 12345;
};

struct FuzzyResult {
  MembershipMatrix membership;
  std::vector<double> centroids;  // descending
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
  // Objective after each full (centroid, membership) sweep of the winning
  // start; non-increasing by construction of the alternating updates.
  std::vector<double> objective_trace;
};

// Fuzzy k-means on a scalar series with squared-Euclidean distance:
// minimize sum_t sum_j u_tj^m (y_t - c_j)^2 over memberships U and
// centroids c. Alternates the closed-form updates until the membership
// change drops below tol; keeps the best of n_starts initializations.
// Output labels are canonical: centroids sorted descending.
//
// All-identical observations with k > 1 cannot be clustered; the result is
// equal centroids with uniform memberships and converged = false.
FuzzyResult fuzzy_kmeans(const TimeSeries& y, int k, double m = 1.5,
                         const FuzzyConfig& config = FuzzyConfig());

} // namespace msfuzzy
