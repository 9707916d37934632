#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "msfuzzy/fuzzy.hpp"
#include "msfuzzy/types.hpp"

namespace msfuzzy {

// The six validation indices, in the fixed reporting order used everywhere.
inline constexpr std::array<const char*, 6> kIndexNames = {"PC",  "PE",  "MPC",
                                                           "ASW", "ASWF", "XB"};

enum class IndexDirection { maximize, minimize };

inline constexpr std::array<IndexDirection, 6> kIndexDirections = {
    IndexDirection::maximize, IndexDirection::minimize,
    IndexDirection::maximize, IndexDirection::maximize,
    IndexDirection::maximize, IndexDirection::minimize};

// Partition coefficient, sum u^2 / T; in [1/k, 1], maximized.
double pc(const MembershipMatrix& u);

// Partition entropy, -sum u ln u / T with 0 ln 0 = 0; in [0, ln k], minimized.
double pe(const MembershipMatrix& u);

// Modified partition coefficient 1 - k/(k-1) (1 - PC); in [0, 1], maximized.
// Undefined for a single cluster.
double mpc(const MembershipMatrix& u);

// Average silhouette width under squared-Euclidean distance (the clustering
// metric). Singleton clusters contribute 0; 0/0 rows contribute 0. Needs at
// least two non-empty clusters.
double asw(const TimeSeries& y, const StatePath& partition);

// Silhouette average weighted by (u_(1) - u_(2))^lambda, the gap between the
// two largest memberships per row; lambda = 0 reduces to asw exactly.
double aswf(const TimeSeries& y, const MembershipMatrix& u, double lambda = 1.0);

// Xie-Beni: sum u^2 d^2(y,c) / (T min_{i!=j} d^2(c_i,c_j)); minimized.
double xb(const TimeSeries& y, const MembershipMatrix& u,
          const std::vector<double>& centroids);

struct IndexReport {
  std::vector<int> ks;              // scanned cluster counts, 2..k_max
  Eigen::MatrixXd values;           // ks.size() x 6; NaN where an index failed
  std::array<int, 6> selected_k;    // 0 when no k produced a finite value
  std::array<double, 6> best_value; // value at selected_k (NaN when none)
};

// Clusters y for each k in 2..k_max and picks each index's optimum.
IndexReport select_k(const TimeSeries& y, int k_max = 6, double m = 1.5,
                     const FuzzyConfig& config = FuzzyConfig(),
                     double lambda = 1.0);

// Per-k table plus a trailing selection row.
std::string index_report_csv(const IndexReport& report);

struct HomogeneityResult {
  std::array<double, 6> p_values;
  int n_sim = 0;
};

// Bootstrap test against a clusterless null: n_sim i.i.d. Normal series with
// the sample mean and variance of y. Each null draw is clustered at the
// number of groups the observed data selected for that index, and the
// p-value is the fraction of null values at least as favorable as the
// observed optimum, with the (r+1)/(n+1) continuity correction. Holding the
// cluster count fixed keeps the reference distribution comparable to the
// statistic actually reported; letting every draw re-optimize its own k
// inflates the null systematically. Indices whose selected_k is 0 get a NaN
// p-value. Draws are split across jobs threads; results do not depend on
// the split because every simulation derives its own RNG stream.
HomogeneityResult homogeneity_test(const TimeSeries& y,
                                   const IndexReport& observed,
                                   int n_sim, std::uint64_t seed,
                                   double m = 1.5, double lambda = 1.0,
                                   int jobs = 1);

} // namespace msfuzzy
