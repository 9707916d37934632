#pragma once

#include <Eigen/Dense>
#include <vector>

#include "msfuzzy/types.hpp"

namespace msfuzzy {

// Forward-pass output. `paths` holds marginal predicted/filtered
// probabilities; its smoothed block is seeded with the filtered values and
// replaced by kim_smoother. For AR(1) specs the filter runs on the k^2
// augmented pairs (s_{t-1}, s_t) and conditions on y_1, so row 1 of
// cond_densities is all ones and step_loglik[0] = 0.
struct FilterOutput {
  ProbabilityPaths paths;
  double loglik = 0.0;
  // f(y_t | state, I_{t-1}) per row; k columns for p=0, k^2 pair columns
  // (column i*k+j <-> s_{t-1}=i+1, s_t=j+1) for p=1.
  Eigen::MatrixXd cond_densities;
  std::vector<double> step_loglik;
  // Augmented-pair internals, empty unless p=1; row 0 is zero (pairs start
  // at t=2). The smoother needs these to run the backward pass exactly.
  Eigen::MatrixXd aug_predicted;
  Eigen::MatrixXd aug_filtered;
};

// Hamilton filter: prediction xi_{t|t-1} = P' xi_{t-1|t-1}, Bayes update
// against per-state Normal densities, loglik accumulated from the
// normalizing constants. Initialization at the ergodic distribution.
// Supports p in {0,1}; requires T >= p+1.
FilterOutput hamilton_filter(const TimeSeries& y, const MSModelSpec& spec);

// Kim backward recursion xi_{t|T} = xi_{t|t} .* (P (xi_{t+1|T} ./ xi_{t+1|t})),
// with predicted probabilities floored at 1e-300 before dividing. Returns the
// complete predicted/filtered/smoothed marginals.
ProbabilityPaths kim_smoother(const FilterOutput& filter_out,
                              const TransitionMatrix& transition);

// Smoothed inference: state with maximal smoothed probability per t.
StatePath infer_states(const TimeSeries& y, const MSModelSpec& spec);

} // namespace msfuzzy
