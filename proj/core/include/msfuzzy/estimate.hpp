#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "msfuzzy/types.hpp"

namespace msfuzzy {

struct EstimationConfig {
  int n_restarts = 20;
  int max_iter = 500;
  // Central-difference gradients carry ~1e-5 noise from log-likelihood
  // rounding, so a tolerance much below 1e-4 is unreachable in practice.
  double grad_tol = 1e-4;
  double jitter_scale = 0.25; // restart mean jitter, in sample-sd units
  std::uint64_t seed = 7;
  bool compute_std_errors = false;

  // JSON object with any of: n_restarts, max_iter, grad_tol, jitter_scale,
  // seed, compute_std_errors. Unknown keys are rejected.
  static EstimationConfig from_json_file(const std::string& path);
};

// Bijection between the parameters of a k-state AR(p) switching model and an
// unconstrained vector: means raw, phi = tanh(psi), sigma = exp(s), each
// transition row a multinomial logit against its last column, logits clamped
// to +-15. Vector layout: mu_1..mu_k, psi_1..psi_p, ln sigma, then row-wise
// logits a_i1..a_i,k-1.
class ParamTransform {
public:
  ParamTransform(int k, int p);

  int states() const { return k_; }
  int ar_order() const { return p_; }
  int dim() const { return k_ + p_ + 1 + k_ * (k_ - 1); }

  Eigen::VectorXd to_vector(const MSModelSpec& spec) const;
  MSModelSpec to_spec(const Eigen::VectorXd& theta) const;

  // Natural-scale view in the same layout with phi, sigma and the free
  // transition probabilities p_ij (j < k) in place of their transforms.
  Eigen::VectorXd natural(const Eigen::VectorXd& theta) const;
  std::vector<std::string> natural_names() const;

private:
  int k_;
  int p_;
};

struct MSEstimate {
  MSModelSpec spec; // canonicalized (descending means)
  double loglik = 0.0;
  double aic = 0.0;
  double bic = 0.0;
  ProbabilityPaths paths;
  // Robust standard errors in ParamTransform natural order, when requested
  // and the Hessian was invertible.
  std::optional<std::vector<double>> std_errors;
  bool converged = false;
  int n_restarts_used = 0;
};

// Maximum likelihood via multi-start BFGS on the transformed parameters;
// means initialized from fuzzy k-means centroids (jittered per restart),
// sigma from within-cluster dispersion, the transition matrix from smoothed
// empirical counts of the hard assignment. k = 1, p = 0 is closed-form.
// Returns best-found with converged = false when no start meets the
// gradient tolerance.
MSEstimate fit_ms(const TimeSeries& y, int k, int p,
                  const EstimationConfig& config = EstimationConfig());

// Per-observation scaled criteria: aic = (-2 loglik + 2 n)/T,
// bic = (-2 loglik + n ln T)/T.
std::pair<double, double> information_criteria(double loglik, int n_params,
                                               std::size_t T);

// Sandwich estimator H^-1 G H^-1 (numerical Hessian of the log-likelihood,
// outer product of per-observation scores), mapped to the natural scale by
// the delta method. The spec must already sit at an interior optimum.
std::vector<double> robust_std_errors(const TimeSeries& y,
                                      const MSModelSpec& spec);

} // namespace msfuzzy
