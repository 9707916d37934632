#include "msfuzzy/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace msfuzzy {

namespace {

void check_probability_rows(const Eigen::MatrixXd& m, double tol,
                            const char* what) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const double v = m(i, j);
      if (!(v >= 0.0 && v <= 1.0 + tol)) {
        throw std::invalid_argument(std::string(what) +
                                    ": entry outside [0,1] at row " +
                                    std::to_string(i));
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > tol) {
      throw std::invalid_argument(std::string(what) + ": row " +
                                  std::to_string(i) + " sums to " +
                                  std::to_string(sum));
    }
  }
}

// Stationarity of the AR polynomial via the companion matrix: all
// eigenvalues must lie strictly inside the unit circle.
bool ar_is_stationary(const std::vector<double>& phi) {
  const int p = static_cast<int>(phi.size());
  if (p == 0) return true;
  if (p == 1) return std::abs(phi[0]) < 1.0;
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(p, p);
  for (int i = 0; i < p; ++i) companion(0, i) = phi[i];
  for (int i = 1; i < p; ++i) companion(i, i - 1) = 1.0;
  const auto eigs = companion.eigenvalues();
  for (Eigen::Index i = 0; i < eigs.size(); ++i) {
    if (std::abs(eigs(i)) >= 1.0) return false;
  }
  return true;
}

} // namespace

TimeSeries::TimeSeries(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.empty()) {
    throw std::invalid_argument("TimeSeries: needs at least one observation");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("TimeSeries: non-finite value");
    }
  }
}

TimeSeries::TimeSeries(std::vector<double> values,
                       std::vector<std::string> labels)
    : TimeSeries(std::move(values)) {
  if (!labels.empty() && labels.size() != values_.size()) {
    throw std::invalid_argument("TimeSeries: labels/values length mismatch");
  }
  labels_ = std::move(labels);
}

TransitionMatrix::TransitionMatrix(Eigen::MatrixXd probs)
    : probs_(std::move(probs)) {
  if (probs_.rows() < 1 || probs_.rows() != probs_.cols()) {
    throw std::invalid_argument("TransitionMatrix: must be square, k >= 1");
  }
  check_probability_rows(probs_, kRowSumTolStrict, "TransitionMatrix");
}

MSModelSpec::MSModelSpec(std::vector<double> means,
                         std::vector<double> ar_coeffs, double sigma,
                         TransitionMatrix transition)
    : means_(std::move(means)),
      ar_coeffs_(std::move(ar_coeffs)),
      sigma_(sigma),
      transition_(std::move(transition)) {
  if (means_.empty()) {
    throw std::invalid_argument("MSModelSpec: needs at least one state mean");
  }
  if (static_cast<int>(means_.size()) != transition_.states()) {
    throw std::invalid_argument(
        "MSModelSpec: means/transition dimension mismatch");
  }
  for (double m : means_) {
    if (!std::isfinite(m)) {
      throw std::invalid_argument("MSModelSpec: non-finite mean");
    }
  }
  if (!(sigma_ > 0.0) || !std::isfinite(sigma_)) {
    throw std::invalid_argument("MSModelSpec: sigma must be positive");
  }
  if (!ar_is_stationary(ar_coeffs_)) {
    throw std::invalid_argument(
        "MSModelSpec: AR polynomial roots must lie outside the unit circle");
  }
}

MembershipMatrix::MembershipMatrix(Eigen::MatrixXd weights)
    : weights_(std::move(weights)) {
  if (weights_.rows() < 1 || weights_.cols() < 1) {
    throw std::invalid_argument("MembershipMatrix: empty");
  }
  check_probability_rows(weights_, kRowSumTolComputed, "MembershipMatrix");
}

StatePath::StatePath(std::vector<int> states, int k)
    : states_(std::move(states)), k_(k) {
  if (states_.empty() || k_ < 1) {
    throw std::invalid_argument("StatePath: empty path or k < 1");
  }
  for (int s : states_) {
    if (s < 1 || s > k_) {
      throw std::invalid_argument("StatePath: state out of {1..k}");
    }
  }
}

ProbabilityPaths::ProbabilityPaths(Eigen::MatrixXd predicted,
                                   Eigen::MatrixXd filtered,
                                   Eigen::MatrixXd smoothed)
    : predicted_(std::move(predicted)),
      filtered_(std::move(filtered)),
      smoothed_(std::move(smoothed)) {
  if (predicted_.rows() != filtered_.rows() ||
      predicted_.rows() != smoothed_.rows() ||
      predicted_.cols() != filtered_.cols() ||
      predicted_.cols() != smoothed_.cols()) {
    throw std::invalid_argument("ProbabilityPaths: shape mismatch");
  }
  check_probability_rows(predicted_, kRowSumTolComputed, "ProbabilityPaths.predicted");
  check_probability_rows(filtered_, kRowSumTolComputed, "ProbabilityPaths.filtered");
  check_probability_rows(smoothed_, kRowSumTolComputed, "ProbabilityPaths.smoothed");
}

std::vector<int> canonical_state_order(const std::vector<double>& means) {
  std::vector<int> perm(means.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::stable_sort(perm.begin(), perm.end(),
                   [&](int a, int b) { return means[a] > means[b]; });
  return perm;
}

MSModelSpec permute_states(const MSModelSpec& spec,
                           const std::vector<int>& perm) {
  const int k = spec.states();
  std::vector<double> means(k);
  Eigen::MatrixXd p(k, k);
  for (int i = 0; i < k; ++i) {
    means[i] = spec.means()[perm[i]];
    for (int j = 0; j < k; ++j) {
      p(i, j) = spec.transition()(perm[i], perm[j]);
    }
  }
  return MSModelSpec(std::move(means), spec.ar_coeffs(), spec.sigma(),
                     TransitionMatrix(std::move(p)));
}

namespace {

Eigen::MatrixXd permute_columns(const Eigen::MatrixXd& m,
                                const std::vector<int>& perm) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (int j = 0; j < static_cast<int>(perm.size()); ++j) {
    out.col(j) = m.col(perm[j]);
  }
  return out;
}

} // namespace

ProbabilityPaths permute_states(const ProbabilityPaths& paths,
                                const std::vector<int>& perm) {
  return ProbabilityPaths(permute_columns(paths.predicted(), perm),
                          permute_columns(paths.filtered(), perm),
                          permute_columns(paths.smoothed(), perm));
}

MembershipMatrix permute_states(const MembershipMatrix& membership,
                                const std::vector<int>& perm) {
  return MembershipMatrix(permute_columns(membership.weights(), perm));
}

std::pair<MSModelSpec, ProbabilityPaths>
canonicalize_labels(const MSModelSpec& spec, const ProbabilityPaths& paths) {
  const auto perm = canonical_state_order(spec.means());
  return {permute_states(spec, perm), permute_states(paths, perm)};
}

std::pair<MSModelSpec, MembershipMatrix>
canonicalize_labels(const MSModelSpec& spec,
                    const MembershipMatrix& membership) {
  const auto perm = canonical_state_order(spec.means());
  return {permute_states(spec, perm), permute_states(membership, perm)};
}

StatePath hard_assign(const Eigen::MatrixXd& row_distribution) {
  const auto T = row_distribution.rows();
  const int k = static_cast<int>(row_distribution.cols());
  std::vector<int> states(static_cast<std::size_t>(T));
  for (Eigen::Index t = 0; t < T; ++t) {
    int best = 0;
    for (int j = 1; j < k; ++j) {
      if (row_distribution(t, j) > row_distribution(t, best)) best = j;
    }
    states[static_cast<std::size_t>(t)] = best + 1;
  }
  return StatePath(std::move(states), k);
}

StatePath hard_assign(const MembershipMatrix& membership) {
  return hard_assign(membership.weights());
}

} // namespace msfuzzy
