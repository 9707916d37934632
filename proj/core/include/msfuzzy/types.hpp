#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace msfuzzy {

// Shared domain types. All of them validate their invariants on construction
// and are immutable afterwards, so values can be shared freely across threads.

// Construction-time tolerance for rows that are stochastic by definition.
inline constexpr double kRowSumTolStrict = 1e-10;
// Looser tolerance for probability rows produced by floating-point pipelines.
inline constexpr double kRowSumTolComputed = 1e-8;

class TimeSeries {
public:
  explicit TimeSeries(std::vector<double> values);
  TimeSeries(std::vector<double> values, std::vector<std::string> labels);

  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  double operator[](std::size_t t) const { return values_[t]; }

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }

private:
  std::vector<double> values_;
  std::vector<std::string> labels_;
};

// Row-stochastic k x k matrix; rows must sum to 1 within 1e-10.
class TransitionMatrix {
public:
  explicit TransitionMatrix(Eigen::MatrixXd probs);

  int states() const { return static_cast<int>(probs_.rows()); }
  const Eigen::MatrixXd& probs() const { return probs_; }
  double operator()(int i, int j) const { return probs_(i, j); }

private:
  Eigen::MatrixXd probs_;
};

// Parameter bundle of a Markov-switching (AR) model: per-state means,
// AR coefficients (possibly none), innovation scale, transition matrix.
class MSModelSpec {
public:
  MSModelSpec(std::vector<double> means, std::vector<double> ar_coeffs,
              double sigma, TransitionMatrix transition);

  int states() const { return static_cast<int>(means_.size()); }
  int ar_order() const { return static_cast<int>(ar_coeffs_.size()); }
  const std::vector<double>& means() const { return means_; }
  const std::vector<double>& ar_coeffs() const { return ar_coeffs_; }
  double sigma() const { return sigma_; }
  const TransitionMatrix& transition() const { return transition_; }

private:
  std::vector<double> means_;
  std::vector<double> ar_coeffs_;
  double sigma_;
  TransitionMatrix transition_;
};

// T x k soft assignment weights; rows sum to 1 within 1e-8.
class MembershipMatrix {
public:
  explicit MembershipMatrix(Eigen::MatrixXd weights);

  std::size_t length() const { return static_cast<std::size_t>(weights_.rows()); }
  int states() const { return static_cast<int>(weights_.cols()); }
  const Eigen::MatrixXd& weights() const { return weights_; }
  double operator()(std::size_t t, int j) const {
    return weights_(static_cast<Eigen::Index>(t), j);
  }

private:
  Eigen::MatrixXd weights_;
};

// Hard state assignment; entries are 1-based states in {1..k}.
class StatePath {
public:
  StatePath(std::vector<int> states, int k);

  std::size_t size() const { return states_.size(); }
  int num_states() const { return k_; }
  int operator[](std::size_t t) const { return states_[t]; }
  const std::vector<int>& states() const { return states_; }

private:
  std::vector<int> states_;
  int k_;
};

// Predicted, filtered and smoothed state probabilities, each T x k with rows
// summing to 1 within 1e-8.
class ProbabilityPaths {
public:
  ProbabilityPaths(Eigen::MatrixXd predicted, Eigen::MatrixXd filtered,
                   Eigen::MatrixXd smoothed);

  std::size_t length() const { return static_cast<std::size_t>(predicted_.rows()); }
  int states() const { return static_cast<int>(predicted_.cols()); }
  const Eigen::MatrixXd& predicted() const { return predicted_; }
  const Eigen::MatrixXd& filtered() const { return filtered_; }
  const Eigen::MatrixXd& smoothed() const { return smoothed_; }

private:
  Eigen::MatrixXd predicted_;
  Eigen::MatrixXd filtered_;
  Eigen::MatrixXd smoothed_;
};

// -- label canonicalization ---------------------------------------------------
//
// State labels of an MS model are arbitrary; the convention here is
// descending means (state 1 has the largest mean), which makes Monte Carlo
// label comparisons deterministic. Ties keep the original order.

// perm[new_index] = old_index, sorted by descending mean (stable on ties).
std::vector<int> canonical_state_order(const std::vector<double>& means);

MSModelSpec permute_states(const MSModelSpec& spec, const std::vector<int>& perm);
ProbabilityPaths permute_states(const ProbabilityPaths& paths,
                                const std::vector<int>& perm);
MembershipMatrix permute_states(const MembershipMatrix& membership,
                                const std::vector<int>& perm);

std::pair<MSModelSpec, ProbabilityPaths>
canonicalize_labels(const MSModelSpec& spec, const ProbabilityPaths& paths);

std::pair<MSModelSpec, MembershipMatrix>
canonicalize_labels(const MSModelSpec& spec, const MembershipMatrix& membership);

// Mode of each row; ties go to the lowest state index.
StatePath hard_assign(const MembershipMatrix& membership);
StatePath hard_assign(const Eigen::MatrixXd& row_distribution);

} // namespace msfuzzy
