#include "msfuzzy/filter.hpp"

#include <cmath>

#include "msfuzzy/errors.hpp"
#include "msfuzzy/markov.hpp"

namespace msfuzzy {

namespace {

constexpr double kProbFloor = 1e-300;

double normal_pdf(double x, double mean, double sigma) {
  constexpr double inv_sqrt_2pi = 0.39894228040143267794;
  const double z = (x - mean) / sigma;
  return inv_sqrt_2pi / sigma * std::exp(-0.5 * z * z);
}

// Shared backward pass over a chain with row-stochastic transition `trans`;
// runs from the last row down to `first`. Rows are renormalized to absorb
// floating-point drift (exact arithmetic keeps them at 1 already).
Eigen::MatrixXd smooth_backward(const Eigen::MatrixXd& predicted,
                                const Eigen::MatrixXd& filtered,
                                const Eigen::MatrixXd& trans,
                                Eigen::Index first) {
  const Eigen::Index T = filtered.rows();
  Eigen::MatrixXd smoothed = Eigen::MatrixXd::Zero(T, filtered.cols());
  smoothed.row(T - 1) = filtered.row(T - 1);
  for (Eigen::Index t = T - 2; t >= first; --t) {
    const Eigen::VectorXd ratio =
        (smoothed.row(t + 1).transpose().array() /
         predicted.row(t + 1).transpose().array().max(kProbFloor))
            .matrix();
    const Eigen::ArrayXd back = (trans * ratio).array();
    Eigen::ArrayXd row = filtered.row(t).transpose().array() * back;
    const double total = row.sum();
    if (!(total > 0.0) || !std::isfinite(total)) {
      throw DivisionByZeroProbability(
          "smoother row collapsed to zero mass at t=" + std::to_string(t + 1));
    }
    smoothed.row(t) = (row / total).matrix().transpose();
  }
  return smoothed;
}

FilterOutput filter_iid(const TimeSeries& y, const MSModelSpec& spec) {
  const Eigen::Index T = static_cast<Eigen::Index>(y.size());
  const int k = spec.states();
  const Eigen::MatrixXd trans_t = spec.transition().probs().transpose();

  Eigen::MatrixXd predicted(T, k), filtered(T, k), dens(T, k);
  std::vector<double> step(static_cast<std::size_t>(T), 0.0);

  const std::vector<double> pi = ergodic_probabilities(spec.transition());
  Eigen::VectorXd xi =
      Eigen::Map<const Eigen::VectorXd>(pi.data(), static_cast<Eigen::Index>(k));

  double loglik = 0.0;
  for (Eigen::Index t = 0; t < T; ++t) {
    if (t > 0) xi = trans_t * xi;
    predicted.row(t) = xi.transpose();
    for (int j = 0; j < k; ++j) {
      dens(t, j) = normal_pdf(y[static_cast<std::size_t>(t)],
                              spec.means()[static_cast<std::size_t>(j)],
                              spec.sigma());
    }
    const Eigen::VectorXd joint = xi.cwiseProduct(dens.row(t).transpose());
    const double c = joint.sum();
    if (!(c > 0.0) || !std::isfinite(c)) {
      throw DegenerateLikelihood("filter step underflowed at t=" +
                                 std::to_string(t + 1));
    }
    step[static_cast<std::size_t>(t)] = std::log(c);
    loglik += step[static_cast<std::size_t>(t)];
    xi = joint / c;
    filtered.row(t) = xi.transpose();
  }

  FilterOutput out{ProbabilityPaths(predicted, filtered, filtered), loglik,
                   std::move(dens), std::move(step), Eigen::MatrixXd(),
                   Eigen::MatrixXd()};
  return out;
}

// AR(1): exact filtering on pairs (s_{t-1}, s_t), conditioning on y_1. Pair
// column a = i*k + j. The pair prior at t=2 is pi_i * p_ij; afterwards
// Pr((i,j) -> (j,l)) = p_jl.
FilterOutput filter_ar1(const TimeSeries& y, const MSModelSpec& spec) {
  const Eigen::Index T = static_cast<Eigen::Index>(y.size());
  const int k = spec.states();
  const int K = k * k;
  const double phi = spec.ar_coeffs()[0];
  const Eigen::MatrixXd& p = spec.transition().probs();

  Eigen::MatrixXd aug_pred = Eigen::MatrixXd::Zero(T, K);
  Eigen::MatrixXd aug_filt = Eigen::MatrixXd::Zero(T, K);
  Eigen::MatrixXd dens = Eigen::MatrixXd::Ones(T, K);
  std::vector<double> step(static_cast<std::size_t>(T), 0.0);

  const std::vector<double> pi = ergodic_probabilities(spec.transition());

  Eigen::VectorXd xi(K);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      xi(i * k + j) = pi[static_cast<std::size_t>(i)] * p(i, j);

  double loglik = 0.0;
  for (Eigen::Index t = 1; t < T; ++t) {
    if (t > 1) {
      // pair (j,l) inherits the filtered mass of all (i,j) times p_jl
      Eigen::VectorXd next = Eigen::VectorXd::Zero(K);
      for (int j = 0; j < k; ++j) {
        double mass = 0.0;
        for (int i = 0; i < k; ++i) mass += xi(i * k + j);
        for (int l = 0; l < k; ++l) next(j * k + l) = mass * p(j, l);
      }
      xi = next;
    }
    aug_pred.row(t) = xi.transpose();
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        const double mean =
            spec.means()[static_cast<std::size_t>(j)] +
            phi * (y[static_cast<std::size_t>(t - 1)] -
                   spec.means()[static_cast<std::size_t>(i)]);
        dens(t, i * k + j) =
            normal_pdf(y[static_cast<std::size_t>(t)], mean, spec.sigma());
      }
    }
    const Eigen::VectorXd joint = xi.cwiseProduct(dens.row(t).transpose());
    const double c = joint.sum();
    if (!(c > 0.0) || !std::isfinite(c)) {
      throw DegenerateLikelihood("filter step underflowed at t=" +
                                 std::to_string(t + 1));
    }
    step[static_cast<std::size_t>(t)] = std::log(c);
    loglik += step[static_cast<std::size_t>(t)];
    xi = joint / c;
    aug_filt.row(t) = xi.transpose();
  }

  // Marginals over the companion index; t=1 carries the ergodic distribution
  // (y_1 is conditioned on, so it never updates s_1 forward in time).
  Eigen::MatrixXd predicted = Eigen::MatrixXd::Zero(T, k);
  Eigen::MatrixXd filtered = Eigen::MatrixXd::Zero(T, k);
  for (int j = 0; j < k; ++j)
    predicted(0, j) = filtered(0, j) = pi[static_cast<std::size_t>(j)];
  for (Eigen::Index t = 1; t < T; ++t) {
    for (int j = 0; j < k; ++j) {
      for (int i = 0; i < k; ++i) {
        predicted(t, j) += aug_pred(t, i * k + j);
        filtered(t, j) += aug_filt(t, i * k + j);
      }
    }
  }

  FilterOutput out{ProbabilityPaths(predicted, filtered, filtered), loglik,
                   std::move(dens), std::move(step), std::move(aug_pred),
                   std::move(aug_filt)};
  return out;
}

} // namespace

FilterOutput hamilton_filter(const TimeSeries& y, const MSModelSpec& spec) {
  const int p = spec.ar_order();
  if (p > 1) {
    throw UnsupportedOrder("filter supports AR order 0 or 1, got " +
                           std::to_string(p));
  }
  if (y.size() < static_cast<std::size_t>(p + 1)) {
    throw InsufficientData("need at least " + std::to_string(p + 1) +
                           " observations, got " + std::to_string(y.size()));
  }
  return p == 0 ? filter_iid(y, spec) : filter_ar1(y, spec);
}

ProbabilityPaths kim_smoother(const FilterOutput& filter_out,
                              const TransitionMatrix& transition) {
  const Eigen::MatrixXd& predicted = filter_out.paths.predicted();
  const Eigen::MatrixXd& filtered = filter_out.paths.filtered();
  const int k = transition.states();

  if (filter_out.aug_filtered.size() == 0) {
    Eigen::MatrixXd smoothed =
        smooth_backward(predicted, filtered, transition.probs(), 0);
    return ProbabilityPaths(predicted, filtered, smoothed);
  }

  // Augmented chain: Pr((i,j) -> (j',l)) = p_jl when j' = j, else 0.
  const int K = k * k;
  Eigen::MatrixXd aug_trans = Eigen::MatrixXd::Zero(K, K);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      for (int l = 0; l < k; ++l)
        aug_trans(i * k + j, j * k + l) = transition(j, l);

  const Eigen::MatrixXd aug_smoothed = smooth_backward(
      filter_out.aug_predicted, filter_out.aug_filtered, aug_trans, 1);

  const Eigen::Index T = filtered.rows();
  Eigen::MatrixXd smoothed = Eigen::MatrixXd::Zero(T, k);
  for (Eigen::Index t = 1; t < T; ++t)
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < k; ++i) smoothed(t, j) += aug_smoothed(t, i * k + j);
  // s_1 marginal comes from the t=2 pairs' leading index.
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) smoothed(0, i) += aug_smoothed(1, i * k + j);

  return ProbabilityPaths(predicted, filtered, smoothed);
}

StatePath infer_states(const TimeSeries& y, const MSModelSpec& spec) {
  const FilterOutput fwd = hamilton_filter(y, spec);
  const ProbabilityPaths paths = kim_smoother(fwd, spec.transition());
  return hard_assign(paths.smoothed());
}

} // namespace msfuzzy
