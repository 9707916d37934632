#include "msfuzzy/markov.hpp"

#include <cmath>
#include <numbers>

#include "msfuzzy/errors.hpp"
#include "msfuzzy/rng.hpp"

namespace msfuzzy {

namespace {

constexpr double kPi = std::numbers::pi;

bool all_positive(const Eigen::MatrixXd& m) {
  return (m.array() > 0.0).all();
}

double normal_pdf(double x, double mean, double sd) {
  const double z = (x - mean) / sd;
  return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * kPi));
}

} // namespace

std::vector<double> ergodic_probabilities(const TransitionMatrix& P) {
  const int k = P.states();
  const Eigen::MatrixXd& probs = P.probs();

  // Primitivity scan: an ergodic chain has some strictly positive power of
  // P with exponent at most k^2.
  Eigen::MatrixXd power = probs;
  bool primitive = all_positive(power);
  for (int m = 2; m <= k * k && !primitive; ++m) {
    power = power * probs;
    primitive = all_positive(power);
  }
  if (!primitive) {
    throw NonErgodicChain("no strictly positive power of P up to k^2");
  }

  // Solve pi' P = pi' with the normalization sum(pi) = 1: replace the last
  // equation of (P' - I) pi = 0 with 1' pi = 1.
  Eigen::MatrixXd A = probs.transpose() - Eigen::MatrixXd::Identity(k, k);
  A.row(k - 1).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(k);
  b(k - 1) = 1.0;
  Eigen::VectorXd pi = A.fullPivLu().solve(b);

  std::vector<double> out(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    if (!(pi(j) > 0.0)) {
      throw NonErgodicChain("stationary vector not strictly positive");
    }
    out[static_cast<std::size_t>(j)] = pi(j);
  }
  return out;
}

double mean_duration(double p_ii) {
  if (p_ii < 0.0 || p_ii > 1.0) {
    throw std::invalid_argument("mean_duration: p_ii outside [0,1]");
  }
  if (p_ii == 1.0) {
    throw AbsorbingState("mean_duration: p_ii = 1");
  }
  return 1.0 / (1.0 - p_ii);
}

std::vector<double> state_durations(const MSModelSpec& spec) {
  std::vector<double> durations;
  durations.reserve(static_cast<std::size_t>(spec.states()));
  for (int i = 0; i < spec.states(); ++i) {
    durations.push_back(mean_duration(spec.transition()(i, i)));
  }
  return durations;
}

namespace {

std::vector<int> simulate_chain_raw(const TransitionMatrix& P, std::size_t T,
                                    Rng& rng) {
  const auto pi = ergodic_probabilities(P);
  const int k = P.states();
  std::vector<int> states(T);

  std::vector<double> row(static_cast<std::size_t>(k));
  int s = rng.discrete(pi);
  states[0] = s + 1;
  for (std::size_t t = 1; t < T; ++t) {
    for (int j = 0; j < k; ++j) row[static_cast<std::size_t>(j)] = P(s, j);
    s = rng.discrete(row);
    states[t] = s + 1;
  }
  return states;
}

} // namespace

StatePath simulate_chain(const TransitionMatrix& P, std::size_t T,
                         std::uint64_t rng_seed) {
  if (T < 1) throw std::invalid_argument("simulate_chain: T < 1");
  Rng rng(rng_seed);
  return StatePath(simulate_chain_raw(P, T, rng), P.states());
}

std::pair<TimeSeries, StatePath> simulate_ms(const MSModelSpec& spec,
                                             std::size_t T,
                                             std::uint64_t rng_seed) {
  if (T < 1) throw std::invalid_argument("simulate_ms: T < 1");
  const int p = spec.ar_order();
  const std::size_t burn = p > 0 ? 200 : 0;
  const std::size_t total = T + burn;

  Rng rng(rng_seed);
  std::vector<int> chain = simulate_chain_raw(spec.transition(), total, rng);

  const auto& mu = spec.means();
  const auto& phi = spec.ar_coeffs();
  const double sigma = spec.sigma();

  // z_t = y_t - mu_{s_t} follows the switching-free AR recursion
  // z_t = sum_i phi_i z_{t-i} + eps_t; pre-sample z's are zero.
  std::vector<double> z(total);
  std::vector<double> y(total);
  for (std::size_t t = 0; t < total; ++t) {
    double zt = rng.normal(0.0, sigma);
    for (int i = 1; i <= p; ++i) {
      if (t >= static_cast<std::size_t>(i)) zt += phi[i - 1] * z[t - i];
    }
    z[t] = zt;
    y[t] = mu[static_cast<std::size_t>(chain[t] - 1)] + zt;
  }

  std::vector<double> values(y.begin() + static_cast<std::ptrdiff_t>(burn),
                             y.end());
  std::vector<int> states(chain.begin() + static_cast<std::ptrdiff_t>(burn),
                          chain.end());
  return {TimeSeries(std::move(values)),
          StatePath(std::move(states), spec.states())};
}

std::vector<double> ergodic_mixture_density(const MSModelSpec& spec,
                                            const std::vector<double>& grid) {
  const int p = spec.ar_order();
  if (p > 1) {
    throw UnsupportedOrder("ergodic_mixture_density: only p in {0,1}");
  }
  const auto pi = ergodic_probabilities(spec.transition());
  const int k = spec.states();
  const auto& mu = spec.means();
  const double sigma = spec.sigma();

  // Component list: for p = 0 one Normal(mu_j, sigma^2) per state with
  // ergodic weight; for p = 1 one component per state pair (i, j) with
  // weight pi_i p_ij and centre (mu_j - phi mu_i) / (1 - phi), the
  // steady-state level the AR recursion settles at while the pair persists.
  std::vector<double> weights, centres;
  if (p == 0) {
    weights.assign(pi.begin(), pi.end());
    centres.assign(mu.begin(), mu.end());
  } else {
    const double phi = spec.ar_coeffs()[0];
    const TransitionMatrix& P = spec.transition();
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        weights.push_back(pi[static_cast<std::size_t>(i)] * P(i, j));
        centres.push_back((mu[static_cast<std::size_t>(j)] -
                           phi * mu[static_cast<std::size_t>(i)]) /
                          (1.0 - phi));
      }
    }
  }

  std::vector<double> density(grid.size(), 0.0);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    double d = 0.0;
    for (std::size_t c = 0; c < weights.size(); ++c) {
      d += weights[c] * normal_pdf(grid[g], centres[c], sigma);
    }
    density[g] = d;
  }
  return density;
}

} // namespace msfuzzy
