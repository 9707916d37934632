#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <vector>

#include "doctest.h"
#include "msfuzzy/catalog.hpp"
#include "msfuzzy/errors.hpp"
#include "msfuzzy/markov.hpp"
#include "msfuzzy/rng.hpp"
#include "oracles/power_iteration.hpp"
#include "oracles/quadrature.hpp"

using namespace msfuzzy;

namespace {

TransitionMatrix two_state(double p11, double p22) {
  Eigen::MatrixXd p(2, 2);
  p << p11, 1.0 - p11, 1.0 - p22, p22;
  return TransitionMatrix(p);
}

} // namespace

TEST_SUITE("markov") {

TEST_CASE("ergodic probabilities: symmetric two-state chain") {
  const auto pi = ergodic_probabilities(two_state(0.5, 0.5));
  CHECK(pi[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(pi[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("ergodic probabilities: balance equation solved by hand") {
  // pi_1 = p21 / (p12 + p21) = 0.2 / 0.3 = 2/3
  const auto pi = ergodic_probabilities(two_state(0.9, 0.8));
  CHECK(pi[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(pi[1] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("ergodic probabilities match power iteration on every catalog P") {
  for (const auto& entry : dgp_catalog()) {
    const auto pi = ergodic_probabilities(entry.spec.transition());
    const auto ref =
        oracle::stationary_by_power_iteration(entry.spec.transition().probs());
    REQUIRE(pi.size() == ref.size());
    for (std::size_t j = 0; j < pi.size(); ++j) {
      CHECK(pi[j] == doctest::Approx(ref[j]).epsilon(1e-12));
      CHECK(pi[j] > 0.0);
    }
    // stationarity residual
    const Eigen::Map<const Eigen::VectorXd> v(pi.data(),
                                              static_cast<Eigen::Index>(pi.size()));
    const Eigen::VectorXd residual =
        entry.spec.transition().probs().transpose() * v - v;
    CHECK(residual.lpNorm<Eigen::Infinity>() < 1e-10);
  }
}

TEST_CASE("ergodic probabilities match power iteration on random chains") {
  Rng rng(2024);
  for (int rep = 0; rep < 50; ++rep) {
    const int k = 2 + static_cast<int>(rng.below(3));
    Eigen::MatrixXd p(k, k);
    for (int i = 0; i < k; ++i) {
      double sum = 0.0;
      for (int j = 0; j < k; ++j) {
        p(i, j) = 0.05 + rng.uniform();
        sum += p(i, j);
      }
      p.row(i) /= sum;
    }
    const auto pi = ergodic_probabilities(TransitionMatrix(p));
    const auto ref = oracle::stationary_by_power_iteration(p);
    for (std::size_t j = 0; j < pi.size(); ++j) {
      CHECK(pi[j] == doctest::Approx(ref[j]).epsilon(1e-10));
    }
  }
}

TEST_CASE("non-ergodic chains are rejected") {
  CHECK_THROWS_AS(ergodic_probabilities(two_state(1.0, 1.0)), NonErgodicChain);
  // periodic chain: alternates deterministically, no positive power
  CHECK_THROWS_AS(ergodic_probabilities(two_state(0.0, 0.0)), NonErgodicChain);
}

TEST_CASE("mean duration is 1/(1 - p_ii)") {
  CHECK(mean_duration(0.95) == doctest::Approx(20.0).epsilon(1e-12));
  CHECK(mean_duration(0.68) == doctest::Approx(3.125).epsilon(1e-12));
  CHECK(mean_duration(0.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(mean_duration(1.0), AbsorbingState);
}

TEST_CASE("state durations walk the diagonal") {
  const MSModelSpec spec({1.0, 0.0}, {}, 0.5, two_state(0.95, 0.68));
  const auto durations = state_durations(spec);
  REQUIRE(durations.size() == 2);
  CHECK(durations[0] == doctest::Approx(20.0));
  CHECK(durations[1] == doctest::Approx(3.125));
}

TEST_CASE("simulate_chain is reproducible and respects the transition law") {
  const TransitionMatrix P = two_state(0.9, 0.8);
  const StatePath a = simulate_chain(P, 50, 7);
  const StatePath b = simulate_chain(P, 50, 7);
  for (std::size_t t = 0; t < a.size(); ++t) REQUIRE(a[t] == b[t]);

  const StatePath longrun = simulate_chain(P, 100000, 11);
  std::map<std::pair<int, int>, int> transitions;
  std::map<int, int> visits;
  for (std::size_t t = 0; t + 1 < longrun.size(); ++t) {
    ++transitions[{longrun[t], longrun[t + 1]}];
    ++visits[longrun[t]];
  }
  CHECK(static_cast<double>(transitions[{1, 1}]) / visits[1] ==
        doctest::Approx(0.9).epsilon(0.012));
  CHECK(static_cast<double>(transitions[{2, 2}]) / visits[2] ==
        doctest::Approx(0.8).epsilon(0.012));

  // long-run occupation matches the ergodic distribution
  const auto pi = ergodic_probabilities(P);
  CHECK(static_cast<double>(visits[1]) / static_cast<double>(longrun.size()) ==
        doctest::Approx(pi[0]).epsilon(0.015));
}

TEST_CASE("simulate_ms: noiseless limit reproduces the state means") {
  const MSModelSpec spec({0.0, 4.0}, {}, 1e-12, two_state(0.9, 0.8));
  const auto [y, states] = simulate_ms(spec, 200, 3);
  for (std::size_t t = 0; t < y.size(); ++t) {
    const double mu = spec.means()[static_cast<std::size_t>(states[t] - 1)];
    CHECK(std::abs(y[t] - mu) < 1e-9);
  }
}

TEST_CASE("simulate_ms: per-state sample means match MS2--4") {
  const auto& entry = dgp_by_label("MS2--4"); // means (0, 4), sigma 0.5
  const auto [y, states] = simulate_ms(entry.spec, 10000, 17);
  double sum = 0.0;
  int n = 0;
  for (std::size_t t = 0; t < y.size(); ++t) {
    if (states[t] == 2) {
      sum += y[t];
      ++n;
    }
  }
  REQUIRE(n > 1000);
  CHECK(sum / n == doctest::Approx(4.0).epsilon(0.025));
}

TEST_CASE("simulate_ms: AR(1) residual autocorrelation is phi") {
  const auto& entry = dgp_by_label("MS2AR--4");
  const auto [y, states] = simulate_ms(entry.spec, 100000, 23);
  std::vector<double> z(y.size());
  for (std::size_t t = 0; t < y.size(); ++t) {
    z[t] = y[t] - entry.spec.means()[static_cast<std::size_t>(states[t] - 1)];
  }
  double num = 0.0, den = 0.0;
  for (std::size_t t = 1; t < z.size(); ++t) num += z[t] * z[t - 1];
  for (double v : z) den += v * v;
  CHECK(num / den == doctest::Approx(0.7).epsilon(0.02));
}

TEST_CASE("simulate_ms is bit-identical across calls with one seed") {
  const auto& entry = dgp_by_label("MS3AR--2");
  const auto [y1, s1] = simulate_ms(entry.spec, 300, 99);
  const auto [y2, s2] = simulate_ms(entry.spec, 300, 99);
  for (std::size_t t = 0; t < y1.size(); ++t) {
    REQUIRE(y1[t] == y2[t]);
    REQUIRE(s1[t] == s2[t]);
  }
}

TEST_CASE("mixture density: k=1 is a single Normal pdf") {
  const MSModelSpec spec({1.5}, {}, 0.7,
                         TransitionMatrix(Eigen::MatrixXd::Ones(1, 1)));
  const std::vector<double> grid = {0.0, 1.5, 3.0};
  const auto d = ergodic_mixture_density(spec, grid);
  const double inv_sqrt_2pi = 0.3989422804014327;
  for (std::size_t g = 0; g < grid.size(); ++g) {
    const double z = (grid[g] - 1.5) / 0.7;
    CHECK(d[g] ==
          doctest::Approx(inv_sqrt_2pi / 0.7 * std::exp(-0.5 * z * z))
              .epsilon(1e-12));
  }
}

TEST_CASE("mixture density integrates to one for every catalog DGP") {
  for (const auto& entry : dgp_catalog()) {
    const auto& spec = entry.spec;
    // cover all component centres: state means for p=0, pair levels for p=1
    double lo = spec.means()[0], hi = spec.means()[0];
    for (double mi : spec.means()) {
      for (double mj : spec.means()) {
        const double centre =
            spec.ar_order() == 1
                ? (mj - spec.ar_coeffs()[0] * mi) / (1.0 - spec.ar_coeffs()[0])
                : mj;
        lo = std::min(lo, centre);
        hi = std::max(hi, centre);
      }
    }
    lo -= 6.0 * spec.sigma();
    hi += 6.0 * spec.sigma();
    std::vector<double> grid(4001);
    for (std::size_t g = 0; g < grid.size(); ++g) {
      grid[g] = lo + (hi - lo) * static_cast<double>(g) / 4000.0;
    }
    const auto density = ergodic_mixture_density(spec, grid);
    CHECK(oracle::trapezoid_mass(grid, density) == doctest::Approx(1.0).epsilon(1e-4));
  }
}

TEST_CASE("mixture density: MS2--4 is bimodal with modes near 0 and 4") {
  const auto& entry = dgp_by_label("MS2--4");
  std::vector<double> grid(2001);
  for (std::size_t g = 0; g < grid.size(); ++g) {
    grid[g] = -3.0 + 10.0 * static_cast<double>(g) / 2000.0;
  }
  const auto density = ergodic_mixture_density(entry.spec, grid);
  CHECK(oracle::count_modes(density) == 2);
  // locate the two modes
  std::vector<double> modes;
  for (std::size_t g = 1; g + 1 < grid.size(); ++g) {
    if (density[g] > density[g - 1] && density[g] > density[g + 1]) {
      modes.push_back(grid[g]);
    }
  }
  REQUIRE(modes.size() == 2);
  CHECK(modes[0] == doctest::Approx(0.0).epsilon(0.05));
  CHECK(modes[1] == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("mixture density: unsupported order") {
  const MSModelSpec spec({0.0, 1.0}, {0.3, 0.2}, 0.5, two_state(0.9, 0.8));
  CHECK_THROWS_AS(ergodic_mixture_density(spec, {0.0}), UnsupportedOrder);
}

} // TEST_SUITE
