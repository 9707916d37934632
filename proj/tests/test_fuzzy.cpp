#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "msfuzzy/catalog.hpp"
#include "msfuzzy/errors.hpp"
#include "msfuzzy/fuzzy.hpp"
#include "msfuzzy/markov.hpp"

using namespace msfuzzy;

TEST_SUITE("fuzzy") {

TEST_CASE("k=1 returns the sample mean with crisp membership") {
  const TimeSeries y({1.0, 2.0, 6.0});
  const FuzzyResult r = fuzzy_kmeans(y, 1);
  CHECK(r.centroids[0] == doctest::Approx(3.0).epsilon(1e-12));
  for (Eigen::Index t = 0; t < 3; ++t) CHECK(r.membership(t, 0) == 1.0);
  CHECK(r.converged);
}

TEST_CASE("an equidistant point gets a split membership") {
  const TimeSeries y({-1.0, -1.0, 1.0, 1.0, 0.0});
  const FuzzyResult r = fuzzy_kmeans(y, 2);
  // symmetric data: centroids land at +/-c, the origin sits exactly between
  CHECK(r.centroids[0] == doctest::Approx(-r.centroids[1]).epsilon(1e-6));
  CHECK(r.membership(4, 0) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(r.membership(4, 1) == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("objective decreases sweep over sweep") {
  const auto [y, states] = simulate_ms(dgp_by_label("MS2--1").spec, 200, 8);
  const FuzzyResult r = fuzzy_kmeans(y, 2);
  REQUIRE(!r.objective_trace.empty());
  for (std::size_t i = 1; i < r.objective_trace.size(); ++i) {
    CHECK(r.objective_trace[i] <= r.objective_trace[i - 1] + 1e-12);
  }
  CHECK(r.objective == doctest::Approx(r.objective_trace.back()));
  CHECK(r.objective >= 0.0);
}

TEST_CASE("membership rows sum to one") {
  const auto [y, states] = simulate_ms(dgp_by_label("MS3--2").spec, 150, 9);
  const FuzzyResult r = fuzzy_kmeans(y, 3);
  for (Eigen::Index t = 0; t < r.membership.length(); ++t) {
    double sum = 0.0;
    for (int j = 0; j < 3; ++j) sum += r.membership(t, j);
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("centroids come out in strictly descending order") {
  const auto [y, states] = simulate_ms(dgp_by_label("MS3--4").spec, 300, 10);
  const FuzzyResult r = fuzzy_kmeans(y, 3);
  CHECK(r.centroids[0] > r.centroids[1]);
  CHECK(r.centroids[1] > r.centroids[2]);
}

TEST_CASE("affine equivariance: positive scale") {
  const auto [y, states] = simulate_ms(dgp_by_label("MS2--2").spec, 120, 11);
  const double a = 2.5, b = -3.0;
  std::vector<double> scaled(y.size());
  for (std::size_t t = 0; t < y.size(); ++t) scaled[t] = a * y[t] + b;

  const FuzzyResult base = fuzzy_kmeans(y, 2);
  const FuzzyResult moved = fuzzy_kmeans(TimeSeries(scaled), 2);
  for (int j = 0; j < 2; ++j) {
    CHECK(moved.centroids[static_cast<std::size_t>(j)] ==
          doctest::Approx(a * base.centroids[static_cast<std::size_t>(j)] + b)
              .epsilon(1e-6));
  }
  for (Eigen::Index t = 0; t < base.membership.length(); ++t) {
    for (int j = 0; j < 2; ++j) {
      CHECK(std::abs(moved.membership(t, j) - base.membership(t, j)) < 1e-6);
    }
  }
}

TEST_CASE("affine equivariance: negation flips the cluster labels") {
  const auto [y, states] = simulate_ms(dgp_by_label("MS2--2").spec, 120, 11);
  std::vector<double> negated(y.size());
  for (std::size_t t = 0; t < y.size(); ++t) negated[t] = -y[t];

  FuzzyConfig config;
  config.n_starts = 1; // single deterministic quantile start
  const FuzzyResult base = fuzzy_kmeans(y, 2, 2.0, config);
  const FuzzyResult flipped = fuzzy_kmeans(TimeSeries(negated), 2, 2.0, config);
  CHECK(flipped.centroids[0] == doctest::Approx(-base.centroids[1]).epsilon(1e-6));
  CHECK(flipped.centroids[1] == doctest::Approx(-base.centroids[0]).epsilon(1e-6));
  for (Eigen::Index t = 0; t < base.membership.length(); ++t) {
    CHECK(std::abs(flipped.membership(t, 0) - base.membership(t, 1)) < 1e-6);
  }
}

TEST_CASE("m near one hardens the memberships on separated data") {
  const auto [y, states] = simulate_ms(dgp_by_label("MS2--8").spec, 200, 12);
  const FuzzyResult r = fuzzy_kmeans(y, 2, 1.05);
  double worst = 0.0;
  for (Eigen::Index t = 0; t < r.membership.length(); ++t) {
    for (int j = 0; j < 2; ++j) {
      const double u = r.membership(t, j);
      worst = std::max(worst, std::min(u, 1.0 - u));
    }
  }
  CHECK(worst < 0.1);
}

TEST_CASE("well-separated states are recovered nearly perfectly") {
  const auto [y, truth] = simulate_ms(dgp_by_label("MS2--8").spec, 300, 13);
  const FuzzyResult r = fuzzy_kmeans(y, 2);
  const StatePath assigned = hard_assign(r.membership);
  // catalog states are numbered low mean first, canonical clusters high
  // centroid first, so cluster 1 should line up with state 2
  std::size_t hits = 0;
  for (std::size_t t = 0; t < y.size(); ++t) {
    hits += assigned[t] == 3 - truth[t];
  }
  CHECK(static_cast<double>(hits) / static_cast<double>(y.size()) > 0.98);
}

TEST_CASE("identical observations degrade gracefully") {
  const TimeSeries y(std::vector<double>(20, 3.0));
  const FuzzyResult r = fuzzy_kmeans(y, 2);
  CHECK_FALSE(r.converged);
  CHECK(r.centroids[0] == r.centroids[1]);
  for (Eigen::Index t = 0; t < 20; ++t) {
    CHECK(r.membership(t, 0) == doctest::Approx(0.5));
  }
}

TEST_CASE("input validation") {
  const TimeSeries y({1.0, 2.0, 3.0});
  CHECK_THROWS_AS(fuzzy_kmeans(y, 0), std::invalid_argument);
  CHECK_THROWS_AS(fuzzy_kmeans(y, 2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(fuzzy_kmeans(y, 4), InsufficientData);
}

TEST_CASE("deterministic given the seed") {
  const auto [y, states] = simulate_ms(dgp_by_label("MS3--1").spec, 150, 14);
  const FuzzyResult a = fuzzy_kmeans(y, 3);
  const FuzzyResult b = fuzzy_kmeans(y, 3);
  CHECK(a.objective == b.objective);
  for (Eigen::Index t = 0; t < a.membership.length(); ++t) {
    for (int j = 0; j < 3; ++j) REQUIRE(a.membership(t, j) == b.membership(t, j));
  }
}

} // TEST_SUITE
