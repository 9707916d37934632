#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "msfuzzy/types.hpp"

using namespace msfuzzy;

namespace {

TransitionMatrix two_state(double p11, double p22) {
  Eigen::MatrixXd p(2, 2);
  p << p11, 1.0 - p11, 1.0 - p22, p22;
  return TransitionMatrix(p);
}

} // namespace

TEST_SUITE("types") {

TEST_CASE("TimeSeries validates its observations") {
  CHECK_THROWS_AS(TimeSeries(std::vector<double>{}), std::invalid_argument);
  CHECK_THROWS_AS(TimeSeries({1.0, std::numeric_limits<double>::quiet_NaN()}),
                  std::invalid_argument);
  CHECK_THROWS_AS(TimeSeries({1.0, 2.0}, {"a"}), std::invalid_argument);

  const TimeSeries y({1.0, 2.0}, {"1947Q1", "1947Q2"});
  CHECK(y.size() == 2);
  CHECK(y.has_labels());
  CHECK(y.labels()[1] == "1947Q2");
}

TEST_CASE("TransitionMatrix enforces row-stochastic structure") {
  CHECK_NOTHROW(two_state(0.9, 0.8));

  Eigen::MatrixXd bad(2, 2);
  bad << 0.9, 0.2, 0.2, 0.8; // first row sums to 1.1
  CHECK_THROWS_AS(TransitionMatrix{bad}, std::invalid_argument);

  Eigen::MatrixXd negative(2, 2);
  negative << 1.1, -0.1, 0.2, 0.8;
  CHECK_THROWS_AS(TransitionMatrix{negative}, std::invalid_argument);

  Eigen::MatrixXd rect(2, 3);
  rect << 1, 0, 0, 0, 1, 0;
  CHECK_THROWS_AS(TransitionMatrix{rect}, std::invalid_argument);
}

TEST_CASE("MSModelSpec validates dimensions, sigma and stationarity") {
  const TransitionMatrix P = two_state(0.9, 0.8);
  CHECK_NOTHROW(MSModelSpec({0.0, 1.0}, {}, 0.5, P));
  CHECK_NOTHROW(MSModelSpec({0.0, 1.0}, {0.7}, 0.5, P));

  CHECK_THROWS_AS(MSModelSpec({0.0}, {}, 0.5, P), std::invalid_argument);
  CHECK_THROWS_AS(MSModelSpec({0.0, 1.0}, {}, 0.0, P), std::invalid_argument);
  CHECK_THROWS_AS(MSModelSpec({0.0, 1.0}, {}, -1.0, P), std::invalid_argument);
  CHECK_THROWS_AS(MSModelSpec({0.0, 1.0}, {1.0}, 0.5, P),
                  std::invalid_argument); // unit root
  CHECK_THROWS_AS(MSModelSpec({0.0, 1.0}, {1.3}, 0.5, P),
                  std::invalid_argument); // explosive
}

TEST_CASE("StatePath keeps states inside {1..k}") {
  CHECK_NOTHROW(StatePath({1, 2, 1}, 2));
  CHECK_THROWS_AS(StatePath({0, 1}, 2), std::invalid_argument);
  CHECK_THROWS_AS(StatePath({1, 3}, 2), std::invalid_argument);
  CHECK_THROWS_AS(StatePath({}, 2), std::invalid_argument);
}

TEST_CASE("MembershipMatrix accepts computed rows within 1e-8") {
  Eigen::MatrixXd u(2, 2);
  u << 0.5, 0.5 + 5e-9, 1.0, 0.0;
  CHECK_NOTHROW(MembershipMatrix{u});
  u(0, 1) = 0.6;
  CHECK_THROWS_AS(MembershipMatrix{u}, std::invalid_argument);
}

TEST_CASE("canonical order sorts means descending, stable on ties") {
  CHECK(canonical_state_order({0.0, 4.0}) == std::vector<int>{1, 0});
  CHECK(canonical_state_order({8.03, 2.91, -2.40}) == std::vector<int>{0, 1, 2});
  CHECK(canonical_state_order({1.0, 1.0}) == std::vector<int>{0, 1});
}

TEST_CASE("canonicalize_labels permutes spec and paths consistently") {
  // means (0,4), P=[[.9,.1],[.2,.8]] -> means (4,0), P=[[.8,.2],[.1,.9]]
  const MSModelSpec spec({0.0, 4.0}, {}, 0.5, two_state(0.9, 0.8));
  Eigen::MatrixXd m(2, 2);
  m << 0.9, 0.1, 0.3, 0.7;
  const MembershipMatrix u(m);

  const auto [canon, cu] = canonicalize_labels(spec, u);
  CHECK(canon.means() == std::vector<double>{4.0, 0.0});
  CHECK(canon.transition()(0, 0) == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(canon.transition()(0, 1) == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(canon.transition()(1, 0) == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(canon.transition()(1, 1) == doctest::Approx(0.9).epsilon(1e-14));
  CHECK(cu(0, 0) == 0.1);
  CHECK(cu(0, 1) == 0.9);

  SUBCASE("idempotent") {
    const auto [again, cu2] = canonicalize_labels(canon, cu);
    CHECK(again.means() == canon.means());
    CHECK(cu2(1, 0) == cu(1, 0));
  }

  SUBCASE("already sorted means are unchanged") {
    const TransitionMatrix P3(Eigen::MatrixXd::Constant(3, 3, 1.0 / 3));
    const MSModelSpec sorted({8.03, 2.91, -2.40}, {}, 1.0, P3);
    const MembershipMatrix u3(Eigen::MatrixXd::Constant(4, 3, 1.0 / 3));
    const auto [same, su] = canonicalize_labels(sorted, u3);
    CHECK(same.means() == sorted.means());
  }

  SUBCASE("tied means keep original order") {
    const MSModelSpec tied({1.0, 1.0}, {}, 0.5, two_state(0.9, 0.8));
    const auto [same, tu] = canonicalize_labels(tied, u);
    CHECK(same.transition()(0, 0) == 0.9);
    CHECK(tu(0, 0) == 0.9);
  }
}

TEST_CASE("hard_assign takes the row mode, ties to the lowest index") {
  Eigen::MatrixXd u(3, 2);
  u << 0.2, 0.8, 0.5, 0.5, 1.0, 0.0;
  const StatePath path = hard_assign(MembershipMatrix{u});
  CHECK(path[0] == 2);
  CHECK(path[1] == 1); // tie-break
  CHECK(path[2] == 1);
}

TEST_CASE("hard_assign is invariant under monotone row transforms") {
  Eigen::MatrixXd u(4, 3);
  u << 0.1, 0.3, 0.6, 0.5, 0.25, 0.25, 0.2, 0.7, 0.1, 0.34, 0.33, 0.33;
  const StatePath base = hard_assign(MembershipMatrix{u});
  // squaring then renormalizing preserves every row's ordering
  Eigen::MatrixXd v = u.array().square();
  v = v.array().colwise() / v.rowwise().sum().array();
  const StatePath transformed = hard_assign(MembershipMatrix(v));
  for (std::size_t t = 0; t < base.size(); ++t) {
    CHECK(base[t] == transformed[t]);
  }
}

TEST_CASE("canonicalization does not change the induced partition") {
  Eigen::MatrixXd u(5, 3);
  u << 0.7, 0.2, 0.1, 0.1, 0.8, 0.1, 0.05, 0.15, 0.8, 0.6, 0.3, 0.1, 0.2, 0.3,
      0.5;
  const TransitionMatrix P3(Eigen::MatrixXd::Constant(3, 3, 1.0 / 3));
  const MSModelSpec spec({-1.0, 5.0, 2.0}, {}, 1.0, P3);
  const auto [canon, cu] = canonicalize_labels(spec, MembershipMatrix{u});

  const StatePath before = hard_assign(MembershipMatrix{u});
  const StatePath after = hard_assign(cu);
  // as set partitions: same-group relations must be preserved
  for (std::size_t i = 0; i < before.size(); ++i) {
    for (std::size_t j = i + 1; j < before.size(); ++j) {
      CHECK((before[i] == before[j]) == (after[i] == after[j]));
    }
  }
}

} // TEST_SUITE
