#include <vector>

#include "doctest.h"
#include "msfuzzy/agreement.hpp"
#include "msfuzzy/errors.hpp"
#include "msfuzzy/rng.hpp"
#include "oracles/pair_count.hpp"

using namespace msfuzzy;

namespace {

StatePath random_partition(Rng& rng, std::size_t T, int k) {
  std::vector<int> states(T);
  for (auto& s : states) s = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(k)));
  return StatePath(std::move(states), k);
}

} // namespace

TEST_SUITE("agreement") {

TEST_CASE("identical partitions score one") {
  const StatePath a({1, 2, 2, 1, 3}, 3);
  CHECK(rand_index(a, a) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("the four-point checkerboard scores one third") {
  // pairs: {1,2} split by b, {3,4} split by b, {1,3} split by a, {2,4} split
  // by a, {1,4} and {2,3} split by both -> 2 agreements out of 6
  const StatePath a({1, 1, 2, 2}, 2);
  const StatePath b({1, 2, 1, 2}, 2);
  CHECK(rand_index(a, b) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("closed form equals pair counting on random partitions") {
  Rng rng(71);
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t T = 2 + rng.below(9); // up to 10
    const int ka = 2 + static_cast<int>(rng.below(3));
    const int kb = 2 + static_cast<int>(rng.below(3));
    const StatePath a = random_partition(rng, T, ka);
    const StatePath b = random_partition(rng, T, kb);
    const double closed = rand_index(a, b);
    const double counted = oracle::rand_by_pair_counting(a, b);
    CHECK(std::abs(closed - counted) < 1e-12);
    CHECK(closed >= 0.0);
    CHECK(closed <= 1.0);
  }
}

TEST_CASE("rand index is symmetric and relabel invariant") {
  Rng rng(72);
  const StatePath a = random_partition(rng, 40, 3);
  const StatePath b = random_partition(rng, 40, 3);
  CHECK(rand_index(a, b) == rand_index(b, a));

  // relabel b through a fixed permutation 1->3, 2->1, 3->2
  std::vector<int> relabeled(b.size());
  const int map[3] = {3, 1, 2};
  for (std::size_t t = 0; t < b.size(); ++t) relabeled[t] = map[b[t] - 1];
  CHECK(rand_index(a, StatePath(relabeled, 3)) ==
        doctest::Approx(rand_index(a, b)).epsilon(1e-15));
}

TEST_CASE("rand index validates lengths") {
  const StatePath a({1, 2}, 2);
  const StatePath b({1, 2, 1}, 2);
  CHECK_THROWS_AS(rand_index(a, b), LengthMismatch);
  CHECK_THROWS_AS(rand_index(StatePath({1}, 2), StatePath({1}, 2)),
                  std::invalid_argument);
}

TEST_CASE("contingency table counts co-occurrences") {
  const StatePath a({1, 1, 2, 2, 2}, 2);
  const StatePath b({1, 2, 2, 2, 1}, 2);
  const ContingencyTable table = ContingencyTable::from_paths(a, b);
  CHECK(table.counts(0, 0) == 1);
  CHECK(table.counts(0, 1) == 1);
  CHECK(table.counts(1, 0) == 1);
  CHECK(table.counts(1, 1) == 2);
  CHECK(table.counts.sum() == 5);
}

TEST_CASE("five-number summary") {
  const FiveNumberSummary constant = rand_summary({1.0, 1.0, 1.0});
  CHECK(constant.min == 1.0);
  CHECK(constant.q1 == 1.0);
  CHECK(constant.median == 1.0);
  CHECK(constant.q3 == 1.0);
  CHECK(constant.max == 1.0);

  const FiveNumberSummary exact = rand_summary({4.0, 0.0, 2.0, 3.0, 1.0});
  CHECK(exact.min == 0.0);
  CHECK(exact.q1 == 1.0);
  CHECK(exact.median == 2.0);
  CHECK(exact.q3 == 3.0);
  CHECK(exact.max == 4.0);

  // linear interpolation between order statistics
  const FiveNumberSummary interp = rand_summary({1.0, 2.0, 3.0, 4.0});
  CHECK(interp.q1 == doctest::Approx(1.75).epsilon(1e-15));
  CHECK(interp.median == doctest::Approx(2.5).epsilon(1e-15));
  CHECK(interp.q3 == doctest::Approx(3.25).epsilon(1e-15));
}

TEST_CASE("moving average smooths and trims") {
  const TimeSeries y({1.0, 2.0, 3.0, 4.0, 5.0},
                     {"a", "b", "c", "d", "e"});

  const TimeSeries identity = moving_average(y, 1);
  REQUIRE(identity.size() == 5);
  for (std::size_t t = 0; t < 5; ++t) CHECK(identity[t] == y[t]);

  const TimeSeries ma3 = moving_average(y, 3);
  REQUIRE(ma3.size() == 3);
  CHECK(ma3[0] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(ma3[1] == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(ma3[2] == doctest::Approx(4.0).epsilon(1e-15));
  REQUIRE(ma3.has_labels());
  CHECK(ma3.labels() == std::vector<std::string>{"b", "c", "d"});

  const TimeSeries ma5 = moving_average(y, 5);
  REQUIRE(ma5.size() == 1);
  CHECK(ma5[0] == doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("moving average validates the window") {
  const TimeSeries y({1.0, 2.0, 3.0});
  CHECK_THROWS_AS(moving_average(y, 2), std::invalid_argument);
  CHECK_THROWS_AS(moving_average(y, 0), std::invalid_argument);
  CHECK_THROWS_AS(moving_average(y, 5), WindowTooLarge);
}

} // TEST_SUITE
