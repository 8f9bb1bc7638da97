#include <doctest.h>

#include <cmath>
#include <random>

#include "../support/oracles.hpp"
#include "scenred/exact.hpp"
#include "scenred/limits.hpp"

using namespace scenred;

namespace {
const Metric kL1(1.0, Norm::L2);
const Metric kL2(2.0, Norm::L2);
const Metric kTaxi(1.0, Norm::L1);
}  // namespace

TEST_CASE("counting helpers") {
  CHECK(binomial(5, 2) == 10.0);
  CHECK(binomial(4, 0) == 1.0);
  CHECK(binomial(3, 4) == 0.0);
  CHECK(stirling2(4, 2) == 7.0);
  CHECK(stirling2(5, 3) == 25.0);
  CHECK(stirling2(6, 6) == 1.0);
}

TEST_CASE("discrete exact examples") {
  const auto pair = Distribution::uniform({{1.0, 0.0}, {-1.0, 0.0}});
  CHECK(discrete_exact(pair, 1, kL2).value == doctest::Approx(std::sqrt(2.0)));
  CHECK(discrete_exact(pair, 2, kL2).value == 0.0);
  CHECK(discrete_exact(gen_kappa_tight(1.0, 4, 1), 1, kTaxi).value == doctest::Approx(1.5));
}

TEST_CASE("discrete exact breaks ties lexicographically") {
  const auto p = Distribution::uniform({{0.0}, {1.0}, {2.0}, {3.0}});
  const auto r = discrete_exact(p, 2, kL1);
  CHECK(r.selected == std::vector<std::size_t>{0, 2});
}

TEST_CASE("discrete exact matches subset enumeration") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 30; ++t) {
    const auto a = oracle::random_uniform(rng, 8, 2);
    const Distribution p(a.points(), oracle::rational_weights(rng, 8, 12));
    for (const auto& m : {kL1, kL2, kTaxi}) {
      for (std::size_t k = 1; k <= 4; ++k) {
        CHECK(discrete_exact(p, k, m).value ==
              doctest::Approx(oracle::discrete_by_subsets(p, k, m)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("discrete exact refuses oversized problems") {
  std::mt19937_64 rng(2);
  const auto p = oracle::random_uniform(rng, 30, 2);
  CHECK_THROWS_AS(discrete_exact(p, 15, kL1, {1000.0}), BudgetExceeded);
}

TEST_CASE("continuous exact on the worst-case instance") {
  const auto p = gen_worst_case(4, 4);
  CHECK(continuous_exact(p, 2, kL2).value == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-9));
  CHECK(continuous_exact(p, 2, kL1).value == doctest::Approx(std::sqrt(0.5)).epsilon(1e-6));
  CHECK(continuous_exact(p, 4, kL2).value == 0.0);
}

TEST_CASE("continuous exact matches labeling enumeration") {
  std::mt19937_64 rng(37);
  for (int t = 0; t < 15; ++t) {
    const auto a = oracle::random_uniform(rng, 6, 2);
    const Distribution p(a.points(), oracle::rational_weights(rng, 6, 12));
    for (const auto& m : {kL2, kTaxi, kL1}) {
      for (std::size_t k = 1; k <= 3; ++k) {
        const double got = continuous_exact(p, k, m).value;
        const double want = oracle::continuous_by_labelings(p, k, m);
        CHECK(got == doctest::Approx(want).epsilon(1e-7));
      }
    }
  }
}

TEST_CASE("one-dimensional continuous exact matches labeling enumeration") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 15; ++t) {
    const auto p = oracle::random_uniform(rng, 7, 1);
    for (const auto& m : {kL2, kL1}) {
      for (std::size_t k = 1; k <= 3; ++k) {
        CHECK(continuous_exact(p, k, m).value ==
              doctest::Approx(oracle::continuous_by_labelings(p, k, m)).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("continuous exact refuses oversized problems") {
  std::mt19937_64 rng(2);
  const auto p = oracle::random_uniform(rng, 20, 2);
  CHECK_THROWS_AS(continuous_exact(p, 5, kL2, {1e6, {}}), BudgetExceeded);
}

TEST_CASE("continuous never exceeds discrete") {
  std::mt19937_64 rng(43);
  for (int t = 0; t < 20; ++t) {
    const auto p = oracle::random_uniform(rng, 7, 2);
    for (std::size_t k = 1; k <= 3; ++k) {
      CHECK(continuous_exact(p, k, kL2).value <= discrete_exact(p, k, kL2).value + 1e-12);
    }
  }
}
