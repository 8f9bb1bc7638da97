#include <doctest.h>

#include <cmath>
#include <random>

#include "../support/oracles.hpp"
#include "scenred/transport.hpp"

using namespace scenred;

namespace {
const Metric kL1(1.0, Norm::L2);
const Metric kL2(2.0, Norm::L2);
}  // namespace

TEST_CASE("identical distributions are at distance zero") {
  std::mt19937_64 rng(1);
  const auto p = oracle::random_uniform(rng, 6, 2);
  const auto r = wasserstein(p, p, kL2);
  CHECK(r.value == doctest::Approx(0.0));
  CHECK(r.plan.marginal_error() < 1e-12);
}

TEST_CASE("two atoms onto their midpoint") {
  const auto p = Distribution::uniform({{0.0}, {2.0}});
  const Distribution q({{1.0}}, {1.0});
  for (double l : {1.0, 2.0, 3.0}) {
    for (Norm nm : {Norm::L1, Norm::L2, Norm::LInf}) {
      CHECK(wasserstein(p, q, Metric(l, nm)).value == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("three atoms onto two") {
  const auto p = Distribution::uniform({{0.0}, {1.0}, {3.0}});
  const Distribution q({{0.0}, {3.0}}, {2.0 / 3.0, 1.0 / 3.0});
  const auto r = wasserstein(p, q, kL1);
  CHECK(r.value == doctest::Approx(1.0 / 3.0));
  CHECK(r.plan.positive_entries() <= 4);
  CHECK(r.min_reduced_cost >= -1e-12);
}

TEST_CASE("simplex agrees with enumeration of bases") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::size_t> size(1, 4);
  for (int t = 0; t < 60; ++t) {
    const std::size_t n = size(rng), m = size(rng);
    auto a = oracle::random_uniform(rng, n, 2);
    auto b = oracle::random_uniform(rng, m, 2);
    const Distribution p(a.points(), oracle::rational_weights(rng, n, 12));
    const Distribution q(b.points(), oracle::rational_weights(rng, m, 12));
    const auto r = wasserstein(p, q, kL1);
    const auto c = distance_matrix(p.points(), q.points(), kL1);
    std::vector<std::vector<double>> cost(n, std::vector<double>(m));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < m; ++j) cost[i][j] = c(i, j);
    }
    CHECK(r.value == doctest::Approx(oracle::transport_by_bases(cost, p.weights(), q.weights()))
                         .epsilon(1e-9));
    CHECK(r.plan.marginal_error() <= 1e-9);
    CHECK(r.plan.positive_entries() <= n + m - 1);
  }
}

TEST_CASE("degenerate marginals") {
  // Equal partial sums make the northwest corner degenerate.
  const Distribution p({{0.0}, {1.0}, {2.0}, {3.0}}, {0.25, 0.25, 0.25, 0.25});
  const Distribution q({{3.0}, {0.0}}, {0.5, 0.5});
  CHECK(wasserstein(p, q, kL1).value == doctest::Approx(0.5));
}

TEST_CASE("wasserstein rejects bad input") {
  const auto p = Distribution::uniform({{0.0}});
  const auto q = Distribution::uniform({{0.0, 1.0}});
  CHECK_THROWS_AS(wasserstein(p, q, kL1), InvalidArgument);
  const Distribution bad({{0.0}, {1.0}}, {0.5, 0.6});
  CHECK_THROWS_AS(wasserstein(bad, p, kL1), InvalidArgument);
}

TEST_CASE("distance to a support set") {
  const auto p = Distribution::uniform({{0.0}, {1.0}, {3.0}});
  CHECK(dist_to_support(p, p.points(), kL2).value == 0.0);
  const auto s = dist_to_support(p, {{0.0}, {3.0}}, kL1);
  CHECK(s.value == doctest::Approx(1.0 / 3.0));
  CHECK(s.reduced.weight(0) == doctest::Approx(2.0 / 3.0));
  CHECK(s.reduced.weight(1) == doctest::Approx(1.0 / 3.0));
  CHECK(s.assignment == std::vector<std::size_t>{0, 0, 1});
}

TEST_CASE("distance to a support matches the transport solver on the reduced measure") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 20; ++t) {
    const auto p = oracle::random_uniform(rng, 8, 2);
    const std::vector<Point> support{p.point(0), p.point(3), {0.5, 0.5}};
    for (const auto& m : {kL1, kL2}) {
      const auto s = dist_to_support(p, support, m);
      CHECK(wasserstein(p, s.reduced, m).value == doctest::Approx(s.value).epsilon(1e-9));
    }
  }
}
