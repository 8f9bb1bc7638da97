#include <doctest.h>

#include <cmath>
#include <random>

#include "../support/oracles.hpp"
#include "scenred/exact.hpp"
#include "scenred/heuristics.hpp"
#include "scenred/limits.hpp"
#include "scenred/transport.hpp"

using namespace scenred;

namespace {
const Metric kL1(1.0, Norm::L2);
const Metric kL2(2.0, Norm::L2);
const Metric kTaxi(1.0, Norm::L1);
}  // namespace

TEST_CASE("greedy keeps everything when m = n") {
  const auto p = Distribution::uniform({{0.0}, {1.0}, {3.0}});
  const auto r = dupacova_greedy(p, 3, kL1);
  CHECK(r.value == 0.0);
  CHECK(r.selected.size() == 3);
}

TEST_CASE("greedy on three collinear atoms") {
  // First pick is the middle atom (value 1). Adding 3 leaves 1/3, adding 0
  // leaves 2/3.
  const auto p = Distribution::uniform({{0.0}, {1.0}, {3.0}});
  const auto r = dupacova_greedy(p, 2, kL1);
  CHECK(r.selected == std::vector<std::size_t>{1, 2});
  CHECK(r.value == doctest::Approx(1.0 / 3.0));
  check_result(r, p);
}

TEST_CASE("greedy picks the origin first on the adversarial family") {
  const auto p = gen_adversarial(AdversarialFamily::Dupacova, 50, 1e-3, 2);
  std::vector<double> trace;
  const auto r = dupacova_greedy(p, 4, kL1, &trace);
  CHECK(r.selected.front() == p.size() - 1);
  for (std::size_t k = 1; k < trace.size(); ++k) CHECK(trace[k] <= trace[k - 1]);
}

TEST_CASE("greedy value is non-increasing in m") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 10; ++t) {
    const auto p = oracle::random_uniform(rng, 9, 2);
    double prev = INFINITY;
    for (std::size_t m = 1; m <= 9; ++m) {
      const auto r = dupacova_greedy(p, m, kL2);
      CHECK(r.value <= prev + 1e-15);
      CHECK(r.value == doctest::Approx(dist_to_support(p, r.support, kL2).value));
      prev = r.value;
    }
  }
}

TEST_CASE("k-means fixed point at m = n") {
  const auto p = Distribution::uniform({{0.0}, {1.0}, {3.0}});
  const auto r = k_means_generalized(p, 3, kL2, KMeansInit{p.points()});
  CHECK(r.value == 0.0);
  CHECK(r.iterations == 1);
}

TEST_CASE("k-means on two clusters") {
  const auto p = Distribution::uniform({{0.0}, {0.1}, {10.0}, {10.1}});
  const auto r = k_means_generalized(p, 2, kL2, KMeansInit{std::vector<Point>{{0.0}, {10.0}}});
  CHECK(r.support[0][0] == doctest::Approx(0.05));
  CHECK(r.support[1][0] == doctest::Approx(10.05));
  CHECK(r.value == doctest::Approx(0.05));
}

TEST_CASE("k-means trace is non-increasing and seeded runs repeat") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 10; ++t) {
    const auto p = oracle::random_uniform(rng, 12, 2);
    for (const auto& m : {kL1, kL2}) {
      std::vector<double> trace;
      KMeansOptions opt;
      opt.trace = &trace;
      const auto a = k_means_generalized(p, 3, m, KMeansInit{static_cast<std::uint64_t>(t)}, opt);
      for (std::size_t k = 1; k < trace.size(); ++k) CHECK(trace[k] <= trace[k - 1] + 1e-12);
      const auto b = k_means_generalized(p, 3, m, KMeansInit{static_cast<std::uint64_t>(t)});
      CHECK(a.value == b.value);
      CHECK(a.support == b.support);
      check_result(a, p);
    }
  }
}

TEST_CASE("k-means re-seeds empty cells") {
  const auto p = Distribution::uniform({{0.0}, {1.0}, {2.0}, {3.0}});
  // The second center attracts nothing.
  const auto r = k_means_generalized(p, 2, kL2, KMeansInit{std::vector<Point>{{1.5}, {100.0}}});
  CHECK(r.support.size() == 2);
  check_result(r, p);
}

TEST_CASE("local search on the cross-polytope") {
  const auto p = gen_kappa_tight(1.0, 4, 1);
  for (std::size_t start = 0; start < 4; ++start) {
    const auto r = local_search(p, 1, kTaxi, std::vector<std::size_t>{start});
    CHECK(r.value == doctest::Approx(1.5));
  }
  CHECK(local_search(p, 4, kTaxi).value == 0.0);
}

TEST_CASE("local search improves the greedy start on the adversarial family") {
  const auto p = gen_adversarial(AdversarialFamily::Dupacova, 50, 1e-3, 2);
  const auto g = dupacova_greedy(p, 4, kL1);
  const auto r = local_search(p, 4, kL1, g.selected);
  CHECK(r.value <= g.value);
  const auto ex = discrete_exact(p, 4, kL1, {1e8});
  CHECK(r.value <= 5.0 * ex.value);
}

TEST_CASE("local search stays within five times the optimum") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 40; ++t) {
    const auto p = oracle::random_uniform(rng, 8, 2);
    for (std::size_t m = 1; m <= 3; ++m) {
      for (auto strat : {SwapStrategy::BestFit, SwapStrategy::FirstFit}) {
        LocalSearchOptions opt;
        opt.strategy = strat;
        const auto r = local_search(p, m, kL1, static_cast<std::uint64_t>(t), opt);
        CHECK(r.value <= 5.0 * oracle::discrete_by_subsets(p, m, kL1) + 1e-12);
      }
    }
  }
}

TEST_CASE("epsilon swaps still improve on the start") {
  std::mt19937_64 rng(17);
  const auto p = oracle::random_uniform(rng, 10, 2);
  const auto start = most_frequent_atoms(p, 3);
  const double v0 = result_from_atoms(p, start, kL1, "start").value;
  LocalSearchOptions opt;
  opt.epsilon = 0.1;
  CHECK(local_search(p, 3, kL1, start, opt).value <= v0);
}

TEST_CASE("most frequent atoms and atom lookup") {
  const Distribution p({{0.0}, {1.0}, {2.0}, {3.0}}, {0.1, 0.4, 0.1, 0.4});
  CHECK(most_frequent_atoms(p, 3) == std::vector<std::size_t>{0, 1, 3});
  CHECK(atom_indices(p, {{2.0}, {0.0}}) == std::vector<std::size_t>{2, 0});
  CHECK_THROWS_AS(atom_indices(p, {{0.5}}), InvalidArgument);
}

TEST_CASE("continuous polish on the worst-case instance") {
  const auto p = gen_worst_case(4, 4);
  const auto d = discrete_exact(p, 2, kL2);
  CHECK(d.value == doctest::Approx(std::sqrt(2.0) * std::sqrt(2.0 / 3.0)));
  const auto c = continuous_polish(d, p, kL2);
  CHECK(c.value == doctest::Approx(std::sqrt(2.0 / 3.0)));
  const auto again = continuous_polish(c, p, kL2);
  CHECK(again.value == doctest::Approx(c.value));
  CHECK(again.support.size() == c.support.size());
}

TEST_CASE("continuous polish never gets worse and respects the square-root-of-two bound") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 20; ++t) {
    const auto p = oracle::random_uniform(rng, 7, 2);
    const auto d = discrete_exact(p, 2, kL2);
    const auto c = continuous_polish(d, p, kL2);
    CHECK(c.value <= d.value + 1e-12);
    CHECK(c.value <= std::sqrt(2.0) * continuous_exact(p, 2, kL2).value + 1e-9);
  }
}
