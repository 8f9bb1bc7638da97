#include <doctest.h>

#include <cmath>
#include <random>

#include "../support/oracles.hpp"
#include "scenred/geometry.hpp"

using namespace scenred;

namespace {
const Metric kL2(2.0, Norm::L2);
const Metric kL1(1.0, Norm::L2);
const Metric kL1Taxi(1.0, Norm::L1);

std::vector<double> uniform_w(std::size_t n) { return std::vector<double>(n, 1.0 / n); }

void check_point(const Point& got, const Point& want, double tol) {
  REQUIRE(got.size() == want.size());
  for (std::size_t k = 0; k < got.size(); ++k) CHECK(std::abs(got[k] - want[k]) <= tol);
}
}  // namespace

TEST_CASE("powered distance examples") {
  const Point a{0.0, 0.0}, b{3.0, 4.0};
  CHECK(powered_distance(a, a, kL2) == 0.0);
  CHECK(powered_distance(a, b, kL2) == 25.0);
  CHECK(powered_distance(a, b, kL1Taxi) == 7.0);
  CHECK(powered_distance(a, b, Metric(1.0, Norm::LInf)) == 4.0);
}

TEST_CASE("powered distance is symmetric and satisfies the triangle inequality for l=1") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (Norm nm : {Norm::L1, Norm::L2, Norm::LInf}) {
    const Metric m(1.0, nm);
    for (int t = 0; t < 200; ++t) {
      Point x(3), y(3), z(3);
      for (int k = 0; k < 3; ++k) {
        x[k] = g(rng);
        y[k] = g(rng);
        z[k] = g(rng);
      }
      CHECK(powered_distance(x, y, m) == powered_distance(y, x, m));
      CHECK(powered_distance(x, z, m) <=
            powered_distance(x, y, m) + powered_distance(y, z, m) + 1e-9);
    }
  }
}

TEST_CASE("distance matrix examples") {
  const auto one = distance_matrix(std::vector<Point>{{4.0, 2.0}}, kL2);
  CHECK(one.rows() == 1);
  CHECK(one(0, 0) == 0.0);
  const auto sym = distance_matrix(std::vector<Point>{{0.0}, {2.0}}, kL1);
  CHECK(sym(0, 0) == 0.0);
  CHECK(sym(0, 1) == 2.0);
  CHECK(sym(1, 0) == 2.0);
  CHECK(sym(1, 1) == 0.0);
  const auto cross = distance_matrix({{0.0}, {2.0}}, {{1.0}}, kL2);
  CHECK(cross.cols() == 1);
  CHECK(cross(0, 0) == 1.0);
  CHECK(cross(1, 0) == 1.0);
}

TEST_CASE("mean point examples") {
  check_point(mean_point({{0, 0}, {2, 0}, {1, 3}}, uniform_w(3)), {1.0, 1.0}, 1e-15);
  check_point(mean_point({{5, -2}}, uniform_w(1)), {5.0, -2.0}, 0);
  check_point(mean_point({{0}, {10}}, std::vector<double>{0.9, 0.1}), {1.0}, 1e-15);
}

TEST_CASE("geometric median examples") {
  const std::vector<Point> cross{{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  const Point z = geometric_median(cross, uniform_w(4), Norm::L2);
  CHECK(std::abs(z[0]) < 1e-9);
  CHECK(std::abs(z[1]) < 1e-9);
  check_point(geometric_median({{0}, {1}, {10}}, uniform_w(3), Norm::L2), {1.0}, 1e-12);
  check_point(geometric_median({{0, 0}, {4, 0}, {2, 2}}, uniform_w(3), Norm::L1), {2.0, 0.0}, 0);
}

TEST_CASE("centroid examples") {
  check_point(centroid({{0}, {2}}, uniform_w(2), kL2), {1.0}, 1e-15);
  const Point z = centroid({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, uniform_w(4), kL1);
  CHECK(std::abs(z[0]) < 1e-9);
  CHECK(std::abs(z[1]) < 1e-9);
  check_point(centroid({{0}, {1}, {10}}, uniform_w(3), kL1Taxi), {1.0}, 0);
}

TEST_CASE("geometric median beats the mean") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    const auto p = oracle::random_uniform(rng, 7, 3);
    const Point mean = mean_point(p.points(), p.weights());
    for (Norm nm : {Norm::L1, Norm::L2, Norm::LInf}) {
      const Metric m(1.0, nm);
      const Point med = geometric_median(p.points(), p.weights(), nm);
      CHECK(centroid_objective(p.points(), p.weights(), med, m) <=
            centroid_objective(p.points(), p.weights(), mean, m) + 1e-9);
    }
  }
}

TEST_CASE("one-dimensional centroids agree with golden-section search") {
  std::mt19937_64 rng(3);
  const std::vector<Metric> metrics{kL1, kL2, Metric(1.5, Norm::L2), Metric(3.0, Norm::LInf)};
  for (int t = 0; t < 20; ++t) {
    const auto p = oracle::random_uniform(rng, 6, 1);
    const auto w = oracle::rational_weights(rng, 6, 12);
    for (const auto& m : metrics) {
      auto f = [&](double x) { return centroid_objective(p.points(), w, Point{x}, m); };
      const double best = f(oracle::golden_section(f, -1.0, 2.0));
      const Point z = centroid(p.points(), w, m);
      CHECK(f(z[0]) <= best + 1e-8);
    }
  }
}

TEST_CASE("Weiszfeld objective trace is non-increasing") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 20; ++t) {
    const auto p = oracle::random_uniform(rng, 9, 2);
    std::vector<double> trace;
    CentroidOptions opt;
    opt.trace = &trace;
    geometric_median(p.points(), p.weights(), Norm::L2, opt);
    for (std::size_t k = 1; k < trace.size(); ++k) CHECK(trace[k] <= trace[k - 1] + 1e-15);
  }
}

TEST_CASE("Weiszfeld returns an optimal data point exactly") {
  // The heavy atom at the origin is the median.
  const std::vector<Point> pts{{0, 0}, {1, 0}, {0, 1}, {-1, -1}};
  const Point z = geometric_median(pts, std::vector<double>{0.7, 0.1, 0.1, 0.1}, Norm::L2);
  CHECK(z == Point{0.0, 0.0});
}

TEST_CASE("enclosing ball examples") {
  const Ball a = enclosing_ball({{1.0}, {-1.0}});
  CHECK(a.center == Point{0.0});
  CHECK(a.radius == 1.0);
  CHECK(enclosing_ball({{3.0, 4.0}}).radius == 0.0);
  const Ball b = enclosing_ball({{0.0, 0.0}, {2.0, 0.0}});
  CHECK(b.center == Point{1.0, 0.0});
  CHECK(b.radius == 1.0);
}
