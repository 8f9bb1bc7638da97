#include <doctest.h>

#include "scenred/core.hpp"

using namespace scenred;

TEST_CASE("validate accepts a uniform distinct distribution") {
  const auto p = Distribution::uniform({{0.0}, {1.0}, {2.0}});
  CHECK(validate(p, true, true).empty());
  CHECK(p.is_uniform());
  CHECK(p.is_distinct());
}

TEST_CASE("validate reports the weight sum") {
  const Distribution p({{0.0}, {1.0}}, {0.5, 0.6});
  const auto issues = validate(p, false, false);
  REQUIRE(issues.size() == 1);
  CHECK(issues[0] == "weights sum to 1.1");
}

TEST_CASE("validate reports coinciding atoms only when asked") {
  const auto p = Distribution::uniform({{1.0, 2.0}, {1.0, 2.0}, {0.0, 0.0}});
  CHECK(validate(p, false, false).empty());
  const auto issues = validate(p, false, true);
  REQUIRE(issues.size() == 1);
  CHECK(issues[0] == "atoms 1 and 2 coincide");
}

TEST_CASE("validate lists every violation and is repeatable") {
  const Distribution p({{0.0}, {0.0}}, {-0.1, 0.6});
  const auto first = validate(p, true, true);
  CHECK(first.size() >= 3);
  CHECK(validate(p, true, true) == first);
  CHECK_THROWS_AS(require_valid(p), InvalidArgument);
}

TEST_CASE("construction rejects structural errors") {
  CHECK_THROWS_AS(Distribution({{0.0}, {1.0, 2.0}}, {0.5, 0.5}), InvalidArgument);
  CHECK_THROWS_AS(Distribution({{0.0}}, {0.5, 0.5}), InvalidArgument);
  CHECK_THROWS_AS(Metric(0.5, Norm::L2), InvalidArgument);
  CHECK_THROWS_AS(parse_norm("3"), InvalidArgument);
  CHECK(parse_norm("inf") == Norm::LInf);
  CHECK(to_string(Norm::L1) == "1");
}

TEST_CASE("partition from labels") {
  const auto part = Partition::from_labels({1, 0, 1, 2}, 3);
  REQUIRE(part.size() == 3);
  CHECK(part.cell(0) == std::vector<std::size_t>{1});
  CHECK(part.cell(1) == std::vector<std::size_t>{0, 2});
  CHECK(part.labels() == std::vector<std::size_t>{1, 0, 1, 2});
  CHECK_THROWS_AS(Partition::from_labels({0, 0}, 2), InvalidArgument);
  CHECK_THROWS_AS(Partition(3, {{0, 1}, {1, 2}}), InvalidArgument);
  CHECK_THROWS_AS(Partition(3, {{0, 1}}), InvalidArgument);
}

TEST_CASE("check_result catches inconsistent weights") {
  const auto p = Distribution::uniform({{0.0}, {1.0}, {2.0}, {3.0}});
  ReductionResult r;
  r.support = {{0.5}, {2.5}};
  r.weights = {0.5, 0.5};
  r.partition = Partition(4, {{0, 1}, {2, 3}});
  CHECK_NOTHROW(check_result(r, p));
  r.weights = {0.25, 0.75};
  CHECK_THROWS_AS(check_result(r, p), InvalidArgument);
}
