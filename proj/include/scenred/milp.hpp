#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace scenred {

struct LinearTerm {
  double coef = 0.0;
  std::string var;
};

enum class Sense { LessEqual, GreaterEqual, Equal };

struct LinearConstraint {
  std::string name;
  std::vector<LinearTerm> terms;
  Sense sense = Sense::Equal;
  double rhs = 0.0;
};

struct VariableBound {
  std::string var;
  std::optional<double> lower;  // nullopt = -infinity
  std::optional<double> upper;  // nullopt = +infinity
};

/// A linear (mixed-binary) minimization model with deterministic variable
/// order. Variables not listed in `bounds` keep the LP-format default
/// [0, +inf).
struct MilpModel {
  std::vector<std::string> comments;
  std::vector<std::string> variables;  // declaration order
  std::vector<LinearTerm> objective;
  std::vector<LinearConstraint> constraints;
  std::vector<VariableBound> bounds;
  std::vector<std::string> binaries;
  std::optional<double> big_m;

  // Objective value at a point; missing variables count as zero.
  double evaluate(const std::map<std::string, double>& values) const;

  // Largest violation over constraints, bounds and integrality at a point.
  double max_violation(const std::map<std::string, double>& values) const;
};

// CPLEX LP text: Minimize / Subject To / Bounds / Binaries / End sections,
// 17 significant digits, LF line endings.
std::string to_lp_format(const MilpModel& model);

// printf %.17g, with zero printed as "0".
std::string format_number(double x);

}  // namespace scenred
