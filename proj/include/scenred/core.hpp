#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace scenred {

using Point = std::vector<double>;

// Error hierarchy. Callers that need to map failures onto exit codes
// (the CLI) dispatch on these types.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& what, double required)
      : Error(what), required_(required) {}
  double required() const { return required_; }

 private:
  double required_;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, Point best, double residual)
      : Error(what), best_(std::move(best)), residual_(residual) {}
  const Point& best() const { return best_; }
  double residual() const { return residual_; }

 private:
  Point best_;
  double residual_;
};

struct Tolerances {
  double exact = 1e-12;       // representable checks (weights, uniformity)
  double accumulated = 1e-9;  // sums of many floating-point terms
};

enum class Norm { L1, L2, LInf };

std::string to_string(Norm norm);
Norm parse_norm(const std::string& text);

// Order l >= 1 of the Wasserstein distance and the ground norm.
struct Metric {
  double l = 1.0;
  Norm norm = Norm::L2;

  Metric() = default;
  Metric(double order, Norm ground);
};

/// A discrete probability distribution: atoms in R^dim with weights.
///
/// Construction checks only the structural invariants (dimension
/// agreement, finite coordinates). Probabilistic invariants are reported by
/// validate() so that callers can inspect every violation at once.
class Distribution {
 public:
  Distribution() = default;
  Distribution(std::vector<Point> points, std::vector<double> weights);

  static Distribution uniform(std::vector<Point> points);

  std::size_t size() const { return points_.size(); }
  std::size_t dim() const { return dim_; }
  bool empty() const { return points_.empty(); }

  const std::vector<Point>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }
  const Point& point(std::size_t i) const { return points_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }

  bool is_uniform(double tol = 1e-12) const;
  bool is_distinct() const;

 private:
  std::vector<Point> points_;
  std::vector<double> weights_;
  std::size_t dim_ = 0;
};

std::vector<std::string> validate(const Distribution& dist, bool require_uniform,
                                  bool require_distinct,
                                  const Tolerances& tol = {});

// Throws InvalidArgument carrying the first violation when validate() fails.
void require_valid(const Distribution& dist, bool require_uniform = false,
                   bool require_distinct = false, const Tolerances& tol = {});

/// Disjoint nonempty cells covering {0..n-1}.
class Partition {
 public:
  Partition() = default;
  Partition(std::size_t n, std::vector<std::vector<std::size_t>> cells);

  // Builds cells from a label per index; labels must be 0..k-1 and every
  // label must occur. Cell j lists its members in increasing order.
  static Partition from_labels(const std::vector<std::size_t>& labels,
                               std::size_t num_cells);

  std::size_t n() const { return n_; }
  std::size_t size() const { return cells_.size(); }
  const std::vector<std::vector<std::size_t>>& cells() const { return cells_; }
  const std::vector<std::size_t>& cell(std::size_t j) const { return cells_[j]; }
  std::vector<std::size_t> labels() const;

 private:
  std::size_t n_ = 0;
  std::vector<std::vector<std::size_t>> cells_;
};

struct ReductionResult {
  std::vector<Point> support;
  std::vector<double> weights;
  Partition partition;
  double value = 0.0;
  std::string algorithm;
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  // Indices into supp(P) when the support was chosen from the original atoms.
  std::vector<std::size_t> selected;

  Distribution distribution() const { return {support, weights}; }
};

// Throws InvalidArgument unless the result's invariants hold for `dist`.
void check_result(const ReductionResult& result, const Distribution& dist,
                  double tol = 1e-12);

}  // namespace scenred
