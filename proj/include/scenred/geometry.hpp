#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "scenred/core.hpp"

namespace scenred {

double norm(std::span<const double> v, Norm which);

// ||a - b||_p^l
double powered_distance(std::span<const double> a, std::span<const double> b,
                        const Metric& metric);

/// Row-major n x k matrix of powered distances between two point sets.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  DistanceMatrix(std::size_t rows, std::size_t cols, Metric metric)
      : rows_(rows), cols_(cols), metric_(metric), entries_(rows * cols, 0.0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Metric& metric() const { return metric_; }

  double operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  std::span<const double> row(std::size_t i) const {
    return {entries_.data() + i * cols_, cols_};
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Metric metric_;
  std::vector<double> entries_;
};

DistanceMatrix distance_matrix(const std::vector<Point>& a, const std::vector<Point>& b,
                               const Metric& metric);

// Symmetric variant for a point set against itself; the diagonal is exactly 0.
DistanceMatrix distance_matrix(const std::vector<Point>& points, const Metric& metric);

Point mean_point(const std::vector<Point>& points, std::span<const double> weights);

// Sum_i w_i ||x_i - z||_p^l
double centroid_objective(const std::vector<Point>& points, std::span<const double> weights,
                          std::span<const double> z, const Metric& metric);

struct CentroidOptions {
  double tol = 1e-10;
  std::size_t max_iter = 20000;
  // When set, iterative solvers append the normalized objective of each iterate.
  std::vector<double>* trace = nullptr;
};

/// Minimizer of sum_i w_i ||x_i - z||_p (l = 1).
///
/// p = 1 is solved exactly by the weighted coordinatewise (lower) median.
/// p = 2 uses Weiszfeld's iteration; every data point is first tested with
/// the subgradient condition ||sum_{i!=k} w_i u_ik|| <= w_k so that optima
/// located on atoms are returned exactly, and the iteration stops once
/// ||grad|| * R <= tol with R bounding the distance to the optimum.
/// p = inf uses subgradient descent with diminishing steps, keeping the best
/// iterate. When several points are optimal, the returned one is
/// deterministic but arbitrary among them.
///
/// Throws ConvergenceError if max_iter is reached before the stopping test.
Point geometric_median(const std::vector<Point>& points, std::span<const double> weights,
                       Norm norm, const CentroidOptions& options = {});

/// Minimizer of sum_i w_i ||x_i - z||_p^l over z in R^d.
///
/// (l=2, p=2) returns the weighted mean, l=1 dispatches to
/// geometric_median, anything else runs subgradient descent started from the
/// best of the mean and the data points.
Point centroid(const std::vector<Point>& points, std::span<const double> weights,
               const Metric& metric, const CentroidOptions& options = {});

struct Ball {
  Point center;
  double radius = 0.0;
};

// Center = mean of the points, radius = max Euclidean distance to it. Valid
// but not minimal.
Ball enclosing_ball(const std::vector<Point>& points);

}  // namespace scenred
