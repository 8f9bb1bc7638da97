#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "scenred/core.hpp"
#include "scenred/geometry.hpp"

namespace scenred {

// Coupling between two discrete distributions; row-major n x m.
struct TransportPlan {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> matrix;
  std::vector<double> row_marginals;
  std::vector<double> col_marginals;

  double operator()(std::size_t i, std::size_t j) const { return matrix[i * cols + j]; }
  std::size_t positive_entries() const;
  // Largest absolute deviation of the plan's row/column sums from the marginals.
  double marginal_error() const;
};

struct TransportSolution {
  TransportPlan plan;
  double cost = 0.0;              // sum_ij pi_ij c_ij
  std::size_t pivots = 0;
  double min_reduced_cost = 0.0;  // >= -tol certifies optimality
};

/// Transportation simplex for min <C, pi> over the transportation polytope
/// of (supply, demand): northwest-corner start, potentials from the basis
/// tree, Bland's rule for both the entering and the leaving cell.
///
/// Supplies and demands must be nonnegative with equal totals (1e-9); the
/// demand vector is rescaled to the supply total before solving.
TransportSolution solve_transport(const DistanceMatrix& cost, std::span<const double> supply,
                                  std::span<const double> demand);

struct WassersteinResult {
  double value = 0.0;  // (optimal cost)^(1/l)
  TransportPlan plan;
  std::size_t pivots = 0;
  double min_reduced_cost = 0.0;
};

WassersteinResult wasserstein(const Distribution& p, const Distribution& q,
                              const Metric& metric);

struct SupportDistance {
  double value = 0.0;
  // Per atom of P, the index of its nearest support point (lowest index on ties).
  std::vector<std::size_t> assignment;
  // Support indices that received positive mass, in increasing order.
  std::vector<std::size_t> kept;
  // Cells over P's atoms aligned with `kept` / `reduced`.
  Partition partition;
  Distribution reduced;
};

/// Closed-form distance from P to the closest distribution supported on
/// `support`: every atom moves to its nearest support point.
SupportDistance dist_to_support(const Distribution& p, const std::vector<Point>& support,
                                const Metric& metric);

// Same, with a precomputed (atoms x support) powered distance matrix.
SupportDistance dist_to_support(const Distribution& p, const std::vector<Point>& support,
                                const DistanceMatrix& distances);

}  // namespace scenred
