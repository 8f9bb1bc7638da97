#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "scenred/core.hpp"
#include "scenred/geometry.hpp"
#include "scenred/milp.hpp"

namespace scenred {

// Binomial coefficient and Stirling number of the second kind as doubles
// (used for budget checks; exact while below 2^53).
double binomial(std::size_t n, std::size_t k);
double stirling2(std::size_t n, std::size_t k);

struct DiscreteExactOptions {
  double budget = 1e7;  // maximum C(n, m)
};

/// Best m-subset of supp(P) by depth-first enumeration in lexicographic
/// order. A prefix is abandoned once its lower bound (each atom's distance
/// to the prefix or to any still-selectable atom) reaches the incumbent, so
/// ties resolve to the lexicographically smallest subset.
ReductionResult discrete_exact(const Distribution& p, std::size_t m, const Metric& metric,
                               const DiscreteExactOptions& options = {});

struct ContinuousExactOptions {
  double budget = 1e7;  // maximum S(n, m)
  CentroidOptions centroid;
};

/// Optimal m-cell partition of supp(P) with per-cell centroids.
///
/// One-dimensional inputs are solved by dynamic programming over contiguous
/// runs of the sorted atoms. Otherwise every partition into exactly m cells
/// is enumerated as a restricted growth string; cell costs are memoized by
/// bitmask and partial partitions are pruned against the incumbent.
/// Exact for (l=2, p=2) and (l=1, p=1); otherwise accurate to the centroid
/// tolerance, with ties within 10 * tol resolved towards the smaller string.
ReductionResult continuous_exact(const Distribution& p, std::size_t m, const Metric& metric,
                                 const ContinuousExactOptions& options = {});

// Mixed-integer model of the discrete problem: assignment pi_i_j over atom
// pairs and selection binaries lambda_j.
MilpModel milp_discrete(const Distribution& p, std::size_t m, const Metric& metric);

// Big-M mixed-integer model of the continuous problem; only the
// MILP-representable metrics (l=1 with the 1- or inf-norm) are accepted.
MilpModel milp_continuous(const Distribution& p, std::size_t m, const Metric& metric);

}  // namespace scenred
