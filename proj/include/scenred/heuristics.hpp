#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "scenred/core.hpp"
#include "scenred/geometry.hpp"

namespace scenred {

/// Greedy forward selection over supp(P) (Dupacova et al., in the
/// Heitsch-Roemisch form that keeps each atom's current nearest distance).
///
/// Candidates are scanned in index order and ties go to the lowest index.
/// `trace`, when given, receives the running value after each addition.
ReductionResult dupacova_greedy(const Distribution& p, std::size_t m, const Metric& metric,
                                std::vector<double>* trace = nullptr);

// Explicit starting centers or a seed for a uniformly drawn m-subset of supp(P).
using KMeansInit = std::variant<std::vector<Point>, std::uint64_t>;

struct KMeansOptions {
  std::size_t max_iter = 1000;
  CentroidOptions centroid;
  std::vector<double>* trace = nullptr;  // value after every update step
};

/// Lloyd-style alternation between nearest-center assignment (ties to the
/// lowest center index) and per-cell centroid updates. A cell that loses all
/// its atoms is re-seeded with the atom farthest from its current center.
ReductionResult k_means_generalized(const Distribution& p, std::size_t m, const Metric& metric,
                                    const KMeansInit& init, const KMeansOptions& options = {});

enum class SwapStrategy { BestFit, FirstFit };

// Starting subset for local search: atom indices, a seed for a random
// m-subset, or nothing for the m heaviest atoms (ties by index).
using LocalSearchInit = std::variant<std::monostate, std::vector<std::size_t>, std::uint64_t>;

struct LocalSearchOptions {
  SwapStrategy strategy = SwapStrategy::BestFit;
  // With epsilon > 0 a swap must lower the value by at least
  // epsilon / ((n - m) m) times the current value.
  double epsilon = 0.0;
  std::size_t max_swaps = 1000000;
};

ReductionResult local_search(const Distribution& p, std::size_t m, const Metric& metric,
                             const LocalSearchInit& init = {},
                             const LocalSearchOptions& options = {});

// Indices of the m heaviest atoms, ties broken by lower index.
std::vector<std::size_t> most_frequent_atoms(const Distribution& p, std::size_t m);

// Maps points onto atom indices of P by exact equality; throws InvalidArgument
// if some point is not an atom.
std::vector<std::size_t> atom_indices(const Distribution& p, const std::vector<Point>& points);

/// Replaces each support point by its cell centroid and re-assigns until
/// stable (k-means warm-started at `result`). Never returns a worse value.
ReductionResult continuous_polish(const ReductionResult& result, const Distribution& p,
                                  const Metric& metric, const CentroidOptions& options = {});

// Builds the result for a support chosen among the atoms of P.
ReductionResult result_from_atoms(const Distribution& p, std::vector<std::size_t> selected,
                                  const Metric& metric, std::string algorithm);

// Builds the result for an arbitrary support via nearest-point assignment.
ReductionResult result_from_support(const Distribution& p, const std::vector<Point>& support,
                                    const Metric& metric, std::string algorithm);

}  // namespace scenred
