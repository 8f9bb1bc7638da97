#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "scenred/core.hpp"

namespace scenred {

struct BoundReport {
  std::size_t n = 0;
  std::size_t m = 0;
  double l = 2.0;
  double reduction_factor = 0.0;  // m / n
  double c_upper = 0.0;           // sqrt((n-m)/(n-1)), worst case over the unit ball
  double c1_lower = 0.0;          // sqrt((n-m)(n-m+1)/(n(n-1)))
  double kappa_upper = 1.0;       // largest discrete/continuous ratio
  double kappa_lower = 1.0;       // smallest attainable worst-case ratio
};

// l must be 1 or 2 and 1 <= m <= n. For m = n both distances vanish and the
// ratios are reported as 1.
BoundReport limit_bounds(std::size_t n, std::size_t m, double l);

/// Smallest m whose worst-case guarantee r * sqrt((n-m)/(n-1)) is at most
/// `target`, r being the radius of enclosing_ball(P). Requires uniform P.
std::size_t a_priori_m(const Distribution& p, double target, double l);

/// n unit vectors with pairwise inner products -1/(n-1), uniform weights.
/// d = n is the direct construction, d > n pads with zeros and d = n-1
/// expresses the atoms in a Gram-Schmidt basis of the complement of e.
Distribution gen_worst_case(std::size_t n, std::size_t d);

/// Instances where discrete and continuous reduction differ by the largest
/// possible factor.
///
/// l = 2: n-m+1 unit-circle atoms with zero mean plus m-1 atoms at
/// (1 + i M) e1; defaults d = 2, M = 3 sqrt(n-m+1).
/// l = 1: m shifted copies of the cross-polytope {+-e_i, i <= n/(2m)}, block j
/// shifted by (j-1) M e1; defaults d = n/(2m), M = 2n + 3.
Distribution gen_kappa_tight(double l, std::size_t n, std::size_t m,
                             std::optional<std::size_t> d = std::nullopt,
                             std::optional<double> big_m = std::nullopt);

enum class AdversarialFamily { Dupacova, KMeans };

AdversarialFamily parse_family(const std::string& text);

/// Clusters of atoms on a lattice of spacing eps/(4z) along e1 inside the
/// eps-balls of the respective construction.
///
/// Dupacova: z atoms near each of +e1, -e1, +e2, -e2 (in that order), then
/// the origin; n = 4z + 1, d >= 2.
/// KMeans: 2z atoms near -e1, z near the origin, then +e1; n = 3z + 1.
Distribution gen_adversarial(AdversarialFamily family, std::size_t z, double eps, std::size_t d);

struct ExperimentRow {
  std::size_t d = 0;
  std::size_t m = 0;
  double mean_ratio = 0.0;
  double std_ratio = 0.0;  // sample standard deviation; 0 for one trial
  std::size_t trials = 0;
};

struct ExperimentTable {
  std::size_t n = 0;
  double c = 0.0;
  std::uint64_t seed = 0;
  std::size_t restarts = 0;
  std::vector<ExperimentRow> rows;

  // Header d,m,mean_ratio,std_ratio,trials and one line per row.
  std::string to_csv() const;
};

struct NormalExperimentOptions {
  std::size_t restarts = 10;  // k-means restarts standing in for the exact C_2
};

/// Samples n points from N(0, (sqrt(d-1) + c)^-2 I) per trial and reports
/// C_2(P, m) / sqrt((n-m)/(n-1)), with C_2 taken as the best of several
/// seeded k-means runs (an upper estimate of the optimum).
ExperimentTable normal_experiment(std::size_t n, const std::vector<std::size_t>& m_list,
                                  const std::vector<std::size_t>& d_list, double c,
                                  std::size_t trials, std::uint64_t seed,
                                  const NormalExperimentOptions& options = {});

}  // namespace scenred
