#include "scenred/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>

#include "scenred/transport.hpp"

namespace scenred {
namespace {

void check_m(const Distribution& p, std::size_t m) {
  if (m < 1) throw InvalidArgument("m must be at least 1");
  if (m > p.size()) {
    throw InvalidArgument("m = " + std::to_string(m) + " exceeds the number of atoms n = " +
                          std::to_string(p.size()));
  }
}

double root(double cost, double l) { return std::pow(std::max(cost, 0.0), 1.0 / l); }

std::vector<std::size_t> random_subset(std::size_t n, std::size_t m, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t k = 0; k < m; ++k) {
    std::uniform_int_distribution<std::size_t> pick(k, n - 1);
    std::swap(idx[k], idx[pick(rng)]);
  }
  idx.resize(m);
  std::sort(idx.begin(), idx.end());
  return idx;
}

}  // namespace

ReductionResult result_from_support(const Distribution& p, const std::vector<Point>& support,
                                    const Metric& metric, std::string algorithm) {
  SupportDistance sd = dist_to_support(p, support, metric);
  ReductionResult out;
  out.support = sd.reduced.points();
  out.weights = sd.reduced.weights();
  out.partition = std::move(sd.partition);
  out.value = sd.value;
  out.algorithm = std::move(algorithm);
  return out;
}

ReductionResult result_from_atoms(const Distribution& p, std::vector<std::size_t> selected,
                                  const Metric& metric, std::string algorithm) {
  std::sort(selected.begin(), selected.end());
  std::vector<Point> support;
  support.reserve(selected.size());
  for (std::size_t i : selected) support.push_back(p.point(i));
  SupportDistance sd = dist_to_support(p, support, metric);
  ReductionResult out;
  out.support = sd.reduced.points();
  out.weights = sd.reduced.weights();
  out.partition = std::move(sd.partition);
  out.value = sd.value;
  out.algorithm = std::move(algorithm);
  for (std::size_t j : sd.kept) out.selected.push_back(selected[j]);
  return out;
}

ReductionResult dupacova_greedy(const Distribution& p, std::size_t m, const Metric& metric,
                                std::vector<double>* trace) {
  require_valid(p);
  check_m(p, m);
  const std::size_t n = p.size();
  const DistanceMatrix dist = distance_matrix(p.points(), metric);
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  std::vector<char> chosen(n, 0);
  std::vector<std::size_t> selected;
  std::size_t evaluations = 0;

  for (std::size_t step = 0; step < m; ++step) {
    std::size_t best = n;
    double best_cost = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < n; ++c) {
      if (chosen[c]) continue;
      double cost = 0.0;
      for (std::size_t i = 0; i < n; ++i) cost += p.weight(i) * std::min(nearest[i], dist(i, c));
      ++evaluations;
      if (cost < best_cost) {
        best_cost = cost;
        best = c;
      }
    }
    chosen[best] = 1;
    selected.push_back(best);
    for (std::size_t i = 0; i < n; ++i) nearest[i] = std::min(nearest[i], dist(i, best));
    if (trace) trace->push_back(root(best_cost, metric.l));
  }

  ReductionResult out = result_from_atoms(p, selected, metric, "dupacova");
  out.iterations = m;
  out.evaluations = evaluations;
  // Selection order is informative (the first pick matters for analysis).
  out.selected = selected;
  return out;
}

ReductionResult k_means_generalized(const Distribution& p, std::size_t m, const Metric& metric,
                                    const KMeansInit& init, const KMeansOptions& options) {
  require_valid(p);
  check_m(p, m);
  const std::size_t n = p.size();
  std::vector<Point> centers;
  if (const auto* pts = std::get_if<std::vector<Point>>(&init)) {
    if (pts->size() != m) {
      throw InvalidArgument("k-means needs exactly m = " + std::to_string(m) +
                            " initial centers, got " + std::to_string(pts->size()));
    }
    for (const auto& c : *pts) {
      if (c.size() != p.dim()) throw InvalidArgument("initial center dimension mismatch");
    }
    centers = *pts;
  } else {
    for (std::size_t i : random_subset(n, m, std::get<std::uint64_t>(init))) {
      centers.push_back(p.point(i));
    }
  }

  std::vector<std::size_t> labels(n, 0);
  std::vector<double> gap(n, 0.0);
  std::size_t iterations = 0;
  std::size_t evaluations = 0;
  bool converged = false;
  while (iterations < options.max_iter) {
    ++iterations;
    for (std::size_t i = 0; i < n; ++i) {
      std::size_t best = 0;
      double best_d = powered_distance(p.point(i), centers[0], metric);
      for (std::size_t j = 1; j < m; ++j) {
        const double d = powered_distance(p.point(i), centers[j], metric);
        if (d < best_d) {
          best_d = d;
          best = j;
        }
      }
      labels[i] = best;
      gap[i] = best_d;
    }
    evaluations += n * m;

    std::vector<std::size_t> count(m, 0);
    for (std::size_t i = 0; i < n; ++i) ++count[labels[i]];
    for (std::size_t j = 0; j < m; ++j) {
      if (count[j] != 0) continue;
      std::size_t far = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (count[labels[i]] < 2 || gap[i] <= 0.0) continue;
        if (far == n || gap[i] > gap[far]) far = i;
      }
      if (far == n) continue;  // every atom already sits on a center
      --count[labels[far]];
      labels[far] = j;
      count[j] = 1;
      gap[far] = 0.0;
      centers[j] = p.point(far);
    }

    double max_shift = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (count[j] == 0) continue;
      std::vector<Point> members;
      std::vector<double> w;
      for (std::size_t i = 0; i < n; ++i) {
        if (labels[i] == j) {
          members.push_back(p.point(i));
          w.push_back(p.weight(i));
        }
      }
      Point next;
      if (std::accumulate(w.begin(), w.end(), 0.0) > 0.0) {
        next = centroid(members, w, metric, options.centroid);
      } else {
        next = centers[j];
      }
      for (std::size_t k = 0; k < next.size(); ++k) {
        max_shift = std::max(max_shift, std::abs(next[k] - centers[j][k]));
      }
      centers[j] = std::move(next);
    }
    if (options.trace) {
      double cost = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        cost += p.weight(i) * powered_distance(p.point(i), centers[labels[i]], metric);
      }
      options.trace->push_back(root(cost, metric.l));
    }
    if (max_shift < 1e-12) {
      converged = true;
      break;
    }
  }
  (void)converged;

  ReductionResult out = result_from_support(p, centers, metric, "kmeans");
  out.iterations = iterations;
  out.evaluations = evaluations;
  return out;
}

std::vector<std::size_t> most_frequent_atoms(const Distribution& p, std::size_t m) {
  check_m(p, m);
  std::vector<std::size_t> idx(p.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(),
                   [&](std::size_t a, std::size_t b) { return p.weight(a) > p.weight(b); });
  idx.resize(m);
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::vector<std::size_t> atom_indices(const Distribution& p, const std::vector<Point>& points) {
  std::map<Point, std::size_t> lookup;
  for (std::size_t i = p.size(); i-- > 0;) lookup[p.point(i)] = i;
  std::vector<std::size_t> out;
  out.reserve(points.size());
  for (const auto& z : points) {
    const auto it = lookup.find(z);
    if (it == lookup.end()) throw InvalidArgument("initial point is not an atom of P");
    out.push_back(it->second);
  }
  return out;
}

ReductionResult local_search(const Distribution& p, std::size_t m, const Metric& metric,
                             const LocalSearchInit& init, const LocalSearchOptions& options) {
  require_valid(p);
  check_m(p, m);
  if (!(options.epsilon >= 0.0)) throw InvalidArgument("epsilon must be nonnegative");
  const std::size_t n = p.size();

  std::vector<std::size_t> current;
  if (const auto* idx = std::get_if<std::vector<std::size_t>>(&init)) {
    current = *idx;
    std::sort(current.begin(), current.end());
    if (current.size() != m || std::adjacent_find(current.begin(), current.end()) != current.end()) {
      throw InvalidArgument("local search init must be " + std::to_string(m) +
                            " distinct atom indices");
    }
    if (current.back() >= n) throw InvalidArgument("local search init is not a subset of supp(P)");
  } else if (const auto* seed = std::get_if<std::uint64_t>(&init)) {
    current = random_subset(n, m, *seed);
  } else {
    current = most_frequent_atoms(p, m);
  }

  const DistanceMatrix dist = distance_matrix(p.points(), metric);
  std::vector<char> in_set(n, 0);
  for (std::size_t i : current) in_set[i] = 1;

  // Nearest and second-nearest members of the current set for every atom.
  std::vector<std::size_t> first(n), second(n);
  std::vector<double> d1(n), d2(n);
  auto refresh = [&] {
    for (std::size_t i = 0; i < n; ++i) {
      d1[i] = d2[i] = std::numeric_limits<double>::infinity();
      first[i] = second[i] = n;
      for (std::size_t j : current) {
        const double d = dist(i, j);
        if (d < d1[i]) {
          d2[i] = d1[i];
          second[i] = first[i];
          d1[i] = d;
          first[i] = j;
        } else if (d < d2[i]) {
          d2[i] = d;
          second[i] = j;
        }
      }
    }
  };
  auto set_cost = [&] {
    double c = 0.0;
    for (std::size_t i = 0; i < n; ++i) c += p.weight(i) * d1[i];
    return c;
  };
  auto swap_cost = [&](std::size_t in, std::size_t out) {
    double c = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double without = first[i] == out ? d2[i] : d1[i];
      c += p.weight(i) * std::min(without, dist(i, in));
    }
    return c;
  };

  refresh();
  double cost = set_cost();
  std::size_t swaps = 0;
  std::size_t evaluations = 0;
  const double factor =
      (options.epsilon > 0.0 && n > m) ? options.epsilon / static_cast<double>((n - m) * m) : 0.0;
  auto improves = [&](double candidate) {
    if (factor == 0.0) return candidate < cost;
    const double now = root(cost, metric.l);
    return now - root(candidate, metric.l) >= factor * now && candidate < cost;
  };

  while (n > m && swaps < options.max_swaps) {
    bool found = false;
    std::size_t best_in = n, best_out = n;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t in = 0; in < n && !(found && options.strategy == SwapStrategy::FirstFit);
         ++in) {
      if (in_set[in]) continue;
      for (std::size_t out : current) {
        const double c = swap_cost(in, out);
        ++evaluations;
        if (options.strategy == SwapStrategy::FirstFit) {
          if (improves(c)) {
            best = c;
            best_in = in;
            best_out = out;
            found = true;
            break;
          }
        } else if (c < best) {
          best = c;
          best_in = in;
          best_out = out;
        }
      }
    }
    if (options.strategy == SwapStrategy::BestFit) found = best_in < n && improves(best);
    if (!found) break;
    in_set[best_out] = 0;
    in_set[best_in] = 1;
    *std::find(current.begin(), current.end(), best_out) = best_in;
    std::sort(current.begin(), current.end());
    refresh();
    cost = set_cost();
    ++swaps;
  }

  ReductionResult out = result_from_atoms(p, current, metric, "local-search");
  out.iterations = swaps;
  out.evaluations = evaluations;
  return out;
}

ReductionResult continuous_polish(const ReductionResult& result, const Distribution& p,
                                  const Metric& metric, const CentroidOptions& options) {
  check_result(result, p, 1e-9);
  KMeansOptions km;
  km.centroid = options;
  ReductionResult polished =
      k_means_generalized(p, result.support.size(), metric, result.support, km);
  if (polished.value > result.value) {
    ReductionResult same = result;
    same.algorithm = result.algorithm + "+polish";
    return same;
  }
  polished.algorithm = result.algorithm + "+polish";
  return polished;
}

}  // namespace scenred
