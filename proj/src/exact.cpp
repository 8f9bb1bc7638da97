#include "scenred/exact.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "scenred/heuristics.hpp"

namespace scenred {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_m(const Distribution& p, std::size_t m) {
  if (m < 1) throw InvalidArgument("m must be at least 1");
  if (m > p.size()) {
    throw InvalidArgument("m = " + std::to_string(m) + " exceeds the number of atoms n = " +
                          std::to_string(p.size()));
  }
}

double root(double cost, double l) { return std::pow(std::max(cost, 0.0), 1.0 / l); }

bool exact_centroid(const Metric& metric) {
  return (metric.l == 2.0 && metric.norm == Norm::L2) ||
         (metric.l == 1.0 && metric.norm == Norm::L1);
}

struct CellSolution {
  Point center;
  double cost = 0.0;
};

CellSolution solve_cell(const Distribution& p, const std::vector<std::size_t>& members,
                        const Metric& metric, const CentroidOptions& options) {
  std::vector<Point> pts;
  std::vector<double> w;
  pts.reserve(members.size());
  w.reserve(members.size());
  for (std::size_t i : members) {
    pts.push_back(p.point(i));
    w.push_back(p.weight(i));
  }
  CellSolution out;
  if (std::accumulate(w.begin(), w.end(), 0.0) <= 0.0) {
    out.center = pts.front();
    return out;
  }
  try {
    out.center = centroid(pts, w, metric, options);
  } catch (const ConvergenceError& e) {
    // the best iterate still gives a valid upper bound on the cell cost
    out.center = e.best();
  }
  out.cost = centroid_objective(pts, w, out.center, metric);
  return out;
}

ReductionResult result_from_cells(const Distribution& p,
                                  std::vector<std::vector<std::size_t>> cells,
                                  const Metric& metric, const CentroidOptions& options,
                                  std::string algorithm) {
  std::sort(cells.begin(), cells.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  ReductionResult out;
  double total = 0.0;
  for (const auto& cell : cells) {
    CellSolution s = solve_cell(p, cell, metric, options);
    double mass = 0.0;
    for (std::size_t i : cell) mass += p.weight(i);
    out.support.push_back(std::move(s.center));
    out.weights.push_back(mass);
    total += s.cost;
  }
  out.partition = Partition(p.size(), std::move(cells));
  out.value = root(total, metric.l);
  out.algorithm = std::move(algorithm);
  return out;
}

// Contiguous runs of the sorted atoms are optimal on the line.
ReductionResult continuous_line(const Distribution& p, std::size_t m, const Metric& metric,
                                const CentroidOptions& options) {
  const std::size_t n = p.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return p.point(a)[0] < p.point(b)[0]; });

  // run[a][b]: cost of the run order[a..b]
  std::vector<std::vector<double>> run(n, std::vector<double>(n, 0.0));
  std::size_t evaluations = 0;
  for (std::size_t a = 0; a < n; ++a) {
    std::vector<std::size_t> members;
    for (std::size_t b = a; b < n; ++b) {
      members.push_back(order[b]);
      run[a][b] = solve_cell(p, members, metric, options).cost;
      ++evaluations;
    }
  }

  // best[k][b]: optimal cost of the first b atoms in k runs
  std::vector<std::vector<double>> best(m + 1, std::vector<double>(n + 1, kInf));
  std::vector<std::vector<std::size_t>> cut(m + 1, std::vector<std::size_t>(n + 1, 0));
  best[0][0] = 0.0;
  for (std::size_t k = 1; k <= m; ++k) {
    for (std::size_t b = k; b <= n - (m - k); ++b) {
      for (std::size_t a = k - 1; a < b; ++a) {
        if (best[k - 1][a] == kInf) continue;
        const double c = best[k - 1][a] + run[a][b - 1];
        if (c < best[k][b]) {
          best[k][b] = c;
          cut[k][b] = a;
        }
      }
    }
  }

  std::vector<std::vector<std::size_t>> cells;
  std::size_t b = n;
  for (std::size_t k = m; k > 0; --k) {
    const std::size_t a = cut[k][b];
    std::vector<std::size_t> cell(order.begin() + a, order.begin() + b);
    std::sort(cell.begin(), cell.end());
    cells.push_back(std::move(cell));
    b = a;
  }
  ReductionResult out = result_from_cells(p, std::move(cells), metric, options, "exact-continuous");
  out.iterations = 1;
  out.evaluations = evaluations;
  return out;
}

}  // namespace

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return std::round(c);
}

double stirling2(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  if (n == 0) return 1.0;
  if (k == 0) return 0.0;
  // row-by-row recurrence S(i, j) = j S(i-1, j) + S(i-1, j-1)
  std::vector<double> row(k + 1, 0.0);
  row[0] = 1.0;
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = std::min(i, k); j >= 1; --j) {
      row[j] = static_cast<double>(j) * row[j] + row[j - 1];
    }
    row[0] = 0.0;
  }
  return row[k];
}

ReductionResult discrete_exact(const Distribution& p, std::size_t m, const Metric& metric,
                               const DiscreteExactOptions& options) {
  require_valid(p);
  check_m(p, m);
  const std::size_t n = p.size();
  const double count = binomial(n, m);
  if (count > options.budget) {
    throw BudgetExceeded("discrete_exact: C(" + std::to_string(n) + ", " + std::to_string(m) +
                             ") = " + format_number(count) + " subsets exceed the budget of " +
                             format_number(options.budget),
                         count);
  }

  const DistanceMatrix dist = distance_matrix(p.points(), metric);
  // sufmin[t][i] = min over j >= t of dist(i, j)
  std::vector<std::vector<double>> sufmin(n + 1, std::vector<double>(n, kInf));
  for (std::size_t t = n; t-- > 0;) {
    for (std::size_t i = 0; i < n; ++i) sufmin[t][i] = std::min(sufmin[t + 1][i], dist(i, t));
  }

  // Warm start from the greedy subset; ties are then settled by index order.
  std::vector<std::size_t> best = dupacova_greedy(p, m, metric).selected;
  std::sort(best.begin(), best.end());
  double incumbent = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = kInf;
    for (std::size_t j : best) d = std::min(d, dist(i, j));
    incumbent += p.weight(i) * d;
  }
  bool found = false;

  std::vector<std::vector<double>> nearest(m + 1, std::vector<double>(n, kInf));
  std::vector<std::size_t> chosen(m, 0);
  std::size_t nodes = 0;
  std::size_t leaves = 0;

  auto visit = [&](auto&& self, std::size_t depth, std::size_t start) -> void {
    for (std::size_t j = start; j + (m - depth) <= n; ++j) {
      ++nodes;
      const auto& prev = nearest[depth];
      auto& cur = nearest[depth + 1];
      chosen[depth] = j;
      if (depth + 1 == m) {
        double cost = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          cur[i] = std::min(prev[i], dist(i, j));
          cost += p.weight(i) * cur[i];
        }
        ++leaves;
        // leaves arrive in lexicographic order, so the first one matching
        // the warm start's value is the smallest tied subset
        if (cost < incumbent || (!found && cost == incumbent)) {
          incumbent = cost;
          best = chosen;
          found = true;
        }
        continue;
      }
      double bound = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        cur[i] = std::min(prev[i], dist(i, j));
        bound += p.weight(i) * std::min(cur[i], sufmin[j + 1][i]);
      }
      if (bound > incumbent || (found && bound >= incumbent)) continue;
      self(self, depth + 1, j + 1);
    }
  };
  visit(visit, 0, 0);

  ReductionResult out = result_from_atoms(p, best, metric, "exact-discrete");
  out.iterations = leaves;
  out.evaluations = nodes;
  return out;
}

ReductionResult continuous_exact(const Distribution& p, std::size_t m, const Metric& metric,
                                 const ContinuousExactOptions& options) {
  require_valid(p);
  check_m(p, m);
  const std::size_t n = p.size();
  if (p.dim() == 1) return continuous_line(p, m, metric, options.centroid);

  const double count = stirling2(n, m);
  if (count > options.budget || (n > 64 && m > 1)) {
    throw BudgetExceeded("continuous_exact: S(" + std::to_string(n) + ", " + std::to_string(m) +
                             ") = " + format_number(count) + " partitions exceed the budget of " +
                             format_number(options.budget),
                         count);
  }
  if (m == 1) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    ReductionResult out = result_from_cells(p, {all}, metric, options.centroid, "exact-continuous");
    out.iterations = 1;
    out.evaluations = 1;
    return out;
  }

  const double margin = exact_centroid(metric) ? 0.0 : 10.0 * options.centroid.tol;
  std::unordered_map<std::uint64_t, double> memo;
  std::size_t evaluations = 0;
  auto cell_cost = [&](std::uint64_t mask) {
    const auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1U) members.push_back(i);
    }
    const double c = solve_cell(p, members, metric, options.centroid).cost;
    ++evaluations;
    memo.emplace(mask, c);
    return c;
  };

  std::vector<std::uint64_t> masks(m, 0);
  std::vector<double> costs(m, 0.0);
  std::vector<std::size_t> labels(n, 0), best_labels;
  double incumbent = kInf;
  std::size_t leaves = 0;

  // labels form a restricted growth string; `used` cells are open so far
  auto visit = [&](auto&& self, std::size_t i, std::size_t used, double partial) -> void {
    if (i == n) {
      ++leaves;
      if (partial < incumbent - margin || best_labels.empty()) {
        incumbent = partial;
        best_labels = labels;
      }
      return;
    }
    const std::size_t top = std::min(used + 1, m);
    for (std::size_t c = 0; c < top; ++c) {
      const std::size_t open = c == used ? used + 1 : used;
      if (n - i - 1 < m - open) continue;  // too few atoms left to open the rest
      const std::uint64_t old_mask = masks[c];
      const double old_cost = costs[c];
      masks[c] = old_mask | (std::uint64_t{1} << i);
      costs[c] = cell_cost(masks[c]);
      const double next = partial - old_cost + costs[c];
      labels[i] = c;
      if (best_labels.empty() || next < incumbent - margin) self(self, i + 1, open, next);
      masks[c] = old_mask;
      costs[c] = old_cost;
    }
  };
  visit(visit, 0, 0, 0.0);

  std::vector<std::vector<std::size_t>> cells(m);
  for (std::size_t i = 0; i < n; ++i) cells[best_labels[i]].push_back(i);
  ReductionResult out =
      result_from_cells(p, std::move(cells), metric, options.centroid, "exact-continuous");
  out.iterations = leaves;
  out.evaluations = evaluations;
  return out;
}

MilpModel milp_discrete(const Distribution& p, std::size_t m, const Metric& metric) {
  require_valid(p);
  check_m(p, m);
  const std::size_t n = p.size();
  const DistanceMatrix dist = distance_matrix(p.points(), metric);
  auto pi = [](std::size_t i, std::size_t j) {
    return "pi_" + std::to_string(i + 1) + "_" + std::to_string(j + 1);
  };
  auto lambda = [](std::size_t j) { return "lambda_" + std::to_string(j + 1); };

  MilpModel model;
  model.comments.push_back("discrete scenario reduction: n = " + std::to_string(n) +
                           ", m = " + std::to_string(m) + ", l = " + format_number(metric.l) +
                           ", norm = " + to_string(metric.norm));
  if (!p.is_uniform()) {
    model.comments.push_back(
        "weighted generalization: atom probabilities p_i replace 1/n in the objective");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) model.variables.push_back(pi(i, j));
  }
  for (std::size_t j = 0; j < n; ++j) model.variables.push_back(lambda(j));

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double c = p.weight(i) * dist(i, j);
      if (c != 0.0) model.objective.push_back({c, pi(i, j)});
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    LinearConstraint row{"assign_" + std::to_string(i + 1), {}, Sense::Equal, 1.0};
    for (std::size_t j = 0; j < n; ++j) row.terms.push_back({1.0, pi(i, j)});
    model.constraints.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      model.constraints.push_back({"link_" + std::to_string(i + 1) + "_" + std::to_string(j + 1),
                                   {{1.0, pi(i, j)}, {-1.0, lambda(j)}},
                                   Sense::LessEqual,
                                   0.0});
    }
  }
  LinearConstraint card{"card", {}, Sense::Equal, static_cast<double>(m)};
  for (std::size_t j = 0; j < n; ++j) card.terms.push_back({1.0, lambda(j)});
  model.constraints.push_back(std::move(card));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) model.bounds.push_back({pi(i, j), 0.0, 1.0});
  }
  for (std::size_t j = 0; j < n; ++j) model.binaries.push_back(lambda(j));
  return model;
}

MilpModel milp_continuous(const Distribution& p, std::size_t m, const Metric& metric) {
  require_valid(p);
  check_m(p, m);
  if (metric.l != 1.0 || metric.norm == Norm::L2) {
    throw InvalidArgument(
        "continuous MILP export needs l = 1 with the 1- or inf-norm; this metric leads to a "
        "mixed-integer second-order cone model, which has no LP-format representation");
  }
  const std::size_t n = p.size();
  const std::size_t d = p.dim();
  const bool one_norm = metric.norm == Norm::L1;
  const DistanceMatrix dist = distance_matrix(p.points(), metric);
  double big_m = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) big_m = std::max(big_m, dist(i, j));
  }

  auto s = [](std::size_t k) { return std::to_string(k + 1); };
  auto pi = [&](std::size_t i, std::size_t j) { return "pi_" + s(i) + "_" + s(j); };
  auto c = [&](std::size_t i) { return "c_" + s(i); };
  auto zeta = [&](std::size_t j, std::size_t k) { return "zeta_" + s(j) + "_" + s(k); };
  auto phi = [&](std::size_t i, std::size_t j, std::size_t k) {
    return one_norm ? "phi_" + s(i) + "_" + s(j) + "_" + s(k) : "phi_" + s(i) + "_" + s(j);
  };

  MilpModel model;
  model.big_m = big_m;
  model.comments.push_back("continuous scenario reduction: n = " + std::to_string(n) +
                           ", m = " + std::to_string(m) + ", l = 1, norm = " +
                           to_string(metric.norm));
  model.comments.push_back("big-M = " + format_number(big_m));
  if (!p.is_uniform()) {
    model.comments.push_back(
        "weighted generalization: atom probabilities p_i replace 1/n in the objective");
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) model.variables.push_back(pi(i, j));
  }
  for (std::size_t i = 0; i < n; ++i) model.variables.push_back(c(i));
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = 0; k < d; ++k) model.variables.push_back(zeta(j, k));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (one_norm) {
        for (std::size_t k = 0; k < d; ++k) model.variables.push_back(phi(i, j, k));
      } else {
        model.variables.push_back(phi(i, j, 0));
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (p.weight(i) != 0.0) model.objective.push_back({p.weight(i), c(i)});
  }
  for (std::size_t i = 0; i < n; ++i) {
    LinearConstraint row{"assign_" + s(i), {}, Sense::Equal, 1.0};
    for (std::size_t j = 0; j < m; ++j) row.terms.push_back({1.0, pi(i, j)});
    model.constraints.push_back(std::move(row));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const std::string tag = s(i) + "_" + s(j);
      for (std::size_t k = 0; k < d; ++k) {
        const double x = p.point(i)[k];
        model.constraints.push_back({"up_" + tag + "_" + s(k),
                                     {{1.0, phi(i, j, k)}, {1.0, zeta(j, k)}},
                                     Sense::GreaterEqual,
                                     x});
        model.constraints.push_back({"lo_" + tag + "_" + s(k),
                                     {{1.0, phi(i, j, k)}, {-1.0, zeta(j, k)}},
                                     Sense::GreaterEqual,
                                     -x});
      }
      LinearConstraint cap{"cap_" + tag, {}, Sense::LessEqual, big_m};
      if (one_norm) {
        for (std::size_t k = 0; k < d; ++k) cap.terms.push_back({1.0, phi(i, j, k)});
      } else {
        cap.terms.push_back({1.0, phi(i, j, 0)});
      }
      cap.terms.push_back({-1.0, c(i)});
      cap.terms.push_back({big_m, pi(i, j)});
      model.constraints.push_back(std::move(cap));
    }
  }

  for (std::size_t k = 0; k < d; ++k) {
    double lo = kInf, hi = -kInf;
    for (const auto& x : p.points()) {
      lo = std::min(lo, x[k]);
      hi = std::max(hi, x[k]);
    }
    for (std::size_t j = 0; j < m; ++j) model.bounds.push_back({zeta(j, k), lo, hi});
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) model.binaries.push_back(pi(i, j));
  }
  return model;
}

}  // namespace scenred
