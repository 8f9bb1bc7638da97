#include "scenred/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace scenred {

std::size_t TransportPlan::positive_entries() const {
  return static_cast<std::size_t>(
      std::count_if(matrix.begin(), matrix.end(), [](double x) { return x > 0.0; }));
}

double TransportPlan::marginal_error() const {
  double err = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols; ++j) s += (*this)(i, j);
    err = std::max(err, std::abs(s - row_marginals[i]));
  }
  for (std::size_t j = 0; j < cols; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < rows; ++i) s += (*this)(i, j);
    err = std::max(err, std::abs(s - col_marginals[j]));
  }
  return err;
}

namespace {

struct Cell {
  std::size_t i;
  std::size_t j;
};

class TransportSimplex {
 public:
  TransportSimplex(const DistanceMatrix& cost, std::vector<double> supply,
                   std::vector<double> demand)
      : cost_(cost),
        n_(supply.size()),
        m_(demand.size()),
        flow_(n_ * m_, 0.0),
        basic_(n_ * m_, 0),
        supply_(std::move(supply)),
        demand_(std::move(demand)) {}

  TransportSolution solve() {
    northwest_corner();
    double scale = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < m_; ++j) scale = std::max(scale, std::abs(cost_(i, j)));
    }
    const double rc_tol = 1e-12 * std::max(scale, 1.0);
    const std::size_t max_pivots = 100 * (n_ * m_) + 1000;

    std::vector<double> u(n_), v(m_);
    std::size_t pivots = 0;
    double min_rc = 0.0;
    for (;;) {
      compute_potentials(u, v);
      std::size_t enter = kNone;
      min_rc = 0.0;
      for (std::size_t i = 0; i < n_; ++i) {
        for (std::size_t j = 0; j < m_; ++j) {
          if (basic_[i * m_ + j]) continue;
          const double rc = cost_(i, j) - u[i] - v[j];
          min_rc = std::min(min_rc, rc);
          if (enter == kNone && rc < -rc_tol) enter = i * m_ + j;
        }
      }
      if (enter == kNone) break;
      if (++pivots > max_pivots) throw Error("transportation simplex exceeded its pivot limit");
      pivot(Cell{enter / m_, enter % m_});
    }

    TransportSolution out;
    out.plan.rows = n_;
    out.plan.cols = m_;
    out.plan.matrix = flow_;
    out.plan.row_marginals = supply_;
    out.plan.col_marginals = demand_;
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < m_; ++j) out.cost += flow_[i * m_ + j] * cost_(i, j);
    }
    out.pivots = pivots;
    out.min_reduced_cost = min_rc;
    return out;
  }

 private:
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  void northwest_corner() {
    std::vector<double> s = supply_;
    std::vector<double> d = demand_;
    std::size_t i = 0;
    std::size_t j = 0;
    for (;;) {
      const double amount = std::min(s[i], d[j]);
      flow_[i * m_ + j] = amount;
      basic_[i * m_ + j] = 1;
      const bool row_done = s[i] <= d[j];
      if (row_done) {
        d[j] -= amount;
        s[i] = 0.0;
      } else {
        s[i] -= amount;
        d[j] = 0.0;
      }
      if (i == n_ - 1 && j == m_ - 1) break;
      if (i == n_ - 1) {
        ++j;
      } else if (j == m_ - 1) {
        ++i;
      } else if (row_done) {
        ++i;
      } else {
        ++j;
      }
    }
  }

  // Nodes 0..n-1 are rows, n..n+m-1 columns; edges are basic cells.
  std::vector<std::vector<std::size_t>> tree_adjacency() const {
    std::vector<std::vector<std::size_t>> adj(n_ + m_);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < m_; ++j) {
        if (!basic_[i * m_ + j]) continue;
        adj[i].push_back(n_ + j);
        adj[n_ + j].push_back(i);
      }
    }
    return adj;
  }

  void compute_potentials(std::vector<double>& u, std::vector<double>& v) const {
    const auto adj = tree_adjacency();
    std::vector<char> seen(n_ + m_, 0);
    std::vector<std::size_t> stack{0};
    u[0] = 0.0;
    seen[0] = 1;
    while (!stack.empty()) {
      const std::size_t node = stack.back();
      stack.pop_back();
      for (std::size_t next : adj[node]) {
        if (seen[next]) continue;
        seen[next] = 1;
        if (node < n_) {
          v[next - n_] = cost_(node, next - n_) - u[node];
        } else {
          u[next] = cost_(next, node - n_) - v[node - n_];
        }
        stack.push_back(next);
      }
    }
  }

  void pivot(Cell enter) {
    // Path in the basis tree from column node of `enter` to its row node.
    const auto adj = tree_adjacency();
    const std::size_t source = n_ + enter.j;
    const std::size_t target = enter.i;
    std::vector<std::size_t> parent(n_ + m_, kNone);
    parent[source] = source;
    std::vector<std::size_t> queue{source};
    for (std::size_t head = 0; head < queue.size() && parent[target] == kNone; ++head) {
      const std::size_t node = queue[head];
      for (std::size_t next : adj[node]) {
        if (parent[next] != kNone) continue;
        parent[next] = node;
        queue.push_back(next);
      }
    }
    // Walk back from target to source collecting cells; signs alternate
    // starting with '-' at the cell adjacent to the entering column.
    std::vector<std::size_t> path_cells;
    for (std::size_t node = target; node != source; node = parent[node]) {
      const std::size_t prev = parent[node];
      const std::size_t row = node < n_ ? node : prev;
      const std::size_t col = (node < n_ ? prev : node) - n_;
      path_cells.push_back(row * m_ + col);
    }
    std::reverse(path_cells.begin(), path_cells.end());

    double theta = std::numeric_limits<double>::infinity();
    std::size_t leave = kNone;
    for (std::size_t k = 0; k < path_cells.size(); k += 2) {
      const std::size_t cell = path_cells[k];
      const double f = flow_[cell];
      if (f < theta || (f == theta && cell < leave)) {
        theta = f;
        leave = cell;
      }
    }
    if (leave == kNone) throw Error("transport simplex: entering cell closes no cycle");
    for (std::size_t k = 0; k < path_cells.size(); ++k) {
      const std::size_t cell = path_cells[k];
      flow_[cell] += (k % 2 == 0) ? -theta : theta;
    }
    const std::size_t entering = enter.i * m_ + enter.j;
    flow_[entering] = theta;
    basic_[entering] = 1;
    basic_[leave] = 0;
    flow_[leave] = 0.0;
    for (std::size_t k = 0; k < path_cells.size(); k += 2) {
      if (flow_[path_cells[k]] < 0.0) flow_[path_cells[k]] = 0.0;
    }
  }

  const DistanceMatrix& cost_;
  std::size_t n_;
  std::size_t m_;
  std::vector<double> flow_;
  std::vector<char> basic_;
  std::vector<double> supply_;
  std::vector<double> demand_;
};

}  // namespace

TransportSolution solve_transport(const DistanceMatrix& cost, std::span<const double> supply,
                                  std::span<const double> demand) {
  if (supply.empty() || demand.empty()) throw InvalidArgument("empty marginal");
  if (cost.rows() != supply.size() || cost.cols() != demand.size()) {
    throw InvalidArgument("cost matrix shape does not match the marginals");
  }
  double s_total = 0.0;
  double d_total = 0.0;
  for (double s : supply) {
    if (!(s >= 0.0)) throw InvalidArgument("supplies must be nonnegative");
    s_total += s;
  }
  for (double d : demand) {
    if (!(d >= 0.0)) throw InvalidArgument("demands must be nonnegative");
    d_total += d;
  }
  if (std::abs(s_total - d_total) > 1e-9) {
    throw InvalidArgument("supply and demand totals differ");
  }
  std::vector<double> dem(demand.begin(), demand.end());
  if (d_total > 0.0 && s_total != d_total) {
    for (double& d : dem) d *= s_total / d_total;
  }
  TransportSimplex simplex(cost, {supply.begin(), supply.end()}, std::move(dem));
  TransportSolution out = simplex.solve();
  out.plan.col_marginals.assign(demand.begin(), demand.end());
  return out;
}

WassersteinResult wasserstein(const Distribution& p, const Distribution& q,
                              const Metric& metric) {
  require_valid(p);
  require_valid(q);
  if (p.dim() != q.dim()) {
    throw InvalidArgument("dimension mismatch: " + std::to_string(p.dim()) + " vs " +
                          std::to_string(q.dim()));
  }
  const DistanceMatrix cost = distance_matrix(p.points(), q.points(), metric);
  TransportSolution sol = solve_transport(cost, p.weights(), q.weights());
  WassersteinResult out;
  out.value = std::pow(std::max(sol.cost, 0.0), 1.0 / metric.l);
  out.plan = std::move(sol.plan);
  out.pivots = sol.pivots;
  out.min_reduced_cost = sol.min_reduced_cost;
  return out;
}

SupportDistance dist_to_support(const Distribution& p, const std::vector<Point>& support,
                                const Metric& metric) {
  if (support.empty()) throw InvalidArgument("support set is empty");
  for (const auto& z : support) {
    if (z.size() != p.dim()) throw InvalidArgument("support point dimension mismatch");
  }
  return dist_to_support(p, support, distance_matrix(p.points(), support, metric));
}

SupportDistance dist_to_support(const Distribution& p, const std::vector<Point>& support,
                                const DistanceMatrix& distances) {
  if (support.empty()) throw InvalidArgument("support set is empty");
  const std::size_t n = p.size();
  const std::size_t k = support.size();
  SupportDistance out;
  out.assignment.resize(n);
  std::vector<double> mass(k, 0.0);
  double cost = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t best = 0;
    double best_d = distances(i, 0);
    for (std::size_t j = 1; j < k; ++j) {
      if (distances(i, j) < best_d) {
        best_d = distances(i, j);
        best = j;
      }
    }
    out.assignment[i] = best;
    mass[best] += p.weight(i);
    cost += p.weight(i) * best_d;
  }
  out.value = std::pow(std::max(cost, 0.0), 1.0 / distances.metric().l);

  std::vector<std::size_t> relabel(k, 0);
  std::vector<Point> pts;
  std::vector<double> ws;
  for (std::size_t j = 0; j < k; ++j) {
    if (mass[j] > 0.0) {
      relabel[j] = out.kept.size();
      out.kept.push_back(j);
      pts.push_back(support[j]);
      ws.push_back(mass[j]);
    }
  }
  // Atoms of zero weight still need a cell; attach them to a kept point when
  // their nearest point received no mass.
  std::vector<std::size_t> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = out.assignment[i];
    if (mass[j] > 0.0) {
      labels[i] = relabel[j];
    } else {
      std::size_t best = out.kept.front();
      for (std::size_t kk : out.kept) {
        if (distances(i, kk) < distances(i, best)) best = kk;
      }
      labels[i] = relabel[best];
    }
  }
  out.partition = Partition::from_labels(labels, out.kept.size());
  out.reduced = Distribution(std::move(pts), std::move(ws));
  return out;
}

}  // namespace scenred
