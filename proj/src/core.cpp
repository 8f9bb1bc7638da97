#include "scenred/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace scenred {

std::string to_string(Norm norm) {
  switch (norm) {
    case Norm::L1:
      return "1";
    case Norm::L2:
      return "2";
    case Norm::LInf:
      return "inf";
  }
  return "?";
}

Norm parse_norm(const std::string& text) {
  if (text == "1") return Norm::L1;
  if (text == "2") return Norm::L2;
  if (text == "inf" || text == "Inf" || text == "INF") return Norm::LInf;
  throw InvalidArgument("unsupported ground norm '" + text + "' (expected 1, 2 or inf)");
}

Metric::Metric(double order, Norm ground) : l(order), norm(ground) {
  if (!(order >= 1.0) || !std::isfinite(order)) {
    std::ostringstream os;
    os << "Wasserstein order must be a finite real >= 1, got " << order;
    throw InvalidArgument(os.str());
  }
}

Distribution::Distribution(std::vector<Point> points, std::vector<double> weights)
    : points_(std::move(points)), weights_(std::move(weights)) {
  if (points_.size() != weights_.size()) {
    throw InvalidArgument("distribution has " + std::to_string(points_.size()) +
                          " points but " + std::to_string(weights_.size()) + " weights");
  }
  if (points_.empty()) return;
  dim_ = points_.front().size();
  if (dim_ == 0) throw InvalidArgument("atoms must have positive dimension");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (points_[i].size() != dim_) {
      throw InvalidArgument("atom " + std::to_string(i + 1) + " has dimension " +
                            std::to_string(points_[i].size()) + ", expected " +
                            std::to_string(dim_));
    }
    for (double x : points_[i]) {
      if (!std::isfinite(x)) {
        throw InvalidArgument("atom " + std::to_string(i + 1) + " has a non-finite coordinate");
      }
    }
  }
}

Distribution Distribution::uniform(std::vector<Point> points) {
  const std::size_t n = points.size();
  std::vector<double> weights(n, n == 0 ? 0.0 : 1.0 / static_cast<double>(n));
  return {std::move(points), std::move(weights)};
}

bool Distribution::is_uniform(double tol) const {
  if (points_.empty()) return false;
  const double target = 1.0 / static_cast<double>(points_.size());
  return std::all_of(weights_.begin(), weights_.end(),
                     [&](double w) { return std::abs(w - target) <= tol; });
}

bool Distribution::is_distinct() const {
  std::vector<std::size_t> order(points_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return points_[a] < points_[b]; });
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (points_[order[k - 1]] == points_[order[k]]) return false;
  }
  return true;
}

std::vector<std::string> validate(const Distribution& dist, bool require_uniform,
                                  bool require_distinct, const Tolerances& tol) {
  std::vector<std::string> issues;
  if (dist.empty()) {
    issues.emplace_back("distribution has no atoms");
    return issues;
  }
  double total = 0.0;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    const double w = dist.weight(i);
    if (!std::isfinite(w) || w < 0.0) {
      std::ostringstream os;
      os << "weight " << i + 1 << " is negative or non-finite (" << w << ")";
      issues.push_back(os.str());
    }
    total += w;
  }
  if (std::abs(total - 1.0) > tol.exact) {
    std::ostringstream os;
    os << "weights sum to " << total;
    issues.push_back(os.str());
  }
  if (require_uniform && !dist.is_uniform(tol.exact)) {
    issues.emplace_back("weights are not uniform");
  }
  if (require_distinct) {
    std::vector<std::size_t> order(dist.size());
    std::iota(order.begin(), order.end(), 0);
    const auto& pts = dist.points();
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return pts[a] < pts[b]; });
    for (std::size_t k = 1; k < order.size(); ++k) {
      if (pts[order[k - 1]] == pts[order[k]]) {
        const auto [a, b] = std::minmax(order[k - 1], order[k]);
        issues.push_back("atoms " + std::to_string(a + 1) + " and " + std::to_string(b + 1) +
                         " coincide");
      }
    }
  }
  return issues;
}

void require_valid(const Distribution& dist, bool require_uniform, bool require_distinct,
                   const Tolerances& tol) {
  const auto issues = validate(dist, require_uniform, require_distinct, tol);
  if (!issues.empty()) throw InvalidArgument("invalid distribution: " + issues.front());
}

Partition::Partition(std::size_t n, std::vector<std::vector<std::size_t>> cells)
    : n_(n), cells_(std::move(cells)) {
  std::vector<char> seen(n, 0);
  if (cells_.size() > n) throw InvalidArgument("partition has more cells than indices");
  for (const auto& cell : cells_) {
    if (cell.empty()) throw InvalidArgument("partition cell is empty");
    for (std::size_t i : cell) {
      if (i >= n) throw InvalidArgument("partition index out of range");
      if (seen[i]) throw InvalidArgument("partition cells overlap");
      seen[i] = 1;
    }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) {
    throw InvalidArgument("partition does not cover every index");
  }
}

Partition Partition::from_labels(const std::vector<std::size_t>& labels,
                                 std::size_t num_cells) {
  std::vector<std::vector<std::size_t>> cells(num_cells);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] >= num_cells) throw InvalidArgument("partition label out of range");
    cells[labels[i]].push_back(i);
  }
  return {labels.size(), std::move(cells)};
}

std::vector<std::size_t> Partition::labels() const {
  std::vector<std::size_t> out(n_, 0);
  for (std::size_t j = 0; j < cells_.size(); ++j) {
    for (std::size_t i : cells_[j]) out[i] = j;
  }
  return out;
}

void check_result(const ReductionResult& result, const Distribution& dist, double tol) {
  const std::size_t k = result.support.size();
  if (result.weights.size() != k || result.partition.size() != k) {
    throw InvalidArgument("reduction result: support, weights and partition sizes disagree");
  }
  if (result.partition.n() != dist.size()) {
    throw InvalidArgument("reduction result: partition does not cover the input atoms");
  }
  if (!(result.value >= 0.0)) throw InvalidArgument("reduction result: negative value");
  double total = 0.0;
  for (std::size_t j = 0; j < k; ++j) {
    double mass = 0.0;
    for (std::size_t i : result.partition.cell(j)) mass += dist.weight(i);
    if (std::abs(mass - result.weights[j]) > tol) {
      throw InvalidArgument("reduction result: weight of cell " + std::to_string(j + 1) +
                            " does not match its members");
    }
    total += result.weights[j];
  }
  if (std::abs(total - 1.0) > std::max(tol, 1e-9)) {
    throw InvalidArgument("reduction result: weights do not sum to 1");
  }
}

}  // namespace scenred
