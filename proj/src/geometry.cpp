#include "scenred/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace scenred {
namespace {

void require_same_dim(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) {
    throw InvalidArgument("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()));
  }
}

double total_weight(std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw InvalidArgument("weights must be nonnegative");
    total += w;
  }
  if (!(total > 0.0)) throw InvalidArgument("weights must have a positive sum");
  return total;
}

void check_points(const std::vector<Point>& points, std::span<const double> weights) {
  if (points.empty()) throw InvalidArgument("point set is empty");
  if (points.size() != weights.size()) {
    throw InvalidArgument("point and weight counts differ");
  }
  const std::size_t d = points.front().size();
  for (const auto& p : points) {
    if (p.size() != d) throw InvalidArgument("points have inconsistent dimensions");
  }
}

// Lower weighted median of values: smallest v with cumulative weight >= half.
double weighted_lower_median(std::vector<std::pair<double, double>>& values) {
  std::sort(values.begin(), values.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  double total = 0.0;
  for (const auto& [v, w] : values) total += w;
  double cumulative = 0.0;
  for (const auto& [v, w] : values) {
    cumulative += w;
    if (2.0 * cumulative >= total) return v;
  }
  return values.back().first;
}

Point coordinatewise_median(const std::vector<Point>& points, std::span<const double> weights) {
  const std::size_t d = points.front().size();
  Point out(d);
  std::vector<std::pair<double, double>> column(points.size());
  for (std::size_t k = 0; k < d; ++k) {
    for (std::size_t i = 0; i < points.size(); ++i) column[i] = {points[i][k], weights[i]};
    out[k] = weighted_lower_median(column);
  }
  return out;
}

// In the plane ||v||_inf = (|v1 + v2| + |v1 - v2|) / 2, so the inf-norm median
// is a coordinatewise median after a 45 degree change of basis.
Point planar_inf_median(const std::vector<Point>& points, std::span<const double> weights) {
  std::vector<Point> rotated;
  rotated.reserve(points.size());
  for (const auto& p : points) rotated.push_back({p[0] + p[1], p[0] - p[1]});
  const Point m = coordinatewise_median(rotated, weights);
  return {(m[0] + m[1]) / 2.0, (m[0] - m[1]) / 2.0};
}

// Adds a subgradient of ||x - z||_p^l with respect to z into grad.
void accumulate_subgradient(std::span<const double> x, std::span<const double> z,
                            const Metric& metric, double weight, std::vector<double>& grad) {
  const std::size_t d = x.size();
  std::vector<double> r(d);
  for (std::size_t k = 0; k < d; ++k) r[k] = x[k] - z[k];
  const double len = norm(r, metric.norm);
  if (len == 0.0) return;
  const double scale = weight * metric.l * std::pow(len, metric.l - 1.0);
  switch (metric.norm) {
    case Norm::L1:
      for (std::size_t k = 0; k < d; ++k) {
        if (r[k] > 0) grad[k] -= scale;
        if (r[k] < 0) grad[k] += scale;
      }
      break;
    case Norm::L2:
      for (std::size_t k = 0; k < d; ++k) grad[k] -= scale * r[k] / len;
      break;
    case Norm::LInf: {
      std::size_t arg = 0;
      for (std::size_t k = 1; k < d; ++k) {
        if (std::abs(r[k]) > std::abs(r[arg])) arg = k;
      }
      grad[arg] -= scale * (r[arg] > 0 ? 1.0 : -1.0);
      break;
    }
  }
}

// Staged normalized subgradient descent: each stage restarts from the best
// iterate with half the step scale.
Point subgradient_descent(const std::vector<Point>& points, std::span<const double> weights,
                          const Metric& metric, Point start, const CentroidOptions& options) {
  const std::size_t d = start.size();
  Point best = start;
  double best_value = centroid_objective(points, weights, best, metric);

  double radius = 0.0;
  for (const auto& p : points) {
    double dist = 0.0;
    for (std::size_t k = 0; k < d; ++k) dist = std::max(dist, std::abs(p[k] - start[k]));
    radius = std::max(radius, dist);
  }
  if (radius == 0.0) return best;

  constexpr std::size_t kStages = 20;
  const std::size_t per_stage = std::max<std::size_t>(options.max_iter / kStages, 50);
  std::vector<double> grad(d);
  double step_scale = radius;
  for (std::size_t stage = 0; stage < kStages; ++stage) {
    Point z = best;
    for (std::size_t t = 0; t < per_stage; ++t) {
      std::fill(grad.begin(), grad.end(), 0.0);
      for (std::size_t i = 0; i < points.size(); ++i) {
        accumulate_subgradient(points[i], z, metric, weights[i], grad);
      }
      const double gnorm = std::sqrt(std::inner_product(grad.begin(), grad.end(),
                                                        grad.begin(), 0.0));
      if (gnorm == 0.0) break;
      const double step = step_scale / std::sqrt(static_cast<double>(t) + 1.0);
      for (std::size_t k = 0; k < d; ++k) z[k] -= step * grad[k] / gnorm;
      const double value = centroid_objective(points, weights, z, metric);
      if (value < best_value) {
        best_value = value;
        best = z;
      }
    }
    step_scale /= 2.0;
    if (step_scale <= options.tol * radius) break;
  }
  return best;
}

Point weiszfeld(const std::vector<Point>& points, std::span<const double> weights,
                const CentroidOptions& options) {
  const std::size_t n = points.size();
  const std::size_t d = points.front().size();
  const double total = total_weight(weights);

  std::vector<std::size_t> active;
  for (std::size_t i = 0; i < n; ++i) {
    if (weights[i] > 0.0) active.push_back(i);
  }
  const Metric euclid{1.0, Norm::L2};
  auto objective = [&](std::span<const double> z) {
    return centroid_objective(points, weights, z, euclid) / total;
  };

  // Subgradient test at the data points: x_k is optimal iff the pull of the
  // other atoms does not exceed the weight sitting on x_k.
  auto optimal_at = [&](std::span<const double> x) {
    std::vector<double> pull(d, 0.0);
    double mass_here = 0.0;
    for (std::size_t i : active) {
      double dist = 0.0;
      for (std::size_t k = 0; k < d; ++k) dist += (points[i][k] - x[k]) * (points[i][k] - x[k]);
      dist = std::sqrt(dist);
      if (dist == 0.0) {
        mass_here += weights[i];
        continue;
      }
      for (std::size_t k = 0; k < d; ++k) pull[k] += weights[i] * (points[i][k] - x[k]) / dist;
    }
    const double pull_norm = std::sqrt(std::inner_product(pull.begin(), pull.end(),
                                                          pull.begin(), 0.0));
    return std::pair{pull_norm <= mass_here, std::pair{pull, mass_here}};
  };

  constexpr std::size_t kExhaustiveCheckLimit = 4000;
  if (active.size() <= kExhaustiveCheckLimit) {
    for (std::size_t i : active) {
      if (optimal_at(points[i]).first) return points[i];
    }
  }

  Point x = mean_point(points, weights);
  Point best = x;
  double best_value = objective(x);
  if (options.trace) options.trace->push_back(best_value);
  std::vector<double> numer(d);
  for (std::size_t iter = 0; iter < options.max_iter; ++iter) {
    std::fill(numer.begin(), numer.end(), 0.0);
    double denom = 0.0;
    double radius = 0.0;
    std::vector<double> grad(d, 0.0);
    bool landed = false;
    for (std::size_t i : active) {
      double dist = 0.0;
      for (std::size_t k = 0; k < d; ++k) dist += (points[i][k] - x[k]) * (points[i][k] - x[k]);
      dist = std::sqrt(dist);
      radius = std::max(radius, dist);
      if (dist == 0.0) {
        landed = true;
        continue;
      }
      const double c = weights[i] / dist;
      denom += c;
      for (std::size_t k = 0; k < d; ++k) {
        numer[k] += c * points[i][k];
        grad[k] += c * (x[k] - points[i][k]);
      }
    }
    if (denom == 0.0) return x;  // all mass at x

    Point next(d);
    for (std::size_t k = 0; k < d; ++k) next[k] = numer[k] / denom;
    if (landed) {
      const auto [is_opt, info] = optimal_at(x);
      if (is_opt) return x;
      // Vardi-Zhang step away from the data point.
      const auto& [pull, mass_here] = info;
      const double r = std::sqrt(std::inner_product(pull.begin(), pull.end(), pull.begin(), 0.0));
      const double eta = mass_here / r;
      for (std::size_t k = 0; k < d; ++k) next[k] = (1.0 - eta) * next[k] + eta * x[k];
    } else {
      const double gnorm = std::sqrt(std::inner_product(grad.begin(), grad.end(),
                                                        grad.begin(), 0.0)) / total;
      if (gnorm * radius <= options.tol) return x;
    }

    double moved = 0.0;
    for (std::size_t k = 0; k < d; ++k) moved = std::max(moved, std::abs(next[k] - x[k]));
    x = std::move(next);
    const double value = objective(x);
    if (options.trace) options.trace->push_back(value);
    if (value <= best_value) {
      best_value = value;
      best = x;
    }
    if (moved == 0.0) return best;
  }
  throw ConvergenceError("Weiszfeld iteration did not converge", best, best_value);
}

}  // namespace

double norm(std::span<const double> v, Norm which) {
  double acc = 0.0;
  switch (which) {
    case Norm::L1:
      for (double x : v) acc += std::abs(x);
      return acc;
    case Norm::L2:
      for (double x : v) acc += x * x;
      return std::sqrt(acc);
    case Norm::LInf:
      for (double x : v) acc = std::max(acc, std::abs(x));
      return acc;
  }
  return acc;
}

double powered_distance(std::span<const double> a, std::span<const double> b,
                        const Metric& metric) {
  require_same_dim(a, b);
  double acc = 0.0;
  switch (metric.norm) {
    case Norm::L1:
      for (std::size_t k = 0; k < a.size(); ++k) acc += std::abs(a[k] - b[k]);
      break;
    case Norm::L2:
      for (std::size_t k = 0; k < a.size(); ++k) acc += (a[k] - b[k]) * (a[k] - b[k]);
      // Skip the root for the squared Euclidean case to keep it exact.
      if (metric.l == 2.0) return acc;
      acc = std::sqrt(acc);
      break;
    case Norm::LInf:
      for (std::size_t k = 0; k < a.size(); ++k) acc = std::max(acc, std::abs(a[k] - b[k]));
      break;
  }
  if (metric.l == 1.0) return acc;
  if (metric.l == 2.0) return acc * acc;
  return std::pow(acc, metric.l);
}

DistanceMatrix distance_matrix(const std::vector<Point>& a, const std::vector<Point>& b,
                               const Metric& metric) {
  DistanceMatrix out(a.size(), b.size(), metric);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out(i, j) = powered_distance(a[i], b[j], metric);
  }
  return out;
}

DistanceMatrix distance_matrix(const std::vector<Point>& points, const Metric& metric) {
  const std::size_t n = points.size();
  DistanceMatrix out(n, n, metric);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = powered_distance(points[i], points[j], metric);
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

Point mean_point(const std::vector<Point>& points, std::span<const double> weights) {
  check_points(points, weights);
  const double total = total_weight(weights);
  const std::size_t d = points.front().size();
  Point out(d, 0.0);
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t k = 0; k < d; ++k) out[k] += weights[i] * points[i][k];
  }
  for (double& x : out) x /= total;
  return out;
}

double centroid_objective(const std::vector<Point>& points, std::span<const double> weights,
                          std::span<const double> z, const Metric& metric) {
  double acc = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (weights[i] != 0.0) acc += weights[i] * powered_distance(points[i], z, metric);
  }
  return acc;
}

Point geometric_median(const std::vector<Point>& points, std::span<const double> weights,
                       Norm which, const CentroidOptions& options) {
  check_points(points, weights);
  total_weight(weights);
  if (!(options.tol > 0.0)) throw InvalidArgument("tolerance must be positive");
  if (points.size() == 1) return points.front();
  const std::size_t d = points.front().size();
  switch (which) {
    case Norm::L1:
      return coordinatewise_median(points, weights);
    case Norm::L2:
      if (d == 1) return coordinatewise_median(points, weights);
      return weiszfeld(points, weights, options);
    case Norm::LInf: {
      if (d == 1) return coordinatewise_median(points, weights);
      if (d == 2) return planar_inf_median(points, weights);
      const Metric metric{1.0, Norm::LInf};
      Point start = coordinatewise_median(points, weights);
      double start_value = centroid_objective(points, weights, start, metric);
      for (const auto& p : points) {
        const double v = centroid_objective(points, weights, p, metric);
        if (v < start_value) {
          start_value = v;
          start = p;
        }
      }
      return subgradient_descent(points, weights, metric, std::move(start), options);
    }
  }
  return points.front();
}

Point centroid(const std::vector<Point>& points, std::span<const double> weights,
               const Metric& metric, const CentroidOptions& options) {
  check_points(points, weights);
  if (metric.l == 2.0 && metric.norm == Norm::L2) return mean_point(points, weights);
  if (metric.l == 1.0) return geometric_median(points, weights, metric.norm, options);
  total_weight(weights);
  if (points.size() == 1) return points.front();

  Point start = mean_point(points, weights);
  double start_value = centroid_objective(points, weights, start, metric);
  for (const auto& p : points) {
    const double v = centroid_objective(points, weights, p, metric);
    if (v < start_value) {
      start_value = v;
      start = p;
    }
  }
  return subgradient_descent(points, weights, metric, std::move(start), options);
}

Ball enclosing_ball(const std::vector<Point>& points) {
  if (points.empty()) throw InvalidArgument("cannot enclose an empty point set");
  const std::vector<double> ones(points.size(), 1.0);
  Ball ball{mean_point(points, ones), 0.0};
  for (const auto& p : points) {
    double acc = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) acc += (p[k] - ball.center[k]) * (p[k] - ball.center[k]);
    ball.radius = std::max(ball.radius, std::sqrt(acc));
  }
  return ball;
}

}  // namespace scenred
