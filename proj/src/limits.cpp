#include "scenred/limits.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "scenred/geometry.hpp"
#include "scenred/heuristics.hpp"
#include "scenred/milp.hpp"

namespace scenred {
namespace {

constexpr double kPi = 3.14159265358979323846;

void check_order(double l) {
  if (l != 1.0 && l != 2.0) throw InvalidArgument("l must be 1 or 2 for the closed-form bounds");
}

std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts) {
  std::vector<std::uint32_t> words;
  for (std::uint64_t v : parts) {
    words.push_back(static_cast<std::uint32_t>(v));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  }
  std::seed_seq seq(words.begin(), words.end());
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (std::uint64_t{out[0]} << 32) | out[1];
}

// Zero-mean unit vectors in the e1-e2 plane: antipodal pairs, plus the
// equilateral triangle when the count is odd.
std::vector<Point> balanced_circle(std::size_t count, std::size_t d) {
  std::vector<Point> pts;
  if (count == 1) {
    Point p(d, 0.0);
    p[0] = 1.0;
    pts.push_back(p);
    return pts;
  }
  const bool odd = count % 2 == 1;
  const std::size_t pairs = odd ? (count - 3) / 2 : count / 2;
  std::vector<Point> half;
  for (std::size_t j = 0; j < pairs; ++j) {
    const double a = kPi * (static_cast<double>(j) + 0.5) / static_cast<double>(pairs);
    Point p(d, 0.0);
    p[0] = std::cos(a);
    p[1] = std::sin(a);
    half.push_back(p);
  }
  for (const auto& p : half) pts.push_back(p);
  for (const auto& p : half) {
    Point q = p;
    for (double& x : q) x = -x;
    pts.push_back(q);
  }
  if (odd) {
    const double h = std::sqrt(3.0) / 2.0;
    const double tri[3][2] = {{1.0, 0.0}, {-0.5, h}, {-0.5, -h}};
    for (const auto& t : tri) {
      Point p(d, 0.0);
      p[0] = t[0];
      p[1] = t[1];
      pts.push_back(p);
    }
  }
  return pts;
}

}  // namespace

BoundReport limit_bounds(std::size_t n, std::size_t m, double l) {
  check_order(l);
  if (n < 1 || m < 1 || m > n) {
    throw InvalidArgument("bounds need 1 <= m <= n (got n = " + std::to_string(n) +
                          ", m = " + std::to_string(m) + ")");
  }
  BoundReport r;
  r.n = n;
  r.m = m;
  r.l = l;
  const double dn = static_cast<double>(n);
  const double k = static_cast<double>(n - m);
  r.reduction_factor = static_cast<double>(m) / dn;
  if (m == n) return r;  // zero distances, ratios 1

  r.c_upper = std::sqrt(k / (dn - 1.0));
  r.c1_lower = std::sqrt(k * (k + 1.0) / (dn * (dn - 1.0)));
  if (l == 2.0) {
    r.kappa_upper = std::sqrt(2.0);
    r.kappa_lower = m == n - 1 ? std::sqrt(2.0) : 1.0;
  } else {
    if (m == n - 1) {
      r.kappa_upper = 1.0;
    } else if (m == 1) {
      r.kappa_upper = 2.0 * (1.0 - 1.0 / dn);
    } else {
      r.kappa_upper = 2.0;
    }
    r.kappa_lower = 1.0;
  }
  return r;
}

std::size_t a_priori_m(const Distribution& p, double target, double l) {
  check_order(l);
  require_valid(p, true);
  if (!(target >= 0.0)) throw InvalidArgument("target must be nonnegative");
  const std::size_t n = p.size();
  const double r = enclosing_ball(p.points()).radius;
  for (std::size_t m = 1; m < n; ++m) {
    const double bound =
        r * std::sqrt(static_cast<double>(n - m) / static_cast<double>(n - 1));
    if (bound <= target) return m;
  }
  return n;
}

Distribution gen_worst_case(std::size_t n, std::size_t d) {
  if (n < 2) throw InvalidArgument("gen_worst_case needs n >= 2");
  if (d + 1 < n) {
    throw InvalidArgument("gen_worst_case needs d >= n - 1 (n = " + std::to_string(n) +
                          ", d = " + std::to_string(d) + ")");
  }
  const double dn = static_cast<double>(n);
  const double x = std::sqrt((dn - 1.0) / dn);
  const double y = -1.0 / std::sqrt(dn * (dn - 1.0));
  std::vector<Point> full(n, Point(n, y));
  for (std::size_t i = 0; i < n; ++i) full[i][i] = x;

  std::vector<Point> pts;
  if (d >= n) {
    for (auto& p : full) {
      p.resize(d, 0.0);
      pts.push_back(std::move(p));
    }
    return Distribution::uniform(std::move(pts));
  }

  // orthonormal basis of e's complement from e_k - e_n, fixed order
  std::vector<Point> basis;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    Point v(n, 0.0);
    v[k] = 1.0;
    v[n - 1] = -1.0;
    for (const auto& b : basis) {
      double dot = 0.0;
      for (std::size_t t = 0; t < n; ++t) dot += v[t] * b[t];
      for (std::size_t t = 0; t < n; ++t) v[t] -= dot * b[t];
    }
    const double len = norm(v, Norm::L2);
    for (double& t : v) t /= len;
    basis.push_back(std::move(v));
  }
  for (const auto& p : full) {
    Point q(d, 0.0);
    for (std::size_t k = 0; k < d; ++k) {
      for (std::size_t t = 0; t < n; ++t) q[k] += p[t] * basis[k][t];
    }
    pts.push_back(std::move(q));
  }
  return Distribution::uniform(std::move(pts));
}

Distribution gen_kappa_tight(double l, std::size_t n, std::size_t m, std::optional<std::size_t> d,
                             std::optional<double> big_m) {
  check_order(l);
  if (m < 1 || m > n) throw InvalidArgument("gen_kappa_tight needs 1 <= m <= n");
  std::vector<Point> pts;
  if (l == 2.0) {
    const std::size_t core = n - m + 1;
    const std::size_t dim = d.value_or(2);
    const double bound = 2.0 * std::sqrt(static_cast<double>(core));
    const double sep = big_m.value_or(3.0 * std::sqrt(static_cast<double>(core)));
    if (dim < 2) throw InvalidArgument("gen_kappa_tight (l = 2) needs d >= 2");
    if (!(sep > bound)) {
      throw InvalidArgument("gen_kappa_tight (l = 2) needs M > 2 sqrt(n - m + 1) = " +
                            format_number(bound));
    }
    pts = balanced_circle(core, dim);
    for (std::size_t i = 1; i < m; ++i) {
      Point p(dim, 0.0);
      p[0] = 1.0 + static_cast<double>(i) * sep;
      pts.push_back(std::move(p));
    }
    return Distribution::uniform(std::move(pts));
  }

  if (n % (2 * m) != 0) {
    throw InvalidArgument("gen_kappa_tight (l = 1) needs n divisible by 2m");
  }
  const std::size_t k = n / (2 * m);
  const std::size_t dim = d.value_or(k);
  const double bound = 2.0 * static_cast<double>(n) + 2.0;
  const double sep = big_m.value_or(bound + 1.0);
  if (dim < k) throw InvalidArgument("gen_kappa_tight (l = 1) needs d >= n/(2m)");
  if (!(sep > bound)) {
    throw InvalidArgument("gen_kappa_tight (l = 1) needs M > 2n + 2 = " + format_number(bound));
  }
  for (std::size_t j = 0; j < m; ++j) {
    const double shift = static_cast<double>(j) * sep;
    for (double sign : {1.0, -1.0}) {
      for (std::size_t i = 0; i < k; ++i) {
        Point p(dim, 0.0);
        p[i] = sign;
        p[0] += shift;
        pts.push_back(std::move(p));
      }
    }
  }
  return Distribution::uniform(std::move(pts));
}

AdversarialFamily parse_family(const std::string& text) {
  if (text == "dupacova" || text == "dupacova-adv") return AdversarialFamily::Dupacova;
  if (text == "kmeans" || text == "kmeans-adv") return AdversarialFamily::KMeans;
  throw InvalidArgument("unknown adversarial family '" + text + "'");
}

Distribution gen_adversarial(AdversarialFamily family, std::size_t z, double eps, std::size_t d) {
  if (z < 1) throw InvalidArgument("gen_adversarial needs z >= 1");
  if (!(eps > 0.0 && eps < 0.25)) throw InvalidArgument("gen_adversarial needs 0 < eps < 1/4");
  const bool dupacova = family == AdversarialFamily::Dupacova;
  if (dupacova && d < 2) throw InvalidArgument("the dupacova family needs d >= 2");
  if (d < 1) throw InvalidArgument("gen_adversarial needs d >= 1");

  const double step = eps / (4.0 * static_cast<double>(z));
  std::vector<Point> pts;
  auto cluster = [&](const Point& center, std::size_t count) {
    const double mid = (static_cast<double>(count) - 1.0) / 2.0;
    for (std::size_t k = 0; k < count; ++k) {
      Point p = center;
      p[0] += (static_cast<double>(k) - mid) * step;
      pts.push_back(std::move(p));
    }
  };
  auto axis = [&](std::size_t k, double sign) {
    Point p(d, 0.0);
    p[k] = sign;
    return p;
  };

  if (dupacova) {
    cluster(axis(0, 1.0), z);
    cluster(axis(0, -1.0), z);
    cluster(axis(1, 1.0), z);
    cluster(axis(1, -1.0), z);
    pts.emplace_back(d, 0.0);
  } else {
    cluster(axis(0, -1.0), 2 * z);
    cluster(Point(d, 0.0), z);
    pts.push_back(axis(0, 1.0));
  }
  return Distribution::uniform(std::move(pts));
}

std::string ExperimentTable::to_csv() const {
  std::ostringstream os;
  os << "d,m,mean_ratio,std_ratio,trials\n";
  for (const auto& r : rows) {
    os << r.d << ',' << r.m << ',' << format_number(r.mean_ratio) << ','
       << format_number(r.std_ratio) << ',' << r.trials << '\n';
  }
  return os.str();
}

ExperimentTable normal_experiment(std::size_t n, const std::vector<std::size_t>& m_list,
                                  const std::vector<std::size_t>& d_list, double c,
                                  std::size_t trials, std::uint64_t seed,
                                  const NormalExperimentOptions& options) {
  if (trials < 1) throw InvalidArgument("trials must be at least 1");
  if (n < 2) throw InvalidArgument("the experiment needs n >= 2");
  if (options.restarts < 1) throw InvalidArgument("restarts must be at least 1");
  if (m_list.empty() || d_list.empty()) throw InvalidArgument("empty m or d list");
  for (std::size_t m : m_list) {
    if (m < 1 || m > n) throw InvalidArgument("every m must satisfy 1 <= m <= n");
  }
  for (std::size_t d : d_list) {
    if (d < 1) throw InvalidArgument("every d must be positive");
  }
  if (!(c > -1.0)) throw InvalidArgument("c must exceed -1");

  ExperimentTable table;
  table.n = n;
  table.c = c;
  table.seed = seed;
  table.restarts = options.restarts;
  const Metric metric(2.0, Norm::L2);

  for (std::size_t d : d_list) {
    const double sigma = 1.0 / (std::sqrt(static_cast<double>(d) - 1.0) + c);
    std::vector<std::vector<double>> ratios(m_list.size());
    for (std::size_t t = 0; t < trials; ++t) {
      std::mt19937_64 rng(derive_seed({seed, d, t}));
      std::normal_distribution<double> normal(0.0, sigma);
      std::vector<Point> pts(n, Point(d));
      for (auto& p : pts) {
        for (double& x : p) x = normal(rng);
      }
      const Distribution sample = Distribution::uniform(std::move(pts));
      for (std::size_t k = 0; k < m_list.size(); ++k) {
        const std::size_t m = m_list[k];
        const double bound = limit_bounds(n, m, 2.0).c_upper;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t r = 0; r < options.restarts; ++r) {
          const std::uint64_t s = derive_seed({seed, d, t, m, r});
          best = std::min(best, k_means_generalized(sample, m, metric, s).value);
        }
        ratios[k].push_back(bound > 0.0 ? best / bound : 0.0);
      }
    }
    for (std::size_t k = 0; k < m_list.size(); ++k) {
      const auto& v = ratios[k];
      double mean = 0.0;
      for (double x : v) mean += x;
      mean /= static_cast<double>(v.size());
      double var = 0.0;
      for (double x : v) var += (x - mean) * (x - mean);
      var = v.size() > 1 ? var / static_cast<double>(v.size() - 1) : 0.0;
      table.rows.push_back({d, m_list[k], mean, std::sqrt(var), v.size()});
    }
  }
  return table;
}

}  // namespace scenred
