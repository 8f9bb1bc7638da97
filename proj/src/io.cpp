#include "scenred/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "scenred/milp.hpp"

namespace scenred {
namespace {

using nlohmann::json;

bool ends_with(const std::string& s, const std::string& tail) {
  return s.size() >= tail.size() && s.compare(s.size() - tail.size(), tail.size(), tail) == 0;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream ss(line);
  while (std::getline(ss, cur, sep)) out.push_back(cur);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

bool parse_double(const std::string& text, double& out) {
  const std::string t = trim(text);
  if (t.empty()) return false;
  char* end = nullptr;
  out = std::strtod(t.c_str(), &end);
  return end == t.c_str() + t.size();
}

json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json points_json(const std::vector<Point>& pts) {
  json arr = json::array();
  for (const auto& p : pts) arr.push_back(p);
  return arr;
}

}  // namespace

Distribution parse_distribution_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("distribution JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("points")) {
    throw InvalidArgument("distribution JSON needs an object with a \"points\" array");
  }
  try {
    auto pts = doc.at("points").get<std::vector<Point>>();
    if (doc.contains("dim")) {
      const auto dim = doc.at("dim").get<std::size_t>();
      for (const auto& p : pts) {
        if (p.size() != dim) {
          throw InvalidArgument("distribution JSON: a point has " + std::to_string(p.size()) +
                                " coordinates but dim is " + std::to_string(dim));
        }
      }
    }
    if (doc.contains("weights") && !doc.at("weights").is_null()) {
      return {std::move(pts), doc.at("weights").get<std::vector<double>>()};
    }
    return Distribution::uniform(std::move(pts));
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("distribution JSON: ") + e.what());
  }
}

Distribution parse_distribution_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<double>> rows;
  bool header_seen = false;
  bool has_weight = true;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto fields = split(line, ',');
    std::vector<double> row;
    bool numeric = true;
    for (const auto& f : fields) {
      double v = 0.0;
      if (!parse_double(f, v)) {
        numeric = false;
        break;
      }
      row.push_back(v);
    }
    if (!numeric) {
      if (header_seen || !rows.empty()) {
        throw InvalidArgument("distribution CSV: non-numeric field on line " +
                              std::to_string(line_no));
      }
      header_seen = true;
      has_weight = trim(fields.back()) == "weight";
      continue;
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InvalidArgument("distribution CSV: no rows");
  std::vector<Point> pts;
  std::vector<double> w;
  for (auto& r : rows) {
    if (has_weight) {
      if (r.size() < 2) throw InvalidArgument("distribution CSV: rows need x1..xd,weight");
      w.push_back(r.back());
      r.pop_back();
    }
    pts.push_back(std::move(r));
  }
  if (!has_weight) return Distribution::uniform(std::move(pts));
  return {std::move(pts), std::move(w)};
}

std::string distribution_to_json(const Distribution& dist) {
  json doc;
  doc["dim"] = dist.dim();
  doc["points"] = points_json(dist.points());
  doc["weights"] = dist.weights();
  return doc.dump() + "\n";
}

std::string distribution_to_csv(const Distribution& dist) {
  std::ostringstream os;
  for (std::size_t k = 0; k < dist.dim(); ++k) os << 'x' << k + 1 << ',';
  os << "weight\n";
  for (std::size_t i = 0; i < dist.size(); ++i) {
    for (double x : dist.point(i)) os << format_number(x) << ',';
    os << format_number(dist.weight(i)) << '\n';
  }
  return os.str();
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << text;
  if (!out) throw Error("write to '" + path + "' failed");
}

Distribution read_distribution(const std::string& path) {
  const std::string text = read_text(path);
  return ends_with(path, ".csv") ? parse_distribution_csv(text) : parse_distribution_json(text);
}

void write_distribution(const std::string& path, const Distribution& dist) {
  write_text(path, ends_with(path, ".csv") ? distribution_to_csv(dist)
                                           : distribution_to_json(dist));
}

std::string result_to_json(const ReductionResult& result, const ResultMetadata& meta) {
  json doc;
  doc["algorithm"] = result.algorithm;
  doc["m"] = meta.m;
  doc["l"] = meta.metric.l;
  doc["norm"] = to_string(meta.metric.norm);
  doc["seed"] = meta.seed;
  doc["epsilon"] = meta.epsilon;
  doc["value"] = result.value;
  doc["support"] = points_json(result.support);
  doc["weights"] = result.weights;
  doc["partition"] = result.partition.cells();
  if (!result.selected.empty()) doc["selected"] = result.selected;
  doc["iterations"] = result.iterations;
  doc["evaluations"] = result.evaluations;
  return doc.dump(1) + "\n";
}

std::string bounds_to_json(const BoundReport& r) {
  json doc;
  doc["n"] = r.n;
  doc["m"] = r.m;
  doc["l"] = r.l;
  doc["reduction_factor"] = r.reduction_factor;
  doc["c_upper"] = r.c_upper;
  doc["c1_lower"] = r.c1_lower;
  doc["kappa_upper"] = r.kappa_upper;
  doc["kappa_lower"] = r.kappa_lower;
  return doc.dump(1) + "\n";
}

std::string gap_report_to_json(const GapReport& report) {
  json doc;
  doc["reference"] = report.reference;
  doc["reference_value"] = finite_or_null(report.reference_value);
  doc["m"] = report.m;
  doc["n_pre"] = report.n_pre;
  doc["m_clamped"] = report.m_clamped;
  json entries = json::array();
  for (const auto& e : report.entries) {
    json j;
    j["algorithm"] = e.algorithm;
    j["value"] = e.value;
    j["image_value"] = e.image_value;
    j["gap"] = finite_or_null(e.gap);
    j["seconds"] = e.seconds;
    j["reference"] = report.reference;
    entries.push_back(std::move(j));
  }
  doc["entries"] = std::move(entries);
  return doc.dump(1) + "\n";
}

std::string plan_to_csv(const TransportPlan& plan) {
  std::ostringstream os;
  os << "i,j,mass\n";
  for (std::size_t i = 0; i < plan.rows; ++i) {
    for (std::size_t j = 0; j < plan.cols; ++j) {
      if (plan(i, j) > 0.0) os << i << ',' << j << ',' << format_number(plan(i, j)) << '\n';
    }
  }
  return os.str();
}

}  // namespace scenred
