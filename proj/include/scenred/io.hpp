#pragma once

#include <string>

#include "scenred/core.hpp"
#include "scenred/limits.hpp"
#include "scenred/quantize.hpp"
#include "scenred/transport.hpp"

namespace scenred {

// Distribution files: JSON {"dim", "points", "weights"} (weights optional,
// uniform by default) or CSV rows x1,...,xd,weight. Files ending in .csv use
// the CSV form, anything else JSON.
Distribution parse_distribution_json(const std::string& text);
Distribution parse_distribution_csv(const std::string& text);
std::string distribution_to_json(const Distribution& dist);
std::string distribution_to_csv(const Distribution& dist);

Distribution read_distribution(const std::string& path);
void write_distribution(const std::string& path, const Distribution& dist);

struct ResultMetadata {
  std::size_t m = 0;
  Metric metric;
  std::uint64_t seed = 0;
  double epsilon = 0.0;
};

std::string result_to_json(const ReductionResult& result, const ResultMetadata& meta);
std::string bounds_to_json(const BoundReport& report);
std::string gap_report_to_json(const GapReport& report);
// Positive plan entries as i,j,mass (0-based indices).
std::string plan_to_csv(const TransportPlan& plan);

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace scenred
