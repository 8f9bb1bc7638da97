#include "scenred/milp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace scenred {

std::string format_number(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

double lookup(const std::map<std::string, double>& values, const std::string& var) {
  const auto it = values.find(var);
  return it == values.end() ? 0.0 : it->second;
}

double lhs(const std::vector<LinearTerm>& terms, const std::map<std::string, double>& values) {
  double acc = 0.0;
  for (const auto& t : terms) acc += t.coef * lookup(values, t.var);
  return acc;
}

// Renders a linear expression, wrapping every few terms so no line grows long.
void write_terms(std::ostringstream& os, const std::vector<LinearTerm>& terms) {
  constexpr std::size_t kTermsPerLine = 8;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const auto& t = terms[k];
    if (k > 0 && k % kTermsPerLine == 0) os << "\n  ";
    const double mag = std::abs(t.coef);
    if (k == 0) {
      if (t.coef < 0) os << "- ";
    } else {
      os << (t.coef < 0 ? " - " : " + ");
    }
    if (mag != 1.0) os << format_number(mag) << ' ';
    os << t.var;
  }
}

const char* sense_text(Sense s) {
  switch (s) {
    case Sense::LessEqual:
      return "<=";
    case Sense::GreaterEqual:
      return ">=";
    case Sense::Equal:
      return "=";
  }
  return "=";
}

}  // namespace

double MilpModel::evaluate(const std::map<std::string, double>& values) const {
  return lhs(objective, values);
}

double MilpModel::max_violation(const std::map<std::string, double>& values) const {
  double worst = 0.0;
  for (const auto& c : constraints) {
    const double v = lhs(c.terms, values) - c.rhs;
    switch (c.sense) {
      case Sense::LessEqual:
        worst = std::max(worst, v);
        break;
      case Sense::GreaterEqual:
        worst = std::max(worst, -v);
        break;
      case Sense::Equal:
        worst = std::max(worst, std::abs(v));
        break;
    }
  }
  std::set<std::string> bounded;
  for (const auto& b : bounds) {
    bounded.insert(b.var);
    const double x = lookup(values, b.var);
    if (b.lower) worst = std::max(worst, *b.lower - x);
    if (b.upper) worst = std::max(worst, x - *b.upper);
  }
  for (const auto& var : variables) {
    if (!bounded.count(var)) worst = std::max(worst, -lookup(values, var));
  }
  for (const auto& var : binaries) {
    const double x = lookup(values, var);
    worst = std::max(worst, std::min(std::abs(x), std::abs(x - 1.0)));
  }
  return worst;
}

std::string to_lp_format(const MilpModel& model) {
  std::ostringstream os;
  for (const auto& c : model.comments) os << "\\ " << c << '\n';
  os << "Minimize\n obj: ";
  if (model.objective.empty() && !model.variables.empty()) {
    os << "0 " << model.variables.front();
  } else {
    write_terms(os, model.objective);
  }
  os << "\nSubject To\n";
  for (const auto& c : model.constraints) {
    os << ' ' << c.name << ": ";
    write_terms(os, c.terms);
    os << ' ' << sense_text(c.sense) << ' ' << format_number(c.rhs) << '\n';
  }
  os << "Bounds\n";
  for (const auto& b : model.bounds) {
    os << ' ';
    if (b.lower && b.upper && *b.lower == *b.upper) {
      os << b.var << " = " << format_number(*b.lower);
    } else if (b.lower && b.upper) {
      os << format_number(*b.lower) << " <= " << b.var << " <= " << format_number(*b.upper);
    } else if (b.lower) {
      os << b.var << " >= " << format_number(*b.lower);
    } else if (b.upper) {
      os << "-inf <= " << b.var << " <= " << format_number(*b.upper);
    } else {
      os << b.var << " free";
    }
    os << '\n';
  }
  if (!model.binaries.empty()) {
    os << "Binaries\n";
    constexpr std::size_t kPerLine = 10;
    for (std::size_t k = 0; k < model.binaries.size(); ++k) {
      os << (k % kPerLine == 0 ? " " : " ") << model.binaries[k];
      if (k % kPerLine == kPerLine - 1 || k + 1 == model.binaries.size()) os << '\n';
    }
  }
  os << "End\n";
  return os.str();
}

}  // namespace scenred
