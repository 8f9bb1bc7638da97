#include "scenred/quantize.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "scenred/exact.hpp"
#include "scenred/heuristics.hpp"
#include "scenred/transport.hpp"

namespace scenred {
namespace {

Point to_point(const Rgb& c) { return {double(c[0]), double(c[1]), double(c[2])}; }

Rgb to_rgb(const Point& p) {
  Rgb c{};
  for (std::size_t k = 0; k < 3; ++k) {
    c[k] = static_cast<std::uint8_t>(std::clamp(std::lround(p[k]), 0L, 255L));
  }
  return c;
}

// Reads one header token, skipping whitespace and # comments.
std::string header_token(const std::string& bytes, std::size_t& pos) {
  while (pos < bytes.size()) {
    const char ch = bytes[pos];
    if (ch == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    } else if (std::isspace(static_cast<unsigned char>(ch))) {
      ++pos;
    } else {
      break;
    }
  }
  const std::size_t start = pos;
  while (pos < bytes.size() && !std::isspace(static_cast<unsigned char>(bytes[pos])) &&
         bytes[pos] != '#') {
    ++pos;
  }
  if (start == pos) throw InvalidArgument("PPM: truncated header");
  return bytes.substr(start, pos - start);
}

std::size_t header_number(const std::string& bytes, std::size_t& pos, const char* what) {
  const std::string tok = header_token(bytes, pos);
  if (tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 9) {
    throw InvalidArgument(std::string("PPM: bad ") + what + " '" + tok + "'");
  }
  return static_cast<std::size_t>(std::stoul(tok));
}

struct Box {
  std::vector<std::size_t> members;
  int widest = 0;
  double range = 0.0;
};

void measure(Box& box, const Distribution& hist) {
  box.range = -1.0;
  for (int k = 0; k < 3; ++k) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i : box.members) {
      lo = std::min(lo, hist.point(i)[k]);
      hi = std::max(hi, hist.point(i)[k]);
    }
    if (hi - lo > box.range) {
      box.range = hi - lo;
      box.widest = k;
    }
  }
}

double elapsed(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

}  // namespace

ImageRaster::ImageRaster(std::size_t w, std::size_t h, std::vector<Rgb> px)
    : width(w), height(h), pixels(std::move(px)) {
  if (w == 0 || h == 0) throw InvalidArgument("image dimensions must be positive");
  if (pixels.size() != w * h) {
    throw InvalidArgument("image has " + std::to_string(pixels.size()) + " pixels, expected " +
                          std::to_string(w * h));
  }
}

ImageRaster parse_ppm(const std::string& bytes) {
  std::size_t pos = 0;
  if (header_token(bytes, pos) != "P6") throw InvalidArgument("PPM: only binary P6 is supported");
  const std::size_t w = header_number(bytes, pos, "width");
  const std::size_t h = header_number(bytes, pos, "height");
  const std::size_t maxval = header_number(bytes, pos, "maxval");
  if (maxval != 255) throw InvalidArgument("PPM: only maxval 255 is supported");
  if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
    throw InvalidArgument("PPM: missing separator before pixel data");
  }
  ++pos;
  if (bytes.size() - pos < 3 * w * h) throw InvalidArgument("PPM: truncated pixel data");
  std::vector<Rgb> px(w * h);
  for (std::size_t i = 0; i < w * h; ++i) {
    for (std::size_t k = 0; k < 3; ++k) {
      px[i][k] = static_cast<std::uint8_t>(bytes[pos + 3 * i + k]);
    }
  }
  return {w, h, std::move(px)};
}

std::string encode_ppm(const ImageRaster& image) {
  std::string out = "P6\n" + std::to_string(image.width) + " " + std::to_string(image.height) +
                    "\n255\n";
  out.reserve(out.size() + 3 * image.pixels.size());
  for (const auto& c : image.pixels) {
    for (std::uint8_t v : c) out.push_back(static_cast<char>(v));
  }
  return out;
}

ImageRaster read_ppm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open image '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_ppm(ss.str());
}

void write_ppm(const std::string& path, const ImageRaster& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write image '" + path + "'");
  out << encode_ppm(image);
}

Distribution image_histogram(const ImageRaster& image) {
  if (image.pixels.empty()) throw InvalidArgument("empty image");
  std::map<Rgb, std::size_t> counts;
  for (const auto& c : image.pixels) ++counts[c];
  std::vector<Point> pts;
  std::vector<double> w;
  const double total = static_cast<double>(image.pixels.size());
  for (const auto& [c, k] : counts) {
    pts.push_back(to_point(c));
    w.push_back(static_cast<double>(k) / total);
  }
  return {std::move(pts), std::move(w)};
}

Distribution pre_reduce(const Distribution& hist, std::size_t n_target) {
  if (n_target < 1) throw InvalidArgument("pre-reduction target must be at least 1");
  if (hist.size() <= n_target) return hist;

  std::vector<Box> boxes(1);
  boxes[0].members.resize(hist.size());
  std::iota(boxes[0].members.begin(), boxes[0].members.end(), 0);
  measure(boxes[0], hist);

  while (boxes.size() < n_target) {
    std::size_t pick = boxes.size();
    for (std::size_t b = 0; b < boxes.size(); ++b) {
      if (boxes[b].range > 0.0 && (pick == boxes.size() || boxes[b].range > boxes[pick].range)) {
        pick = b;
      }
    }
    if (pick == boxes.size()) break;  // nothing left to split

    Box& box = boxes[pick];
    const int k = box.widest;
    std::stable_sort(box.members.begin(), box.members.end(), [&](std::size_t a, std::size_t b) {
      return hist.point(a)[k] < hist.point(b)[k];
    });
    double mass = 0.0;
    for (std::size_t i : box.members) mass += hist.weight(i);
    std::size_t cut = 0;
    double acc = 0.0;
    while (cut < box.members.size() && acc < mass / 2.0) acc += hist.weight(box.members[cut++]);
    auto value = [&](std::size_t t) { return hist.point(box.members[t])[k]; };
    // move the cut onto a boundary between distinct channel values
    while (cut < box.members.size() && cut > 0 && value(cut) == value(cut - 1)) ++cut;
    if (cut == box.members.size()) {
      cut = box.members.size() - 1;
      while (cut > 0 && value(cut) == value(cut - 1)) --cut;
    }
    if (cut == 0) cut = 1;

    Box upper;
    upper.members.assign(box.members.begin() + static_cast<std::ptrdiff_t>(cut), box.members.end());
    box.members.resize(cut);
    measure(box, hist);
    measure(upper, hist);
    boxes.push_back(std::move(upper));
  }

  std::map<Rgb, double> merged;
  for (const auto& box : boxes) {
    double mass = 0.0;
    Point mean(3, 0.0);
    for (std::size_t i : box.members) {
      mass += hist.weight(i);
      for (std::size_t k = 0; k < 3; ++k) mean[k] += hist.weight(i) * hist.point(i)[k];
    }
    if (mass > 0.0) {
      for (double& x : mean) x /= mass;
    } else {
      mean = hist.point(box.members.front());
    }
    merged[to_rgb(mean)] += mass;
  }
  std::vector<Point> pts;
  std::vector<double> w;
  for (const auto& [c, mass] : merged) {
    pts.push_back(to_point(c));
    w.push_back(mass);
  }
  return {std::move(pts), std::move(w)};
}

std::string to_string(PaletteAlgorithm a) {
  switch (a) {
    case PaletteAlgorithm::Dpcv:
      return "dpcv";
    case PaletteAlgorithm::Loc1:
      return "loc1";
    case PaletteAlgorithm::Loc2:
      return "loc2";
    case PaletteAlgorithm::Exact:
      return "exact";
  }
  return "dpcv";
}

PaletteAlgorithm parse_palette_algorithm(const std::string& text) {
  if (text == "dpcv") return PaletteAlgorithm::Dpcv;
  if (text == "loc1") return PaletteAlgorithm::Loc1;
  if (text == "loc2") return PaletteAlgorithm::Loc2;
  if (text == "exact") return PaletteAlgorithm::Exact;
  throw InvalidArgument("unknown palette algorithm '" + text + "'");
}

const GapEntry* GapReport::find(const std::string& algorithm) const {
  for (const auto& e : entries) {
    if (e.algorithm == algorithm) return &e;
  }
  return nullptr;
}

std::size_t nearest_color(const Rgb& c, const std::vector<Rgb>& palette) {
  if (palette.empty()) throw InvalidArgument("empty palette");
  std::size_t best = 0;
  int best_d = std::numeric_limits<int>::max();
  for (std::size_t j = 0; j < palette.size(); ++j) {
    int d = 0;
    for (std::size_t k = 0; k < 3; ++k) d += std::abs(int(c[k]) - int(palette[j][k]));
    if (d < best_d) {
      best_d = d;
      best = j;
    }
  }
  return best;
}

ImageRaster remap_image(const ImageRaster& image, const std::vector<Rgb>& palette) {
  std::map<Rgb, Rgb> cache;
  std::vector<Rgb> px;
  px.reserve(image.pixels.size());
  for (const auto& c : image.pixels) {
    auto it = cache.find(c);
    if (it == cache.end()) it = cache.emplace(c, palette[nearest_color(c, palette)]).first;
    px.push_back(it->second);
  }
  return {image.width, image.height, std::move(px)};
}

QuantizeResult quantize_image(const ImageRaster& image, std::size_t m, PaletteAlgorithm algorithm,
                              const QuantizeOptions& options) {
  if (m < 1) throw InvalidArgument("the number of colors must be at least 1");
  const Distribution hist = image_histogram(image);
  const Distribution pre = pre_reduce(hist, options.n_pre);
  const Metric metric(1.0, Norm::L1);

  GapReport report;
  report.n_pre = options.n_pre;
  if (m > pre.size()) {
    m = pre.size();
    report.m_clamped = true;
  }
  report.m = m;

  const bool exact_fits = binomial(pre.size(), m) <= options.exact_budget;
  const bool run_exact = algorithm == PaletteAlgorithm::Exact ||
                         options.reference == ReferenceMode::Exact ||
                         (options.reference == ReferenceMode::Auto && exact_fits);

  std::map<std::string, ReductionResult> results;
  auto timed = [&](const std::string& label, auto&& fn) {
    const auto start = std::chrono::steady_clock::now();
    ReductionResult r = fn();
    GapEntry e;
    e.algorithm = label;
    e.value = r.value;
    e.seconds = elapsed(start);
    report.entries.push_back(e);
    results.emplace(label, std::move(r));
  };

  timed("dpcv", [&] { return dupacova_greedy(pre, m, metric); });
  timed("loc1", [&] { return local_search(pre, m, metric, results.at("dpcv").selected); });
  timed("loc2", [&] { return local_search(pre, m, metric); });
  if (run_exact) {
    DiscreteExactOptions eo;
    eo.budget = options.exact_budget;
    timed("exact", [&] { return discrete_exact(pre, m, metric, eo); });
  }

  if (run_exact) {
    report.reference = "exact";
    report.reference_value = results.at("exact").value;
  } else {
    report.reference = "best_known";
    report.reference_value = std::numeric_limits<double>::infinity();
    for (const auto& e : report.entries) {
      report.reference_value = std::min(report.reference_value, e.value);
    }
  }

  QuantizeResult out;
  for (auto& e : report.entries) {
    if (report.reference_value > 0.0) {
      e.gap = e.value / report.reference_value - 1.0;
    } else {
      e.gap = e.value == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    std::vector<Point> support;
    for (const auto& z : results.at(e.algorithm).support) support.push_back(to_point(to_rgb(z)));
    e.image_value = dist_to_support(hist, support, metric).value;
  }

  for (const auto& z : results.at(to_string(algorithm)).support) out.palette.push_back(to_rgb(z));
  out.remapped = remap_image(image, out.palette);
  out.report = std::move(report);
  return out;
}

}  // namespace scenred
