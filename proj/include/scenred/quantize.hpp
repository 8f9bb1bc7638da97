#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "scenred/core.hpp"

namespace scenred {

using Rgb = std::array<std::uint8_t, 3>;

struct ImageRaster {
  std::size_t width = 0;
  std::size_t height = 0;
  std::vector<Rgb> pixels;  // row-major

  ImageRaster() = default;
  ImageRaster(std::size_t w, std::size_t h, std::vector<Rgb> px);
};

// Binary PPM (P6, maxval 255). Comments in the header are skipped.
ImageRaster parse_ppm(const std::string& bytes);
std::string encode_ppm(const ImageRaster& image);
ImageRaster read_ppm(const std::string& path);
void write_ppm(const std::string& path, const ImageRaster& image);

// Distinct colors as atoms in R^3 (ascending RGB order), weight = pixel share.
Distribution image_histogram(const ImageRaster& image);

/// Median cut down to at most n_target colors. The box with the widest
/// channel range is split at the weighted median of that channel; each box
/// becomes its weighted mean rounded to integer channels, and boxes that
/// round to the same color are merged. Identity when the histogram already
/// has at most n_target atoms.
Distribution pre_reduce(const Distribution& hist, std::size_t n_target);

enum class PaletteAlgorithm { Dpcv, Loc1, Loc2, Exact };

std::string to_string(PaletteAlgorithm a);
PaletteAlgorithm parse_palette_algorithm(const std::string& text);

enum class ReferenceMode { Auto, Exact, BestKnown };

struct QuantizeOptions {
  std::size_t n_pre = 64;
  ReferenceMode reference = ReferenceMode::Auto;  // Auto: exact when within budget
  double exact_budget = 1e7;
};

struct GapEntry {
  std::string algorithm;
  double value = 0.0;        // distance from the pre-reduced histogram
  double image_value = 0.0;  // distance from the full histogram to the palette
  double gap = 0.0;          // value / reference - 1
  double seconds = 0.0;
};

struct GapReport {
  std::string reference;  // "exact" or "best_known"
  double reference_value = 0.0;
  std::size_t m = 0;
  std::size_t n_pre = 0;
  bool m_clamped = false;
  std::vector<GapEntry> entries;

  const GapEntry* find(const std::string& algorithm) const;
};

struct QuantizeResult {
  std::vector<Rgb> palette;
  ImageRaster remapped;
  GapReport report;
};

// Index of the nearest palette color under the 1-norm, lowest index on ties.
std::size_t nearest_color(const Rgb& c, const std::vector<Rgb>& palette);

ImageRaster remap_image(const ImageRaster& image, const std::vector<Rgb>& palette);

/// Palette optimization with type-1 Wasserstein distance under the 1-norm.
/// dpcv, loc1 (local search from dpcv) and loc2 (local search from the m most
/// frequent colors) always run for the report; exact runs when requested or
/// when the reference mode allows it. The palette comes from `algorithm`.
QuantizeResult quantize_image(const ImageRaster& image, std::size_t m, PaletteAlgorithm algorithm,
                              const QuantizeOptions& options = {});

}  // namespace scenred
