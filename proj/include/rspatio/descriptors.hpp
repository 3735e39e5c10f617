#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rspatio/types.hpp"

namespace rspatio {

/// Uniform per-channel quantizer. A value v in [0, 255] falls into level
/// floor(v * levels / 256); channel levels are combined most-significant first
/// (R, then G, then B), giving levels^channels bins.
class Quantizer {
 public:
  explicit Quantizer(int levels_per_channel = 8, int channel_count = 3);

  static Quantizer rgb(int levels = 8) { return Quantizer(levels, 3); }
  static Quantizer depth(int levels = 32) { return Quantizer(levels, 1); }

  int levels() const { return levels_; }
  int channels() const { return channels_; }
  int bin_count() const { return bins_; }

  int level(double value) const {
    const int l = static_cast<int>(value * levels_ / 256.0);
    return l < 0 ? 0 : (l >= levels_ ? levels_ - 1 : l);
  }
  int bin(Rgb c) const { return (level(c.r) * levels_ + level(c.g)) * levels_ + level(c.b); }
  int bin(double v) const { return level(v); }

  /// Representative value of a single-channel bin.
  double bin_center(int b) const { return (b + 0.5) * 256.0 / levels_; }

  bool operator==(const Quantizer&) const = default;

 private:
  int levels_;
  int channels_;
  int bins_;
};

/// rows x cols partition of a region. Cell extents are floor(w/cols) and
/// floor(h/rows); the remainder is absorbed by the last column and row.
struct SubregionGrid {
  int rows = 3;
  int cols = 3;

  int cells() const { return rows * cols; }
  /// Cell index of local pixel (px, py) inside a w x h region.
  int cell_of(int px, int py, int w, int h) const {
    const int cw = w / cols;
    const int ch = h / rows;
    const int c = std::min(px / cw, cols - 1);
    const int r = std::min(py / ch, rows - 1);
    return r * cols + c;
  }
  bool operator==(const SubregionGrid&) const = default;
};

/// Symmetric 2x2 covariance.
struct Cov2 {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;
  double det() const { return xx * yy - xy * xy; }
};

/// Histogram with per-bin spatial moments. Means live in region-normalized
/// coordinates: pixel column c of a w-wide region maps to (2c + 1) / w - 1.
struct Spatiogram {
  std::vector<std::uint32_t> tallies;  // raw pixel counts per bin
  std::vector<double> counts;          // tallies / pixel_total
  std::vector<Point2> means;           // (0, 0) for empty bins
  std::optional<std::vector<Cov2>> covariances;
  std::uint64_t pixel_total = 0;
  BoundingBox region;  // frame rectangle the descriptor was computed over

  int bins() const { return static_cast<int>(counts.size()); }
  /// Bin mean converted back to frame coordinates.
  Point2 frame_mean(int b) const;
};

struct RSpatiogram {
  Spatiogram base;
  SubregionGrid grid;
  std::vector<double> ratios;  // bins x cells, row-major by bin

  int bins() const { return base.bins(); }
  int cells() const { return grid.cells(); }
  std::span<const double> ratio(int b) const {
    return std::span<const double>(ratios).subspan(static_cast<std::size_t>(b) * cells(),
                                                   static_cast<std::size_t>(cells()));
  }
};

/// s_b = |1 - rDist_b| as written, or the bounded max(0, 1 - rDist_b / 2).
enum class RatioMode { literal, clamped };

struct SimilarityOptions {
  RatioMode ratio_mode = RatioMode::literal;
  /// Isotropic spatial spread used when descriptors carry no covariances.
  double spatial_sigma = 0.25;
};

std::vector<double> compute_histogram(const ColorImage& img, const BoundingBox& region, const Quantizer& q);

RSpatiogram compute_rspatiogram(const ColorImage& img, const BoundingBox& region, const Quantizer& q,
                                const SubregionGrid& grid, bool with_covariance = false);

/// Per-bin ratio weights s_b for two bins x cells ratio tables.
std::vector<double> ratio_similarity(std::span<const double> a, std::span<const double> b, int cells,
                                     RatioMode mode = RatioMode::literal);
std::vector<double> ratio_similarity(const RSpatiogram& a, const RSpatiogram& b,
                                     RatioMode mode = RatioMode::literal);

/// Gaussian spatial agreement of bin b between two spatiograms; 1 when means
/// (and covariances) coincide.
double spatial_weight(const Spatiogram& a, const Spatiogram& b, int bin, double sigma);

double rspatiogram_similarity(const RSpatiogram& a, const RSpatiogram& b, const SimilarityOptions& opts = {});

Spatiogram depth_spatiogram(const Image<double>& depth, const BoundingBox& region, const Quantizer& q);

}  // namespace rspatio
