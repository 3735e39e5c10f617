#include "rspatio/descriptors.hpp"

#include <cmath>
#include <numbers>

namespace rspatio {

namespace {

// Covariances that collapse to a line or point get this added to the diagonal.
constexpr double kDegenerateDet = 1e-12;
constexpr double kCovRegularizer = 1e-4;

void require_region(int img_w, int img_h, const BoundingBox& region) {
  if (region.empty()) throw Error("empty region");
  if (!contains(frame_box(img_w, img_h), region)) throw Error("region outside image");
}

double normalized_coord(int local, int extent) { return (2.0 * local + 1.0) / extent - 1.0; }

// Single raster pass shared by every descriptor: tallies, coordinate sums and
// optionally second moments and per-cell tallies.
template <typename Image_, typename BinOf>
Spatiogram accumulate(const Image_& img, const BoundingBox& region, int bins, BinOf bin_of, bool with_cov,
                      const SubregionGrid* grid, std::vector<std::uint32_t>* cell_tallies) {
  require_region(img.width(), img.height(), region);

  Spatiogram s;
  s.region = region;
  s.tallies.assign(bins, 0);
  s.counts.assign(bins, 0.0);
  s.means.assign(bins, Point2{});
  std::vector<double> sxx, sxy, syy;
  if (with_cov) {
    sxx.assign(bins, 0.0);
    sxy.assign(bins, 0.0);
    syy.assign(bins, 0.0);
  }
  std::vector<double> sx(bins, 0.0), sy(bins, 0.0);
  const int cells = grid ? grid->cells() : 0;
  if (cell_tallies) cell_tallies->assign(static_cast<std::size_t>(bins) * cells, 0);

  for (int ly = 0; ly < region.h; ++ly) {
    const auto row = img.row(region.y + ly);
    const double ny = normalized_coord(ly, region.h);
    for (int lx = 0; lx < region.w; ++lx) {
      const int b = bin_of(row[region.x + lx]);
      const double nx = normalized_coord(lx, region.w);
      ++s.tallies[b];
      sx[b] += nx;
      sy[b] += ny;
      if (with_cov) {
        sxx[b] += nx * nx;
        sxy[b] += nx * ny;
        syy[b] += ny * ny;
      }
      if (cell_tallies) ++(*cell_tallies)[static_cast<std::size_t>(b) * cells + grid->cell_of(lx, ly, region.w, region.h)];
    }
  }

  s.pixel_total = static_cast<std::uint64_t>(region.area());
  const double total = static_cast<double>(s.pixel_total);
  if (with_cov) s.covariances.emplace(bins);
  for (int b = 0; b < bins; ++b) {
    const std::uint32_t n = s.tallies[b];
    if (n == 0) continue;
    s.counts[b] = n / total;
    s.means[b] = {sx[b] / n, sy[b] / n};
    if (with_cov) {
      const Point2 m = s.means[b];
      Cov2 c{sxx[b] / n - m.x * m.x, sxy[b] / n - m.x * m.y, syy[b] / n - m.y * m.y};
      if (c.det() < kDegenerateDet) {
        c.xx += kCovRegularizer;
        c.yy += kCovRegularizer;
      }
      (*s.covariances)[b] = c;
    }
  }
  return s;
}

}  // namespace

Quantizer::Quantizer(int levels_per_channel, int channel_count)
    : levels_(levels_per_channel), channels_(channel_count), bins_(1) {
  if (levels_ <= 0 || levels_ > 256) throw Error("quantizer levels must be in [1, 256]");
  if (channels_ != 1 && channels_ != 3) throw Error("quantizer supports 1 or 3 channels");
  for (int c = 0; c < channels_; ++c) bins_ *= levels_;
}

Point2 Spatiogram::frame_mean(int b) const {
  const Point2 m = means[b];
  return {region.x + (m.x + 1.0) * region.w / 2.0, region.y + (m.y + 1.0) * region.h / 2.0};
}

std::vector<double> compute_histogram(const ColorImage& img, const BoundingBox& region, const Quantizer& q) {
  require_region(img.width(), img.height(), region);
  std::vector<std::uint32_t> tally(q.bin_count(), 0);
  for (int y = region.y; y < region.bottom(); ++y) {
    const auto row = img.row(y);
    for (int x = region.x; x < region.right(); ++x) ++tally[q.bin(row[x])];
  }
  const double total = static_cast<double>(region.area());
  std::vector<double> counts(tally.size());
  for (std::size_t b = 0; b < tally.size(); ++b) counts[b] = tally[b] / total;
  return counts;
}

RSpatiogram compute_rspatiogram(const ColorImage& img, const BoundingBox& region, const Quantizer& q,
                                const SubregionGrid& grid, bool with_covariance) {
  if (region.empty()) throw Error("empty region");
  if (grid.rows <= 0 || grid.cols <= 0) throw Error("grid dimensions must be positive");
  if (grid.rows > region.h || grid.cols > region.w) throw Error("grid exceeds region");

  std::vector<std::uint32_t> cell_tallies;
  RSpatiogram rs;
  rs.grid = grid;
  rs.base = accumulate(
      img, region, q.bin_count(), [&q](Rgb c) { return q.bin(c); }, with_covariance, &grid, &cell_tallies);

  const int cells = grid.cells();
  rs.ratios.assign(cell_tallies.size(), 0.0);
  for (int b = 0; b < q.bin_count(); ++b) {
    const std::uint32_t n = rs.base.tallies[b];
    if (n == 0) continue;
    for (int i = 0; i < cells; ++i) {
      const std::size_t k = static_cast<std::size_t>(b) * cells + i;
      rs.ratios[k] = static_cast<double>(cell_tallies[k]) / n;
    }
  }
  return rs;
}

std::vector<double> ratio_similarity(std::span<const double> a, std::span<const double> b, int cells,
                                     RatioMode mode) {
  if (cells <= 0 || a.size() != b.size() || a.size() % static_cast<std::size_t>(cells) != 0)
    throw Error("descriptor shape mismatch");
  const std::size_t bins = a.size() / cells;
  std::vector<double> s(bins);
  for (std::size_t bin = 0; bin < bins; ++bin) {
    double dist = 0.0;
    for (int i = 0; i < cells; ++i) {
      const std::size_t k = bin * cells + i;
      dist += std::abs(a[k] - b[k]);
    }
    s[bin] = mode == RatioMode::literal ? std::abs(1.0 - dist) : std::max(0.0, 1.0 - dist / 2.0);
  }
  return s;
}

std::vector<double> ratio_similarity(const RSpatiogram& a, const RSpatiogram& b, RatioMode mode) {
  if (a.bins() != b.bins() || a.cells() != b.cells()) throw Error("descriptor shape mismatch");
  return ratio_similarity(a.ratios, b.ratios, a.cells(), mode);
}

double spatial_weight(const Spatiogram& a, const Spatiogram& b, int bin, double sigma) {
  const double dx = a.means[bin].x - b.means[bin].x;
  const double dy = a.means[bin].y - b.means[bin].y;
  if (!a.covariances || !b.covariances) {
    return std::exp(-(dx * dx + dy * dy) / (8.0 * sigma * sigma));
  }
  // 8*pi*|Sa Sb|^(1/4) * N(mu_a; mu_b, 2(Sa + Sb))
  const Cov2& ca = (*a.covariances)[bin];
  const Cov2& cb = (*b.covariances)[bin];
  const Cov2 s{2.0 * (ca.xx + cb.xx), 2.0 * (ca.xy + cb.xy), 2.0 * (ca.yy + cb.yy)};
  const double det_s = s.det();
  const double maha = (s.yy * dx * dx - 2.0 * s.xy * dx * dy + s.xx * dy * dy) / det_s;
  const double density = std::exp(-0.5 * maha) / (2.0 * std::numbers::pi * std::sqrt(det_s));
  return 8.0 * std::numbers::pi * std::pow(ca.det() * cb.det(), 0.25) * density;
}

double rspatiogram_similarity(const RSpatiogram& a, const RSpatiogram& b, const SimilarityOptions& opts) {
  if (a.bins() != b.bins() || a.cells() != b.cells()) throw Error("descriptor shape mismatch");
  const std::vector<double> s = ratio_similarity(a, b, opts.ratio_mode);
  double rho = 0.0;
  for (int bin = 0; bin < a.bins(); ++bin) {
    const double na = a.base.counts[bin];
    const double nb = b.base.counts[bin];
    if (na == 0.0 || nb == 0.0) continue;
    rho += s[bin] * std::sqrt(na * nb) * spatial_weight(a.base, b.base, bin, opts.spatial_sigma);
  }
  return rho;
}

Spatiogram depth_spatiogram(const Image<double>& depth, const BoundingBox& region, const Quantizer& q) {
  if (q.channels() != 1) throw Error("depth spatiogram needs a single-channel quantizer");
  return accumulate(
      depth, region, q.bin_count(), [&q](double v) { return q.bin(v); }, false, nullptr, nullptr);
}

}  // namespace rspatio
