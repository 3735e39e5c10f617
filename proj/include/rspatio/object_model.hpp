#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rspatio/descriptors.hpp"
#include "rspatio/types.hpp"

namespace rspatio {

/// Positive log-likelihood ratio of object vs. surrounding background over
/// quantized RGB bins. Only `active_bins` carry nonzero entries.
struct ObjectModel {
  std::vector<double> lr;
  std::vector<int> active_bins;  // sorted ascending
  double epsilon = 1e-6;
  double alpha = 0.7;
  double target_depth = 0.0;  // median normalized depth of the target box
  std::uint64_t rng_seed = 0;

  int bins() const { return static_cast<int>(lr.size()); }
  /// FNV-1a over lr, active_bins and target_depth; used to assert the model is frozen.
  std::uint64_t hash() const;
  bool operator==(const ObjectModel&) const = default;
};

struct ModelParams {
  Quantizer quantizer = Quantizer::rgb();
  double alpha = 0.7;
  double epsilon = 1e-6;
  std::uint64_t seed = 0;
  int background_margin = 0;  // 0 picks default_background_margin()
};

inline int quantize_feature(Rgb f, const Quantizer& q) { return q.bin(f); }

/// max(10, min(w, h) / 2) pixels.
int default_background_margin(const BoundingBox& object);

/// round(alpha * bin_count) distinct bins drawn without replacement from a
/// seeded mt19937_64 (partial Fisher-Yates); returned sorted.
std::vector<int> select_active_bins(int bin_count, double alpha, std::uint64_t seed);

/// lr[b] = max(ln(max(h_obj[b], eps) / max(h_bg[b], eps)), 0) on active bins, 0 elsewhere.
std::vector<double> log_likelihood_ratio(std::span<const double> h_obj, std::span<const double> h_bg,
                                         std::span<const int> active_bins, double epsilon);

/// Normalized color histogram over the ring `object` expanded by `margin`
/// (clipped to the frame) minus `object`.
std::vector<double> background_histogram(const ColorImage& img, const BoundingBox& object, int margin,
                                         const Quantizer& q);

double median_depth(const DepthFrame& depth, const BoundingBox& region);

ObjectModel build_model(const RgbdFrame& frame, const BoundingBox& object, const ModelParams& params);

/// IM(x, y) = lr[bin(F(x, y))] over `region`.
Image<double> likelihood_map(const ColorImage& img, const BoundingBox& region, const ObjectModel& model,
                             const Quantizer& q);

/// lr_new = lambda * current + (1 - lambda) * prev; active sets are merged.
ObjectModel update_model(const ObjectModel& prev, const ObjectModel& current, double lambda);

}  // namespace rspatio
