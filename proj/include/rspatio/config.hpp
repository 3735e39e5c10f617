#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>

#include "rspatio/descriptors.hpp"
#include "rspatio/localization.hpp"
#include "rspatio/object_model.hpp"
#include "rspatio/occlusion.hpp"

namespace rspatio {

/// Every tunable of the tracker. Serialized as flat `key=value` lines.
struct TrackerConfig {
  int color_levels = 8;  // per channel, B = levels^3
  int depth_bins = 32;
  int grid_rows = 3;
  int grid_cols = 3;
  double alpha = 0.7;
  double epsilon = 1e-6;
  double lambda = 0.1;  // forgetting factor
  int kmeans_k = 4;
  int kmeans_max_iter = 20;
  double depth_tolerance = 15.0;
  double occlusion_fraction = 0.5;
  double similarity_threshold = 0.95;
  double stride_frac = 0.10;
  double top_frac = 0.10;
  double search_expand = 2.0;
  double search_radius_factor = 1.5;  // times the last box diagonal
  double search_inflate = 1.5;        // localization window around the previous box
  int meanshift_max_iter = 20;
  double meanshift_stop_eps = 1.0;
  int background_margin = 0;  // 0: max(10, min(w, h) / 2)
  int max_occluded_frames = 300;
  double spatial_sigma = 0.25;
  bool clamped_ratio = false;
  std::uint64_t seed = 0;

  /// Throws Error naming the first out-of-range field.
  void validate() const;

  Quantizer color_quantizer() const { return Quantizer::rgb(color_levels); }
  Quantizer depth_quantizer() const { return Quantizer::depth(depth_bins); }
  DescriptorParams descriptor_params() const;
  ModelParams model_params() const;
  MeanShiftParams meanshift_params() const { return {meanshift_max_iter, meanshift_stop_eps}; }
  SlidingWindowParams sliding_window_params() const { return {search_expand, stride_frac, top_frac}; }

  bool operator==(const TrackerConfig&) const = default;
};

/// Parse `key=value` lines; blank lines and `#` comments are skipped. Keys not
/// present keep their defaults; unknown keys are an error naming the key.
TrackerConfig parse_config(std::istream& in);
TrackerConfig load_config(const std::filesystem::path& path);

/// All keys in a fixed order, shortest round-trip formatting for reals.
std::string serialize_config(const TrackerConfig& cfg);

/// Apply RSPATIO_SEED from the environment, if set.
void apply_env_overrides(TrackerConfig& cfg);

}  // namespace rspatio
