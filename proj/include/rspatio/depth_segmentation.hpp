#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rspatio/types.hpp"

namespace rspatio {

/// Raw sensor depth extremes used for normalization (in raw units).
struct DepthRange {
  double nearest = 0.0;
  double farthest = 0.0;
};

/// Min/max over pixels that differ from `invalid`; nullopt when none are valid.
std::optional<DepthRange> valid_depth_range(const Image<std::uint16_t>& raw, std::uint16_t invalid = 0);

/// Map raw depth to [0, 255] with inversion: nearest -> 255, farthest -> 0.
/// Invalid pixels become 0 and are flagged in the validity mask. A range with
/// nearest == farthest maps every valid pixel to 255.
DepthFrame normalize_depth(const Image<std::uint16_t>& raw, std::uint16_t invalid, const DepthRange& range);

/// As above with the range taken from the frame itself.
DepthFrame normalize_depth(const Image<std::uint16_t>& raw, std::uint16_t invalid = 0);

struct ClusterMap {
  Image<int> labels;            // cluster index per pixel
  std::vector<double> centers;  // ascending
  int requested_k = 0;          // K before reduction to the distinct-value count

  int k() const { return static_cast<int>(centers.size()); }
};

/// 1-D Lloyd iterations over valid depth values, initialized at the K
/// quantiles. Invalid pixels do not move centers but still get the nearest label.
ClusterMap kmeans_depth(const DepthFrame& depth, int k, int max_iter = 20);

struct ComponentRecord {
  int cluster = 0;
  double depth = 0.0;  // center of the cluster the component belongs to
  long long area = 0;
  Point2 centroid;  // frame coordinates
};

/// 8-connected components of equal cluster label. `ids` is dense from 0 in
/// raster discovery order; `origin` places the label image in the frame.
struct Components {
  Image<int> ids;
  std::vector<ComponentRecord> records;
  int origin_x = 0;
  int origin_y = 0;

  BoundingBox extent() const { return {origin_x, origin_y, ids.width(), ids.height()}; }
};

Components connected_components(const ClusterMap& clusters, int origin_x = 0, int origin_y = 0);

struct ComponentMask {
  Mask mask;  // region-sized, values in {0, 1}
  bool degraded = false;  // no component passed the depth test; mask is all ones
};

/// Mask of the component at `target_center` when its depth is within
/// `depth_tolerance` of `target_depth`; otherwise the largest passing component
/// inside `region`; otherwise all ones with `degraded` set.
ComponentMask target_component_mask(const Components& components, Point2 target_center, double target_depth,
                                    const BoundingBox& region, double depth_tolerance = 15.0);

}  // namespace rspatio
