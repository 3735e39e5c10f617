#pragma once

#include <vector>

#include "rspatio/types.hpp"

namespace rspatio {

/// Raised when a mean-shift window holds no mass; the tracker treats it as an
/// occlusion cue.
class VanishedEvidence : public Error {
 public:
  VanishedEvidence() : Error("vanished target evidence") {}
};

/// Likelihood map gated by the depth component mask, placed in the frame at origin.
struct MaskedMap {
  Image<double> values;
  int origin_x = 0;
  int origin_y = 0;

  BoundingBox extent() const { return {origin_x, origin_y, values.width(), values.height()}; }
};

MaskedMap masked_map(const Image<double>& im, const Mask& ccr, int origin_x = 0, int origin_y = 0);

/// Mass-weighted mean pixel center over the part of `window` that overlaps the map.
Point2 weighted_centroid(const MaskedMap& map, const BoundingBox& window);

struct MeanShiftParams {
  int max_iter = 20;
  double stop_eps = 1.0;  // pixels
};

struct MeanShiftResult {
  BoundingBox box;
  Point2 center;
  int iterations = 0;
  std::vector<double> shifts;  // magnitude of each step
};

/// Move a fixed-size window to the weighted centroid of the map beneath it
/// until the step falls below stop_eps. The returned box keeps init's size and
/// is translated into the frame_w x frame_h frame.
MeanShiftResult mean_shift(const MaskedMap& map, const BoundingBox& init, int frame_w, int frame_h,
                           const MeanShiftParams& params = {});

}  // namespace rspatio
