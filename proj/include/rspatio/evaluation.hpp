#pragma once

#include <optional>
#include <span>
#include <vector>

#include "rspatio/types.hpp"

namespace rspatio {

/// One entry per frame; nullopt marks a frame annotated as occluded.
using GroundTruth = std::vector<std::optional<BoundingBox>>;

struct EvalReport {
  double acle = 0.0;  // pixels
  double aor = 0.0;
  std::vector<std::optional<double>> per_frame_cle;  // nullopt on occluded frames
  int evaluated_frames = 0;
  int occluded_frames = 0;
};

/// Euclidean distance between the continuous box centers.
double center_error(const BoundingBox& pred, const BoundingBox& gt);

/// Intersection over union; 0 when either box has zero area.
double overlap_ratio(const BoundingBox& pred, const BoundingBox& gt);

double acle(std::span<const BoundingBox> preds, const GroundTruth& gts);
double aor(std::span<const BoundingBox> preds, const GroundTruth& gts);

/// Both metrics plus the per-frame error series. Throws when no frame is evaluable.
EvalReport evaluate(std::span<const BoundingBox> preds, const GroundTruth& gts);

}  // namespace rspatio
