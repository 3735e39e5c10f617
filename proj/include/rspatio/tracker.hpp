#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rspatio/config.hpp"
#include "rspatio/descriptors.hpp"
#include "rspatio/object_model.hpp"
#include "rspatio/occlusion.hpp"
#include "rspatio/sequence.hpp"
#include "rspatio/types.hpp"

namespace rspatio {

struct FrameResult {
  BoundingBox box;
  bool occluded = false;
  double similarity = 0.0;  // r-spatiogram similarity of `box` to the reference
  double ms = 0.0;
  std::string failure;  // empty unless the frame hit an error and coasted
  bool degraded_mask = false;  // depth gave no usable component mask
  bool recovered = false;      // re-acquired out of occlusion on this frame
  std::uint64_t model_hash = 0;

  /// Equality on everything except timing.
  bool same_output(const FrameResult& o) const {
    return box == o.box && occluded == o.occluded && similarity == o.similarity && failure == o.failure &&
           degraded_mask == o.degraded_mask && recovered == o.recovered && model_hash == o.model_hash;
  }
};

struct TrackResult {
  std::vector<FrameResult> frames;
  double total_ms = 0.0;

  std::vector<BoundingBox> boxes() const;
  bool same_output(const TrackResult& o) const;
};

/// Single-target RGB-D tracker: log-likelihood color model gated by a depth
/// component mask, mean-shift localization, and r-spatiogram driven recovery
/// from occlusion. One instance follows one target through one sequence.
class Tracker {
 public:
  explicit Tracker(TrackerConfig cfg);

  FrameResult init(const RgbdFrame& frame, const BoundingBox& box);
  FrameResult step(const RgbdFrame& frame);

  const ObjectModel& model() const { return model_; }
  const OcclusionState& occlusion() const { return state_; }
  const BoundingBox& box() const { return box_; }
  const TrackerConfig& config() const { return cfg_; }

 private:
  struct Localized {
    BoundingBox box;
    bool degraded = false;
  };

  Localized localize(const RgbdFrame& frame, const BoundingBox& from) const;
  FrameResult track_visible(const RgbdFrame& frame);
  FrameResult recover(const RgbdFrame& frame);
  FrameResult coast(std::string failure = {}) const;
  void enter_occlusion();
  bool occluded_at(const RgbdFrame& frame, const BoundingBox& bb) const;

  TrackerConfig cfg_;
  DescriptorParams dparams_;
  ModelParams mparams_;
  Quantizer depth_q_;

  ObjectModel model_;
  OcclusionState state_;
  BoundingBox box_;
  bool initialized_ = false;
};

/// Frame 0 initializes from `init`; every later frame produces one result,
/// including frames that fail (those coast on the last box).
TrackResult run_tracker(const FrameSource& frames, const BoundingBox& init, const TrackerConfig& cfg);

}  // namespace rspatio
