#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rspatio/evaluation.hpp"
#include "rspatio/sequence.hpp"
#include "rspatio/types.hpp"

namespace rspatio {

/// Solid rectangle moving at constant velocity.
struct MovingRect {
  BoundingBox start;     // position and size at frame 0
  double vx = 0.0;       // pixels per frame
  double vy = 0.0;
  Rgb color;
  std::uint16_t depth_mm = 0;
};

struct OccluderSpec {
  MovingRect rect;
  int first_frame = 0;  // present on frames [first_frame, last_frame]
  int last_frame = 0;
};

/// Scene rendered by the synthetic generator. The target bounces off the frame
/// borders; the occluder travels in a straight line and may leave the frame.
struct SceneSpec {
  int width = 200;
  int height = 200;
  int frames = 100;
  Rgb background{80, 144, 80};
  std::uint16_t background_depth_mm = 4000;
  int noise = 0;  // uniform color noise in [-noise, noise] per channel
  std::uint64_t seed = 1;
  MovingRect target{{20, 85, 30, 30}, 2.0, 0.0, {208, 48, 48}, 2000};
  std::optional<OccluderSpec> occluder;

  /// Throws on inconsistent specs, e.g. "invalid occluder" when the occluder is
  /// not closer than the target.
  void validate() const;
};

struct SyntheticSequence {
  std::vector<RawFrame> raw;
  BoundingBox init;
  GroundTruth ground_truth;  // "occ" when the occluder hides every target pixel

  std::vector<RgbdFrame> frames() const { return normalize_frames(raw); }
};

/// Target box on frame t (bounced inside the frame).
BoundingBox target_box_at(const SceneSpec& spec, int t);
/// Occluder box on frame t, or nullopt when absent.
std::optional<BoundingBox> occluder_box_at(const SceneSpec& spec, int t);

SyntheticSequence render_scene(const SceneSpec& spec);

/// Render and write the sequence in the load_sequence layout.
SyntheticSequence synthesize_sequence(const SceneSpec& spec, const std::filesystem::path& out_dir);

/// `key=value` scene description (see README for keys).
SceneSpec parse_scene(std::istream& in);
SceneSpec load_scene(const std::filesystem::path& path);
std::string serialize_scene(const SceneSpec& spec);

/// The two scenes used by the acceptance suite.
SceneSpec linear_motion_scene();
SceneSpec occlusion_scene();

}  // namespace rspatio
