#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rspatio/descriptors.hpp"
#include "rspatio/types.hpp"

namespace rspatio {

/// Raised by locate_occluder when nothing in the box is closer than the target.
class NoOccluderEvidence : public Error {
 public:
  NoOccluderEvidence() : Error("no occluder evidence") {}
};

/// Everything needed to turn a box into an r-spatiogram and compare two of them.
struct DescriptorParams {
  Quantizer quantizer = Quantizer::rgb();
  SubregionGrid grid;
  SimilarityOptions similarity;
};

struct Occluder {
  Point2 centroid;  // frame coordinates
  double depth = 0.0;
};

struct Candidate {
  BoundingBox bb;
  double similarity = 0.0;
};

struct OcclusionState {
  bool occluded = false;
  Occluder occluder;
  int frames_occluded = 0;
  RSpatiogram reference;  // last confident target descriptor, frozen while occluded
};

/// Fraction of box pixels closer than the target by more than depth_tolerance.
double closer_fraction(const BoundingBox& bb, const DepthFrame& depth, double model_depth, double depth_tolerance);

/// True when more than tau of the box is closer than the target, or when
/// localization already lost all evidence.
bool detect_occlusion(const BoundingBox& bb, const DepthFrame& depth, double model_depth, double tau = 0.5,
                      double depth_tolerance = 15.0, bool evidence_vanished = false);

/// Most populated depth bin closer than model_depth + depth_tolerance inside bb.
Occluder locate_occluder(const DepthFrame& depth, const BoundingBox& bb, double model_depth,
                         const Quantizer& depth_q, double depth_tolerance = 15.0);

/// Search the square of half-size `search_radius` around the occluder for the
/// most populated depth bin behind the occluder and within depth_tolerance of
/// the target. The box is centered on that bin's spatial mean, has last_bb's
/// aspect ratio and an area equal to the bin's pixel count.
std::optional<Candidate> generate_candidate(const DepthFrame& depth, const Occluder& occluder, double model_depth,
                                            double search_radius, const BoundingBox& last_bb,
                                            const Quantizer& depth_q, double depth_tolerance = 15.0);

/// r-spatiogram similarity of a box against the reference; 0 for boxes too
/// small to hold the subregion grid.
double candidate_similarity(const ColorImage& img, const BoundingBox& bb, const RSpatiogram& reference,
                            const DescriptorParams& params);

struct Verdict {
  bool accepted = false;
  double similarity = 0.0;
};

/// Accepted iff the candidate's similarity to the reference exceeds theta.
Verdict verify_candidate(const Candidate& c, const RgbdFrame& frame, const RSpatiogram& reference, double theta,
                         const DescriptorParams& params);

struct SlidingWindowParams {
  double expand = 2.0;
  double stride_frac = 0.10;
  double top_frac = 0.10;
};

/// Window positions visited by the search, in scan order (left to right, top
/// to bottom), for a window of `window` size inside `area`.
std::vector<BoundingBox> scan_positions(const BoundingBox& area, int win_w, int win_h, double stride_frac);

/// Area scanned around a candidate: its box scaled by `expand` about the
/// center and clipped to the frame.
BoundingBox search_area(const BoundingBox& candidate, double expand, int frame_w, int frame_h);

Candidate sliding_window_search(const RgbdFrame& frame, const Candidate& candidate, const RSpatiogram& reference,
                                const DescriptorParams& params, const SlidingWindowParams& sw = {});

}  // namespace rspatio
