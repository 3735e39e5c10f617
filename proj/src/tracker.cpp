#include "rspatio/tracker.hpp"

#include <chrono>
#include <cmath>

#include "rspatio/depth_segmentation.hpp"
#include "rspatio/localization.hpp"

namespace rspatio {

std::vector<BoundingBox> TrackResult::boxes() const {
  std::vector<BoundingBox> out;
  out.reserve(frames.size());
  for (const FrameResult& f : frames) out.push_back(f.box);
  return out;
}

bool TrackResult::same_output(const TrackResult& o) const {
  if (frames.size() != o.frames.size()) return false;
  for (std::size_t i = 0; i < frames.size(); ++i)
    if (!frames[i].same_output(o.frames[i])) return false;
  return true;
}

Tracker::Tracker(TrackerConfig cfg)
    : cfg_(std::move(cfg)),
      dparams_(cfg_.descriptor_params()),
      mparams_(cfg_.model_params()),
      depth_q_(cfg_.depth_quantizer()) {
  cfg_.validate();
}

FrameResult Tracker::init(const RgbdFrame& frame, const BoundingBox& box) {
  if (box.empty() || !contains(frame.bounds(), box)) throw Error("init box outside first frame");
  box_ = box;
  model_ = build_model(frame, box_, mparams_);
  state_ = OcclusionState{};
  state_.reference = compute_rspatiogram(frame.color, box_, dparams_.quantizer, dparams_.grid, false);
  initialized_ = true;

  FrameResult r;
  r.box = box_;
  r.similarity = 1.0;
  r.model_hash = model_.hash();
  return r;
}

FrameResult Tracker::step(const RgbdFrame& frame) {
  if (!initialized_) throw Error("tracker used before init");
  FrameResult r;
  try {
    r = state_.occluded ? recover(frame) : track_visible(frame);
  } catch (const Error& e) {
    r = coast(e.what());
  }
  r.model_hash = model_.hash();
  return r;
}

Tracker::Localized Tracker::localize(const RgbdFrame& frame, const BoundingBox& from) const {
  const BoundingBox search = intersect(scale_about_center(from, cfg_.search_inflate), frame.bounds());
  if (search.empty()) throw Error("search region outside frame");

  const ClusterMap clusters = kmeans_depth(crop(frame.depth, search), cfg_.kmeans_k, cfg_.kmeans_max_iter);
  const Components comps = connected_components(clusters, search.x, search.y);
  const ComponentMask ccr =
      target_component_mask(comps, from.center(), model_.target_depth, search, cfg_.depth_tolerance);

  const Image<double> im = likelihood_map(frame.color, search, model_, dparams_.quantizer);
  const MaskedMap map = masked_map(im, ccr.mask, search.x, search.y);
  const MeanShiftResult ms = mean_shift(map, from, frame.width(), frame.height(), cfg_.meanshift_params());
  return {ms.box, ccr.degraded};
}

bool Tracker::occluded_at(const RgbdFrame& frame, const BoundingBox& bb) const {
  return detect_occlusion(bb, frame.depth, model_.target_depth, cfg_.occlusion_fraction, cfg_.depth_tolerance);
}

FrameResult Tracker::coast(std::string failure) const {
  FrameResult r;
  r.box = box_;
  r.occluded = state_.occluded;
  r.failure = std::move(failure);
  return r;
}

void Tracker::enter_occlusion() {
  state_.occluded = true;
  state_.frames_occluded = 1;
}

FrameResult Tracker::track_visible(const RgbdFrame& frame) {
  Localized loc;
  try {
    loc = localize(frame, box_);
  } catch (const VanishedEvidence&) {
    enter_occlusion();
    return coast();
  }
  if (occluded_at(frame, loc.box)) {
    // The pre-occlusion box is kept; the shifted one may already sit on the occluder.
    enter_occlusion();
    return coast();
  }

  box_ = loc.box;
  const RSpatiogram current = compute_rspatiogram(frame.color, box_, dparams_.quantizer, dparams_.grid, false);
  const double sim = rspatiogram_similarity(current, state_.reference, dparams_.similarity);
  model_ = update_model(model_, build_model(frame, box_, mparams_), cfg_.lambda);
  if (sim > cfg_.similarity_threshold) state_.reference = current;

  FrameResult r;
  r.box = box_;
  r.similarity = sim;
  r.degraded_mask = loc.degraded;
  return r;
}

FrameResult Tracker::recover(const RgbdFrame& frame) {
  ++state_.frames_occluded;
  if (state_.frames_occluded > cfg_.max_occluded_frames) return coast("target lost");

  std::optional<BoundingBox> start;
  try {
    state_.occluder = locate_occluder(frame.depth, box_, model_.target_depth, depth_q_, cfg_.depth_tolerance);
  } catch (const NoOccluderEvidence&) {
    // Nothing in front of the held box: look for the target right there.
    start = box_;
  }

  if (!start) {
    const double diagonal = std::hypot(box_.w, box_.h);
    const auto cand = generate_candidate(frame.depth, state_.occluder, model_.target_depth,
                                         cfg_.search_radius_factor * diagonal, box_, depth_q_, cfg_.depth_tolerance);
    if (!cand) return coast();
    const Verdict v = verify_candidate(*cand, frame, state_.reference, cfg_.similarity_threshold, dparams_);
    const Candidate chosen =
        v.accepted ? *cand
                   : sliding_window_search(frame, *cand, state_.reference, dparams_, cfg_.sliding_window_params());
    start = clamp_into(centered_box(chosen.bb.center(), box_.w, box_.h), frame.width(), frame.height());
  }

  Localized loc;
  try {
    loc = localize(frame, *start);
  } catch (const VanishedEvidence&) {
    return coast();
  }
  if (occluded_at(frame, loc.box)) return coast();

  box_ = loc.box;
  state_.occluded = false;
  state_.frames_occluded = 0;
  FrameResult r;
  r.box = box_;
  r.recovered = true;
  r.similarity = candidate_similarity(frame.color, box_, state_.reference, dparams_);
  r.degraded_mask = loc.degraded;
  return r;
}

TrackResult run_tracker(const FrameSource& frames, const BoundingBox& init, const TrackerConfig& cfg) {
  using Clock = std::chrono::steady_clock;
  TrackResult result;
  if (frames.size() == 0) return result;
  result.frames.reserve(frames.size());

  Tracker tracker(cfg);
  const auto t_start = Clock::now();
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const auto t0 = Clock::now();
    FrameResult r;
    try {
      const RgbdFrame f = frames.frame(i);
      r = i == 0 ? tracker.init(f, init) : tracker.step(f);
    } catch (const Error& e) {
      if (i == 0) throw;
      r.box = tracker.box();
      r.occluded = tracker.occlusion().occluded;
      r.failure = e.what();
      r.model_hash = tracker.model().hash();
    }
    r.ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    result.frames.push_back(std::move(r));
  }
  result.total_ms = std::chrono::duration<double, std::milli>(Clock::now() - t_start).count();
  return result;
}

}  // namespace rspatio
