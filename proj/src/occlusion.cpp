#include "rspatio/occlusion.hpp"

#include <algorithm>
#include <cmath>

namespace rspatio {

double closer_fraction(const BoundingBox& bb, const DepthFrame& depth, double model_depth, double depth_tolerance) {
  const BoundingBox b = intersect(bb, frame_box(depth.width(), depth.height()));
  if (b.empty()) return 0.0;
  long long closer = 0;
  for (int y = b.y; y < b.bottom(); ++y) {
    const auto row = depth.values.row(y);
    for (int x = b.x; x < b.right(); ++x)
      if (row[x] > model_depth + depth_tolerance) ++closer;
  }
  return static_cast<double>(closer) / static_cast<double>(b.area());
}

bool detect_occlusion(const BoundingBox& bb, const DepthFrame& depth, double model_depth, double tau,
                      double depth_tolerance, bool evidence_vanished) {
  if (evidence_vanished) return true;
  return closer_fraction(bb, depth, model_depth, depth_tolerance) > tau;
}

Occluder locate_occluder(const DepthFrame& depth, const BoundingBox& bb, double model_depth,
                         const Quantizer& depth_q, double depth_tolerance) {
  const Spatiogram s = depth_spatiogram(depth.values, bb, depth_q);
  int best = -1;
  for (int b = 0; b < s.bins(); ++b) {
    if (s.tallies[b] == 0 || !(depth_q.bin_center(b) > model_depth + depth_tolerance)) continue;
    if (best < 0 || s.tallies[b] > s.tallies[best]) best = b;
  }
  if (best < 0) throw NoOccluderEvidence();
  return {s.frame_mean(best), depth_q.bin_center(best)};
}

std::optional<Candidate> generate_candidate(const DepthFrame& depth, const Occluder& occluder, double model_depth,
                                            double search_radius, const BoundingBox& last_bb,
                                            const Quantizer& depth_q, double depth_tolerance) {
  const int side = std::max(1, static_cast<int>(std::lround(2.0 * search_radius)));
  const BoundingBox area =
      intersect(centered_box(occluder.centroid, side, side), frame_box(depth.width(), depth.height()));
  if (area.empty()) return std::nullopt;

  const Spatiogram s = depth_spatiogram(depth.values, area, depth_q);
  const int occluder_bin = depth_q.bin(occluder.depth);
  int best = -1;
  for (int b = 0; b < occluder_bin; ++b) {
    if (s.tallies[b] == 0 || std::abs(depth_q.bin_center(b) - model_depth) > depth_tolerance) continue;
    if (best < 0 || s.tallies[b] > s.tallies[best]) best = b;
  }
  if (best < 0) return std::nullopt;

  const double pixels = s.tallies[best];
  const double aspect = static_cast<double>(last_bb.w) / last_bb.h;
  const double h = std::sqrt(pixels / aspect);
  const int bw = std::max(1, static_cast<int>(std::lround(h * aspect)));
  const int bh = std::max(1, static_cast<int>(std::lround(h)));
  return Candidate{clamp_into(centered_box(s.frame_mean(best), bw, bh), depth.width(), depth.height()), 0.0};
}

double candidate_similarity(const ColorImage& img, const BoundingBox& bb, const RSpatiogram& reference,
                            const DescriptorParams& params) {
  if (bb.w < params.grid.cols || bb.h < params.grid.rows) return 0.0;
  const RSpatiogram d = compute_rspatiogram(img, bb, params.quantizer, params.grid, false);
  return rspatiogram_similarity(d, reference, params.similarity);
}

Verdict verify_candidate(const Candidate& c, const RgbdFrame& frame, const RSpatiogram& reference, double theta,
                         const DescriptorParams& params) {
  const double sim = candidate_similarity(frame.color, c.bb, reference, params);
  return {sim > theta, sim};
}

std::vector<BoundingBox> scan_positions(const BoundingBox& area, int win_w, int win_h, double stride_frac) {
  std::vector<BoundingBox> out;
  if (area.w < win_w || area.h < win_h) return out;
  const int sx = std::max(1, static_cast<int>(std::lround(stride_frac * area.w)));
  const int sy = std::max(1, static_cast<int>(std::lround(stride_frac * area.h)));
  for (int y = area.y; y + win_h <= area.bottom(); y += sy)
    for (int x = area.x; x + win_w <= area.right(); x += sx) out.push_back({x, y, win_w, win_h});
  return out;
}

BoundingBox search_area(const BoundingBox& candidate, double expand, int frame_w, int frame_h) {
  return intersect(scale_about_center(candidate, expand), frame_box(frame_w, frame_h));
}

Candidate sliding_window_search(const RgbdFrame& frame, const Candidate& candidate, const RSpatiogram& reference,
                                const DescriptorParams& params, const SlidingWindowParams& sw) {
  const BoundingBox area = search_area(candidate.bb, sw.expand, frame.width(), frame.height());
  const int ww = candidate.bb.w;
  const int wh = candidate.bb.h;
  const std::vector<BoundingBox> windows = scan_positions(area, ww, wh, sw.stride_frac);
  if (windows.empty()) {
    const BoundingBox bb = clamp_into(centered_box(area.center(), ww, wh), frame.width(), frame.height());
    return {bb, candidate_similarity(frame.color, bb, reference, params)};
  }

  std::vector<Candidate> scored;
  scored.reserve(windows.size());
  for (const BoundingBox& bb : windows) scored.push_back({bb, candidate_similarity(frame.color, bb, reference, params)});

  // Keep the best ceil(top_frac * N) matches (scan order breaks ties), then pick
  // the smallest dissimilarity 1 - rho among them.
  const auto keep = std::clamp<std::size_t>(
      static_cast<std::size_t>(std::ceil(sw.top_frac * static_cast<double>(scored.size()))), 1, scored.size());
  std::vector<Candidate> top = scored;
  std::stable_sort(top.begin(), top.end(),
                   [](const Candidate& a, const Candidate& b) { return a.similarity > b.similarity; });
  top.resize(keep);

  const Candidate* best = &top.front();
  for (const Candidate& c : top)
    if (1.0 - c.similarity < 1.0 - best->similarity) best = &c;
  return *best;
}

}  // namespace rspatio
