#include "rspatio/localization.hpp"

namespace rspatio {

MaskedMap masked_map(const Image<double>& im, const Mask& ccr, int origin_x, int origin_y) {
  if (im.width() != ccr.width() || im.height() != ccr.height()) throw Error("map and mask dimensions differ");
  MaskedMap out{Image<double>(im.width(), im.height()), origin_x, origin_y};
  const auto a = im.pixels();
  const auto m = ccr.pixels();
  auto dst = out.values.pixels();
  for (std::size_t i = 0; i < a.size(); ++i) dst[i] = a[i] * m[i];
  return out;
}

Point2 weighted_centroid(const MaskedMap& map, const BoundingBox& window) {
  const BoundingBox w = intersect(window, map.extent());
  if (w.empty()) throw Error("window outside map");
  double mass = 0.0, sx = 0.0, sy = 0.0;
  for (int y = w.y; y < w.bottom(); ++y) {
    const auto row = map.values.row(y - map.origin_y);
    for (int x = w.x; x < w.right(); ++x) {
      const double v = row[x - map.origin_x];
      mass += v;
      sx += v * (x + 0.5);
      sy += v * (y + 0.5);
    }
  }
  if (!(mass > 0.0)) throw VanishedEvidence();
  return {sx / mass, sy / mass};
}

MeanShiftResult mean_shift(const MaskedMap& map, const BoundingBox& init, int frame_w, int frame_h,
                           const MeanShiftParams& params) {
  if (init.empty()) throw Error("degenerate bounding box");
  if (intersect(init, map.extent()).empty()) throw Error("initial window does not intersect the map");

  MeanShiftResult r;
  r.center = init.center();
  BoundingBox window = init;
  for (int iter = 0; iter < params.max_iter; ++iter) {
    const Point2 next = weighted_centroid(map, window);
    const double step = distance(next, r.center);
    r.center = next;
    r.shifts.push_back(step);
    r.iterations = iter + 1;
    window = centered_box(r.center, init.w, init.h);
    if (step < params.stop_eps) break;
  }
  r.box = clamp_into(centered_box(r.center, init.w, init.h), frame_w, frame_h);
  return r;
}

}  // namespace rspatio
