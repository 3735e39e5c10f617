#include "rspatio/object_model.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <numeric>
#include <random>

namespace rspatio {

namespace {

void fnv_mix(std::uint64_t& h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
}

void require_inside(const RgbdFrame& frame, const BoundingBox& box) {
  if (box.empty()) throw Error("degenerate bounding box");
  if (!contains(frame.bounds(), box)) throw Error("bounding box outside frame");
}

}  // namespace

std::uint64_t ObjectModel::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  fnv_mix(h, lr.data(), lr.size() * sizeof(double));
  fnv_mix(h, active_bins.data(), active_bins.size() * sizeof(int));
  fnv_mix(h, &target_depth, sizeof target_depth);
  return h;
}

int default_background_margin(const BoundingBox& object) {
  return std::max(10, static_cast<int>(0.5 * std::min(object.w, object.h)));
}

std::vector<int> select_active_bins(int bin_count, double alpha, std::uint64_t seed) {
  if (bin_count <= 0) throw Error("bin count must be positive");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error("alpha must be in (0, 1]");
  const int k = static_cast<int>(std::lround(alpha * bin_count));
  std::vector<int> bins(bin_count);
  std::iota(bins.begin(), bins.end(), 0);
  // mt19937_64 output is fixed by the standard; distributions are not, so the
  // draw below avoids them to stay reproducible across standard libraries.
  std::mt19937_64 rng(seed);
  for (int i = 0; i < k; ++i) {
    const auto remaining = static_cast<std::uint64_t>(bin_count - i);
    const int j = i + static_cast<int>(rng() % remaining);
    std::swap(bins[i], bins[j]);
  }
  bins.resize(k);
  std::sort(bins.begin(), bins.end());
  return bins;
}

std::vector<double> log_likelihood_ratio(std::span<const double> h_obj, std::span<const double> h_bg,
                                         std::span<const int> active_bins, double epsilon) {
  if (h_obj.size() != h_bg.size()) throw Error("histogram size mismatch");
  if (!(epsilon > 0.0)) throw Error("epsilon must be positive");
  std::vector<double> lr(h_obj.size(), 0.0);
  for (int b : active_bins) {
    if (b < 0 || static_cast<std::size_t>(b) >= lr.size()) throw Error("active bin out of range");
    lr[b] = std::max(std::log(std::max(h_obj[b], epsilon) / std::max(h_bg[b], epsilon)), 0.0);
  }
  return lr;
}

std::vector<double> background_histogram(const ColorImage& img, const BoundingBox& object, int margin,
                                         const Quantizer& q) {
  const BoundingBox outer =
      intersect({object.x - margin, object.y - margin, object.w + 2 * margin, object.h + 2 * margin},
                frame_box(img.width(), img.height()));
  std::vector<std::uint64_t> tally(q.bin_count(), 0);
  std::uint64_t total = 0;
  for (int y = outer.y; y < outer.bottom(); ++y) {
    const auto row = img.row(y);
    for (int x = outer.x; x < outer.right(); ++x) {
      if (object.contains(x, y)) continue;
      ++tally[q.bin(row[x])];
      ++total;
    }
  }
  if (total == 0) throw Error("empty background region");
  std::vector<double> h(tally.size());
  for (std::size_t b = 0; b < tally.size(); ++b) h[b] = static_cast<double>(tally[b]) / total;
  return h;
}

double median_depth(const DepthFrame& depth, const BoundingBox& region) {
  std::vector<double> v;
  v.reserve(static_cast<std::size_t>(region.area()));
  for (int y = region.y; y < region.bottom(); ++y)
    for (int x = region.x; x < region.right(); ++x)
      if (depth.valid.at(x, y)) v.push_back(depth.values.at(x, y));
  if (v.empty()) return 0.0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  if (v.size() % 2 == 1) return v[mid];
  const double hi = v[mid];
  const double lo = *std::max_element(v.begin(), v.begin() + mid);
  return 0.5 * (lo + hi);
}

ObjectModel build_model(const RgbdFrame& frame, const BoundingBox& object, const ModelParams& params) {
  require_inside(frame, object);
  const Quantizer& q = params.quantizer;
  if (q.channels() != 3) throw Error("object model needs an RGB quantizer");
  const int margin = params.background_margin > 0 ? params.background_margin : default_background_margin(object);

  const std::vector<double> h_obj = compute_histogram(frame.color, object, q);
  const std::vector<double> h_bg = background_histogram(frame.color, object, margin, q);

  ObjectModel m;
  m.epsilon = params.epsilon;
  m.alpha = params.alpha;
  m.rng_seed = params.seed;
  m.active_bins = select_active_bins(q.bin_count(), params.alpha, params.seed);
  m.lr = log_likelihood_ratio(h_obj, h_bg, m.active_bins, params.epsilon);
  m.target_depth = median_depth(frame.depth, object);
  return m;
}

Image<double> likelihood_map(const ColorImage& img, const BoundingBox& region, const ObjectModel& model,
                             const Quantizer& q) {
  if (region.empty() || !contains(frame_box(img.width(), img.height()), region))
    throw Error("region outside frame");
  if (model.bins() != q.bin_count()) throw Error("model and quantizer disagree on bin count");
  Image<double> im(region.w, region.h);
  for (int y = 0; y < region.h; ++y) {
    const auto src = img.row(region.y + y);
    auto dst = im.row(y);
    for (int x = 0; x < region.w; ++x) dst[x] = model.lr[q.bin(src[region.x + x])];
  }
  return im;
}

ObjectModel update_model(const ObjectModel& prev, const ObjectModel& current, double lambda) {
  if (prev.bins() != current.bins()) throw Error("model shape mismatch");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw Error("forgetting factor must be in [0, 1]");
  ObjectModel out = prev;
  for (int b = 0; b < prev.bins(); ++b) out.lr[b] = lambda * current.lr[b] + (1.0 - lambda) * prev.lr[b];
  out.target_depth = lambda * current.target_depth + (1.0 - lambda) * prev.target_depth;
  if (lambda == 0.0) return out;
  out.active_bins.clear();
  std::set_union(prev.active_bins.begin(), prev.active_bins.end(), current.active_bins.begin(),
                 current.active_bins.end(), std::back_inserter(out.active_bins));
  return out;
}

}  // namespace rspatio
