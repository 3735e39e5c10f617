#include "rspatio/depth_segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace rspatio {

std::optional<DepthRange> valid_depth_range(const Image<std::uint16_t>& raw, std::uint16_t invalid) {
  std::optional<DepthRange> r;
  for (const std::uint16_t v : raw.pixels()) {
    if (v == invalid) continue;
    if (!r) {
      r = DepthRange{double(v), double(v)};
    } else {
      r->nearest = std::min(r->nearest, double(v));
      r->farthest = std::max(r->farthest, double(v));
    }
  }
  return r;
}

DepthFrame normalize_depth(const Image<std::uint16_t>& raw, std::uint16_t invalid, const DepthRange& range) {
  Image<double> values(raw.width(), raw.height());
  Mask valid(raw.width(), raw.height(), 0);
  const double span = range.farthest - range.nearest;
  auto src = raw.pixels();
  auto dst = values.pixels();
  auto ok = valid.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) {
    if (src[i] == invalid) continue;
    ok[i] = 1;
    if (span <= 0.0) {
      dst[i] = 255.0;
    } else {
      const double t = (range.farthest - src[i]) / span;
      dst[i] = 255.0 * std::clamp(t, 0.0, 1.0);
    }
  }
  return DepthFrame(std::move(values), std::move(valid));
}

DepthFrame normalize_depth(const Image<std::uint16_t>& raw, std::uint16_t invalid) {
  const auto range = valid_depth_range(raw, invalid);
  if (!range) throw Error("empty depth frame");
  return normalize_depth(raw, invalid, *range);
}

namespace {

int nearest_center(double v, const std::vector<double>& centers) {
  int best = 0;
  double best_d = std::abs(v - centers[0]);
  for (int c = 1; c < static_cast<int>(centers.size()); ++c) {
    const double d = std::abs(v - centers[c]);
    if (d < best_d) {
      best = c;
      best_d = d;
    }
  }
  return best;
}

std::vector<double> quantile_centers(const std::vector<double>& sorted, int k) {
  std::vector<double> c(k);
  for (int j = 0; j < k; ++j) {
    const auto idx = static_cast<std::size_t>((j + 0.5) / k * sorted.size());
    c[j] = sorted[std::min(idx, sorted.size() - 1)];
  }
  return c;
}

}  // namespace

ClusterMap kmeans_depth(const DepthFrame& depth, int k, int max_iter) {
  if (k < 2) throw Error("kmeans needs K >= 2");
  if (max_iter < 1) throw Error("kmeans needs max_iter >= 1");
  if (depth.values.empty()) throw Error("empty depth frame");

  std::vector<double> samples;
  samples.reserve(depth.values.size());
  const auto vals = depth.values.pixels();
  const auto ok = depth.valid.pixels();
  for (std::size_t i = 0; i < vals.size(); ++i)
    if (ok[i]) samples.push_back(vals[i]);
  // A frame with no valid pixel still gets a (single) cluster at 0.
  if (samples.empty()) samples.assign(vals.begin(), vals.end());

  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> distinct = sorted;
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  ClusterMap out;
  out.requested_k = k;
  const int kk = std::min<int>(k, static_cast<int>(distinct.size()));

  std::vector<double> centers = quantile_centers(sorted, kk);
  if (std::adjacent_find(centers.begin(), centers.end()) != centers.end())
    centers = quantile_centers(distinct, kk);

  std::vector<int> assign(samples.size(), -1);
  for (int iter = 0; iter < max_iter; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const int c = nearest_center(samples[i], centers);
      if (c != assign[i]) {
        assign[i] = c;
        changed = true;
      }
    }
    if (!changed) break;
    std::vector<double> sum(kk, 0.0);
    std::vector<std::size_t> n(kk, 0);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      sum[assign[i]] += samples[i];
      ++n[assign[i]];
    }
    for (int c = 0; c < kk; ++c)
      if (n[c] > 0) centers[c] = sum[c] / n[c];
  }

  // Lloyd stops at assignments that can still be improved by moving a single
  // point near a boundary. Hartigan passes remove those; a partition stable
  // under single moves is also a nearest-center partition.
  {
    std::vector<double> sum(kk, 0.0);
    std::vector<long long> n(kk, 0);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      sum[assign[i]] += samples[i];
      ++n[assign[i]];
    }
    for (int pass = 0; pass < 100; ++pass) {
      bool moved = false;
      for (std::size_t i = 0; i < samples.size(); ++i) {
        const int a = assign[i];
        if (n[a] < 2) continue;
        const double x = samples[i];
        const double da = x - sum[a] / n[a];
        const double remove_gain = n[a] / (n[a] - 1.0) * da * da;
        int best = a;
        double best_cost = remove_gain;
        for (int b = 0; b < kk; ++b) {
          if (b == a || n[b] == 0) continue;
          const double db = x - sum[b] / n[b];
          const double cost = n[b] / (n[b] + 1.0) * db * db;
          if (cost < best_cost - 1e-9 * (1.0 + remove_gain)) {
            best = b;
            best_cost = cost;
          }
        }
        if (best == a) continue;
        sum[a] -= x;
        --n[a];
        sum[best] += x;
        ++n[best];
        assign[i] = best;
        moved = true;
      }
      if (!moved) break;
    }
    for (int c = 0; c < kk; ++c)
      if (n[c] > 0) centers[c] = sum[c] / n[c];
  }

  // Quantile seeding keeps centers ordered and 1-D updates preserve the
  // order, but sort anyway so the invariant does not hinge on that argument.
  std::sort(centers.begin(), centers.end());
  out.centers = centers;
  out.labels = Image<int>(depth.width(), depth.height());
  auto labels = out.labels.pixels();
  for (std::size_t i = 0; i < vals.size(); ++i) labels[i] = nearest_center(vals[i], centers);
  return out;
}

Components connected_components(const ClusterMap& clusters, int origin_x, int origin_y) {
  const Image<int>& labels = clusters.labels;
  const int w = labels.width();
  const int h = labels.height();
  Components out;
  out.ids = Image<int>(w, h, -1);
  out.origin_x = origin_x;
  out.origin_y = origin_y;

  std::vector<std::pair<int, int>> stack;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (out.ids.at(x, y) >= 0) continue;
      const int id = static_cast<int>(out.records.size());
      const int label = labels.at(x, y);
      ComponentRecord rec;
      rec.cluster = label;
      rec.depth = clusters.centers.empty() ? 0.0 : clusters.centers[label];
      double sx = 0.0, sy = 0.0;

      out.ids.at(x, y) = id;
      stack.assign(1, {x, y});
      while (!stack.empty()) {
        const auto [cx, cy] = stack.back();
        stack.pop_back();
        ++rec.area;
        sx += cx + 0.5;
        sy += cy + 0.5;
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = cx + dx;
            const int ny = cy + dy;
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
            if (out.ids.at(nx, ny) >= 0 || labels.at(nx, ny) != label) continue;
            out.ids.at(nx, ny) = id;
            stack.emplace_back(nx, ny);
          }
        }
      }
      rec.centroid = {origin_x + sx / rec.area, origin_y + sy / rec.area};
      out.records.push_back(rec);
    }
  }
  return out;
}

ComponentMask target_component_mask(const Components& components, Point2 target_center, double target_depth,
                                    const BoundingBox& region, double depth_tolerance) {
  if (!contains(components.extent(), region)) throw Error("region outside frame");

  auto passes = [&](int id) {
    return std::abs(components.records[id].depth - target_depth) <= depth_tolerance;
  };

  int chosen = -1;
  const int cx = static_cast<int>(std::floor(target_center.x));
  const int cy = static_cast<int>(std::floor(target_center.y));
  if (components.extent().contains(cx, cy)) {
    const int id = components.ids.at(cx - components.origin_x, cy - components.origin_y);
    if (passes(id)) chosen = id;
  }

  if (chosen < 0) {
    std::vector<long long> inside(components.records.size(), 0);
    for (int y = region.y; y < region.bottom(); ++y)
      for (int x = region.x; x < region.right(); ++x)
        ++inside[components.ids.at(x - components.origin_x, y - components.origin_y)];
    long long best = 0;
    for (std::size_t id = 0; id < inside.size(); ++id) {
      if (inside[id] > best && passes(static_cast<int>(id))) {
        best = inside[id];
        chosen = static_cast<int>(id);
      }
    }
  }

  ComponentMask out;
  if (chosen < 0) {
    out.mask = Mask(region.w, region.h, 1);
    out.degraded = true;
    return out;
  }
  out.mask = Mask(region.w, region.h, 0);
  for (int y = 0; y < region.h; ++y)
    for (int x = 0; x < region.w; ++x)
      if (components.ids.at(region.x + x - components.origin_x, region.y + y - components.origin_y) == chosen)
        out.mask.at(x, y) = 1;
  return out;
}

}  // namespace rspatio
