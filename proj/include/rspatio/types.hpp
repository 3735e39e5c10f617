#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rspatio {

/// Base error for every failure raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense row-major single-plane image.
template <typename T>
class Image {
 public:
  Image() = default;
  Image(int width, int height, T fill = T{})
      : width_(width), height_(height) {
    if (width < 0 || height < 0) throw Error("negative image size");
    data_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
  }

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return data_.empty(); }
  std::size_t size() const { return data_.size(); }

  T& at(int x, int y) { return data_[index(x, y)]; }
  const T& at(int x, int y) const { return data_[index(x, y)]; }

  std::span<T> row(int y) { return {data_.data() + index(0, y), static_cast<std::size_t>(width_)}; }
  std::span<const T> row(int y) const {
    return {data_.data() + index(0, y), static_cast<std::size_t>(width_)};
  }

  std::span<T> pixels() { return data_; }
  std::span<const T> pixels() const { return data_; }

  bool operator==(const Image&) const = default;

 private:
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  bool operator==(const Rgb&) const = default;
};

using ColorImage = Image<Rgb>;
using Mask = Image<std::uint8_t>;

/// Continuous image coordinate. Pixel (i, j) covers [i, i+1) x [j, j+1), so its
/// center sits at (i + 0.5, j + 0.5).
struct Point2 {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point2&) const = default;
};

inline double distance(Point2 a, Point2 b) { return std::hypot(a.x - b.x, a.y - b.y); }

/// Axis-aligned rectangle in pixel coordinates: top-left (x, y), extent (w, h).
struct BoundingBox {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  int right() const { return x + w; }
  int bottom() const { return y + h; }
  bool empty() const { return w <= 0 || h <= 0; }
  long long area() const { return empty() ? 0 : static_cast<long long>(w) * h; }
  Point2 center() const { return {x + w / 2.0, y + h / 2.0}; }
  bool contains(int px, int py) const { return px >= x && px < right() && py >= y && py < bottom(); }

  bool operator==(const BoundingBox&) const = default;
};

inline BoundingBox intersect(const BoundingBox& a, const BoundingBox& b) {
  const int x0 = std::max(a.x, b.x);
  const int y0 = std::max(a.y, b.y);
  const int x1 = std::min(a.right(), b.right());
  const int y1 = std::min(a.bottom(), b.bottom());
  if (x1 <= x0 || y1 <= y0) return {x0, y0, 0, 0};
  return {x0, y0, x1 - x0, y1 - y0};
}

inline bool contains(const BoundingBox& outer, const BoundingBox& inner) {
  return !inner.empty() && inner.x >= outer.x && inner.y >= outer.y && inner.right() <= outer.right() &&
         inner.bottom() <= outer.bottom();
}

inline BoundingBox frame_box(int width, int height) { return {0, 0, width, height}; }

/// Box of size w x h whose continuous center is as close as possible to `c`.
inline BoundingBox centered_box(Point2 c, int w, int h) {
  return {static_cast<int>(std::lround(c.x - w / 2.0)), static_cast<int>(std::lround(c.y - h / 2.0)), w, h};
}

/// Translate `b` so it lies inside a width x height frame; shrinks only when the
/// box is larger than the frame.
inline BoundingBox clamp_into(BoundingBox b, int width, int height) {
  b.w = std::min(b.w, width);
  b.h = std::min(b.h, height);
  b.x = std::clamp(b.x, 0, width - b.w);
  b.y = std::clamp(b.y, 0, height - b.h);
  return b;
}

/// Scale about the box center, rounding the new extent; never below 1x1.
inline BoundingBox scale_about_center(const BoundingBox& b, double factor) {
  const int w = std::max(1, static_cast<int>(std::lround(b.w * factor)));
  const int h = std::max(1, static_cast<int>(std::lround(b.h * factor)));
  return centered_box(b.center(), w, h);
}

template <typename T>
Image<T> crop(const Image<T>& img, const BoundingBox& box) {
  if (!contains(frame_box(img.width(), img.height()), box)) throw Error("crop region outside image");
  Image<T> out(box.w, box.h);
  for (int y = 0; y < box.h; ++y) {
    auto src = img.row(box.y + y).subspan(static_cast<std::size_t>(box.x), static_cast<std::size_t>(box.w));
    std::copy(src.begin(), src.end(), out.row(y).begin());
  }
  return out;
}

/// Normalized depth: values in [0, 255], larger is closer. Pixels without a
/// sensor reading carry value 0 and a cleared `valid` flag.
struct DepthFrame {
  Image<double> values;
  Mask valid;

  DepthFrame() = default;
  explicit DepthFrame(Image<double> v) : values(std::move(v)), valid(values.width(), values.height(), 1) {}
  DepthFrame(Image<double> v, Mask m) : values(std::move(v)), valid(std::move(m)) {
    if (values.width() != valid.width() || values.height() != valid.height())
      throw Error("depth validity mask size mismatch");
  }

  int width() const { return values.width(); }
  int height() const { return values.height(); }
  bool operator==(const DepthFrame&) const = default;
};

inline DepthFrame crop(const DepthFrame& d, const BoundingBox& box) {
  return DepthFrame(crop(d.values, box), crop(d.valid, box));
}

/// Aligned color + normalized depth for one time step.
struct RgbdFrame {
  ColorImage color;
  DepthFrame depth;

  RgbdFrame() = default;
  RgbdFrame(ColorImage c, DepthFrame d) : color(std::move(c)), depth(std::move(d)) {
    if (color.width() != depth.width() || color.height() != depth.height())
      throw Error("color and depth dimensions differ");
  }

  int width() const { return color.width(); }
  int height() const { return color.height(); }
  BoundingBox bounds() const { return frame_box(width(), height()); }
};

}  // namespace rspatio
