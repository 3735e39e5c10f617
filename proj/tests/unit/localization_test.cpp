#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "rspatio/localization.hpp"

using namespace rspatio;

namespace {

MaskedMap map_of(Image<double> values, int ox = 0, int oy = 0) { return {std::move(values), ox, oy}; }

// Rectangular blob with a raised-cone profile: unimodal, centered at (cx, cy).
Image<double> cone(int w, int h, double cx, double cy, double radius) {
  Image<double> img(w, h, 0.0);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const double d = std::hypot(x + 0.5 - cx, y + 0.5 - cy);
      img.at(x, y) = std::max(0.0, radius - d);
    }
  return img;
}

}  // namespace

TEST(MaskedMap, IdentityZeroAndProduct) {
  std::mt19937_64 rng(1);
  Image<double> im(9, 7);
  for (double& v : im.pixels()) v = static_cast<double>(rng() % 100) / 7.0;
  EXPECT_EQ(masked_map(im, Mask(9, 7, 1)).values, im);
  const MaskedMap zero = masked_map(im, Mask(9, 7, 0));
  for (double v : zero.values.pixels()) EXPECT_EQ(v, 0.0);

  Mask m(9, 7);
  for (auto& v : m.pixels()) v = rng() % 2;
  const MaskedMap mm = masked_map(im, m, 3, 4);
  for (int y = 0; y < 7; ++y)
    for (int x = 0; x < 9; ++x) EXPECT_EQ(mm.values.at(x, y), m.at(x, y) ? im.at(x, y) : 0.0);
  EXPECT_EQ(mm.extent(), (BoundingBox{3, 4, 9, 7}));
  EXPECT_THROW(masked_map(im, Mask(9, 6, 1)), Error);
}

TEST(WeightedCentroid, Examples) {
  const MaskedMap uniform = map_of(Image<double>(20, 20, 1.0));
  const Point2 c = weighted_centroid(uniform, {2, 3, 10, 6});
  EXPECT_DOUBLE_EQ(c.x, 7.0);
  EXPECT_DOUBLE_EQ(c.y, 6.0);

  Image<double> point(20, 20, 0.0);
  point.at(4, 5) = 3.0;
  const Point2 p = weighted_centroid(map_of(point), {0, 0, 10, 10});
  EXPECT_DOUBLE_EQ(p.x, 4.5);  // pixel (4, 5) has its center at (4.5, 5.5)
  EXPECT_DOUBLE_EQ(p.y, 5.5);

  Image<double> two(20, 20, 0.0);
  two.at(2, 2) = 1.0;
  two.at(8, 6) = 1.0;
  const Point2 mid = weighted_centroid(map_of(two), {0, 0, 20, 20});
  EXPECT_DOUBLE_EQ(mid.x, 5.5);
  EXPECT_DOUBLE_EQ(mid.y, 4.5);
}

TEST(WeightedCentroid, OffsetOriginAndVanished) {
  Image<double> v(5, 5, 0.0);
  v.at(1, 1) = 2.0;
  const Point2 p = weighted_centroid(map_of(v, 10, 20), {10, 20, 5, 5});
  EXPECT_DOUBLE_EQ(p.x, 11.5);
  EXPECT_DOUBLE_EQ(p.y, 21.5);
  try {
    weighted_centroid(map_of(v, 10, 20), {13, 23, 2, 2});
    FAIL();
  } catch (const VanishedEvidence& e) {
    EXPECT_STREQ(e.what(), "vanished target evidence");
  }
  EXPECT_THROW(weighted_centroid(map_of(v, 10, 20), {0, 0, 5, 5}), Error);
}

TEST(MeanShift, FixedPoint) {
  const MaskedMap m = map_of(cone(40, 40, 20.0, 20.0, 8.0));
  const MeanShiftResult r = mean_shift(m, {10, 10, 20, 20}, 40, 40);
  EXPECT_EQ(r.iterations, 1);
  EXPECT_EQ(r.box, (BoundingBox{10, 10, 20, 20}));
}

TEST(MeanShift, UniformBlobOffset) {
  Image<double> v(60, 60, 0.0);
  oracle::paint(v, {24, 21, 10, 10}, 1.0);  // center (29, 26), init center (24, 26)
  const MeanShiftResult r = mean_shift(map_of(v), {14, 16, 20, 20}, 60, 60);
  EXPECT_NEAR(r.center.x, 29.0, 1.0);
  EXPECT_NEAR(r.center.y, 26.0, 1.0);
  EXPECT_EQ(r.box.w, 20);
  EXPECT_EQ(r.box.h, 20);
}

TEST(MeanShift, PointMassAttractor) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 30; ++t) {
    Image<double> v(50, 50, 0.0);
    const int px = 15 + static_cast<int>(rng() % 20);
    const int py = 15 + static_cast<int>(rng() % 20);
    v.at(px, py) = 1.0;
    const BoundingBox init{px - static_cast<int>(rng() % 15), py - static_cast<int>(rng() % 15), 16, 16};
    const MeanShiftResult r = mean_shift(map_of(v), init, 50, 50);
    EXPECT_NEAR(r.center.x, px + 0.5, 1.0);
    EXPECT_NEAR(r.center.y, py + 0.5, 1.0);
  }
}

TEST(MeanShift, MaskMonotonicity) {
  Image<double> v(60, 30, 0.0);
  oracle::paint(v, {5, 10, 6, 6}, 1.0);   // blob A, centroid (8, 13)
  oracle::paint(v, {40, 12, 4, 4}, 1.0);  // blob B, centroid (42, 14)
  const Point2 both = weighted_centroid(map_of(v), {0, 0, 60, 30});
  oracle::paint(v, {5, 10, 6, 6}, 0.0);
  const Point2 only_b = weighted_centroid(map_of(v), {0, 0, 60, 30});
  EXPECT_LT(both.x, only_b.x);
  EXPECT_DOUBLE_EQ(only_b.x, 42.0);
  EXPECT_DOUBLE_EQ(only_b.y, 14.0);
}

TEST(MeanShift, ShiftsNonIncreasingOnUnimodalBlobs) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 30; ++t) {
    const double cx = 30.0 + static_cast<double>(rng() % 20);
    const double cy = 30.0 + static_cast<double>(rng() % 20);
    const MaskedMap m = map_of(cone(80, 80, cx, cy, 14.0));
    const BoundingBox init = centered_box({cx + static_cast<double>(rng() % 9) - 4.0, cy + static_cast<double>(rng() % 9) - 4.0}, 24, 24);
    MeanShiftParams p;
    p.stop_eps = 0.01;
    const MeanShiftResult r = mean_shift(m, init, 80, 80, p);
    EXPECT_LE(r.iterations, p.max_iter);
    for (std::size_t i = 2; i < r.shifts.size(); ++i) EXPECT_LE(r.shifts[i], r.shifts[i - 1] + 1e-12);
  }
}

TEST(MeanShift, TerminatesAndPreservesSize) {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 50; ++t) {
    Image<double> v(40, 40);
    for (double& x : v.pixels()) x = static_cast<double>(rng() % 10);
    v.at(20, 20) = 1.0;
    const BoundingBox init{static_cast<int>(rng() % 30), static_cast<int>(rng() % 30), 3 + static_cast<int>(rng() % 20),
                           3 + static_cast<int>(rng() % 20)};
    MeanShiftParams p{5, 0.0};
    try {
      const MeanShiftResult r = mean_shift(map_of(v), init, 40, 40, p);
      EXPECT_LE(r.iterations, 5);
      EXPECT_EQ(r.box.w, init.w);
      EXPECT_EQ(r.box.h, init.h);
      EXPECT_TRUE(contains(frame_box(40, 40), r.box));
    } catch (const VanishedEvidence&) {
    }
  }
}

TEST(MeanShift, VanishedEvidence) {
  EXPECT_THROW(mean_shift(map_of(Image<double>(10, 10, 0.0)), {2, 2, 4, 4}, 10, 10), VanishedEvidence);
  EXPECT_THROW(mean_shift(map_of(Image<double>(10, 10, 1.0)), {20, 20, 4, 4}, 40, 40), Error);
}
