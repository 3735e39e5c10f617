#include <gtest/gtest.h>

#include <algorithm>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "rspatio/object_model.hpp"

using namespace rspatio;

namespace {

RgbdFrame two_color_frame(Rgb object, Rgb background, const BoundingBox& box, int w = 60, int h = 60) {
  ColorImage c = oracle::solid(w, h, background);
  oracle::paint(c, box, object);
  Image<double> d(w, h, 40.0);
  oracle::paint(d, box, 180.0);
  return RgbdFrame(std::move(c), DepthFrame(std::move(d)));
}

ModelParams all_bins() {
  ModelParams p;
  p.alpha = 1.0;
  return p;
}

}  // namespace

TEST(ActiveBins, SizeAndDeterminism) {
  const auto a = select_active_bins(512, 0.7, 42);
  EXPECT_EQ(a.size(), 358u);  // round(0.7 * 512)
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
  EXPECT_EQ(std::adjacent_find(a.begin(), a.end()), a.end());
  EXPECT_EQ(a, select_active_bins(512, 0.7, 42));
  EXPECT_NE(a, select_active_bins(512, 0.7, 43));
  EXPECT_EQ(select_active_bins(10, 1.0, 0).size(), 10u);
  EXPECT_THROW(select_active_bins(10, 0.0, 0), Error);
  EXPECT_THROW(select_active_bins(10, 1.5, 0), Error);
}

TEST(LogLikelihood, Examples) {
  const std::vector<int> active{0, 1, 2};
  const std::vector<double> obj{0.2, 0.1, 0.3, 0.4};
  const std::vector<double> bg{0.1, 0.2, 0.3, 0.4};
  const auto lr = log_likelihood_ratio(obj, bg, active, 1e-6);
  EXPECT_NEAR(lr[0], std::log(2.0), 1e-15);
  EXPECT_NEAR(lr[0], 0.6931, 1e-4);
  EXPECT_EQ(lr[1], 0.0);  // negative clamped
  EXPECT_EQ(lr[2], 0.0);  // equal histograms
  EXPECT_EQ(lr[3], 0.0);  // inactive
}

TEST(LogLikelihood, EpsilonFloors) {
  const std::vector<int> active{0, 1};
  const std::vector<double> obj{0.5, 0.0};
  const std::vector<double> bg{0.0, 0.5};
  const auto lr = log_likelihood_ratio(obj, bg, active, 1e-6);
  EXPECT_NEAR(lr[0], std::log(0.5 / 1e-6), 1e-12);
  EXPECT_EQ(lr[1], 0.0);
}

TEST(BuildModel, EqualHistogramsGiveZeros) {
  // a uniformly colored frame: object and ring histograms coincide
  const RgbdFrame f(oracle::solid(40, 40, {90, 90, 90}), DepthFrame(Image<double>(40, 40, 100.0)));
  const ObjectModel m = build_model(f, {10, 10, 12, 12}, all_bins());
  for (double v : m.lr) EXPECT_EQ(v, 0.0);
}

TEST(BuildModel, Separability) {
  const BoundingBox box{20, 20, 16, 16};
  const RgbdFrame f = two_color_frame({200, 30, 30}, {30, 200, 30}, box);
  const auto q = Quantizer::rgb();
  const ObjectModel m = build_model(f, box, all_bins());
  EXPECT_GT(m.lr[q.bin(Rgb{200, 30, 30})], 0.0);
  EXPECT_EQ(m.lr[q.bin(Rgb{30, 200, 30})], 0.0);
  EXPECT_NEAR(m.lr[q.bin(Rgb{200, 30, 30})], std::log(1.0 / 1e-6), 1e-9);
  EXPECT_EQ(m.target_depth, 180.0);
}

TEST(BuildModel, InvariantsOnRandomFrames) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 20; ++t) {
    ColorImage c = oracle::random_image(rng, 50, 50, 12);
    const RgbdFrame f(std::move(c), DepthFrame(Image<double>(50, 50, 10.0)));
    ModelParams p;
    p.seed = t;
    const BoundingBox box{static_cast<int>(rng() % 30), static_cast<int>(rng() % 30), 10 + static_cast<int>(rng() % 10),
                          10 + static_cast<int>(rng() % 10)};
    const ObjectModel m = build_model(f, box, p);
    EXPECT_EQ(m.active_bins.size(), static_cast<std::size_t>(std::lround(0.7 * 512)));
    std::vector<bool> active(512, false);
    for (int b : m.active_bins) active[b] = true;
    for (int b = 0; b < 512; ++b) {
      EXPECT_GE(m.lr[b], 0.0);
      if (!active[b]) EXPECT_EQ(m.lr[b], 0.0);
    }
    EXPECT_EQ(m, build_model(f, box, p));
  }
}

TEST(BuildModel, Errors) {
  const RgbdFrame f(oracle::solid(20, 20, {0, 0, 0}), DepthFrame(Image<double>(20, 20, 0.0)));
  try {
    build_model(f, {2, 2, 0, 5}, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "degenerate bounding box");
  }
  try {
    build_model(f, {15, 15, 10, 10}, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "bounding box outside frame");
  }
  EXPECT_THROW(build_model(f, {0, 0, 20, 20}, {}), Error);  // no background ring left
}

TEST(BackgroundRing, ClippedAndExcludesObject) {
  ColorImage c = oracle::solid(30, 30, {0, 0, 0});
  oracle::paint(c, {0, 0, 10, 10}, {255, 255, 255});
  const auto q = Quantizer::rgb();
  // ring of margin 5 around the white box, clipped to the frame: 15x15 - 10x10 = 125 black pixels
  const auto h = background_histogram(c, {0, 0, 10, 10}, 5, q);
  EXPECT_EQ(h[0], 1.0);
  EXPECT_EQ(default_background_margin({0, 0, 10, 40}), 10);
  EXPECT_EQ(default_background_margin({0, 0, 50, 40}), 20);
}

TEST(MedianDepth, ValidOnlyAndEvenCount) {
  Image<double> v(4, 1);
  const double vals[] = {10, 30, 20, 99};
  std::copy(std::begin(vals), std::end(vals), v.pixels().begin());
  Mask valid(4, 1, 1);
  valid.at(3, 0) = 0;
  EXPECT_EQ(median_depth(DepthFrame(v, valid), {0, 0, 4, 1}), 20.0);
  EXPECT_EQ(median_depth(DepthFrame(v), {0, 0, 4, 1}), 25.0);
}

TEST(LikelihoodMap, Examples) {
  std::mt19937_64 rng(31);
  const ColorImage img = oracle::random_image(rng, 30, 30, 5);
  const auto q = Quantizer::rgb();

  ObjectModel zero;
  zero.lr.assign(512, 0.0);
  const Image<double> flat = likelihood_map(img, {0, 0, 30, 30}, zero, q);
  for (double v : flat.pixels()) EXPECT_EQ(v, 0.0);

  const BoundingBox region{4, 5, 20, 18};
  const int target_bin = q.bin(img.at(10, 10));
  ObjectModel one = zero;
  one.lr[target_bin] = 1.0;
  one.active_bins = {target_bin};
  const Image<double> im = likelihood_map(img, region, one, q);
  EXPECT_EQ(im.width(), region.w);
  EXPECT_EQ(im.height(), region.h);
  double sum = 0.0;
  for (double v : im.pixels()) sum += v;
  EXPECT_EQ(sum, oracle::tally(img, region, 8)[target_bin]);

  ObjectModel rnd = zero;
  for (double& v : rnd.lr) v = static_cast<double>(rng() % 1000) / 100.0;
  const Image<double> im2 = likelihood_map(img, region, rnd, q);
  for (int y = 0; y < region.h; ++y)
    for (int x = 0; x < region.w; ++x)
      EXPECT_EQ(im2.at(x, y), rnd.lr[oracle::rgb_bin(img.at(region.x + x, region.y + y), 8)]);

  try {
    likelihood_map(img, {25, 25, 10, 10}, one, q);
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "region outside frame");
  }
}

TEST(UpdateModel, Examples) {
  ObjectModel prev;
  prev.lr = {0.0, 2.0, 0.5};
  prev.active_bins = {0, 1, 2};
  prev.target_depth = 100.0;
  ObjectModel cur = prev;
  cur.lr = {1.0, 0.0, 0.5};
  cur.target_depth = 200.0;

  EXPECT_EQ(update_model(prev, prev, 0.1), prev);
  const ObjectModel u = update_model(prev, cur, 0.1);
  EXPECT_NEAR(u.lr[0], 0.1, 1e-15);
  EXPECT_NEAR(u.lr[1], 1.8, 1e-15);
  EXPECT_NEAR(u.target_depth, 110.0, 1e-12);
  EXPECT_EQ(update_model(prev, cur, 0.0), prev);

  ObjectModel bad = cur;
  bad.lr.push_back(0.0);
  EXPECT_THROW(update_model(prev, bad, 0.1), Error);
  EXPECT_THROW(update_model(prev, cur, 1.5), Error);
}

TEST(UpdateModel, ConvexBoundsOnRandomHistograms) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(0.0, 5.0);
  for (int t = 0; t < 200; ++t) {
    ObjectModel a, b;
    a.lr.resize(64);
    b.lr.resize(64);
    for (int i = 0; i < 64; ++i) {
      a.lr[i] = rng() % 3 ? u(rng) : 0.0;
      b.lr[i] = rng() % 3 ? u(rng) : 0.0;
    }
    const ObjectModel m = update_model(a, b, 0.1);
    for (int i = 0; i < 64; ++i) {
      EXPECT_GE(m.lr[i], std::min(a.lr[i], b.lr[i]));
      EXPECT_LE(m.lr[i], std::max(a.lr[i], b.lr[i]));
      EXPECT_GE(m.lr[i], 0.0);
    }
  }
}

TEST(ModelHash, SensitiveToContent) {
  ObjectModel a;
  a.lr = {0.0, 1.0};
  a.active_bins = {1};
  ObjectModel b = a;
  EXPECT_EQ(a.hash(), b.hash());
  b.lr[1] = std::nextafter(1.0, 2.0);
  EXPECT_NE(a.hash(), b.hash());
  b = a;
  b.target_depth = 1.0;
  EXPECT_NE(a.hash(), b.hash());
}
