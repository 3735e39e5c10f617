#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "rspatio/depth_segmentation.hpp"

using namespace rspatio;

namespace {

ClusterMap labels_only(const Image<int>& labels, std::vector<double> centers) {
  ClusterMap m;
  m.labels = labels;
  m.centers = std::move(centers);
  m.requested_k = static_cast<int>(m.centers.size());
  return m;
}

Image<int> from_rows(const std::vector<std::string>& rows) {
  Image<int> img(static_cast<int>(rows[0].size()), static_cast<int>(rows.size()));
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) img.at(x, y) = rows[y][x] - '0';
  return img;
}

}  // namespace

TEST(NormalizeDepth, AffineInversion) {
  Image<std::uint16_t> raw(4, 1);
  oracle::assign(raw, {1000, 2000, 1500, 0});
  const DepthFrame d = normalize_depth(raw);
  EXPECT_EQ(d.values.at(0, 0), 255.0);
  EXPECT_EQ(d.values.at(1, 0), 0.0);
  EXPECT_EQ(d.values.at(2, 0), 127.5);
  EXPECT_EQ(d.values.at(3, 0), 0.0);
  EXPECT_EQ(d.valid.at(3, 0), 0);
  EXPECT_EQ(d.valid.at(2, 0), 1);
}

TEST(NormalizeDepth, ConstantAndEmpty) {
  const DepthFrame d = normalize_depth(Image<std::uint16_t>(3, 3, 1234));
  for (double v : d.values.pixels()) EXPECT_EQ(v, 255.0);
  try {
    normalize_depth(Image<std::uint16_t>(3, 3, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_STREQ(e.what(), "empty depth frame");
  }
}

TEST(NormalizeDepth, MonotoneInversionProperty) {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 20; ++t) {
    Image<std::uint16_t> raw(16, 16);
    for (auto& v : raw.pixels()) v = static_cast<std::uint16_t>(rng() % 8000);
    const DepthFrame d = normalize_depth(raw);
    for (std::size_t i = 0; i < raw.size(); ++i) {
      EXPECT_GE(d.values.pixels()[i], 0.0);
      EXPECT_LE(d.values.pixels()[i], 255.0);
      for (std::size_t j = 0; j < raw.size(); j += 7) {
        if (!raw.pixels()[i] || !raw.pixels()[j]) continue;
        if (raw.pixels()[i] < raw.pixels()[j]) EXPECT_GT(d.values.pixels()[i], d.values.pixels()[j]);
      }
    }
  }
}

TEST(NormalizeDepth, SharedRangeKeepsSurfaceFixed) {
  Image<std::uint16_t> a(2, 1), b(2, 1);
  oracle::assign(a, {1000, 3000});
  oracle::assign(b, {2000, 3000});
  const DepthRange r{1000, 3000};
  EXPECT_EQ(normalize_depth(a, 0, r).values.at(1, 0), normalize_depth(b, 0, r).values.at(1, 0));
  EXPECT_EQ(normalize_depth(b, 0, r).values.at(0, 0), 127.5);
}

TEST(KMeans, TwoSeparatedValues) {
  Image<double> v(10, 10, 20.0);
  oracle::paint(v, {0, 0, 4, 10}, 200.0);
  const ClusterMap m = kmeans_depth(DepthFrame(v), 2);
  ASSERT_EQ(m.k(), 2);
  EXPECT_EQ(m.centers[0], 20.0);
  EXPECT_EQ(m.centers[1], 200.0);
  std::vector<int> assign(v.pixels().begin(), v.pixels().end());
  for (std::size_t i = 0; i < v.size(); ++i) assign[i] = m.labels.pixels()[i];
  std::vector<double> vals(v.pixels().begin(), v.pixels().end());
  EXPECT_EQ(oracle::wcss(vals, assign, 2), 0.0);
}

TEST(KMeans, ConstantReducesK) {
  const ClusterMap m = kmeans_depth(DepthFrame(Image<double>(5, 5, 77.0)), 2);
  EXPECT_EQ(m.k(), 1);
  EXPECT_EQ(m.requested_k, 2);
  for (int l : m.labels.pixels()) EXPECT_EQ(l, 0);
  EXPECT_THROW(kmeans_depth(DepthFrame(Image<double>(5, 5, 77.0)), 1), Error);
}

TEST(KMeans, SingleSwapLocalOptimality) {
  std::mt19937_64 rng(123);
  for (int t = 0; t < 15; ++t) {
    Image<double> v(14, 12);
    for (double& x : v.pixels()) x = static_cast<double>(rng() % 256);
    const int k = 3 + t % 3;
    const ClusterMap m = kmeans_depth(DepthFrame(v), k);
    std::vector<double> vals(v.pixels().begin(), v.pixels().end());
    std::vector<int> assign(m.labels.pixels().begin(), m.labels.pixels().end());
    const double base = oracle::wcss(vals, assign, m.k());
    for (std::size_t i = 0; i < vals.size(); ++i) {
      for (int c = 0; c < m.k(); ++c) {
        if (c == assign[i]) continue;
        auto moved = assign;
        moved[i] = c;
        EXPECT_LE(base, oracle::wcss(vals, moved, m.k()) + 1e-6) << "pixel " << i << " -> cluster " << c;
      }
    }
  }
}

TEST(KMeans, InvariantsAndDeterminism) {
  std::mt19937_64 rng(5);
  Image<double> v(20, 20);
  for (double& x : v.pixels()) x = static_cast<double>(rng() % 256);
  Mask valid(20, 20, 1);
  for (auto& m : valid.pixels()) m = rng() % 5 ? 1 : 0;
  const DepthFrame d(v, valid);
  const ClusterMap a = kmeans_depth(d, 4);
  const ClusterMap b = kmeans_depth(d, 4);
  EXPECT_EQ(a.labels, b.labels);
  EXPECT_EQ(a.centers, b.centers);
  EXPECT_TRUE(std::is_sorted(a.centers.begin(), a.centers.end()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    const int l = a.labels.pixels()[i];
    ASSERT_GE(l, 0);
    ASSERT_LT(l, a.k());
    for (int c = 0; c < a.k(); ++c)
      EXPECT_LE(std::abs(v.pixels()[i] - a.centers[l]), std::abs(v.pixels()[i] - a.centers[c]));
  }
}

TEST(KMeans, InvalidPixelsDoNotMoveCenters) {
  Image<double> v(6, 1);
  oracle::assign(v, {10, 10, 10, 200, 200, 0});
  Mask valid(6, 1, 1);
  valid.at(5, 0) = 0;
  const ClusterMap m = kmeans_depth(DepthFrame(v, valid), 2);
  EXPECT_EQ(m.centers, (std::vector<double>{10.0, 200.0}));
  EXPECT_EQ(m.labels.at(5, 0), 0);
}

TEST(Components, Uniform) {
  const Components c = connected_components(labels_only(Image<int>(7, 5, 0), {0.0}));
  ASSERT_EQ(c.records.size(), 1u);
  EXPECT_EQ(c.records[0].area, 35);
  EXPECT_DOUBLE_EQ(c.records[0].centroid.x, 3.5);
}

TEST(Components, SeparatedBlobs) {
  const Image<int> img = from_rows({"00100", "00100", "00100"});
  const Components c = connected_components(labels_only(img, {0.0, 1.0}));
  int zeros = 0;
  for (const auto& r : c.records) zeros += r.cluster == 0;
  EXPECT_EQ(zeros, 2);
  EXPECT_EQ(static_cast<int>(c.records.size()), oracle::count_components(img));
}

TEST(Components, CheckerboardIsConnectedDiagonally) {
  const Image<int> img = from_rows({"0101", "1010", "0101", "1010"});
  const Components c = connected_components(labels_only(img, {0.0, 1.0}));
  ASSERT_EQ(c.records.size(), 2u);
  EXPECT_EQ(c.records[0].area, 8);
  EXPECT_EQ(c.records[1].area, 8);
}

TEST(Components, PartitionMatchesUnionFind) {
  std::mt19937_64 rng(44);
  for (int t = 0; t < 30; ++t) {
    Image<int> img(13, 11);
    for (int& l : img.pixels()) l = static_cast<int>(rng() % 3);
    const Components c = connected_components(labels_only(img, {0.0, 1.0, 2.0}), 5, 7);
    Image<int> roots;
    EXPECT_EQ(static_cast<int>(c.records.size()), oracle::count_components(img, &roots));
    long long total = 0;
    for (const auto& r : c.records) total += r.area;
    EXPECT_EQ(total, 13 * 11);
    // same partition: equal ids iff equal union-find roots
    for (std::size_t i = 0; i < img.size(); i += 3)
      for (std::size_t j = 0; j < img.size(); j += 5)
        EXPECT_EQ(c.ids.pixels()[i] == c.ids.pixels()[j], roots.pixels()[i] == roots.pixels()[j]);
    EXPECT_EQ(c.extent(), (BoundingBox{5, 7, 13, 11}));
  }
}

TEST(TargetMask, SingleMatchingComponent) {
  const Image<int> img = from_rows({"0000", "0110", "0110", "0000"});
  const Components c = connected_components(labels_only(img, {40.0, 180.0}));
  const ComponentMask m = target_component_mask(c, {2.0, 2.0}, 185.0, {0, 0, 4, 4});
  EXPECT_FALSE(m.degraded);
  for (int y = 0; y < 4; ++y)
    for (int x = 0; x < 4; ++x) EXPECT_EQ(m.mask.at(x, y), img.at(x, y));
}

TEST(TargetMask, CenterOnBackgroundFallsBackToLargestPassing) {
  const Image<int> img = from_rows({"000000", "011000", "011000", "000000", "000011", "000000"});
  const Components c = connected_components(labels_only(img, {40.0, 180.0}));
  const ComponentMask m = target_component_mask(c, {0.5, 5.5}, 180.0, {0, 0, 6, 6});
  EXPECT_FALSE(m.degraded);
  EXPECT_EQ(m.mask.at(1, 1), 1);
  EXPECT_EQ(m.mask.at(4, 4), 0);
  EXPECT_EQ(m.mask.at(0, 5), 0);
}

TEST(TargetMask, NoMatchDegrades) {
  const Components c = connected_components(labels_only(Image<int>(4, 4, 0), {40.0}));
  const ComponentMask m = target_component_mask(c, {2.0, 2.0}, 200.0, {1, 1, 2, 2});
  EXPECT_TRUE(m.degraded);
  EXPECT_EQ(m.mask, Mask(2, 2, 1));
  EXPECT_THROW(target_component_mask(c, {2.0, 2.0}, 200.0, {3, 3, 2, 2}), Error);
}
