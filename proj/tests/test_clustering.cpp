#include <gtest/gtest.h>

#include <donseg/clustering.hpp>
#include <donseg/synthetic.hpp>

#include <numeric>
#include <random>
#include <set>

#include "oracles.hpp"

using namespace donseg;

namespace {

PointCloud blob(std::size_t n, const Point3& c, double spread, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(-spread, spread);
  std::vector<Point3> pts;
  for (std::size_t i = 0; i < n; ++i) pts.push_back(c + Point3(U(rng), U(rng), U(rng)));
  return PointCloud(pts);
}

PointCloud concat(const PointCloud& a, const PointCloud& b) {
  std::vector<Point3> pts(a.points().begin(), a.points().end());
  pts.insert(pts.end(), b.points().begin(), b.points().end());
  return PointCloud(pts);
}

IndexList iota(std::size_t n) {
  IndexList v(n);
  std::iota(v.begin(), v.end(), Index{0});
  return v;
}

std::set<IndexList> asSet(const std::vector<Cluster>& cs) {
  std::set<IndexList> s;
  for (const auto& c : cs) s.insert(c.indices);
  return s;
}

}  // namespace

TEST(EuclideanClusters, TwoSeparatedBlobs) {
  const PointCloud c = concat(blob(150, {0, 0, 0}, 0.3, 1), blob(150, {10, 0, 0}, 0.3, 2));
  const auto clusters = euclideanClusters(c, iota(c.size()), {0.5, 100, 100000});
  ASSERT_EQ(clusters.size(), 2u);
  EXPECT_EQ(clusters[0].size(), 150u);
  EXPECT_EQ(clusters[1].size(), 150u);
  EXPECT_EQ(clusters[0].minIndex(), 0u);  // equal size: lower index first
  EXPECT_EQ(clusters[1].minIndex(), 150u);
}

TEST(EuclideanClusters, TooSmallBlobDropped) {
  const PointCloud c = blob(50, {0, 0, 0}, 0.3, 3);
  EXPECT_TRUE(euclideanClusters(c, iota(c.size()), {0.5, 100, 100000}).empty());
}

TEST(EuclideanClusters, OversizedComponentDroppedNotSplit) {
  const PointCloud c = concat(blob(300, {0, 0, 0}, 0.3, 1), blob(120, {10, 0, 0}, 0.3, 2));
  const auto clusters = euclideanClusters(c, iota(c.size()), {0.5, 100, 200});
  ASSERT_EQ(clusters.size(), 1u);
  EXPECT_EQ(clusters[0].size(), 120u);
}

TEST(EuclideanClusters, ExcludedPointsDoNotBridge) {
  // Two rows of points joined only through the middle point.
  std::vector<Point3> pts;
  for (int i = 0; i < 5; ++i) pts.emplace_back(i * 0.1, 0, 0);
  pts.emplace_back(0.5, 0, 0);
  for (int i = 0; i < 5; ++i) pts.emplace_back(0.6 + i * 0.1, 0, 0);
  const PointCloud c(pts);
  EXPECT_EQ(euclideanClusters(c, iota(c.size()), {0.11, 1, 100}).size(), 1u);
  IndexList subset = iota(c.size());
  subset.erase(subset.begin() + 5);
  const auto split = euclideanClusters(c, subset, {0.11, 1, 100});
  ASSERT_EQ(split.size(), 2u);
  EXPECT_EQ(split[0].indices, (IndexList{0, 1, 2, 3, 4}));
  EXPECT_EQ(split[1].indices, (IndexList{6, 7, 8, 9, 10}));
}

TEST(EuclideanClusters, OrderingBySizeThenIndex) {
  const PointCloud c = concat(concat(blob(5, {0, 0, 0}, 0.1, 1), blob(9, {5, 0, 0}, 0.1, 2)),
                              blob(5, {9, 0, 0}, 0.1, 3));
  const auto clusters = euclideanClusters(c, iota(c.size()), {0.5, 1, 100});
  ASSERT_EQ(clusters.size(), 3u);
  EXPECT_EQ(clusters[0].size(), 9u);
  EXPECT_EQ(clusters[1].minIndex(), 0u);
  EXPECT_EQ(clusters[2].minIndex(), 14u);
}

TEST(EuclideanClusters, Errors) {
  const PointCloud c = blob(10, {0, 0, 0}, 1, 1);
  EXPECT_THROW(euclideanClusters(c, {0, 10}, {0.5, 1, 10}), IndexOutOfRange);
  EXPECT_THROW(euclideanClusters(c, {0}, {0.0, 1, 10}), InvalidArgument);
  EXPECT_THROW(euclideanClusters(c, {0}, {0.5, 0, 10}), InvalidArgument);
  EXPECT_THROW(euclideanClusters(c, {0}, {0.5, 11, 10}), InvalidArgument);
  EXPECT_TRUE(euclideanClusters(c, {}, {0.5, 1, 10}).empty());
}

TEST(EuclideanClusters, MatchesUnionFindOracle) {
  const PointCloud c = synthetic::randomCube(500, 0.0, 3.0, 44);
  const std::vector<Point3> pts(c.points().begin(), c.points().end());
  const auto got = euclideanClusters(c, iota(c.size()), {0.3, 1, 500});
  EXPECT_EQ(asSet(got), oracle::components(pts, iota(c.size()), 0.3, 1, 500));
}

TEST(EuclideanClusters, SubsetMatchesOracleAndInvariants) {
  const PointCloud c = synthetic::randomCube(1500, 0.0, 4.0, 45);
  const std::vector<Point3> pts(c.points().begin(), c.points().end());
  IndexList subset;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (i % 3 != 1) subset.push_back(i);
  const ClusterParams params{0.35, 3, 200};
  const auto got = euclideanClusters(c, subset, params);
  EXPECT_EQ(asSet(got), oracle::components(pts, subset, 0.35, 3, 200));
  std::set<Index> seen;
  for (const auto& cl : got) {
    EXPECT_GE(cl.size(), params.min_points);
    EXPECT_LE(cl.size(), params.max_points);
    for (Index i : cl.indices) {
      EXPECT_TRUE(seen.insert(i).second) << "clusters overlap at " << i;
      EXPECT_NE(i % 3, 1u);
    }
  }
}

TEST(EuclideanClusters, PermutationStable) {
  const PointCloud c = synthetic::randomCube(800, 0.0, 3.0, 46);
  std::vector<Index> perm = iota(c.size());
  std::shuffle(perm.begin(), perm.end(), std::mt19937_64(3));
  const PointCloud shuffled = c.select(perm);
  const ClusterParams params{0.3, 2, 800};
  auto original = euclideanClusters(c, iota(c.size()), params);
  auto relabeled = euclideanClusters(shuffled, iota(c.size()), params);
  std::set<IndexList> mapped;
  for (auto& cl : relabeled) {
    IndexList back;
    for (Index i : cl.indices) back.push_back(perm[i]);
    std::sort(back.begin(), back.end());
    mapped.insert(back);
  }
  EXPECT_EQ(asSet(original), mapped);
}

TEST(ClusterIdAttribute, MarksUnclustered) {
  std::vector<Cluster> cs{{{1, 2}}, {{4}}};
  EXPECT_EQ(clusterIdAttribute(5, cs), (std::vector<double>{-1, 0, 0, -1, 1}));
}
