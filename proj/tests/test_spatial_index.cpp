#include <gtest/gtest.h>

#include <donseg/parallel.hpp>
#include <donseg/spatial_index.hpp>
#include <donseg/synthetic.hpp>

#include <random>

#include "oracles.hpp"

using namespace donseg;

namespace {

std::vector<Point3> copyPoints(const PointCloud& c) {
  return {c.points().begin(), c.points().end()};
}

}  // namespace

TEST(SpatialIndex, EmptyCloudReturnsNothing) {
  const SpatialIndex index{PointCloud{}};
  EXPECT_TRUE(index.radiusSearch(Point3(0, 0, 0), 1.0).empty());
  EXPECT_TRUE(index.radiusSearch(Point3(5, -3, 2), 100.0).empty());
}

TEST(SpatialIndex, SinglePointFindsItself) {
  const PointCloud c({Point3(1.5, -2.0, 0.25)});
  const SpatialIndex index(c);
  for (double r : {1e-9, 0.5, 10.0})
    EXPECT_EQ(index.radiusSearch(c[0], r), IndexList{0});
}

TEST(SpatialIndex, BoundaryIsInclusive) {
  const PointCloud c({Point3(0.5, 0, 0), Point3(0, 1.0, 0), Point3(0, 0, 1.5)});
  EXPECT_EQ(radiusSearch(buildIndex(c), Point3::Zero(), 1.0), (IndexList{0, 1}));
}

TEST(SpatialIndex, InvalidRadius) {
  const SpatialIndex index(synthetic::randomCube(10, 0, 1, 1));
  EXPECT_THROW(index.radiusSearch(Point3::Zero(), 0.0), InvalidArgument);
  EXPECT_THROW(index.radiusSearch(Point3::Zero(), -1.0), InvalidArgument);
  EXPECT_THROW(index.radiusSearch(Point3::Zero(), std::nan("")), InvalidArgument);
  EXPECT_THROW(index.radiusSearch(Point3::Zero(), std::numeric_limits<double>::infinity()),
               InvalidArgument);
}

TEST(SpatialIndex, DuplicatePointsAreDistinctIndices) {
  const PointCloud c({Point3(1, 1, 1), Point3(1, 1, 1), Point3(1, 1, 1), Point3(3, 3, 3)});
  EXPECT_EQ(SpatialIndex(c).radiusSearch(Point3(1, 1, 1), 0.1), (IndexList{0, 1, 2}));
}

TEST(SpatialIndex, ManyCoincidentPoints) {
  std::vector<Point3> pts(1000, Point3(2, 2, 2));
  pts.emplace_back(0, 0, 0);
  const SpatialIndex index{PointCloud(pts)};
  EXPECT_EQ(index.radiusSearch(Point3(2, 2, 2), 0.5).size(), 1000u);
  EXPECT_EQ(index.radiusSearch(Point3(0, 0, 0), 0.5), IndexList{1000});
}

TEST(SpatialIndex, UnitCubeMatchesBruteForce) {
  const PointCloud c = synthetic::randomCube(1000, 0.0, 1.0, 11);
  const auto pts = copyPoints(c);
  const SpatialIndex index(c);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-0.1, 1.1), R(0.01, 0.5);
  for (int k = 0; k < 100; ++k) {
    const Point3 q(U(rng), U(rng), U(rng));
    const double r = R(rng);
    EXPECT_EQ(index.radiusSearch(q, r), oracle::radiusScan(pts, q, r));
  }
}

TEST(SpatialIndex, PlanarCloudMatchesBruteForce) {
  auto scene = synthetic::corrugatedStripScene(5.0, 3);
  const auto pts = copyPoints(scene.cloud);
  const SpatialIndex index(scene.cloud);
  std::mt19937_64 rng(8);
  std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
  for (int k = 0; k < 50; ++k) {
    const Point3 q = pts[pick(rng)];
    EXPECT_EQ(index.radiusSearch(q, 1.3), oracle::radiusScan(pts, q, 1.3));
  }
}

TEST(SpatialIndex, ConcurrentQueriesAgree) {
  const PointCloud c = synthetic::randomCube(3000, 0.0, 1.0, 2);
  const SpatialIndex index(c);
  std::vector<IndexList> serial(200), threaded(200);
  for (std::size_t i = 0; i < 200; ++i) serial[i] = index.radiusSearch(c[i], 0.1);
  parallelFor(200, 4, [&](std::size_t i) { threaded[i] = index.radiusSearch(c[i], 0.1); });
  EXPECT_EQ(serial, threaded);
}
