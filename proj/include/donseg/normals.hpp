// donseg - Difference of Normals toolkit for unorganized point clouds
//
// Fixed-support-radius PCA normal estimation.
//
// The normal at a query position q is the eigenvector of the covariance of
// all search-cloud points within radius r of q that belongs to the smallest
// eigenvalue. Neighborhoods are taken by radius, never by k nearest
// neighbors, so the estimated normal describes surface structure at scale r
// regardless of sampling density.

#ifndef DONSEG_NORMALS_HPP
#define DONSEG_NORMALS_HPP

#include <Eigen/Core>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "donseg/parallel.hpp"
#include "donseg/point_cloud.hpp"
#include "donseg/spatial_index.hpp"
#include "donseg/voxel_grid.hpp"

namespace donseg {

/// Unit surface normal with a validity flag; components of an invalid
/// normal carry no meaning.
struct UnitNormal {
  Eigen::Vector3d n = Eigen::Vector3d::Zero();
  bool valid = false;

  static UnitNormal invalid() { return {}; }
  static UnitNormal of(const Eigen::Vector3d& v) { return {v, true}; }
};

/// @brief Search-cloud decimation for approximate normal maps.
///
/// When enabled, neighborhoods at radius r are gathered from the cloud
/// re-sampled on a voxel grid of edge r / d instead of the full cloud.
struct DecimationSpec {
  unsigned d = 10;
  bool enabled = false;

  static DecimationSpec exact() { return {10, false}; }
  static DecimationSpec factor(unsigned d) { return {d, true}; }

  /// Command-line convention: d == 0 means exact.
  static DecimationSpec fromFlag(unsigned d) {
    return d == 0 ? exact() : factor(d);
  }

  void validate() const {
    if (enabled && d < 1) throw InvalidArgument("decimation factor must be >= 1");
  }
};

/// Per-point normals estimated at one support radius.
struct NormalMap {
  std::vector<UnitNormal> normals;
  double radius = 0.0;

  std::size_t size() const noexcept { return normals.size(); }
  const UnitNormal& operator[](Index i) const { return normals[i]; }
};

namespace detail {

/// Relative tolerance on the gap between the two smallest covariance
/// eigenvalues, measured against the largest one.
inline constexpr double kEigenGapTolerance = 1e-9;

/// Flip so that the first nonzero component is positive.
inline Eigen::Vector3d canonicalSign(Eigen::Vector3d n) {
  for (int a = 0; a < 3; ++a) {
    if (n[a] > 0.0) return n;
    if (n[a] < 0.0) return -n;
  }
  return n;
}

}  // namespace detail

/// @brief Normal of the plane best fitting the listed points.
///
/// Invalid with fewer than three points, or when the tangent plane is not
/// unique (coincident or collinear points, or the two smallest eigenvalues
/// agree within 1e-9 of the largest).
inline UnitNormal fitNormal(const PointCloud& cloud, std::span<const Index> neighbors) {
  const std::size_t n = neighbors.size();
  if (n < 3) return UnitNormal::invalid();

  Eigen::Vector3d centroid = Eigen::Vector3d::Zero();
  for (Index i : neighbors) centroid += cloud[i];
  centroid /= static_cast<double>(n);

  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  for (Index i : neighbors) {
    const Eigen::Vector3d d = cloud[i] - centroid;
    cov.noalias() += d * d.transpose();
  }
  cov /= static_cast<double>(n);

  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(cov);
  if (solver.info() != Eigen::Success) return UnitNormal::invalid();
  const Eigen::Vector3d& ev = solver.eigenvalues();  // ascending
  if (!(ev[2] > 0.0)) return UnitNormal::invalid();
  if (ev[1] - ev[0] <= detail::kEigenGapTolerance * ev[2]) return UnitNormal::invalid();

  Eigen::Vector3d normal = solver.eigenvectors().col(0);
  const double len = normal.norm();
  if (!(len > 0.0) || !std::isfinite(len)) return UnitNormal::invalid();
  return UnitNormal::of(detail::canonicalSign(normal / len));
}

/// Normal at position `q` from the neighborhood of radius `r` in `cloud`.
/// `index` must be built over `cloud`.
inline UnitNormal estimateNormal(const PointCloud& cloud, const SpatialIndex& index,
                                 const Point3& q, double r) {
  IndexList neighbors;
  index.radiusSearch(q, r, neighbors);
  return fitNormal(cloud, neighbors);
}

/// @brief Normal map of `queries`, with neighborhoods gathered from a
/// separate search cloud.
///
/// Output slot i depends only on queries[i], so the result is identical for
/// every thread count.
inline NormalMap estimateNormalMap(const PointCloud& queries, const PointCloud& search,
                                   const SpatialIndex& index, double r,
                                   unsigned threads = 0) {
  checkRadius(r);
  NormalMap map;
  map.radius = r;
  map.normals.resize(queries.size());
  parallelForBlocks(queries.size(), threads, [&](std::size_t begin, std::size_t end) {
    IndexList neighbors;
    for (std::size_t i = begin; i < end; ++i) {
      neighbors.clear();
      index.radiusSearch(queries[i], r, neighbors);
      map.normals[i] = fitNormal(search, neighbors);
    }
  });
  return map;
}

/// Voxel-decimated search cloud for radius `r`: grid edge r / d, anchored
/// at the cloud's minimum corner.
inline PointCloud decimatedSearchCloud(const PointCloud& cloud, double r, unsigned d) {
  VoxelGridSpec spec;
  spec.voxel_len = r / static_cast<double>(d);
  return voxelDownsample(cloud, spec);
}

/// @brief One normal per input point at support radius `r`.
///
/// Normals are always evaluated at the original point positions. With
/// decimation enabled the neighborhoods come from the voxel-decimated cloud,
/// which need not contain the query point itself.
inline NormalMap estimateNormalMap(const PointCloud& cloud, double r,
                                   DecimationSpec decim = DecimationSpec::exact(),
                                   unsigned threads = 0) {
  checkRadius(r);
  decim.validate();
  if (!decim.enabled) {
    const SpatialIndex index(cloud);
    return estimateNormalMap(cloud, cloud, index, r, threads);
  }
  const PointCloud search = decimatedSearchCloud(cloud, r, decim.d);
  const SpatialIndex index(search);
  return estimateNormalMap(cloud, search, index, r, threads);
}

/// Flips each valid normal into the hemisphere facing `viewpoint`.
/// A normal perpendicular to the view ray is left unchanged.
inline NormalMap orientToViewpoint(NormalMap map, const PointCloud& cloud,
                                   const Point3& viewpoint) {
  if (map.size() != cloud.size())
    throw InvalidArgument("normal map and cloud sizes differ");
  for (std::size_t i = 0; i < map.size(); ++i) {
    UnitNormal& un = map.normals[i];
    if (!un.valid) continue;
    if (un.n.dot(viewpoint - cloud[i]) < 0.0) un.n = -un.n;
  }
  return map;
}

/// Angle in degrees between two lines (sign-agnostic), in [0, 90].
inline double lineAngleDeg(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return std::atan2(a.cross(b).norm(), std::abs(a.dot(b))) * 180.0 / std::numbers::pi;
}

}  // namespace donseg

#endif  // DONSEG_NORMALS_HPP
