// donseg - Difference of Normals toolkit for unorganized point clouds
//
// Uniform voxel-grid re-sampling. Each occupied voxel is represented by the
// input point nearest to the centroid of the points it contains.

#ifndef DONSEG_VOXEL_GRID_HPP
#define DONSEG_VOXEL_GRID_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "donseg/point_cloud.hpp"

namespace donseg {

struct VoxelGridSpec {
  double voxel_len = 1.0;
  /// Grid anchor; the cloud's minimum corner when unset.
  std::optional<Point3> origin;

  void validate() const {
    if (!(voxel_len > 0.0) || !std::isfinite(voxel_len))
      throw InvalidArgument("voxel length must be finite and > 0, got " +
                            std::to_string(voxel_len));
    if (origin && !isFinite(*origin))
      throw InvalidArgument("voxel origin must be finite");
  }
};

using VoxelKey = std::array<std::int64_t, 3>;

/// Integer cell coordinates of `p` in a grid anchored at `origin`.
inline VoxelKey voxelKey(const Point3& p, const Point3& origin, double len) {
  VoxelKey key;
  for (int a = 0; a < 3; ++a) {
    const double c = std::floor((p[a] - origin[a]) / len);
    // 2^62 keeps the key arithmetic far from overflow.
    if (std::abs(c) > 4.6e18)
      throw InvalidArgument("voxel length too small for the cloud extent");
    key[a] = static_cast<std::int64_t>(c);
  }
  return key;
}

/// @brief Indices of the per-voxel representative points, ascending.
///
/// Within a voxel the representative is the member closest to the members'
/// centroid, ties going to the lowest index.
inline IndexList voxelRepresentatives(const PointCloud& cloud,
                                      const VoxelGridSpec& spec) {
  spec.validate();
  const std::size_t n = cloud.size();
  if (n == 0) return {};
  const Point3 origin = spec.origin.value_or(cloud.minCorner());

  std::vector<VoxelKey> keys(n);
  for (std::size_t i = 0; i < n; ++i)
    keys[i] = voxelKey(cloud[i], origin, spec.voxel_len);

  IndexList order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    return keys[a] < keys[b] || (keys[a] == keys[b] && a < b);
  });

  IndexList reps;
  for (std::size_t lo = 0; lo < n;) {
    std::size_t hi = lo + 1;
    while (hi < n && keys[order[hi]] == keys[order[lo]]) ++hi;

    Point3 centroid = Point3::Zero();
    for (std::size_t k = lo; k < hi; ++k) centroid += cloud[order[k]];
    centroid /= static_cast<double>(hi - lo);

    // Members are visited in ascending index order, so strict < keeps the
    // lowest index on ties.
    Index best = order[lo];
    double best_d2 = (cloud[best] - centroid).squaredNorm();
    for (std::size_t k = lo + 1; k < hi; ++k) {
      const double d2 = (cloud[order[k]] - centroid).squaredNorm();
      if (d2 < best_d2) {
        best_d2 = d2;
        best = order[k];
      }
    }
    reps.push_back(best);
    lo = hi;
  }
  std::sort(reps.begin(), reps.end());
  return reps;
}

/// @brief Voxel-grid downsampling.
///
/// Output points are a subset of the input in ascending source-index order,
/// with at most one point per occupied voxel. Attributes are carried along.
inline PointCloud voxelDownsample(const PointCloud& cloud,
                                  const VoxelGridSpec& spec) {
  const IndexList reps = voxelRepresentatives(cloud, spec);
  return cloud.select(reps);
}

}  // namespace donseg

#endif  // DONSEG_VOXEL_GRID_HPP
