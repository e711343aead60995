// donseg - Difference of Normals toolkit for unorganized point clouds
//
// Euclidean cluster extraction over a subset of a cloud.

#ifndef DONSEG_CLUSTERING_HPP
#define DONSEG_CLUSTERING_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "donseg/point_cloud.hpp"
#include "donseg/spatial_index.hpp"

namespace donseg {

struct ClusterParams {
  double tolerance = 0.1;
  std::size_t min_points = 100;
  std::size_t max_points = 100000;

  void validate() const {
    if (!(tolerance > 0.0) || !std::isfinite(tolerance))
      throw InvalidArgument("cluster tolerance must be finite and > 0");
    if (min_points == 0 || min_points > max_points)
      throw InvalidArgument("cluster size bounds must satisfy 0 < min <= max");
  }
};

/// Point indices into the source cloud, ascending.
struct Cluster {
  IndexList indices;

  std::size_t size() const noexcept { return indices.size(); }
  Index minIndex() const { return indices.front(); }
};

/// @brief Connected components of the subset under |p_i - p_j| <= tolerance.
///
/// Only subset points take part in connectivity, so excluded points never
/// bridge two clusters. Components with fewer than min_points or more than
/// max_points points are dropped. Clusters are ordered by descending size,
/// then by smallest contained index.
inline std::vector<Cluster> euclideanClusters(const PointCloud& cloud, IndexList subset,
                                              const ClusterParams& params) {
  params.validate();
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  if (!subset.empty() && subset.back() >= cloud.size())
    throw IndexOutOfRange("subset index " + std::to_string(subset.back()) +
                          " out of range for cloud of " + std::to_string(cloud.size()));

  const PointCloud local = cloud.select(subset);
  const SpatialIndex index(local);
  const std::size_t n = local.size();

  std::vector<std::uint8_t> visited(n, 0);
  std::vector<Cluster> clusters;
  IndexList frontier;
  IndexList component;
  for (std::size_t seed = 0; seed < n; ++seed) {
    if (visited[seed]) continue;
    visited[seed] = 1;
    component.clear();
    frontier.assign(1, seed);
    while (!frontier.empty()) {
      const Index cur = frontier.back();
      frontier.pop_back();
      component.push_back(cur);
      index.forEachInRadius(local[cur], params.tolerance, [&](Index j) {
        if (!visited[j]) {
          visited[j] = 1;
          frontier.push_back(j);
        }
      });
    }
    if (component.size() < params.min_points || component.size() > params.max_points)
      continue;
    Cluster c;
    c.indices.reserve(component.size());
    for (Index k : component) c.indices.push_back(subset[k]);
    std::sort(c.indices.begin(), c.indices.end());
    clusters.push_back(std::move(c));
  }
  std::sort(clusters.begin(), clusters.end(), [](const Cluster& a, const Cluster& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a.minIndex() < b.minIndex();
  });
  return clusters;
}

/// Per-point cluster ids in output order; -1 for unclustered points.
inline std::vector<double> clusterIdAttribute(std::size_t num_points,
                                              const std::vector<Cluster>& clusters) {
  std::vector<double> ids(num_points, -1.0);
  for (std::size_t c = 0; c < clusters.size(); ++c)
    for (Index i : clusters[c].indices) ids[i] = static_cast<double>(c);
  return ids;
}

}  // namespace donseg

#endif  // DONSEG_CLUSTERING_HPP
