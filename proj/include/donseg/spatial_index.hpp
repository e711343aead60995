// donseg - Difference of Normals toolkit for unorganized point clouds
//
// Static kd-tree answering fixed-radius queries over one cloud snapshot.

#ifndef DONSEG_SPATIAL_INDEX_HPP
#define DONSEG_SPATIAL_INDEX_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "donseg/point_cloud.hpp"

namespace donseg {

inline void checkRadius(double r) {
  if (!(r > 0.0) || !std::isfinite(r))
    throw InvalidArgument("radius must be finite and > 0, got " +
                          std::to_string(r));
}

/// @brief Immutable kd-tree over a copy of the cloud's coordinates.
///
/// A query returns every index i with |p_i - q| <= r (boundary inclusive).
/// Const member functions are safe to call concurrently.
class SpatialIndex {
 public:
  static constexpr std::uint32_t kLeafSize = 12;

  SpatialIndex() = default;

  explicit SpatialIndex(const PointCloud& cloud) { build(cloud.points()); }
  explicit SpatialIndex(std::span<const Point3> points) { build(points); }

  std::size_t size() const noexcept { return points_.size(); }

  /// @brief Visits every index within radius `r` of `q`.
  ///
  /// The visiting order depends only on the indexed points and the query,
  /// never on the calling thread.
  template <typename Visitor>
  void forEachInRadius(const Point3& q, double r, Visitor&& visit) const {
    checkRadius(r);
    if (nodes_.empty()) return;
    const double r2 = r * r;
    // Explicit stack; depth is bounded by log2(n / leaf) + 1.
    std::uint32_t stack[64];
    int top = 0;
    stack[top++] = 0;
    while (top > 0) {
      const Node& node = nodes_[stack[--top]];
      if (boxDistance2(node, q) > r2) continue;
      if (node.axis < 0) {
        for (std::uint32_t k = node.begin; k < node.end; ++k) {
          const Point3& p = points_[k];
          const double dx = p.x() - q.x();
          const double dy = p.y() - q.y();
          const double dz = p.z() - q.z();
          if (dx * dx + dy * dy + dz * dz <= r2) visit(static_cast<Index>(order_[k]));
        }
        continue;
      }
      // Push far child first so the near one is processed next.
      const bool left_first = q[node.axis] <= node.split;
      stack[top++] = left_first ? node.right : node.left;
      stack[top++] = left_first ? node.left : node.right;
    }
  }

  /// Indices within radius `r` of `q`, appended to `out` in traversal order.
  void radiusSearch(const Point3& q, double r, IndexList& out) const {
    forEachInRadius(q, r, [&out](Index i) { out.push_back(i); });
  }

  /// Indices within radius `r` of `q`, sorted ascending.
  IndexList radiusSearch(const Point3& q, double r) const {
    IndexList out;
    radiusSearch(q, r, out);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  struct Node {
    Eigen::Vector3d lo, hi;
    double split = 0.0;
    std::uint32_t begin = 0, end = 0;
    std::uint32_t left = 0, right = 0;
    int axis = -1;  // -1 marks a leaf
  };

  static double boxDistance2(const Node& n, const Point3& q) {
    double d2 = 0.0;
    for (int a = 0; a < 3; ++a) {
      const double v = q[a];
      if (v < n.lo[a]) {
        d2 += (n.lo[a] - v) * (n.lo[a] - v);
      } else if (v > n.hi[a]) {
        d2 += (v - n.hi[a]) * (v - n.hi[a]);
      }
    }
    return d2;
  }

  void build(std::span<const Point3> points) {
    const std::size_t n = points.size();
    if (n == 0) return;
    order_.resize(n);
    std::iota(order_.begin(), order_.end(), 0u);
    points_.assign(points.begin(), points.end());
    nodes_.reserve(2 * (n / kLeafSize + 1));
    buildNode(0, static_cast<std::uint32_t>(n));
    // Reorder coordinates to leaf order for contiguous scans.
    std::vector<Point3> reordered(n);
    for (std::size_t k = 0; k < n; ++k) reordered[k] = points[order_[k]];
    points_ = std::move(reordered);
  }

  std::uint32_t buildNode(std::uint32_t begin, std::uint32_t end) {
    const auto id = static_cast<std::uint32_t>(nodes_.size());
    nodes_.emplace_back();
    Eigen::Vector3d lo = points_[order_[begin]];
    Eigen::Vector3d hi = lo;
    for (std::uint32_t k = begin + 1; k < end; ++k) {
      lo = lo.cwiseMin(points_[order_[k]]);
      hi = hi.cwiseMax(points_[order_[k]]);
    }
    nodes_[id].lo = lo;
    nodes_[id].hi = hi;
    nodes_[id].begin = begin;
    nodes_[id].end = end;
    if (end - begin <= kLeafSize) return id;

    int axis = 0;
    (hi - lo).maxCoeff(&axis);
    if (hi[axis] == lo[axis]) return id;  // all points coincide

    const std::uint32_t mid = begin + (end - begin) / 2;
    auto first = order_.begin() + begin;
    // Ties on the split coordinate are broken by index so that the tree
    // layout is a pure function of the input.
    std::nth_element(first, order_.begin() + mid, order_.begin() + end,
                     [&](std::uint32_t a, std::uint32_t b) {
                       const double va = points_[a][axis];
                       const double vb = points_[b][axis];
                       return va < vb || (va == vb && a < b);
                     });
    const double split = points_[order_[mid]][axis];
    const std::uint32_t left = buildNode(begin, mid);
    const std::uint32_t right = buildNode(mid, end);
    nodes_[id].axis = axis;
    nodes_[id].split = split;
    nodes_[id].left = left;
    nodes_[id].right = right;
    return id;
  }

  std::vector<Node> nodes_;
  std::vector<std::uint32_t> order_;  // leaf slot -> original index
  std::vector<Point3> points_;        // coordinates in leaf order after build
};

inline SpatialIndex buildIndex(const PointCloud& cloud) {
  return SpatialIndex(cloud);
}

/// Free-function form of SpatialIndex::radiusSearch; result sorted ascending.
inline IndexList radiusSearch(const SpatialIndex& index, const Point3& q,
                              double r) {
  return index.radiusSearch(q, r);
}

}  // namespace donseg

#endif  // DONSEG_SPATIAL_INDEX_HPP
