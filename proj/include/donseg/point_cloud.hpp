// donseg - Difference of Normals toolkit for unorganized point clouds
//
// Point cloud data model: finite 3D points plus optional named per-point
// scalar attributes.

#ifndef DONSEG_POINT_CLOUD_HPP
#define DONSEG_POINT_CLOUD_HPP

#include <Eigen/Core>

#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "donseg/errors.hpp"

namespace donseg {

using Point3 = Eigen::Vector3d;
using Index = std::size_t;
using IndexList = std::vector<Index>;

inline bool isFinite(const Point3& p) {
  return std::isfinite(p.x()) && std::isfinite(p.y()) && std::isfinite(p.z());
}

/// @brief Ordered collection of finite points with optional scalar channels.
///
/// Attribute arrays always have exactly `size()` entries. Points are indexed
/// from 0 in insertion order; duplicates are distinct points.
class PointCloud {
 public:
  PointCloud() = default;

  explicit PointCloud(std::vector<Point3> points) : points_(std::move(points)) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (!isFinite(points_[i]))
        throw InvalidArgument("point " + std::to_string(i) + " is not finite");
    }
  }

  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }

  const Point3& operator[](Index i) const { return points_[i]; }
  const Point3& at(Index i) const { return points_.at(i); }
  std::span<const Point3> points() const noexcept { return points_; }

  /// Appends a point; attribute channels are extended with 0.
  void push_back(const Point3& p) {
    if (!isFinite(p)) throw InvalidArgument("point is not finite");
    points_.push_back(p);
    for (auto& [name, values] : attributes_) values.push_back(0.0);
  }

  void reserve(std::size_t n) { points_.reserve(n); }

  bool hasAttribute(const std::string& name) const {
    return attributes_.count(name) != 0;
  }

  void setAttribute(const std::string& name, std::vector<double> values) {
    if (values.size() != points_.size())
      throw InvalidArgument("attribute '" + name + "' has " +
                            std::to_string(values.size()) + " values for " +
                            std::to_string(points_.size()) + " points");
    attributes_[name] = std::move(values);
  }

  const std::vector<double>& attribute(const std::string& name) const {
    auto it = attributes_.find(name);
    if (it == attributes_.end())
      throw UnknownAttribute("unknown attribute '" + name + "'");
    return it->second;
  }

  void removeAttribute(const std::string& name) { attributes_.erase(name); }

  std::vector<std::string> attributeNames() const {
    std::vector<std::string> names;
    names.reserve(attributes_.size());
    for (const auto& kv : attributes_) names.push_back(kv.first);
    return names;
  }

  /// Axis-aligned minimum corner; zero for an empty cloud.
  Point3 minCorner() const {
    if (points_.empty()) return Point3::Zero();
    Point3 lo = points_.front();
    for (const auto& p : points_) lo = lo.cwiseMin(p);
    return lo;
  }

  Point3 maxCorner() const {
    if (points_.empty()) return Point3::Zero();
    Point3 hi = points_.front();
    for (const auto& p : points_) hi = hi.cwiseMax(p);
    return hi;
  }

  /// New cloud holding the selected points (attributes carried along).
  PointCloud select(std::span<const Index> indices) const {
    PointCloud out;
    out.points_.reserve(indices.size());
    for (Index i : indices) {
      if (i >= points_.size())
        throw IndexOutOfRange("index " + std::to_string(i) + " out of range");
      out.points_.push_back(points_[i]);
    }
    for (const auto& [name, values] : attributes_) {
      std::vector<double> sub;
      sub.reserve(indices.size());
      for (Index i : indices) sub.push_back(values[i]);
      out.attributes_[name] = std::move(sub);
    }
    return out;
  }

 private:
  std::vector<Point3> points_;
  std::map<std::string, std::vector<double>> attributes_;
};

}  // namespace donseg

#endif  // DONSEG_POINT_CLOUD_HPP
