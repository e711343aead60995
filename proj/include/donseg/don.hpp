// donseg - Difference of Normals toolkit for unorganized point clouds
//
// Difference of Normals: for a radius pair r1 < r2 and every point p,
//
//   delta(p) = (n(p, r1) - n(p, r2)) / 2
//
// where the two unit normals are first brought into the same hemisphere.
// |delta| = sin(theta / 2) with theta the angle between the two normal
// lines, so magnitudes lie in [0, sqrt(2)/2]. Large magnitudes mark surface
// structure between the two scales.

#ifndef DONSEG_DON_HPP
#define DONSEG_DON_HPP

#include <Eigen/Core>

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "donseg/normals.hpp"
#include "donseg/parallel.hpp"
#include "donseg/point_cloud.hpp"
#include "donseg/spatial_index.hpp"

namespace donseg {

/// Radius pair of the operator; 0 < r1 < r2.
struct DoNParams {
  double r1 = 0.1;
  double r2 = 1.0;

  void validate() const {
    if (!(r1 > 0.0) || !(r2 > 0.0) || !std::isfinite(r1) || !std::isfinite(r2))
      throw InvalidArgument("DoN radii must be finite and > 0");
    if (!(r1 < r2))
      throw InvalidArgument("DoN radii must satisfy r1 < r2 (got r1=" +
                            std::to_string(r1) + ", r2=" + std::to_string(r2) + ")");
  }

  double ratio() const { return r2 / r1; }

  friend bool operator==(const DoNParams&, const DoNParams&) = default;
};

/// Magnitude threshold used for saliency filtering unless overridden.
inline constexpr double kDefaultThreshold = 0.25;
/// Scale ratio r2 / r1 that suppresses large planar surfaces well.
inline constexpr double kDefaultScaleRatio = 10.0;

/// Reference radius presets for two object classes.
namespace presets {
inline constexpr DoNParams kPedestrian{0.1, 0.4};
inline constexpr DoNParams kCar{0.4, 2.0};
}  // namespace presets

/// Per-point DoN vectors aligned with a cloud.
struct DoNField {
  std::vector<Eigen::Vector3d> vectors;
  std::vector<std::uint8_t> valid;
  DoNParams params;

  std::size_t size() const noexcept { return vectors.size(); }
  bool isValid(Index i) const { return valid[i] != 0; }
  double magnitude(Index i) const { return vectors[i].norm(); }
};

/// @brief DoN vector of one normal pair.
///
/// The large-scale normal is negated when the two point into opposite
/// hemispheres (n1 . n2 < 0). Empty when either input is invalid.
inline std::optional<Eigen::Vector3d> donPair(const UnitNormal& n1, const UnitNormal& n2) {
  if (!n1.valid || !n2.valid) return std::nullopt;
  const Eigen::Vector3d n2_aligned = n1.n.dot(n2.n) < 0.0 ? Eigen::Vector3d(-n2.n) : n2.n;
  return Eigen::Vector3d((n1.n - n2_aligned) * 0.5);
}

/// Combines two aligned normal maps point by point.
inline DoNField donFromNormalMaps(const NormalMap& small, const NormalMap& large,
                                  const DoNParams& params) {
  if (small.size() != large.size())
    throw InvalidArgument("normal maps have different sizes");
  DoNField field;
  field.params = params;
  field.vectors.assign(small.size(), Eigen::Vector3d::Zero());
  field.valid.assign(small.size(), 0);
  for (std::size_t i = 0; i < small.size(); ++i) {
    if (auto d = donPair(small[i], large[i])) {
      field.vectors[i] = *d;
      field.valid[i] = 1;
    }
  }
  return field;
}

/// Both normal maps used to build a DoN field.
struct NormalMapPair {
  NormalMap small;
  NormalMap large;
};

/// Normal maps at r1 and r2. The exact path shares one index over the cloud.
inline NormalMapPair computeNormalMaps(const PointCloud& cloud, const DoNParams& params,
                                       DecimationSpec decim = DecimationSpec::exact(),
                                       unsigned threads = 0) {
  params.validate();
  decim.validate();
  if (!decim.enabled) {
    const SpatialIndex index(cloud);
    return {estimateNormalMap(cloud, cloud, index, params.r1, threads),
            estimateNormalMap(cloud, cloud, index, params.r2, threads)};
  }
  return {estimateNormalMap(cloud, params.r1, decim, threads),
          estimateNormalMap(cloud, params.r2, decim, threads)};
}

/// @brief DoN field over the whole cloud.
///
/// Deterministic for any thread count. Throws InvalidArgument unless
/// 0 < r1 < r2.
inline DoNField computeDoNField(const PointCloud& cloud, const DoNParams& params,
                               DecimationSpec decim = DecimationSpec::exact(),
                               unsigned threads = 0) {
  const NormalMapPair maps = computeNormalMaps(cloud, params, decim, threads);
  return donFromNormalMaps(maps.small, maps.large, params);
}

/// Valid points with magnitude >= t, ascending. Requires t in [0, 1].
inline IndexList filterByMagnitude(const DoNField& field, double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw InvalidArgument("magnitude threshold must lie in [0, 1], got " + std::to_string(t));
  IndexList kept;
  for (std::size_t i = 0; i < field.size(); ++i)
    if (field.isValid(i) && field.magnitude(i) >= t) kept.push_back(i);
  return kept;
}

enum class Axis { X = 0, Y = 1, Z = 2 };

inline Axis parseAxis(std::string_view s) {
  if (s == "x" || s == "X") return Axis::X;
  if (s == "y" || s == "Y") return Axis::Y;
  if (s == "z" || s == "Z") return Axis::Z;
  throw InvalidArgument("axis must be one of x, y, z");
}

/// Valid points whose signed component along `axis` is >= t, ascending.
inline IndexList filterByComponent(const DoNField& field, Axis axis, double t) {
  if (!std::isfinite(t)) throw InvalidArgument("component threshold must be finite");
  const int a = static_cast<int>(axis);
  IndexList kept;
  for (std::size_t i = 0; i < field.size(); ++i)
    if (field.isValid(i) && field.vectors[i][a] >= t) kept.push_back(i);
  return kept;
}

/// Sentinel stored in the "don_mag" attribute for points without a value.
inline constexpr double kInvalidMagnitude = -1.0;

/// Adds don_x, don_y, don_z and don_mag attributes; invalid points get
/// zeros and a don_mag of -1.
inline void attachDoNAttributes(PointCloud& cloud, const DoNField& field) {
  if (field.size() != cloud.size()) throw InvalidArgument("field and cloud sizes differ");
  const std::size_t n = cloud.size();
  std::vector<double> x(n, 0.0), y(n, 0.0), z(n, 0.0), mag(n, kInvalidMagnitude);
  for (std::size_t i = 0; i < n; ++i) {
    if (!field.isValid(i)) continue;
    x[i] = field.vectors[i].x();
    y[i] = field.vectors[i].y();
    z[i] = field.vectors[i].z();
    mag[i] = field.magnitude(i);
  }
  cloud.setAttribute("don_x", std::move(x));
  cloud.setAttribute("don_y", std::move(y));
  cloud.setAttribute("don_z", std::move(z));
  cloud.setAttribute("don_mag", std::move(mag));
}

}  // namespace donseg

#endif  // DONSEG_DON_HPP
