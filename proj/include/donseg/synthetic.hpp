// donseg - Difference of Normals toolkit for unorganized point clouds
//
// Seeded synthetic scenes: surface primitives sampled uniformly by area,
// plus a few ready-made layouts (street scene, pole-and-box scene, labeled
// evaluation frames) with known object membership.

#ifndef DONSEG_SYNTHETIC_HPP
#define DONSEG_SYNTHETIC_HPP

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "donseg/eval.hpp"
#include "donseg/point_cloud.hpp"

namespace donseg::synthetic {

using Rng = std::mt19937_64;

/// Axis-aligned xy rectangle used to carve holes out of ground patches.
struct Footprint {
  double x0, y0, x1, y1;
  bool contains(double x, double y) const { return x >= x0 && x <= x1 && y >= y0 && y <= y1; }
};

/// A sampled surface patch: its area and a uniform sampler.
struct Patch {
  double area = 0.0;
  int label = -1;
  std::function<Point3(Rng&)> sample;
};

/// Parallelogram origin + a*u + b*v, a, b in [0, 1]. Points falling in any
/// hole are re-drawn; `area` should already exclude the holes.
inline Patch rect(const Point3& origin, const Eigen::Vector3d& u, const Eigen::Vector3d& v,
                  int label = -1, std::vector<Footprint> holes = {}) {
  double area = u.cross(v).norm();
  // Holes are assumed to lie inside a horizontal patch.
  for (const auto& h : holes) area -= (h.x1 - h.x0) * (h.y1 - h.y0);
  return {std::max(area, 0.0), label,
          [=](Rng& rng) {
            std::uniform_real_distribution<double> U(0.0, 1.0);
            for (;;) {
              const Point3 p = origin + U(rng) * u + U(rng) * v;
              bool blocked = false;
              for (const auto& h : holes) blocked = blocked || h.contains(p.x(), p.y());
              if (!blocked) return p;
            }
          }};
}

/// Upright cylinder side surface, optionally restricted to the arc [a0, a1].
inline Patch cylinderSide(const Point3& base, double radius, double height, int label = -1,
                          double a0 = 0.0, double a1 = 2.0 * std::numbers::pi) {
  return {(a1 - a0) * radius * height, label, [=](Rng& rng) {
            std::uniform_real_distribution<double> A(a0, a1);
            std::uniform_real_distribution<double> H(0.0, height);
            const double a = A(rng);
            return Point3(base.x() + radius * std::cos(a), base.y() + radius * std::sin(a),
                          base.z() + H(rng));
          }};
}

/// Horizontal disk.
inline Patch disk(const Point3& center, double radius, int label = -1) {
  return {std::numbers::pi * radius * radius, label, [=](Rng& rng) {
            std::uniform_real_distribution<double> U(0.0, 1.0);
            const double r = radius * std::sqrt(U(rng));
            const double a = 2.0 * std::numbers::pi * U(rng);
            return Point3(center.x() + r * std::cos(a), center.y() + r * std::sin(a), center.z());
          }};
}

/// Top and four sides of an upright box resting on z = base.z().
inline std::vector<Patch> boxSurface(const Point3& base_center, const Eigen::Vector3d& dims,
                                     int label = -1) {
  const double hx = dims.x() / 2, hy = dims.y() / 2, h = dims.z();
  const Point3 c = base_center;
  const Eigen::Vector3d ex(dims.x(), 0, 0), ey(0, dims.y(), 0), ez(0, 0, h);
  return {
      rect(c + Point3(-hx, -hy, h), ex, ey, label),  // top
      rect(c + Point3(-hx, -hy, 0), ex, ez, label),  // -y side
      rect(c + Point3(-hx, hy, 0), ex, ez, label),   // +y side
      rect(c + Point3(-hx, -hy, 0), ey, ez, label),  // -x side
      rect(c + Point3(hx, -hy, 0), ey, ez, label),   // +x side
  };
}

/// Height field z = base_z + f(x) over [x0, x1] x [y0, y1], sampled
/// uniformly in xy.
inline Patch heightStrip(double x0, double x1, double y0, double y1, double base_z,
                         std::function<double(double)> f, int label = -1) {
  // Arc-length area estimate by midpoint rule.
  double len = 0.0;
  const int steps = 512;
  for (int k = 0; k < steps; ++k) {
    const double a = x0 + (x1 - x0) * k / steps, b = x0 + (x1 - x0) * (k + 1) / steps;
    len += std::hypot(b - a, f(b) - f(a));
  }
  return {len * (y1 - y0), label, [=](Rng& rng) {
            std::uniform_real_distribution<double> X(x0, x1), Y(y0, y1);
            const double x = X(rng);
            return Point3(x, Y(rng), base_z + f(x));
          }};
}

/// Cloud plus a per-point label (-1 for background).
struct LabeledCloud {
  PointCloud cloud;
  std::vector<int> labels;

  IndexList withLabel(int label) const {
    IndexList out;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == label) out.push_back(i);
    return out;
  }
};

/// @brief Draws `total` points over the patches, proportionally to area.
///
/// Counts are allocated by largest remainder so they sum to `total`.
inline LabeledCloud samplePatches(const std::vector<Patch>& patches, std::size_t total,
                                  std::uint64_t seed) {
  double area = 0.0;
  for (const auto& p : patches) area += p.area;
  std::vector<std::size_t> counts(patches.size(), 0);
  std::vector<std::pair<double, std::size_t>> rem;
  std::size_t assigned = 0;
  for (std::size_t k = 0; k < patches.size(); ++k) {
    const double exact = area > 0 ? static_cast<double>(total) * patches[k].area / area : 0.0;
    counts[k] = static_cast<std::size_t>(std::floor(exact));
    assigned += counts[k];
    rem.emplace_back(-(exact - std::floor(exact)), k);
  }
  std::sort(rem.begin(), rem.end());
  for (std::size_t k = 0; assigned < total && k < rem.size(); ++k, ++assigned)
    ++counts[rem[k].second];

  Rng rng(seed);
  LabeledCloud out;
  std::vector<Point3> pts;
  pts.reserve(total);
  out.labels.reserve(total);
  for (std::size_t k = 0; k < patches.size(); ++k)
    for (std::size_t i = 0; i < counts[k]; ++i) {
      pts.push_back(patches[k].sample(rng));
      out.labels.push_back(patches[k].label);
    }
  out.cloud = PointCloud(std::move(pts));
  return out;
}

/// Draws points at a fixed areal density (points per square meter).
inline LabeledCloud sampleAtDensity(const std::vector<Patch>& patches, double density,
                                    std::uint64_t seed) {
  double area = 0.0;
  for (const auto& p : patches) area += p.area;
  return samplePatches(patches, static_cast<std::size_t>(std::llround(area * density)), seed);
}

/// Regular nx-by-ny grid on the plane z = 0, centered at the origin.
inline PointCloud planeGrid(std::size_t nx, std::size_t ny, double spacing) {
  std::vector<Point3> pts;
  pts.reserve(nx * ny);
  const double ox = -0.5 * spacing * static_cast<double>(nx - 1);
  const double oy = -0.5 * spacing * static_cast<double>(ny - 1);
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i)
      pts.emplace_back(ox + spacing * static_cast<double>(i),
                       oy + spacing * static_cast<double>(j), 0.0);
  return PointCloud(std::move(pts));
}

/// Quasi-uniform unit sphere (golden-angle spiral).
inline PointCloud fibonacciSphere(std::size_t n, double radius = 1.0) {
  std::vector<Point3> pts;
  pts.reserve(n);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < n; ++i) {
    const double z = 1.0 - 2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double a = golden * static_cast<double>(i);
    pts.emplace_back(radius * rho * std::cos(a), radius * rho * std::sin(a), radius * z);
  }
  return PointCloud(std::move(pts));
}

/// Uniform random points in the axis-aligned cube [lo, hi]^3.
inline PointCloud randomCube(std::size_t n, double lo, double hi, std::uint64_t seed) {
  Rng rng(seed);
  std::uniform_real_distribution<double> U(lo, hi);
  std::vector<Point3> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = U(rng), y = U(rng), z = U(rng);
    pts.emplace_back(x, y, z);
  }
  return PointCloud(std::move(pts));
}

/// @brief Urban street: ground, two building facades, parked cars, poles.
///
/// About 600 m^2 of surface, so 200k points give ~330 points per m^2.
/// Labels: 0 ground, 1 facade, 2 car, 3 pole.
inline LabeledCloud streetScene(std::size_t num_points, std::uint64_t seed) {
  std::vector<Patch> patches;
  std::vector<Footprint> holes;
  const Eigen::Vector3d car_dims(4.0, 1.8, 1.5);
  for (int k = 0; k < 4; ++k) {
    const double cx = -9.0 + 6.0 * k;
    const double cy = (k % 2 == 0) ? -3.5 : 3.5;
    for (auto& p : boxSurface(Point3(cx, cy, 0), car_dims, 2)) patches.push_back(p);
    holes.push_back({cx - 2.0, cy - 0.9, cx + 2.0, cy + 0.9});
  }
  for (int k = 0; k < 6; ++k) {
    const double px = -10.0 + 4.0 * k;
    const double py = (k % 2 == 0) ? -5.0 : 5.0;
    patches.push_back(cylinderSide(Point3(px, py, 0), 0.15, 4.0, 3));
    holes.push_back({px - 0.15, py - 0.15, px + 0.15, py + 0.15});
  }
  patches.push_back(rect(Point3(-12, -6, 0), Eigen::Vector3d(24, 0, 0),
                         Eigen::Vector3d(0, 12, 0), 0, holes));
  patches.push_back(rect(Point3(-12, -6, 0), Eigen::Vector3d(24, 0, 0),
                         Eigen::Vector3d(0, 0, 5), 1));
  patches.push_back(rect(Point3(-12, 6, 0), Eigen::Vector3d(24, 0, 0),
                         Eigen::Vector3d(0, 0, 5), 1));
  return samplePatches(patches, num_points, seed);
}

/// @brief Ground plane with a 0.4 m wide pole and a 2 m box.
///
/// Labels: 0 ground, 1 pole, 2 box. Sampled at `density` points per m^2.
inline LabeledCloud poleBoxScene(double density, std::uint64_t seed) {
  std::vector<Patch> patches;
  const Point3 pole(-2.0, 0.0, 0.0);
  const Point3 box(2.0, 0.0, 0.0);
  patches.push_back(cylinderSide(pole, 0.2, 2.0, 1));
  patches.push_back(disk(pole + Point3(0, 0, 2.0), 0.2, 1));
  for (auto& p : boxSurface(box, Eigen::Vector3d(2, 2, 2), 2)) patches.push_back(p);
  patches.push_back(rect(Point3(-6, -5, 0), Eigen::Vector3d(12, 0, 0), Eigen::Vector3d(0, 10, 0),
                         0, {{-2.2, -0.2, -1.8, 0.2}, {1.0, -1.0, 3.0, 1.0}}));
  return sampleAtDensity(patches, density, seed);
}

/// @brief The pole and box of poleBoxScene as seen by one sensor.
///
/// Only surfaces facing a sensor at (0, -6, 2.5) are sampled: the front half
/// of the pole, its cap, and the top, -x and -y faces of the box.
/// Labels: 0 ground, 1 pole, 2 box.
inline LabeledCloud poleBoxScan(double density, std::uint64_t seed) {
  const Point3 pole(-2.0, 0.0, 0.0);
  const Point3 box(2.0, 0.0, 0.0);
  const Point3 sensor(0.0, -6.0, 2.5);
  const double facing = std::atan2(sensor.y() - pole.y(), sensor.x() - pole.x());
  const double quarter = std::numbers::pi / 2;
  std::vector<Patch> patches;
  patches.push_back(cylinderSide(pole, 0.2, 2.0, 1, facing - quarter, facing + quarter));
  patches.push_back(disk(pole + Point3(0, 0, 2.0), 0.2, 1));
  const Eigen::Vector3d ex(2, 0, 0), ey(0, 2, 0), ez(0, 0, 2);
  patches.push_back(rect(box + Point3(-1, -1, 2), ex, ey, 2));
  patches.push_back(rect(box + Point3(-1, -1, 0), ex, ez, 2));
  patches.push_back(rect(box + Point3(-1, -1, 0), ey, ez, 2));
  patches.push_back(rect(Point3(-6, -5, 0), Eigen::Vector3d(12, 0, 0), Eigen::Vector3d(0, 10, 0),
                         0, {{-2.2, -0.2, -1.8, 0.2}, {1.0, -1.0, 3.0, 1.0}}));
  return sampleAtDensity(patches, density, seed);
}

/// @brief 10 m plane crossed by a 0.5 m wide corrugation.
///
/// The strip is a raised-cosine ridge of the given height running along y
/// at x in [-0.25, 0.25]. Labels: 0 flat, 1 strip.
inline LabeledCloud corrugatedStripScene(double density, std::uint64_t seed,
                                         double height = 0.25) {
  const double width = 0.5;
  std::vector<Patch> patches;
  patches.push_back(rect(Point3(-5, -5, 0), Eigen::Vector3d(10, 0, 0), Eigen::Vector3d(0, 10, 0),
                         0, {{-width / 2, -5, width / 2, 5}}));
  patches.push_back(heightStrip(
      -width / 2, width / 2, -5, 5, 0.0,
      [=](double x) {
        return 0.5 * height * (1.0 - std::cos(2.0 * std::numbers::pi * (x + width / 2) / width));
      },
      1));
  return sampleAtDensity(patches, density, seed);
}

/// A labeled frame with its annotation boxes (one per object, label k+1).
struct EvalFrame {
  LabeledCloud scene;
  std::vector<GroundTruthBox> boxes;
};

/// @brief Ground plane with three upright objects of mixed size.
///
/// Objects are placed at least 1 m apart. Boxes enclose each object with a
/// small margin and start at the ground surface.
inline EvalFrame evaluationFrame(const std::string& frame_id, double density,
                                 std::uint64_t seed) {
  Rng layout(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> jitter(-0.5, 0.5);

  struct Obj {
    std::string cls;
    Eigen::Vector3d dims;
    bool round;
  };
  const std::vector<Obj> objs = {{"pedestrian", {0.6, 0.6, 1.7}, true},
                                 {"car", {3.8, 1.7, 1.5}, false},
                                 {"cyclist", {1.6, 0.6, 1.6}, false}};
  const Point3 slots[3] = {Point3(-5.0, 0.0, 0.0), Point3(0.0, 0.0, 0.0), Point3(5.0, 0.0, 0.0)};

  std::vector<Patch> patches;
  std::vector<Footprint> holes;
  EvalFrame frame;
  for (std::size_t k = 0; k < objs.size(); ++k) {
    const Point3 base = slots[k] + Point3(jitter(layout), jitter(layout), 0.0);
    const int label = static_cast<int>(k) + 1;
    const auto& o = objs[k];
    if (o.round) {
      const double r = o.dims.x() / 2;
      patches.push_back(cylinderSide(base, r, o.dims.z(), label));
      patches.push_back(disk(base + Point3(0, 0, o.dims.z()), r, label));
    } else {
      for (auto& p : boxSurface(base, o.dims, label)) patches.push_back(p);
    }
    holes.push_back({base.x() - o.dims.x() / 2, base.y() - o.dims.y() / 2,
                     base.x() + o.dims.x() / 2, base.y() + o.dims.y() / 2});
    GroundTruthBox box;
    box.frame_id = frame_id;
    box.class_name = o.cls;
    const double margin = 0.05;
    box.dims = o.dims + Eigen::Vector3d(2 * margin, 2 * margin, margin);
    // Bottom face sits just above the ground so ground points are excluded.
    box.center = base + Point3(0, 0, 0.02 + box.dims.z() / 2);
    box.yaw = 0.0;
    frame.boxes.push_back(box);
  }
  patches.push_back(rect(Point3(-9, -5, 0), Eigen::Vector3d(18, 0, 0), Eigen::Vector3d(0, 10, 0),
                         0, holes));
  frame.scene = sampleAtDensity(patches, density, seed);
  return frame;
}

}  // namespace donseg::synthetic

#endif  // DONSEG_SYNTHETIC_HPP
