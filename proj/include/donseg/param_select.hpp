// donseg - Difference of Normals toolkit for unorganized point clouds
//
// Parameter selection from per-class DoN response statistics.
//
// For every object class and every radius pair of a grid, the DoN
// magnitudes of all points belonging to objects of that class are pooled
// and summarized (mean, median, variance). A pair is then recommended for
// an objective class by maximizing the gap between the objective's median
// response and the strongest median response of any other class.

#ifndef DONSEG_PARAM_SELECT_HPP
#define DONSEG_PARAM_SELECT_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "donseg/don.hpp"
#include "donseg/normals.hpp"
#include "donseg/point_cloud.hpp"
#include "donseg/spatial_index.hpp"

namespace donseg {

/// Ground-truth object extracts of one class.
struct ClassSample {
  std::string class_name;
  std::vector<PointCloud> clouds;
};

/// Objects of one class given as index sets into a shared scene.
struct ClassMembership {
  std::string class_name;
  std::vector<IndexList> objects;
};

struct ParamGrid {
  std::vector<DoNParams> pairs;

  void validate() const {
    if (pairs.empty()) throw InvalidArgument("parameter grid is empty");
    for (const auto& p : pairs) p.validate();
  }

  /// All (r1, r2) combinations with r1 < r2.
  static ParamGrid cartesian(const std::vector<double>& r1s, const std::vector<double>& r2s) {
    ParamGrid g;
    for (double a : r1s)
      for (double b : r2s)
        if (a < b) g.pairs.push_back({a, b});
    return g;
  }

  /// Sorted distinct radii over all pairs.
  std::vector<double> radii() const {
    std::vector<double> r;
    for (const auto& p : pairs) {
      r.push_back(p.r1);
      r.push_back(p.r2);
    }
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    return r;
  }
};

struct ResponseStats {
  double mean = std::numeric_limits<double>::quiet_NaN();
  double median = std::numeric_limits<double>::quiet_NaN();
  double variance = std::numeric_limits<double>::quiet_NaN();
  std::size_t valid_count = 0;

  bool defined() const { return valid_count > 0; }
};

/// @brief Mean, median and population variance of a sample.
///
/// Values are sorted first, so the result does not depend on their order.
inline ResponseStats summarize(std::vector<double> values) {
  ResponseStats s;
  s.valid_count = values.size();
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.variance = ss / static_cast<double>(n);
  s.median = n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
  return s;
}

struct ClassStatsRow {
  std::string class_name;
  DoNParams params;
  ResponseStats stats;
};

/// One row per (class, pair), classes in input order, pairs in grid order.
struct ClassStats {
  std::vector<ClassStatsRow> rows;

  std::vector<std::string> classes() const {
    std::vector<std::string> names;
    for (const auto& r : rows)
      if (std::find(names.begin(), names.end(), r.class_name) == names.end())
        names.push_back(r.class_name);
    return names;
  }

  const ResponseStats* find(const std::string& cls, const DoNParams& p) const {
    for (const auto& r : rows)
      if (r.class_name == cls && r.params == p) return &r.stats;
    return nullptr;
  }
};

namespace detail {

/// Normal maps of `cloud` for each listed radius, sharing one index.
inline std::map<double, NormalMap> normalMapsByRadius(const PointCloud& cloud,
                                                      const std::vector<double>& radii,
                                                      unsigned threads) {
  std::map<double, NormalMap> maps;
  const SpatialIndex index(cloud);
  for (double r : radii) maps.emplace(r, estimateNormalMap(cloud, cloud, index, r, threads));
  return maps;
}

inline void appendMagnitudes(const std::map<double, NormalMap>& maps, const DoNParams& p,
                             const IndexList* members, std::vector<double>& out) {
  const NormalMap& small = maps.at(p.r1);
  const NormalMap& large = maps.at(p.r2);
  auto take = [&](Index i) {
    if (auto d = donPair(small[i], large[i])) out.push_back(d->norm());
  };
  if (members) {
    for (Index i : *members) take(i);
  } else {
    for (std::size_t i = 0; i < small.size(); ++i) take(i);
  }
}

}  // namespace detail

/// @brief Response statistics with each object processed in isolation.
///
/// Throws EmptyClass when a class has no points at all.
inline ClassStats classResponseStats(const std::vector<ClassSample>& samples,
                                     const ParamGrid& grid, unsigned threads = 0) {
  grid.validate();
  const std::vector<double> radii = grid.radii();
  ClassStats stats;
  for (const auto& sample : samples) {
    std::size_t total = 0;
    for (const auto& c : sample.clouds) total += c.size();
    if (total == 0) throw EmptyClass("class '" + sample.class_name + "' has no points");

    std::vector<std::vector<double>> pooled(grid.pairs.size());
    for (const auto& cloud : sample.clouds) {
      if (cloud.empty()) continue;
      const auto maps = detail::normalMapsByRadius(cloud, radii, threads);
      for (std::size_t k = 0; k < grid.pairs.size(); ++k)
        detail::appendMagnitudes(maps, grid.pairs[k], nullptr, pooled[k]);
    }
    for (std::size_t k = 0; k < grid.pairs.size(); ++k)
      stats.rows.push_back({sample.class_name, grid.pairs[k], summarize(std::move(pooled[k]))});
  }
  return stats;
}

/// @brief Response statistics with normals computed in the full scene.
///
/// Object points keep their real surroundings; membership only decides
/// which magnitudes are pooled into each class.
inline ClassStats classResponseStats(const PointCloud& scene,
                                     const std::vector<ClassMembership>& classes,
                                     const ParamGrid& grid, unsigned threads = 0) {
  grid.validate();
  for (const auto& cls : classes) {
    std::size_t total = 0;
    for (const auto& obj : cls.objects) {
      total += obj.size();
      for (Index i : obj)
        if (i >= scene.size())
          throw IndexOutOfRange("class '" + cls.class_name + "' references point " +
                                std::to_string(i) + " outside the scene");
    }
    if (total == 0) throw EmptyClass("class '" + cls.class_name + "' has no points");
  }
  const auto maps = detail::normalMapsByRadius(scene, grid.radii(), threads);
  ClassStats stats;
  for (const auto& cls : classes) {
    for (const auto& pair : grid.pairs) {
      std::vector<double> pooled;
      for (const auto& obj : cls.objects) detail::appendMagnitudes(maps, pair, &obj, pooled);
      stats.rows.push_back({cls.class_name, pair, summarize(std::move(pooled))});
    }
  }
  return stats;
}

struct Recommendation {
  DoNParams params;
  double threshold = kDefaultThreshold;
  double objective_median = 0.0;
  /// Objective median minus the largest other-class median; equals the
  /// objective median when no other class responds at this pair.
  double margin = 0.0;
};

/// @brief Radius pair and magnitude threshold that best isolate `objective`.
///
/// Maximizes margin = median(objective) - max median(other classes). The
/// threshold is the midpoint between the two medians (median / 2 without a
/// competing class), clamped to [0, 1]. Ties prefer the larger objective
/// median, then the smaller r2, then the smaller r1.
inline Recommendation selectParams(const ClassStats& stats, const std::string& objective) {
  const auto names = stats.classes();
  if (std::find(names.begin(), names.end(), objective) == names.end())
    throw UnknownClass("unknown class '" + objective + "'");

  std::optional<Recommendation> best;
  auto better = [](const Recommendation& a, const Recommendation& b) {
    if (a.margin != b.margin) return a.margin > b.margin;
    if (a.objective_median != b.objective_median) return a.objective_median > b.objective_median;
    if (a.params.r2 != b.params.r2) return a.params.r2 < b.params.r2;
    return a.params.r1 < b.params.r1;
  };
  for (const auto& row : stats.rows) {
    if (row.class_name != objective || !row.stats.defined()) continue;
    std::optional<double> rival;
    for (const auto& other : stats.rows) {
      if (other.class_name == objective || !(other.params == row.params) ||
          !other.stats.defined())
        continue;
      rival = rival ? std::max(*rival, other.stats.median) : other.stats.median;
    }
    Recommendation cand;
    cand.params = row.params;
    cand.objective_median = row.stats.median;
    if (rival) {
      cand.margin = row.stats.median - *rival;
      cand.threshold = 0.5 * (row.stats.median + *rival);
    } else {
      cand.margin = row.stats.median;
      cand.threshold = 0.5 * row.stats.median;
    }
    cand.threshold = std::clamp(cand.threshold, 0.0, 1.0);
    if (!best || better(cand, *best)) best = cand;
  }
  if (!best) throw EmptyClass("class '" + objective + "' has no valid response at any pair");
  return *best;
}

/// CSV: class,r1,r2,mean,median,variance,valid_count. Undefined statistics
/// are left empty.
inline std::string statsToCsv(const ClassStats& stats) {
  std::string out = "class,r1,r2,mean,median,variance,valid_count\n";
  char buf[256];
  for (const auto& row : stats.rows) {
    const auto& s = row.stats;
    if (s.defined()) {
      std::snprintf(buf, sizeof(buf), "%.9g,%.9g,%.9g,%.9g,%.9g,%zu", row.params.r1,
                    row.params.r2, s.mean, s.median, s.variance, s.valid_count);
    } else {
      std::snprintf(buf, sizeof(buf), "%.9g,%.9g,,,,0", row.params.r1, row.params.r2);
    }
    out += row.class_name + "," + buf + "\n";
  }
  return out;
}

}  // namespace donseg

#endif  // DONSEG_PARAM_SELECT_HPP
