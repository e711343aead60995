// donseg - Difference of Normals toolkit for unorganized point clouds
//
// Ground-truth evaluation of DoN segmentation. Each annotated box defines a
// ground-truth point set (scene points inside the box); the cluster with the
// largest intersection is matched to it and scored by point-set precision
// and recall.

#ifndef DONSEG_EVAL_HPP
#define DONSEG_EVAL_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "donseg/clustering.hpp"
#include "donseg/don.hpp"
#include "donseg/io.hpp"
#include "donseg/point_cloud.hpp"

namespace donseg {

/// Upright box with yaw about +z; dims are (length, width, height) along the
/// box's local x, y, z axes.
struct GroundTruthBox {
  std::string frame_id;
  std::string class_name;
  Point3 center = Point3::Zero();
  Eigen::Vector3d dims = Eigen::Vector3d::Ones();
  double yaw = 0.0;

  void validate() const {
    if (!isFinite(center)) throw InvalidArgument("box center must be finite");
    if (!(dims.minCoeff() > 0.0) || !std::isfinite(dims.maxCoeff()))
      throw InvalidArgument("box dimensions must be finite and > 0");
    if (!(yaw > -std::numbers::pi && yaw <= std::numbers::pi))
      throw InvalidArgument("box yaw must lie in (-pi, pi]");
  }
};

/// Maps any finite angle into (-pi, pi].
inline double wrapAngle(double a) {
  const double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  if (a <= -std::numbers::pi) a += two_pi;
  if (a > std::numbers::pi) a -= two_pi;
  return a;
}

/// Indices of points inside the box, boundary inclusive, ascending.
inline IndexList pointsInBox(const PointCloud& cloud, const GroundTruthBox& box) {
  box.validate();
  const double c = std::cos(box.yaw);
  const double s = std::sin(box.yaw);
  const Eigen::Vector3d half = 0.5 * box.dims;
  IndexList inside;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const Eigen::Vector3d d = cloud[i] - box.center;
    // rotate by -yaw into the box frame
    const double lx = c * d.x() + s * d.y();
    const double ly = -s * d.x() + c * d.y();
    if (std::abs(lx) <= half.x() && std::abs(ly) <= half.y() && std::abs(d.z()) <= half.z())
      inside.push_back(i);
  }
  return inside;
}

namespace detail {

/// |a ∩ b| for ascending index lists.
inline std::size_t intersectionSize(const IndexList& a, const IndexList& b) {
  std::size_t n = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) {
      ++ia;
    } else if (*ib < *ia) {
      ++ib;
    } else {
      ++n;
      ++ia;
      ++ib;
    }
  }
  return n;
}

inline IndexList sortedUnique(IndexList v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace detail

/// @brief Position of the cluster sharing the most points with `gt`.
///
/// Empty when no cluster intersects `gt`. Ties go to the higher precision
/// (the smaller cluster), then to the cluster with the lowest point index.
inline std::optional<std::size_t> matchCluster(const std::vector<Cluster>& clusters,
                                               const IndexList& gt) {
  const IndexList g = detail::sortedUnique(gt);
  std::optional<std::size_t> best;
  std::size_t best_inter = 0;
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    const Cluster& cl = clusters[c];
    if (cl.indices.empty()) continue;
    const std::size_t inter = detail::intersectionSize(cl.indices, g);
    if (inter == 0) continue;
    bool take = !best || inter > best_inter;
    if (!take && inter == best_inter) {
      const Cluster& b = clusters[*best];
      take = cl.size() < b.size() || (cl.size() == b.size() && cl.minIndex() < b.minIndex());
    }
    if (take) {
      best = c;
      best_inter = inter;
    }
  }
  return best;
}

struct PrecisionRecall {
  double precision = 0.0;
  double recall = 0.0;
};

/// precision = |C ∩ G| / |C|, recall = |C ∩ G| / |G|.
inline PrecisionRecall precisionRecall(const Cluster& cluster, const IndexList& gt) {
  if (cluster.indices.empty() || gt.empty())
    throw InvalidArgument("precision/recall needs a non-empty cluster and ground truth");
  const IndexList c = detail::sortedUnique(cluster.indices);
  const IndexList g = detail::sortedUnique(gt);
  const double inter = static_cast<double>(detail::intersectionSize(c, g));
  return {inter / static_cast<double>(c.size()), inter / static_cast<double>(g.size())};
}

struct EvalRecord {
  std::string frame_id;
  std::string class_name;
  std::size_t gt_point_count = 0;
  bool matched = false;
  double precision = 0.0;  // meaningful only when matched
  double recall = 0.0;
};

struct EvalConfig {
  DoNParams don;
  double threshold = kDefaultThreshold;
  ClusterParams cluster;
  std::size_t min_gt_points = 100;
  DecimationSpec decimation = DecimationSpec::exact();
  unsigned threads = 0;

  /// Defaults with the cluster tolerance tied to r1.
  static EvalConfig forParams(const DoNParams& p) {
    EvalConfig c;
    c.don = p;
    c.cluster.tolerance = p.r1;
    return c;
  }

  void validate() const {
    don.validate();
    cluster.validate();
    if (!(threshold >= 0.0 && threshold <= 1.0))
      throw InvalidArgument("magnitude threshold must lie in [0, 1]");
    if (min_gt_points < 1) throw InvalidArgument("min_gt_points must be >= 1");
    decimation.validate();
  }
};

struct Frame {
  std::string id;
  PointCloud cloud;
  std::vector<GroundTruthBox> boxes;
};

/// Clusters of one frame: DoN field, magnitude filter, Euclidean clustering.
inline std::vector<Cluster> segmentCloud(const PointCloud& cloud, const DoNParams& don,
                                         double threshold, const ClusterParams& cluster,
                                         DecimationSpec decim = DecimationSpec::exact(),
                                         unsigned threads = 0) {
  const DoNField field = computeDoNField(cloud, don, decim, threads);
  return euclideanClusters(cloud, filterByMagnitude(field, threshold), cluster);
}

/// @brief Scores every sufficiently large ground-truth box of every frame.
///
/// Boxes with fewer than `min_gt_points` member points produce no record;
/// qualifying boxes without an intersecting cluster produce an unmatched
/// record.
inline std::vector<EvalRecord> evaluateSequence(const std::vector<Frame>& frames,
                                                const EvalConfig& config) {
  config.validate();
  std::vector<EvalRecord> records;
  for (const auto& frame : frames) {
    std::vector<std::pair<const GroundTruthBox*, IndexList>> qualifying;
    for (const auto& box : frame.boxes) {
      IndexList gt = pointsInBox(frame.cloud, box);
      if (gt.size() >= config.min_gt_points) qualifying.emplace_back(&box, std::move(gt));
    }
    if (qualifying.empty()) continue;
    const auto clusters = segmentCloud(frame.cloud, config.don, config.threshold,
                                       config.cluster, config.decimation, config.threads);
    for (const auto& [box, gt] : qualifying) {
      EvalRecord rec;
      rec.frame_id = frame.id;
      rec.class_name = box->class_name;
      rec.gt_point_count = gt.size();
      if (auto m = matchCluster(clusters, gt)) {
        const auto pr = precisionRecall(clusters[*m], gt);
        rec.matched = true;
        rec.precision = pr.precision;
        rec.recall = pr.recall;
      }
      records.push_back(std::move(rec));
    }
  }
  return records;
}

/// CSV: frame_id,class,gt_points,matched,precision,recall. Unmatched rows
/// leave precision and recall empty.
inline std::string recordsToCsv(const std::vector<EvalRecord>& records) {
  std::string out = "frame_id,class,gt_points,matched,precision,recall\n";
  char buf[128];
  for (const auto& r : records) {
    out += r.frame_id + "," + r.class_name + "," + std::to_string(r.gt_point_count) + ",";
    if (r.matched) {
      std::snprintf(buf, sizeof(buf), "1,%.6f,%.6f", r.precision, r.recall);
      out += buf;
    } else {
      out += "0,,";
    }
    out += "\n";
  }
  return out;
}

/// @brief Parses ground truth, one box per line:
///
///   frame_id class cx cy cz length width height yaw
///
/// '#' starts a comment line. Yaw is wrapped into (-pi, pi].
inline std::vector<GroundTruthBox> parseGroundTruth(std::string_view text) {
  std::vector<GroundTruthBox> boxes;
  detail::LineReader reader(text);
  std::string_view line;
  while (reader.next(line)) {
    const std::string_view t = detail::trim(line);
    if (t.empty() || t.front() == '#') continue;
    const std::size_t ln = reader.lineNo();
    const auto toks = detail::splitWs(t);
    if (toks.size() != 9)
      throw ParseError("ground truth line " + std::to_string(ln) + " needs 9 fields", ln);
    double v[7];
    for (int k = 0; k < 7; ++k) {
      auto d = detail::toDouble(toks[static_cast<std::size_t>(k + 2)]);
      if (!d || !std::isfinite(*d))
        throw ParseError("invalid number in ground truth line " + std::to_string(ln), ln);
      v[k] = *d;
    }
    GroundTruthBox box;
    box.frame_id = std::string(toks[0]);
    box.class_name = std::string(toks[1]);
    box.center = Point3(v[0], v[1], v[2]);
    box.dims = Eigen::Vector3d(v[3], v[4], v[5]);
    box.yaw = wrapAngle(v[6]);
    try {
      box.validate();
    } catch (const InvalidArgument& e) {
      throw ParseError(std::string(e.what()) + " (line " + std::to_string(ln) + ")", ln);
    }
    boxes.push_back(std::move(box));
  }
  return boxes;
}

inline std::vector<GroundTruthBox> loadGroundTruth(const std::filesystem::path& path) {
  return parseGroundTruth(detail::readFile(path));
}

inline std::string groundTruthToText(const std::vector<GroundTruthBox>& boxes) {
  std::string out = "# frame_id class cx cy cz length width height yaw\n";
  char buf[256];
  for (const auto& b : boxes) {
    std::snprintf(buf, sizeof(buf), " %.9g %.9g %.9g %.9g %.9g %.9g %.9g\n", b.center.x(),
                  b.center.y(), b.center.z(), b.dims.x(), b.dims.y(), b.dims.z(), b.yaw);
    out += b.frame_id + " " + b.class_name + buf;
  }
  return out;
}

}  // namespace donseg

#endif  // DONSEG_EVAL_HPP
