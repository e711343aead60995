// donseg: command-line driver for DoN filtering, segmentation, parameter
// search, evaluation and benchmarking.

#include <donseg/clustering.hpp>
#include <donseg/don.hpp>
#include <donseg/eval.hpp>
#include <donseg/io.hpp>
#include <donseg/param_select.hpp>
#include <donseg/synthetic.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace donseg;

namespace {

// Bad flag values detected after parsing; exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DonOptions {
  double r1 = 0.1;
  double r2 = 1.0;
  unsigned decimation = 0;
  unsigned threads = 0;

  DoNParams params() const {
    const DoNParams p{r1, r2};
    try {
      p.validate();
    } catch (const InvalidArgument& e) {
      throw UsageError(e.what());
    }
    return p;
  }
  DecimationSpec decim() const { return DecimationSpec::fromFlag(decimation); }
};

struct SegmentOptions {
  double threshold = kDefaultThreshold;
  std::optional<double> tolerance;
  std::size_t min_cluster = 100;
  std::size_t max_cluster = 100000;

  ClusterParams cluster(const DoNParams& p) const {
    const ClusterParams c{tolerance.value_or(p.r1), min_cluster, max_cluster};
    try {
      c.validate();
    } catch (const InvalidArgument& e) {
      throw UsageError(e.what());
    }
    return c;
  }
};

struct OutputOptions {
  std::string path;
  std::string format;
  int precision = 9;
  bool binary = false;

  CloudFormat resolve() const {
    try {
      return format.empty() ? formatFromPath(path) : parseFormat(format);
    } catch (const InvalidArgument& e) {
      throw UsageError(std::string(e.what()) + "; pass --format");
    }
  }
  SaveOptions save() const { return {precision, binary}; }
};

void addDonOptions(CLI::App* cmd, DonOptions& o) {
  cmd->add_option("--r1", o.r1, "Small support radius (m)")->capture_default_str();
  cmd->add_option("--r2", o.r2, "Large support radius (m)")->capture_default_str();
  cmd->add_option("--decimation,-d", o.decimation,
                  "Voxel decimation factor d (search voxel edge r/d); 0 = exact")
      ->capture_default_str();
  cmd->add_option("--threads,-j", o.threads, "Worker threads; 0 = all cores")
      ->capture_default_str();
}

void addSegmentOptions(CLI::App* cmd, SegmentOptions& o) {
  cmd->add_option("--threshold,-t", o.threshold, "Minimum DoN magnitude")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd->add_option("--tolerance", o.tolerance, "Cluster distance tolerance (m); default r1");
  cmd->add_option("--min-cluster", o.min_cluster, "Smallest cluster kept")->capture_default_str();
  cmd->add_option("--max-cluster", o.max_cluster, "Largest cluster kept")->capture_default_str();
}

void addOutputOptions(CLI::App* cmd, OutputOptions& o, bool required) {
  auto* opt = cmd->add_option("--output,-o", o.path, "Output cloud file");
  if (required) opt->required();
  cmd->add_option("--format", o.format, "Output format: xyz, pcd or ply (default: from extension)")
      ->check(CLI::IsMember({"xyz", "txt", "pcd", "pcd-ascii", "ply"}));
  cmd->add_option("--precision", o.precision, "Significant digits for text output")
      ->check(CLI::Range(1, 17))
      ->capture_default_str();
  cmd->add_flag("--binary", o.binary, "Binary little-endian PLY");
}

PointCloud readInput(const std::string& path, const std::string& format) {
  if (format.empty()) {
    try {
      return loadCloud(path, formatFromPath(path));
    } catch (const InvalidArgument& e) {
      throw UsageError(std::string(e.what()) + "; pass --input-format");
    }
  }
  return loadCloud(path, parseFormat(format));
}

void writeText(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    detail::writeFile(path, text);
  }
}

double seconds(std::chrono::steady_clock::duration d) {
  return std::chrono::duration<double>(d).count();
}

// Nearest-rank percentile of an unsorted sample.
double percentile(std::vector<double> v, double q) {
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(v.size())));
  return v[std::clamp<std::size_t>(rank, 1, v.size()) - 1];
}

// "0.1,0.2x1,2" -> cartesian grid of r1 in {0.1, 0.2} and r2 in {1, 2}.
ParamGrid parseGrid(const std::string& spec) {
  const auto x = spec.find('x');
  if (x == std::string::npos || spec.find('x', x + 1) != std::string::npos)
    throw UsageError("grid must look like R1,R1,...xR2,R2,...: '" + spec + "'");
  auto list = [&](std::string_view part) {
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= part.size()) {
      const std::size_t end = std::min(part.find(',', start), part.size());
      const auto v = detail::toDouble(detail::trim(part.substr(start, end - start)));
      if (!v || !(*v > 0.0) || !std::isfinite(*v))
        throw UsageError("grid radii must be positive numbers: '" + spec + "'");
      values.push_back(*v);
      start = end + 1;
    }
    return values;
  };
  const std::string_view s(spec);
  ParamGrid grid = ParamGrid::cartesian(list(s.substr(0, x)), list(s.substr(x + 1)));
  if (grid.pairs.empty()) throw UsageError("grid has no pair with r1 < r2: '" + spec + "'");
  return grid;
}

bool isCloudFile(const fs::path& p) {
  try {
    formatFromPath(p);
    return fs::is_regular_file(p);
  } catch (const InvalidArgument&) {
    return false;
  }
}

std::vector<fs::path> cloudFiles(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (isCloudFile(entry.path())) files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  return files;
}

std::optional<fs::path> findFrame(const fs::path& dir, const std::string& id) {
  for (const char* ext : {".pcd", ".ply", ".xyz", ".txt"}) {
    const fs::path p = dir / (id + ext);
    if (fs::is_regular_file(p)) return p;
  }
  return std::nullopt;
}

// --- commands --------------------------------------------------------------

int runDon(const std::string& input, const std::string& input_format, const DonOptions& don,
           const OutputOptions& out) {
  const DoNParams p = don.params();
  const CloudFormat fmt = out.resolve();
  PointCloud cloud = readInput(input, input_format);
  const DoNField field = computeDoNField(cloud, p, don.decim(), don.threads);
  attachDoNAttributes(cloud, field);
  saveCloud(cloud, out.path, fmt, cloud.attributeNames(), out.save());
  std::size_t valid = 0;
  for (std::size_t i = 0; i < field.size(); ++i) valid += field.isValid(i);
  std::fprintf(stderr, "%zu points, %zu with a valid DoN vector\n", cloud.size(), valid);
  return 0;
}

int runSegment(const std::string& input, const std::string& input_format, const DonOptions& don,
               const SegmentOptions& seg, const OutputOptions& out, const std::string& summary) {
  const DoNParams p = don.params();
  const ClusterParams cp = seg.cluster(p);
  const bool write_cloud = !out.path.empty();
  const CloudFormat fmt = write_cloud ? out.resolve() : CloudFormat::Xyz;
  PointCloud cloud = readInput(input, input_format);
  const auto clusters = segmentCloud(cloud, p, seg.threshold, cp, don.decim(), don.threads);

  std::string csv = "cluster_id,size,cx,cy,cz\n";
  char buf[160];
  for (std::size_t k = 0; k < clusters.size(); ++k) {
    Point3 c = Point3::Zero();
    for (Index i : clusters[k].indices) c += cloud[i];
    c /= static_cast<double>(clusters[k].size());
    std::snprintf(buf, sizeof(buf), "%zu,%zu,%.6f,%.6f,%.6f\n", k, clusters[k].size(), c.x(),
                  c.y(), c.z());
    csv += buf;
  }
  writeText(summary, csv);
  if (write_cloud) {
    cloud.setAttribute("cluster_id", clusterIdAttribute(cloud.size(), clusters));
    saveCloud(cloud, out.path, fmt, cloud.attributeNames(), out.save());
  }
  std::fprintf(stderr, "%zu clusters\n", clusters.size());
  return 0;
}

int runParamSearch(const std::vector<std::string>& dirs, const std::string& grid_spec,
                   const std::vector<std::string>& objectives, unsigned threads,
                   const std::string& output) {
  const ParamGrid grid = parseGrid(grid_spec);
  std::vector<ClassSample> samples;
  for (const auto& d : dirs) {
    ClassSample s;
    s.class_name = fs::path(d).lexically_normal().filename().string();
    if (s.class_name.empty()) s.class_name = fs::path(d).lexically_normal().parent_path().filename().string();
    for (const auto& f : cloudFiles(d)) s.clouds.push_back(loadCloud(f));
    samples.push_back(std::move(s));
  }
  const ClassStats stats = classResponseStats(samples, grid, threads);
  writeText(output, statsToCsv(stats));

  std::vector<std::string> wanted = objectives;
  if (wanted.empty()) wanted = stats.classes();
  for (const auto& cls : wanted) {
    const Recommendation r = selectParams(stats, cls);
    std::printf("# recommended for %s: r1=%g r2=%g threshold=%.4f median=%.4f margin=%.4f\n",
                cls.c_str(), r.params.r1, r.params.r2, r.threshold, r.objective_median, r.margin);
  }
  return 0;
}

int runEvaluate(const std::string& frames_dir, const std::string& gt_path,
                const std::string& input_format, const DonOptions& don,
                const SegmentOptions& seg, std::size_t min_gt_points, const std::string& output) {
  EvalConfig cfg;
  cfg.don = don.params();
  cfg.threshold = seg.threshold;
  cfg.cluster = seg.cluster(cfg.don);
  cfg.min_gt_points = min_gt_points;
  cfg.decimation = don.decim();
  cfg.threads = don.threads;
  try {
    cfg.validate();
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  if (!fs::is_directory(frames_dir)) throw IoError("not a directory: " + frames_dir);

  const auto boxes = loadGroundTruth(gt_path);
  std::vector<std::string> order;
  std::map<std::string, std::vector<GroundTruthBox>> by_frame;
  for (const auto& b : boxes) {
    if (!by_frame.count(b.frame_id)) order.push_back(b.frame_id);
    by_frame[b.frame_id].push_back(b);
  }
  std::vector<Frame> frames;
  for (const auto& id : order) {
    std::optional<fs::path> path;
    if (input_format.empty()) {
      path = findFrame(frames_dir, id);
    } else {
      const fs::path p = fs::path(frames_dir) / (id + "." + input_format);
      if (fs::is_regular_file(p)) path = p;
    }
    if (!path) {
      std::fprintf(stderr, "warning: no cloud for frame '%s'; skipping %zu box(es)\n",
                   id.c_str(), by_frame[id].size());
      continue;
    }
    const PointCloud cloud =
        input_format.empty() ? loadCloud(*path) : loadCloud(*path, parseFormat(input_format));
    frames.push_back({id, cloud, by_frame[id]});
  }
  writeText(output, recordsToCsv(evaluateSequence(frames, cfg)));
  return 0;
}

int runBench(const std::string& input, const std::string& input_format, const DonOptions& don,
             unsigned repeats) {
  const DoNParams p = don.params();
  const PointCloud cloud = readInput(input, input_format);

  auto timed = [&](DecimationSpec decim, NormalMapPair& maps) {
    double best = std::numeric_limits<double>::infinity();
    for (unsigned k = 0; k < repeats; ++k) {
      const auto t0 = std::chrono::steady_clock::now();
      maps = computeNormalMaps(cloud, p, decim, don.threads);
      const DoNField field = donFromNormalMaps(maps.small, maps.large, p);
      best = std::min(best, seconds(std::chrono::steady_clock::now() - t0));
      if (field.size() != cloud.size()) throw Error("internal: field size mismatch");
    }
    return best;
  };

  std::printf("# %zu points, r1=%g r2=%g, threads=%u, best of %u\n", cloud.size(), p.r1, p.r2,
              resolveThreads(don.threads), repeats);
  std::printf("mode,decimation,seconds\n");
  NormalMapPair exact;
  const double t_exact = timed(DecimationSpec::exact(), exact);
  std::printf("exact,0,%.4f\n", t_exact);
  if (don.decimation == 0) return 0;

  NormalMapPair approx;
  const double t_dec = timed(don.decim(), approx);
  std::printf("decimated,%u,%.4f\n", don.decimation, t_dec);
  std::printf("# speedup %.2fx\n", t_exact / t_dec);
  auto report = [&](const char* name, const NormalMap& a, const NormalMap& b) {
    std::vector<double> dev;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i].valid && b[i].valid) dev.push_back(lineAngleDeg(a[i].n, b[i].n));
    std::printf("# deviation %s (r=%g): median %.4f deg, p95 %.4f deg over %zu points\n", name,
                a.radius, percentile(dev, 0.5), percentile(dev, 0.95), dev.size());
  };
  report("r1", exact.small, approx.small);
  report("r2", exact.large, approx.large);
  return 0;
}

int runGenerate(const std::string& scene, std::size_t points, double density,
                std::uint64_t seed, const OutputOptions& out, const std::string& gt_path) {
  const CloudFormat fmt = out.resolve();
  synthetic::LabeledCloud lc;
  std::vector<GroundTruthBox> boxes;
  if (scene == "street") {
    lc = synthetic::streetScene(points, seed);
  } else if (scene == "polebox") {
    lc = synthetic::poleBoxScene(density, seed);
  } else if (scene == "polebox-scan") {
    lc = synthetic::poleBoxScan(density, seed);
  } else if (scene == "strip") {
    lc = synthetic::corrugatedStripScene(density, seed);
  } else if (scene == "plane") {
    const double spacing = 1.0 / std::sqrt(density);
    const auto n = static_cast<std::size_t>(std::llround(10.0 / spacing)) + 1;
    lc.cloud = synthetic::planeGrid(n, n, spacing);
    lc.labels.assign(lc.cloud.size(), 0);
  } else {  // eval
    const std::string id = fs::path(out.path).stem().string();
    auto frame = synthetic::evaluationFrame(id, density, seed);
    lc = std::move(frame.scene);
    boxes = std::move(frame.boxes);
  }
  std::vector<double> labels(lc.labels.begin(), lc.labels.end());
  lc.cloud.setAttribute("label", std::move(labels));
  saveCloud(lc.cloud, out.path, fmt, {"label"}, out.save());
  if (!gt_path.empty()) {
    if (scene != "eval") throw UsageError("--gt is only produced by the 'eval' scene");
    writeText(gt_path, groundTruthToText(boxes));
  }
  std::fprintf(stderr, "%zu points written to %s\n", lc.cloud.size(), out.path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Difference of Normals filtering and segmentation for unorganized point clouds",
               "donseg"};
  app.set_config("--config", "", "TOML/INI file with option defaults; flags override it");
  app.set_version_flag("--version", "donseg 0.1.0");
  app.require_subcommand(1);

  std::string input, input_format;
  auto addInput = [&](CLI::App* cmd) {
    cmd->add_option("input", input, "Input cloud (.xyz, .txt, .pcd, .ply)")->required();
    cmd->add_option("--input-format", input_format, "Override the input format")
        ->check(CLI::IsMember({"xyz", "txt", "pcd", "pcd-ascii", "ply"}));
  };

  DonOptions don;
  SegmentOptions seg;
  OutputOptions out;

  auto* don_cmd = app.add_subcommand("don", "Write the DoN vector field as point attributes");
  addInput(don_cmd);
  addDonOptions(don_cmd, don);
  addOutputOptions(don_cmd, out, true);

  std::string summary;
  auto* seg_cmd = app.add_subcommand("segment", "DoN threshold followed by Euclidean clustering");
  addInput(seg_cmd);
  addDonOptions(seg_cmd, don);
  addSegmentOptions(seg_cmd, seg);
  addOutputOptions(seg_cmd, out, false);
  seg_cmd->add_option("--summary", summary, "Cluster summary CSV (default: stdout)");

  std::vector<std::string> class_dirs, objectives;
  std::string grid_spec = "0.1,0.2,0.4x0.4,1,2";
  std::string text_out;
  auto* ps_cmd = app.add_subcommand("paramsearch", "Per-class response statistics over a grid");
  ps_cmd->add_option("classes", class_dirs, "One directory of object clouds per class")
      ->required()
      ->check(CLI::ExistingDirectory);
  ps_cmd->add_option("--grid", grid_spec, "Radii grid R1,...xR2,...")->capture_default_str();
  ps_cmd->add_option("--objective", objectives, "Class to recommend parameters for (repeatable)");
  ps_cmd->add_option("--threads,-j", don.threads, "Worker threads; 0 = all cores");
  ps_cmd->add_option("--output,-o", text_out, "Statistics CSV (default: stdout)");

  std::string frames_dir, gt_path;
  std::size_t min_gt_points = 100;
  auto* ev_cmd = app.add_subcommand("evaluate", "Score segmentation against ground-truth boxes");
  ev_cmd->add_option("--frames", frames_dir, "Directory of <frame_id>.<ext> clouds")->required();
  ev_cmd->add_option("--gt", gt_path, "Ground-truth box file")->required();
  ev_cmd->add_option("--input-format", input_format, "Frame file extension to look for")
      ->check(CLI::IsMember({"xyz", "txt", "pcd", "ply"}));
  addDonOptions(ev_cmd, don);
  addSegmentOptions(ev_cmd, seg);
  ev_cmd->add_option("--min-gt-points", min_gt_points, "Smallest ground-truth object scored")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  ev_cmd->add_option("--output,-o", text_out, "Record CSV (default: stdout)");

  unsigned repeats = 3;
  auto* bench_cmd = app.add_subcommand("bench", "Time exact against decimated normal estimation");
  addInput(bench_cmd);
  addDonOptions(bench_cmd, don);
  bench_cmd->add_option("--repeat", repeats, "Timing runs; the fastest is reported")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::string scene;
  std::size_t points = 200000;
  double density = 100.0;
  std::uint64_t seed = 1;
  auto* gen_cmd = app.add_subcommand("generate", "Write a synthetic test scene");
  gen_cmd->add_option("scene", scene, "street, polebox, polebox-scan, strip, plane or eval")
      ->required()
      ->check(CLI::IsMember({"street", "polebox", "polebox-scan", "strip", "plane", "eval"}));
  gen_cmd->add_option("--points", points, "Point count (street)")->capture_default_str();
  gen_cmd->add_option("--density", density, "Points per square meter (other scenes)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  gen_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
  gen_cmd->add_option("--gt", gt_path, "Ground-truth boxes (eval scene)");
  addOutputOptions(gen_cmd, out, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*don_cmd) return runDon(input, input_format, don, out);
    if (*seg_cmd) return runSegment(input, input_format, don, seg, out, summary);
    if (*ps_cmd) return runParamSearch(class_dirs, grid_spec, objectives, don.threads, text_out);
    if (*ev_cmd)
      return runEvaluate(frames_dir, gt_path, input_format, don, seg, min_gt_points, text_out);
    if (*bench_cmd) return runBench(input, input_format, don, repeats);
    if (*gen_cmd) return runGenerate(scene, points, density, seed, out, gt_path);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "donseg: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "donseg: %s\n", e.what());
    return 1;
  }
  return 2;
}
