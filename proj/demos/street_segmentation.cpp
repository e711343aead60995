// Segments a synthetic street scene at two scales and prints the largest
// clusters found at each.
//
//   street_segmentation [num_points] [seed]

#include <donseg/eval.hpp>
#include <donseg/synthetic.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>

using namespace donseg;

namespace {

void report(const char* name, const PointCloud& cloud, const DoNParams& p) {
  const auto t0 = std::chrono::steady_clock::now();
  ClusterParams cp;
  cp.tolerance = p.r1;
  cp.min_points = 50;
  const auto clusters = segmentCloud(cloud, p, kDefaultThreshold, cp);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%s (r1=%g, r2=%g): %zu clusters in %.2f s\n", name, p.r1, p.r2, clusters.size(),
              secs);
  for (std::size_t k = 0; k < clusters.size() && k < 5; ++k) {
    Point3 c = Point3::Zero();
    for (Index i : clusters[k].indices) c += cloud[i];
    c /= static_cast<double>(clusters[k].size());
    std::printf("  #%zu  %6zu points  centroid (%.2f, %.2f, %.2f)\n", k, clusters[k].size(),
                c.x(), c.y(), c.z());
  }
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 100000;
  const std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 1;
  const auto scene = synthetic::streetScene(n, seed);
  std::printf("street scene: %zu points\n", scene.cloud.size());
  report("small scale", scene.cloud, presets::kPedestrian);
  report("large scale", scene.cloud, presets::kCar);
}
