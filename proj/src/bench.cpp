#include "growelim/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>

#include <json.hpp>
#include <omp.h>

namespace growelim {

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size();
  if (m == 0) return 0.0;
  return m % 2 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

class ThreadScope {
 public:
  explicit ThreadScope(int threads) : saved_(omp_get_max_threads()), active_(threads > 0) {
    if (active_) omp_set_num_threads(threads);
  }
  ~ThreadScope() {
    if (active_) omp_set_num_threads(saved_);
  }
  ThreadScope(const ThreadScope&) = delete;
  ThreadScope& operator=(const ThreadScope&) = delete;

 private:
  int saved_;
  bool active_;
};

}  // namespace

BenchReport run_bench(const BenchConfig& config) {
  const ThreadScope threads(config.threads);
  BenchReport report;
  for (const std::size_t n : config.sizes) {
    GeneratorParams params = config.instance;
    params.n = n;
    const Instance inst = generate(params);
    const InstanceStats stats =
        inst.size() >= 2 ? compute_stats(inst) : InstanceStats{};
    for (const Algorithm algo : config.algorithms) {
      BenchRun run;
      run.algorithm = algo;
      run.n = inst.size();
      run.delta = stats.delta;
      run.phi_approx = stats.phi;
      run.alpha = stats.alpha;
      for (std::size_t r = 0; r < std::max<std::size_t>(1, config.repeats); ++r) {
        SolveDiagnostics diag;
        const auto start = std::chrono::steady_clock::now();
        solve(algo, inst, &diag);
        const auto stop = std::chrono::steady_clock::now();
        run.seconds.push_back(std::chrono::duration<double>(stop - start).count());
        run.nodes = diag.nodes;
        run.candidate_pairs = diag.candidate_pairs;
        run.depth = diag.depth;
      }
      run.median_seconds = median(run.seconds);
      report.runs.push_back(std::move(run));
    }
  }
  for (const BenchRun& a : report.runs)
    for (const BenchRun& b : report.runs)
      if (a.algorithm == b.algorithm && b.n == 2 * a.n && a.median_seconds > 0.0)
        report.ratios.push_back({a.algorithm, a.n, b.median_seconds / a.median_seconds});
  return report;
}

std::string BenchReport::json() const {
  nlohmann::json doc;
  doc["runs"] = nlohmann::json::array();
  for (const BenchRun& r : runs) {
    doc["runs"].push_back({{"algorithm", std::string(to_string(r.algorithm))},
                           {"n", r.n},
                           {"median_seconds", r.median_seconds},
                           {"seconds", r.seconds},
                           {"nodes", r.nodes},
                           {"candidate_pairs", r.candidate_pairs},
                           {"depth", r.depth},
                           {"delta", r.delta},
                           {"phi_approx", r.phi_approx},
                           {"alpha", r.alpha}});
  }
  doc["ratios"] = nlohmann::json::array();
  for (const BenchRatio& r : ratios)
    doc["ratios"].push_back({{"algorithm", std::string(to_string(r.algorithm))},
                             {"n", r.n},
                             {"ratio", r.ratio}});
  return doc.dump(2);
}

std::string BenchReport::table() const {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-10s %9s %12s %10s %12s %6s %8s %10s %6s\n", "algo",
                "n", "median_s", "nodes", "pairs", "depth", "delta", "phi~", "alpha");
  out += line;
  for (const BenchRun& r : runs) {
    std::snprintf(line, sizeof line, "%-10s %9zu %12.6f %10zu %12zu %6d %8.3g %10.4g %6.2f\n",
                  std::string(to_string(r.algorithm)).c_str(), r.n, r.median_seconds,
                  r.nodes, r.candidate_pairs, r.depth, r.delta, r.phi_approx, r.alpha);
    out += line;
  }
  for (const BenchRatio& r : ratios) {
    std::snprintf(line, sizeof line, "ratio %-10s time(%zu)/time(%zu) = %.3f\n",
                  std::string(to_string(r.algorithm)).c_str(), 2 * r.n, r.n, r.ratio);
    out += line;
  }
  return out;
}

}  // namespace growelim
