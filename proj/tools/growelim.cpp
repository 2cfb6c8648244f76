// growelim: generate instances, solve, cross-verify and benchmark.
//
// Exit codes: 0 success, 1 verification divergence, 2 usage or parse error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "growelim/bench.hpp"
#include "growelim/core.hpp"
#include "growelim/generate.hpp"
#include "growelim/io.hpp"
#include "growelim/verify.hpp"

using namespace growelim;

namespace {

constexpr int kUsage = 2;
constexpr int kDiverged = 1;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<Algorithm> parse_algorithms(const std::vector<std::string>& names) {
  std::vector<Algorithm> out;
  for (const std::string& list : names) {
    std::stringstream ss(list);
    for (std::string name; std::getline(ss, name, ',');) {
      if (name.empty()) continue;
      const auto a = parse_algorithm(name);
      if (!a) throw UsageError("unknown algorithm '" + name + "'");
      out.push_back(*a);
    }
  }
  return out;
}

std::vector<std::size_t> parse_sizes(const std::string& list) {
  std::vector<std::size_t> out;
  std::stringstream ss(list);
  for (std::string item; std::getline(ss, item, ',');) {
    if (item.empty()) continue;
    try {
      const double v = std::stod(item);
      if (!(v >= 1.0)) throw UsageError("bad size '" + item + "'");
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::logic_error&) {
      throw UsageError("bad size '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("--n-list is empty");
  return out;
}

ShapeKind parse_shape(const std::string& text) {
  const auto s = parse_shape_kind(text);
  if (!s) throw UsageError("unknown shape '" + text + "'");
  return *s;
}

GeneratorKind parse_kind(const std::string& text) {
  const auto k = parse_generator_kind(text);
  if (!k) throw UsageError("unknown generator kind '" + text + "'");
  return *k;
}

Instance load(const std::string& path) {
  if (path.empty() || path == "-") return parse_instance(std::cin);
  return read_instance(path);
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

struct GenOptions {
  std::string kind = "uniform";
  std::size_t n = 100;
  std::uint64_t seed = 1;
  double rate_min = 1.0, rate_max = 1.0;
  std::string shape = "disk";
  int dim = 2;
  std::size_t clusters = 8;
};

void add_generator_flags(CLI::App* cmd, GenOptions& g, bool with_n) {
  cmd->add_option("--kind", g.kind, "uniform | grid | cluster | sortlb")->capture_default_str();
  if (with_n) cmd->add_option("--n", g.n, "number of shapes")->capture_default_str();
  cmd->add_option("--seed", g.seed, "random seed")->capture_default_str();
  cmd->add_option("--rate-min", g.rate_min, "smallest growth rate")->capture_default_str();
  cmd->add_option("--rate-max", g.rate_max, "largest growth rate")->capture_default_str();
  cmd->add_option("--shape", g.shape, "disk | square | rect | ball | box")->capture_default_str();
  cmd->add_option("--dim", g.dim, "dimension for ball and box")->capture_default_str();
  cmd->add_option("--clusters", g.clusters, "clusters for --kind cluster")->capture_default_str();
}

GeneratorParams to_params(const GenOptions& g) {
  GeneratorParams p;
  p.kind = parse_kind(g.kind);
  p.n = g.n;
  p.seed = g.seed;
  p.rate_min = g.rate_min;
  p.rate_max = g.rate_max;
  p.shape = parse_shape(g.shape);
  p.dimension = g.dim;
  p.clusters = g.clusters;
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elimination order of growing prioritized shapes"};
  app.require_subcommand(1);

  GenOptions gen;
  std::string gen_out;
  auto* gen_cmd = app.add_subcommand("gen", "generate an instance file");
  add_generator_flags(gen_cmd, gen, true);
  gen_cmd->add_option("--out", gen_out, "output file (default stdout)");

  std::string solve_algo = "naive", solve_in, solve_out, solve_json;
  bool solve_strict = false;
  auto* solve_cmd = app.add_subcommand("solve", "compute the elimination schedule");
  solve_cmd->add_option("--algo", solve_algo, "naive | sim | quadtree | cquadtree | squares")
      ->capture_default_str();
  solve_cmd->add_option("--in", solve_in, "instance file (default stdin)");
  solve_cmd->add_option("--out", solve_out, "schedule file (default stdout)");
  solve_cmd->add_option("--json", solve_json, "also write the schedule as JSON");
  solve_cmd->add_flag("--strict", solve_strict, "check general position first");

  std::vector<std::string> verify_algos{"naive,sim"};
  std::string verify_in;
  bool verify_strict = false;
  auto* verify_cmd = app.add_subcommand("verify", "run several algorithms and compare");
  verify_cmd->add_option("--algo", verify_algos, "comma-separated algorithms")
      ->capture_default_str();
  verify_cmd->add_option("--in", verify_in, "instance file (default stdin)");
  verify_cmd->add_flag("--strict", verify_strict, "check general position first");

  GenOptions bench_gen;
  std::vector<std::string> bench_algos{"naive"};
  std::string bench_sizes = "1000,2000", bench_json;
  std::size_t bench_repeats = 3;
  int bench_threads = 0;
  auto* bench_cmd = app.add_subcommand("bench", "time algorithms over sizes");
  add_generator_flags(bench_cmd, bench_gen, false);
  bench_cmd->add_option("--algo", bench_algos, "comma-separated algorithms")
      ->capture_default_str();
  bench_cmd->add_option("--n-list", bench_sizes, "comma-separated sizes")
      ->capture_default_str();
  bench_cmd->add_option("--repeats", bench_repeats, "runs per cell")->capture_default_str();
  bench_cmd->add_option("--json", bench_json, "write the report as JSON");
  bench_cmd->add_option("--threads", bench_threads, "OpenMP threads (0 = default)");

  std::string stats_in;
  bool stats_exact = false;
  auto* stats_cmd = app.add_subcommand("stats", "rate ratio, spread and alpha");
  stats_cmd->add_option("--in", stats_in, "instance file (default stdin)");
  stats_cmd->add_flag("--exact-stats", stats_exact, "exact O(n^2) spread");

  std::size_t lb_n = 1000;
  std::uint64_t lb_seed = 1;
  std::vector<std::string> lb_algos;
  auto* lb_cmd = app.add_subcommand("sortlb-check", "check the sorting construction");
  lb_cmd->add_option("--n", lb_n, "shapes per row")->capture_default_str();
  lb_cmd->add_option("--seed", lb_seed, "random seed")->capture_default_str();
  lb_cmd->add_option("--algo", lb_algos,
                     "comma-separated disk algorithms (default: naive,quadtree,cquadtree, "
                     "plus sim when 2n <= 4096)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*gen_cmd) {
      std::ostringstream text;
      write_instance(text, generate(to_params(gen)));
      write_text(gen_out, text.str());
      return 0;
    }

    if (*solve_cmd) {
      const auto algo = parse_algorithm(solve_algo);
      if (!algo) throw UsageError("unknown algorithm '" + solve_algo + "'");
      const Instance inst = load(solve_in);
      if (const auto why = incompatibility(*algo, inst)) throw UsageError(*why);
      if (solve_strict) {
        const ValidationReport v = validate_instance(inst, true);
        for (const Violation& x : v.violations)
          std::cerr << "warning: " << x.message << '\n';
      }
      const auto start = std::chrono::steady_clock::now();
      const EliminationSchedule s = solve(*algo, inst);
      const double secs =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      std::ostringstream text;
      write_schedule(text, s);
      write_text(solve_out, text.str());
      if (!solve_json.empty()) write_text(solve_json, schedule_json(s) + "\n");
      std::fprintf(stderr, "n=%zu algorithm=%s time=%.6fs\n", inst.size(),
                   std::string(to_string(*algo)).c_str(), secs);
      return 0;
    }

    if (*verify_cmd) {
      const auto algos = parse_algorithms(verify_algos);
      if (algos.size() < 2) throw UsageError("verify needs at least two algorithms");
      const Instance inst = load(verify_in);
      for (const Algorithm a : algos)
        if (const auto why = incompatibility(a, inst)) throw UsageError(*why);
      const VerifyReport r = verify(inst, algos, verify_strict);
      for (const std::string& w : r.warnings) std::cerr << "warning: " << w << '\n';
      std::cout << describe(r, inst);
      if (r.agree()) std::cout << '\n';
      return r.agree() ? 0 : kDiverged;
    }

    if (*bench_cmd) {
      BenchConfig config;
      config.algorithms = parse_algorithms(bench_algos);
      if (config.algorithms.empty()) throw UsageError("--algo is empty");
      config.sizes = parse_sizes(bench_sizes);
      config.repeats = bench_repeats;
      config.instance = to_params(bench_gen);
      config.threads = bench_threads;
      const BenchReport report = run_bench(config);
      std::cout << report.table();
      if (!bench_json.empty()) write_text(bench_json, report.json() + "\n");
      return 0;
    }

    if (*stats_cmd) {
      const Instance inst = load(stats_in);
      const InstanceStats s = compute_stats(inst, stats_exact);
      const nlohmann::json doc = {{"n", inst.size()},
                                  {"delta", s.delta},
                                  {"phi", s.phi},
                                  {"phi_exact", s.phi_exact},
                                  {"alpha", s.alpha}};
      std::cout << doc.dump(2) << '\n';
      return 0;
    }

    if (*lb_cmd) {
      std::vector<Algorithm> algos = parse_algorithms(lb_algos);
      if (algos.empty()) {
        algos = {Algorithm::naive, Algorithm::quadtree, Algorithm::cquadtree};
        if (2 * lb_n <= kStrictCheckLimit) algos.push_back(Algorithm::sim);
      }
      for (const Algorithm a : algos)
        if (a == Algorithm::squares) throw UsageError("sortlb-check runs disk algorithms");
      const SortlbReport r = sortlb_check(lb_n, lb_seed, algos);
      for (const std::string& s : r.skipped) std::cerr << "skipped: " << s << '\n';
      for (const std::string& f : r.failures) std::cout << "FAIL " << f << '\n';
      if (r.pass) std::cout << "sortlb-check passed for n=" << lb_n << '\n';
      return r.pass ? 0 : kDiverged;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const InstanceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
