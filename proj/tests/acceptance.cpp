// Acceptance run: prints one PASS/FAIL line per criterion (details indented
// below it) and exits nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "growelim/cquadtree.hpp"
#include "growelim/envelope.hpp"
#include "growelim/generate.hpp"
#include "growelim/naive.hpp"
#include "growelim/squares.hpp"
#include "growelim/verify.hpp"

using namespace growelim;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::vector<std::string> details;

  void fail(std::string why) {
    pass = false;
    if (details.size() < 12) details.push_back(std::move(why));
  }
  void note(std::string text) { details.push_back(std::move(text)); }
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

int failures = 0;

void criterion(int id, const char* title, const std::function<Outcome()>& body) {
  const auto start = Clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  const double secs = seconds_since(start);
  std::printf("%s criterion %d: %s (%.1fs)\n", out.pass ? "PASS" : "FAIL", id, title, secs);
  for (const std::string& d : out.details) std::printf("    %s\n", d.c_str());
  std::fflush(stdout);
  if (!out.pass) ++failures;
}

constexpr double kDeltas[] = {1.0, 2.0, 16.0, 256.0};

Instance seeded(std::uint64_t seed, ShapeKind shape) {
  GeneratorParams p;
  p.kind = static_cast<GeneratorKind>(seed % 3);
  p.n = 2 + (seed * 37) % 255;
  p.seed = seed;
  p.rate_max = kDeltas[seed % 4];
  p.shape = shape;
  return generate(p);
}

Outcome equivalence(ShapeKind shape, std::vector<Algorithm> fast) {
  Outcome out;
  std::size_t compared = 0;
  for (std::uint64_t seed = 1; seed <= 500; ++seed) {
    const Instance inst = seeded(seed, shape);
    const EliminationSchedule want = solve_naive(inst);
    std::vector<Algorithm> others{Algorithm::sim};
    others.insert(others.end(), fast.begin(), fast.end());
    for (const Algorithm a : others) {
      ++compared;
      if (const auto d = compare_schedules(want, solve(a, inst)))
        out.fail(fmt("seed %llu n=%zu %s: %s at record %zu",
                     static_cast<unsigned long long>(seed), inst.size(),
                     std::string(to_string(a)).c_str(), d->reason.c_str(), d->position));
    }
  }
  out.note(fmt("%zu schedule comparisons against solve_naive over 500 instances", compared));
  return out;
}

// Odd calls: independent random segments. Even calls: tangents to the concave
// curve 10 - t^2 / 2, so most segments reach the envelope.
std::vector<EnvelopeSegment> random_segments(std::mt19937_64& rng, std::size_t m) {
  static int call = 0;
  const bool tangents = ++call % 2 == 0;
  std::uniform_real_distribution<double> y(0.0, 10.0), v(0.05, 8.0), end(0.01, 5.0),
      at(0.01, 5.0);
  std::vector<EnvelopeSegment> segs(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double stop = rng() % 4 == 0 ? kNever : end(rng);
    if (tangents) {
      const double a = at(rng);
      segs[j] = {static_cast<Index>(j), 10.0 + a * a / 2, a, stop};
    } else {
      segs[j] = {static_cast<Index>(j), y(rng), v(rng), stop};
    }
  }
  return segs;
}

bool close(double a, double b, double rel) {
  return a == b || std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

double median_solve_seconds(const std::function<void()>& run, int repeats) {
  std::vector<double> t;
  for (int r = 0; r < repeats; ++r) {
    const auto start = Clock::now();
    run();
    t.push_back(seconds_since(start));
  }
  std::sort(t.begin(), t.end());
  return t[t.size() / 2];
}

Instance uniform(std::size_t n, std::uint64_t seed) {
  GeneratorParams p;
  p.n = n;
  p.seed = seed;
  return generate(p);
}

}  // namespace

int main() {
  criterion(1, "oracle equivalence for disks (naive, sim, quadtree, cquadtree)", [] {
    return equivalence(ShapeKind::disk, {Algorithm::quadtree, Algorithm::cquadtree});
  });

  criterion(2, "oracle equivalence for squares (naive, sim, squares)", [] {
    return equivalence(ShapeKind::square, {Algorithm::squares});
  });

  criterion(3, "sorting construction, n = 10^4, naive and cquadtree", [] {
    Outcome out;
    const std::vector<Algorithm> algos{Algorithm::naive, Algorithm::cquadtree};
    const auto start = Clock::now();
    const SortlbReport r = sortlb_check(10000, 1, algos);
    const double secs = seconds_since(start);
    for (const std::string& f : r.failures) out.fail(f);
    if (secs > 30.0) out.fail(fmt("took %.1fs, limit 30s", secs));
    out.note(fmt("20000 shapes, top row in descending-rate order at 1/(1+v), %.1fs", secs));
    return out;
  });

  criterion(4, "envelope complexity and pointwise minimum", [] {
    Outcome out;
    std::mt19937_64 rng(4);
    std::size_t most = 0;
    for (int set = 0; set < 100; ++set) {
      const std::size_t m = 1 + rng() % 500;
      const auto segs = random_segments(rng, m);
      const LowerEnvelope env = LowerEnvelope::build(segs);
      most = std::max(most, env.size());
      if (env.size() > 2 * m - 1) out.fail(fmt("set %d: %zu pieces for m=%zu", set, env.size(), m));
      for (int k = 0; k < 1000; ++k) {
        const double t = 5.5 * k / 999.0;
        double want = kNever;
        for (const EnvelopeSegment& s : segs)
          if (t <= s.end) want = std::min(want, s.at(t));
        const double got = env.value(t);
        const bool ok = want == kNever ? got == kNever
                                       : std::abs(got - want) <= 1e-12 * std::max(1.0, std::abs(want));
        if (!ok) out.fail(fmt("set %d t=%.6f: envelope %.17g, min %.17g", set, t, got, want));
      }
    }
    out.note(fmt("100 sets, largest envelope %zu pieces", most));
    return out;
  });

  criterion(5, "ray shooting against linear scan, 10^4 queries", [] {
    Outcome out;
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> origin(-40.0, 0.0), rate(0.05, 8.0);
    std::size_t hits = 0;
    for (int set = 0; set < 100; ++set) {
      auto segs = random_segments(rng, 1 + rng() % 500);
      // Half the sets end everywhere so that some rays miss.
      if (set % 4 < 2)
        for (EnvelopeSegment& s : segs) s.end = std::min(s.end, 1.0);
      const LowerEnvelope env = LowerEnvelope::build(segs);
      for (int q = 0; q < 100; ++q) {
        const double o = origin(rng), v = rate(rng);
        std::optional<RayHit> want;
        for (const EnvelopeSegment& s : segs) {
          const double t = (s.intercept - o) / (s.rate + v);
          if (t > s.end) continue;
          if (!want || t < want->time || (t == want->time && s.owner < want->owner))
            want = RayHit{s.owner, t};
        }
        const auto got = env.ray_shoot(o, v);
        hits += want.has_value();
        if (got.has_value() != want.has_value() ||
            (want && (got->owner != want->owner || !close(got->time, want->time, 1e-12))))
          out.fail(fmt("set %d query %d mismatch", set, q));
      }
    }
    out.note(fmt("%zu of 10000 queries hit", hits));
    return out;
  });

  criterion(6, "candidate disk pairs of quadtree contained in those of cquadtree", [] {
    Outcome out;
    std::size_t pairs = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
      GeneratorParams p;
      p.kind = static_cast<GeneratorKind>(seed % 3);
      p.n = 2 + seed * 13 % 127;
      p.seed = seed;
      p.rate_max = kDeltas[seed % 4];
      const Instance inst = generate(p);
      SolveDiagnostics a, b;
      a.log_pairs = b.log_pairs = true;
      solve_quadtree(inst, &a);
      solve_cquadtree(inst, CompressedBuild::from_quadtree, &b);
      pairs += a.examined.size();
      if (!std::includes(b.examined.begin(), b.examined.end(), a.examined.begin(),
                         a.examined.end()))
        out.fail(fmt("seed %llu: inclusion violated", static_cast<unsigned long long>(seed)));
    }
    out.note(fmt("%zu quadtree disk pairs checked", pairs));
    return out;
  });

  criterion(7, "structure bounds (nodes, compressed pairs, depth)", [] {
    Outcome out;
    double worst_nodes = 0.0;
    for (std::uint64_t seed = 1; seed <= 500; ++seed) {
      const Instance inst = seeded(seed, ShapeKind::disk);
      SolveDiagnostics d;
      solve_cquadtree(inst, CompressedBuild::from_quadtree, &d);
      worst_nodes = std::max(worst_nodes, d.nodes / (10.0 * inst.size() + 2));
      if (d.nodes > 10 * inst.size() + 2)
        out.fail(fmt("seed %llu: %zu nodes > 10n+2", static_cast<unsigned long long>(seed), d.nodes));
    }
    out.note(fmt("nodes: largest ratio to 10n+2 over 500 instances = %.3f", worst_nodes));

    for (int k = 10; k <= 14; ++k) {
      const std::size_t n = std::size_t{1} << k;
      const Instance inst = uniform(n, 700 + k);
      const InstanceStats stats = compute_stats(inst);
      SolveDiagnostics d;
      solve_cquadtree(inst, CompressedBuild::from_quadtree, &d);
      if (d.nodes > 10 * n + 2) out.fail(fmt("n=%zu: %zu nodes > 10n+2", n, d.nodes));
      const double bound = 64.0 * n * (1 + stats.alpha);
      const bool ok = d.candidate_pairs <= bound;
      if (!ok) out.pass = false;
      out.note(fmt("pairs n=2^%d: %zu unordered compressed pairs vs 64n(1+alpha) = %.0f "
                   "(alpha %.2f, %.1f pairs per shape) %s",
                   k, d.candidate_pairs, bound, stats.alpha,
                   static_cast<double>(d.candidate_pairs) / n, ok ? "ok" : "EXCEEDED"));
    }

    double slack = kNever;
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
      GeneratorParams p;
      p.kind = static_cast<GeneratorKind>(seed % 3);
      p.n = std::size_t{64} << (seed % 7);
      p.seed = seed;
      const Instance inst = generate(p);
      SolveDiagnostics d;
      solve_quadtree(inst, &d);
      const double limit = std::log2(exact_spread(inst)) + 4;
      slack = std::min(slack, limit - d.depth);
      if (d.depth > limit)
        out.fail(fmt("seed %llu: depth %d > log2(phi)+4 = %.2f",
                     static_cast<unsigned long long>(seed), d.depth, limit));
    }
    out.note(fmt("depth: smallest margin below log2(phi)+4 over 60 instances = %.2f", slack));
    return out;
  });

  criterion(8, "scaling of cquadtree (ratio <= 2.6) and naive (ratio >= 3.5)", [] {
    Outcome out;
    std::vector<double> cq;
    for (int k = 14; k <= 16; ++k) {
      const Instance inst = uniform(std::size_t{1} << k, 800 + k);
      cq.push_back(median_solve_seconds([&] { solve_cquadtree(inst); }, 3));
      out.note(fmt("cquadtree n=2^%d median %.3fs", k, cq.back()));
    }
    for (std::size_t i = 0; i + 1 < cq.size(); ++i) {
      const double r = cq[i + 1] / cq[i];
      out.note(fmt("cquadtree time(2^%zu)/time(2^%zu) = %.3f", 15 + i, 14 + i, r));
      if (r > 2.6) out.fail(fmt("cquadtree ratio %.3f > 2.6", r));
    }
    const Instance a = uniform(std::size_t{1} << 12, 812), b = uniform(std::size_t{1} << 13, 813);
    const double ta = median_solve_seconds([&] { solve_naive(a); }, 5);
    const double tb = median_solve_seconds([&] { solve_naive(b); }, 5);
    out.note(fmt("naive time(2^13)/time(2^12) = %.3f (%.3fs / %.3fs)", tb / ta, tb, ta));
    if (tb / ta < 3.5) out.fail(fmt("naive ratio %.3f < 3.5", tb / ta));
    return out;
  });

  criterion(9, "direct and derived compressed quadtrees have equal branching cells", [] {
    Outcome out;
    std::size_t cells = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
      GeneratorParams p;
      p.kind = static_cast<GeneratorKind>(seed % 3);
      p.n = 1 + (seed * 997) % 4096;
      p.seed = seed;
      const Instance inst = generate(p);
      const std::vector<UnitPoint> pts = Normalization::fit(inst).unit_centers(inst);
      const auto derived = CompressedQuadtree::from_quadtree(Quadtree::build(pts)).branching_cells();
      const auto direct = CompressedQuadtree::direct(pts).branching_cells();
      cells += derived.size();
      if (derived != direct)
        out.fail(fmt("seed %llu n=%zu: branching cells differ",
                     static_cast<unsigned long long>(seed), p.n));
    }
    out.note(fmt("200 instances, %zu branching cells compared", cells));
    return out;
  });

  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
