#include "growelim/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "growelim/cquadtree.hpp"
#include "growelim/generate.hpp"
#include "growelim/io.hpp"
#include "growelim/naive.hpp"
#include "growelim/squares.hpp"

namespace growelim {

std::string_view to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::naive: return "naive";
    case Algorithm::sim: return "sim";
    case Algorithm::quadtree: return "quadtree";
    case Algorithm::cquadtree: return "cquadtree";
    case Algorithm::squares: return "squares";
  }
  return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view text) {
  for (const Algorithm a : {Algorithm::naive, Algorithm::sim, Algorithm::quadtree,
                            Algorithm::cquadtree, Algorithm::squares})
    if (to_string(a) == text) return a;
  return std::nullopt;
}

std::optional<std::string> incompatibility(Algorithm algo, const Instance& inst) {
  switch (algo) {
    case Algorithm::naive:
      return std::nullopt;
    case Algorithm::sim:
      if (inst.size() > kSimulationLimit)
        return "sim: limited to " + std::to_string(kSimulationLimit) + " shapes";
      return std::nullopt;
    case Algorithm::quadtree:
    case Algorithm::cquadtree:
      if (inst.kind() != ShapeKind::disk || inst.dimension() != 2)
        return std::string(to_string(algo)) + ": algorithm requires disk shape (d=2)";
      return std::nullopt;
    case Algorithm::squares:
      if (inst.kind() != ShapeKind::square || inst.dimension() != 2)
        return "squares: algorithm requires square shape (d=2)";
      return std::nullopt;
  }
  return "unknown algorithm";
}

EliminationSchedule solve(Algorithm algo, const Instance& inst, SolveDiagnostics* diag) {
  if (const auto why = incompatibility(algo, inst)) throw InstanceError(*why);
  switch (algo) {
    case Algorithm::naive: return solve_naive(inst);
    case Algorithm::sim: return solve_simulation(inst);
    case Algorithm::quadtree: return solve_quadtree(inst, diag);
    case Algorithm::cquadtree:
      return solve_cquadtree(inst, CompressedBuild::from_quadtree, diag);
    case Algorithm::squares: return solve_squares(inst);
  }
  throw InstanceError("unknown algorithm");
}

std::optional<Divergence> compare_schedules(const EliminationSchedule& expected,
                                            const EliminationSchedule& actual,
                                            double rel_tol) {
  const std::size_t common = std::min(expected.records.size(), actual.records.size());
  for (std::size_t k = 0; k < common; ++k) {
    const EliminationRecord& a = expected.records[k];
    const EliminationRecord& b = actual.records[k];
    std::string reason;
    if (a.victim != b.victim)
      reason = "victim differs";
    else if (a.eliminator != b.eliminator)
      reason = "eliminator differs";
    else if (std::abs(a.time - b.time) > rel_tol * std::max(std::abs(a.time), std::abs(b.time)))
      reason = "time differs";
    if (!reason.empty()) return Divergence{k, a, b, reason};
  }
  if (expected.records.size() != actual.records.size()) {
    Divergence d{common, std::nullopt, std::nullopt, "record count differs"};
    if (common < expected.records.size()) d.expected = expected.records[common];
    if (common < actual.records.size()) d.actual = actual.records[common];
    return d;
  }
  if (expected.survivor != actual.survivor)
    return Divergence{common, std::nullopt, std::nullopt, "survivor differs"};
  return std::nullopt;
}

VerifyReport verify(const Instance& inst, std::span<const Algorithm> algorithms,
                    bool strict) {
  if (algorithms.size() < 2) throw InstanceError("verify needs at least two algorithms");
  for (const Algorithm a : algorithms)
    if (const auto why = incompatibility(a, inst)) throw InstanceError(*why);

  VerifyReport report;
  if (strict) {
    const ValidationReport v = validate_instance(inst, true);
    if (!v.general_position_checked)
      report.warnings.push_back("general position not checked (n > " +
                                std::to_string(kStrictCheckLimit) + ")");
    for (const Violation& x : v.violations) report.warnings.push_back(x.message);
  }
  report.algorithms.assign(algorithms.begin(), algorithms.end());
  for (const Algorithm a : algorithms) report.schedules.push_back(solve(a, inst));
  for (std::size_t k = 1; k < report.schedules.size(); ++k) {
    if (auto d = compare_schedules(report.schedules[0], report.schedules[k])) {
      report.divergence = std::move(d);
      report.diverging = k;
      break;
    }
  }
  return report;
}

std::string describe(const VerifyReport& report, const Instance& inst) {
  if (report.agree()) return "all algorithms agree";
  const Divergence& d = *report.divergence;
  std::ostringstream out;
  out << to_string(report.algorithms[0]) << " vs "
      << to_string(report.algorithms[report.diverging]) << ": " << d.reason
      << " at record " << d.position + 1 << '\n';
  const std::vector<TouchTime> times0 =
      elimination_times(report.schedules[0], inst.size());
  auto show = [&](const char* label, const std::optional<EliminationRecord>& r) {
    out << "  " << label << ": ";
    if (!r) {
      out << "(none)\n";
      return;
    }
    out << "victim " << r->victim + 1 << " eliminator " << r->eliminator + 1 << " time "
        << format_number(r->time) << '\n';
  };
  show(to_string(report.algorithms[0]).data(), d.expected);
  show(to_string(report.algorithms[report.diverging]).data(), d.actual);
  for (const auto* r : {&d.expected, &d.actual}) {
    if (!*r) continue;
    const Index v = (*r)->victim, e = (*r)->eliminator;
    if (v >= inst.size() || e >= inst.size()) continue;
    out << "  t(" << v + 1 << "," << e + 1 << ") = "
        << format_number(touch_time(inst, v, e)) << ", t_" << e + 1 << " = "
        << format_number(times0[e]) << " (" << to_string(report.algorithms[0]) << ")\n";
  }
  return out.str();
}

SortlbReport sortlb_check(std::size_t n, std::uint64_t seed,
                          std::span<const Algorithm> algorithms) {
  SortlbReport report;
  if (n < 2) throw InstanceError("sortlb-check needs n >= 2");
  GeneratorParams p;
  p.kind = GeneratorKind::sortlb;
  p.n = n;
  p.seed = seed;
  const Instance inst = generate(p);

  std::vector<Index> expected(n);
  for (std::size_t k = 0; k < n; ++k) expected[k] = static_cast<Index>(n + k);
  std::sort(expected.begin(), expected.end(), [&](Index a, Index b) {
    return inst.scalar_rate(a) > inst.scalar_rate(b);
  });

  for (const Algorithm algo : algorithms) {
    if (const auto why = incompatibility(algo, inst)) {
      report.skipped.push_back(*why);
      continue;
    }
    const EliminationSchedule s = solve(algo, inst);
    std::ostringstream fail;
    double top_last = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const EliminationRecord& r = s.records[k];
      const double v = inst.scalar_rate(expected[k]);
      const double want = 1.0 / (1.0 + v);
      if (r.victim != expected[k] || r.eliminator != expected[k] - n ||
          std::abs(r.time - want) > 1e-12 * want) {
        fail << to_string(algo) << ": record " << k + 1 << " is (" << r.victim + 1 << ", "
             << r.eliminator + 1 << ", " << format_number(r.time) << "), expected ("
             << expected[k] + 1 << ", " << expected[k] - n + 1 << ", "
             << format_number(want) << "); prefix:";
        for (std::size_t j = 0; j <= k; ++j) fail << ' ' << s.records[j].victim + 1;
        break;
      }
      top_last = r.time;
    }
    if (fail.str().empty()) {
      double bottom_first = kNever;
      for (std::size_t k = n; k < s.records.size(); ++k)
        bottom_first = std::min(bottom_first, s.records[k].time);
      if (!(top_last < bottom_first))
        fail << to_string(algo) << ": top row not eliminated before the bottom row";
    }
    if (!fail.str().empty()) {
      report.pass = false;
      report.failures.push_back(fail.str());
    }
  }
  return report;
}

}  // namespace growelim
