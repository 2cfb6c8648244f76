#pragma once

// Algorithm dispatch and cross-checking of schedules.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "growelim/core.hpp"
#include "growelim/quadtree.hpp"

namespace growelim {

enum class Algorithm { naive, sim, quadtree, cquadtree, squares };

std::string_view to_string(Algorithm algo);
std::optional<Algorithm> parse_algorithm(std::string_view text);

/// Reason `algo` cannot run on `inst`, if any.
std::optional<std::string> incompatibility(Algorithm algo, const Instance& inst);

/// Throws InstanceError when the algorithm does not fit the instance.
/// Diagnostics are filled in by the tree solvers only.
EliminationSchedule solve(Algorithm algo, const Instance& inst,
                          SolveDiagnostics* diag = nullptr);

struct Divergence {
  std::size_t position = 0;  ///< first differing record, or the shorter size
  std::optional<EliminationRecord> expected;
  std::optional<EliminationRecord> actual;
  std::string reason;
};

/// Victim and eliminator must match exactly; times to `rel_tol` relative.
std::optional<Divergence> compare_schedules(const EliminationSchedule& expected,
                                            const EliminationSchedule& actual,
                                            double rel_tol = 1e-9);

struct VerifyReport {
  std::vector<Algorithm> algorithms;
  std::vector<EliminationSchedule> schedules;
  std::optional<Divergence> divergence;
  std::size_t diverging = 0;  ///< index into algorithms of the first mismatch
  std::vector<std::string> warnings;

  bool agree() const { return !divergence.has_value(); }
};

/// Runs every algorithm and compares each against the first. With strict
/// set, a failed general-position check is reported as a warning.
/// Throws InstanceError for fewer than two algorithms or an incompatible one.
VerifyReport verify(const Instance& inst, std::span<const Algorithm> algorithms,
                    bool strict = false);

/// Human-readable account of a divergence: both records and the touching
/// times of the victim against both eliminators.
std::string describe(const VerifyReport& report, const Instance& inst);

struct SortlbReport {
  bool pass = true;
  std::vector<std::string> failures;
  std::vector<std::string> skipped;
};

/// Solves the sorting construction with n top shapes under each algorithm
/// and checks that the top row dies first, fastest first, each top shape at
/// 1 / (1 + v) (1e-12 relative) by the shape below it, all before any bottom
/// shape.
SortlbReport sortlb_check(std::size_t n, std::uint64_t seed,
                          std::span<const Algorithm> algorithms);

}  // namespace growelim
