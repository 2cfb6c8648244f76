#pragma once

// Shapes, touching times and elimination schedules shared by every solver.
//
// Indices are 0-based priority positions: shape 0 has the highest priority and
// is never eliminated. Files and the CLI use 1-based indices (see io.hpp).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace growelim {

using Index = std::uint32_t;

/// First instant two shapes intersect; +infinity means "never".
using TouchTime = double;
inline constexpr TouchTime kNever = std::numeric_limits<double>::infinity();
inline constexpr Index kNoIndex = std::numeric_limits<Index>::max();

enum class ShapeKind { disk, square, rect, ball, box };

std::string_view to_string(ShapeKind kind);
std::optional<ShapeKind> parse_shape_kind(std::string_view text);

/// Rectangles and boxes grow with one half-extent rate per axis.
constexpr bool has_axis_rates(ShapeKind kind) {
  return kind == ShapeKind::rect || kind == ShapeKind::box;
}

/// Thrown for malformed instances and for calls that violate a solver's
/// shape or validity requirements.
class InstanceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Ordered set of growing shapes. Priority is the position in the sequence.
///
/// The constructor only checks that the layout is consistent (dimension,
/// vector sizes); rate positivity and distinct centers are reported by
/// validate_instance() so that a bad file can still be loaded and diagnosed.
class Instance {
 public:
  Instance() = default;
  Instance(ShapeKind kind, int dimension, std::vector<double> centers,
           std::vector<double> rates);

  ShapeKind kind() const { return kind_; }
  int dimension() const { return dim_; }
  std::size_t size() const { return n_; }
  bool empty() const { return n_ == 0; }

  std::size_t rate_components() const {
    return has_axis_rates(kind_) ? static_cast<std::size_t>(dim_) : 1;
  }

  std::span<const double> center(Index i) const {
    return {centers_.data() + static_cast<std::size_t>(i) * dim_,
            static_cast<std::size_t>(dim_)};
  }
  std::span<const double> rate(Index i) const {
    const std::size_t k = rate_components();
    return {rates_.data() + i * k, k};
  }
  /// Scalar growth rate; only meaningful for disk, square and ball.
  double scalar_rate(Index i) const { return rates_[i]; }

  std::span<const double> centers() const { return centers_; }
  std::span<const double> rates() const { return rates_; }

  friend bool operator==(const Instance&, const Instance&) = default;

 private:
  ShapeKind kind_ = ShapeKind::disk;
  int dim_ = 2;
  std::size_t n_ = 0;
  std::vector<double> centers_;
  std::vector<double> rates_;
};

namespace detail {

// Unchecked touching time. Every solver goes through this one function so
// that times are bit-identical across algorithms.
inline TouchTime touch_unchecked(const Instance& inst, Index i, Index j) {
  const int d = inst.dimension();
  const double* a = inst.centers().data() + static_cast<std::size_t>(i) * d;
  const double* b = inst.centers().data() + static_cast<std::size_t>(j) * d;
  switch (inst.kind()) {
    case ShapeKind::disk:
    case ShapeKind::ball: {
      double sq = 0.0;
      for (int k = 0; k < d; ++k) {
        const double diff = a[k] - b[k];
        sq += diff * diff;
      }
      return std::sqrt(sq) / (inst.scalar_rate(i) + inst.scalar_rate(j));
    }
    case ShapeKind::square: {
      double m = 0.0;
      for (int k = 0; k < d; ++k) m = std::max(m, std::abs(a[k] - b[k]));
      return m / (inst.scalar_rate(i) + inst.scalar_rate(j));
    }
    case ShapeKind::rect:
    case ShapeKind::box: {
      const double* ra = inst.rates().data() + static_cast<std::size_t>(i) * d;
      const double* rb = inst.rates().data() + static_cast<std::size_t>(j) * d;
      double t = 0.0;
      for (int k = 0; k < d; ++k)
        t = std::max(t, std::abs(a[k] - b[k]) / (ra[k] + rb[k]));
      return t;
    }
  }
  return kNever;
}

}  // namespace detail

/// Time at which shapes i and j first intersect when nothing else interferes.
/// Symmetric in (i, j). Throws std::out_of_range / InstanceError on bad
/// indices.
TouchTime touch_time(const Instance& inst, Index i, Index j);

struct EliminationRecord {
  Index victim = 0;
  Index eliminator = 0;
  TouchTime time = kNever;

  friend bool operator==(const EliminationRecord&,
                         const EliminationRecord&) = default;
};

/// Records sorted by (time, eliminator, victim); survivor is always shape 0.
struct EliminationSchedule {
  std::vector<EliminationRecord> records;
  Index survivor = 0;

  friend bool operator==(const EliminationSchedule&,
                         const EliminationSchedule&) = default;
};

/// Strict ordering used whenever two candidate eliminations must be ranked:
/// earlier time first, then the lexicographically smaller (eliminator, victim).
constexpr bool earlier_event(TouchTime ta, Index ea, Index va, TouchTime tb,
                             Index eb, Index vb) {
  if (ta != tb) return ta < tb;
  if (ea != eb) return ea < eb;
  return va < vb;
}

/// Builds a sorted schedule from per-shape elimination times and eliminators
/// (entry 0 is the survivor and is ignored).
EliminationSchedule make_schedule(std::span<const TouchTime> times,
                                  std::span<const Index> eliminators);

/// Per-shape elimination times, kNever for the survivor.
std::vector<TouchTime> elimination_times(const EliminationSchedule& schedule,
                                         std::size_t n);

/// Lists every violated schedule invariant (empty when the schedule is sound).
std::vector<std::string> check_schedule(const EliminationSchedule& schedule,
                                        std::size_t n);

struct Violation {
  enum class Kind { duplicate_centers, nonpositive_rate, nonfinite_value, tie };
  Kind kind;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool general_position_checked = false;
  bool exact_predicates = false;

  bool structurally_valid() const;
  bool ok() const { return violations.empty(); }
};

/// Largest instance for which the strict general-position check is run.
inline constexpr std::size_t kStrictCheckLimit = 4096;

/// Structural checks; with strict = true also looks for equal touching times.
/// Ties are decided with exact integer arithmetic when every coordinate and
/// rate is an integer of magnitude <= 2^20, with double comparison otherwise.
ValidationReport validate_instance(const Instance& inst, bool strict = false);

/// Throws InstanceError when the instance is structurally invalid.
void require_valid(const Instance& inst);

struct InstanceStats {
  double delta = 1.0;  ///< max rate / min rate (over all rate components)
  double phi = 1.0;    ///< spread, approximate unless phi_exact
  bool phi_exact = false;
  double alpha = 0.0;  ///< min(log2 phi, log2 delta)
};

/// Largest instance accepted by the exact O(n^2) spread computation.
inline constexpr std::size_t kExactSpreadLimit = 4096;

double rate_ratio(const Instance& inst);

/// Spread: max / min pairwise Euclidean distance between centers. O(n^2).
double exact_spread(const Instance& inst);
double exact_spread_serial(const Instance& inst);

/// Bounding-box diagonal over the minimum pairwise distance, the latter found
/// by a Morton-order neighbour scan refined on a uniform grid.
double approximate_spread(const Instance& inst);

/// Throws InstanceError for n < 2, and for exact spread with n above
/// kExactSpreadLimit.
InstanceStats compute_stats(const Instance& inst, bool exact_phi = false);

}  // namespace growelim
