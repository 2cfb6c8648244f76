#pragma once

// Growing squares (L-infinity disks) in the plane. Around a query center the
// plane splits into four 90-degree quadrants; inside each the touching time
// depends on one coordinate only, so "who hits me first" becomes a ray shot
// at a lower envelope. A range tree on rotated coordinates selects the
// quadrant, and a prefix tree over priorities keeps only finalized shapes.

#include <array>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "growelim/core.hpp"
#include "growelim/envelope.hpp"

namespace growelim {

enum class Quadrant { north, east, south, west };

/// A shape whose elimination time is final.
struct QuadrantEntry {
  Index index = 0;
  double x = 0.0;
  double y = 0.0;
  double rate = 1.0;
  double time = kNever;
};

/// Closed membership of p in quadrant `q` of c, on rotated coordinates
/// u = x + y, w = y - x.
bool in_quadrant(Quadrant q, double cx, double cy, double px, double py);

class QuadrantStructure {
 public:
  explicit QuadrantStructure(std::vector<QuadrantEntry> entries);

  std::size_t size() const { return entries_.size(); }

  /// Entry in quadrant `q` of (x, y) first touched by a square centered at
  /// (x, y) growing at `rate`, counting only touches no later than the
  /// entry's own elimination time.
  std::optional<RayHit> query(Quadrant q, double x, double y, double rate) const;

 private:
  struct Secondary {
    std::vector<std::size_t> by_w;  ///< entry positions sorted by w
    std::vector<double> w;
    // Four envelopes per node, in DFS order: left child id + 1, right child
    // id + 2 * (left size).
    std::vector<std::array<LowerEnvelope, 4>> envelopes;
  };

  void build_primary(std::size_t node, std::size_t lo, std::size_t hi);
  void build_secondary(Secondary& s, std::size_t node, std::size_t lo, std::size_t hi);

  std::vector<QuadrantEntry> entries_;  ///< sorted by u
  std::vector<double> u_;
  std::vector<Secondary> primary_;  ///< DFS order like the envelopes
};

/// Dyadic blocks [start, start + size) covering [0, i), largest first.
std::vector<std::pair<std::size_t, std::size_t>> prefix_blocks(std::size_t i);

/// Requires a planar square instance.
EliminationSchedule solve_squares(const Instance& inst);

}  // namespace growelim
