#pragma once

// Lower envelope of decreasing segments t -> c - v t on [0, end], with a
// first-hit query for rays t -> c_q + v_q t shot from below.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "growelim/core.hpp"

namespace growelim {

struct EnvelopeSegment {
  Index owner = 0;
  double intercept = 0.0;  ///< value at t = 0
  double rate = 1.0;       ///< slope is -rate
  double end = kNever;     ///< domain is [0, end]

  double at(double t) const { return intercept - rate * t; }
};

/// Envelope piece: the owner's segment is lowest on [begin, end].
struct EnvelopePiece {
  Index owner = 0;
  double intercept = 0.0;
  double rate = 1.0;
  double limit = kNever;  ///< end of the owner's segment domain
  double begin = 0.0;
  double end = kNever;

  double at(double t) const { return intercept - rate * t; }
};

struct RayHit {
  Index owner = 0;
  double time = 0.0;
  friend bool operator==(const RayHit&, const RayHit&) = default;
};

class LowerEnvelope {
 public:
  LowerEnvelope() = default;

  /// Divide-and-conquer merge. Throws std::invalid_argument for an empty
  /// input, a nonpositive rate or a nonpositive domain end.
  static LowerEnvelope build(std::span<const EnvelopeSegment> segments);

  std::span<const EnvelopePiece> pieces() const { return pieces_; }
  std::size_t size() const { return pieces_.size(); }
  /// Right end of the last piece; kNever when some segment never ends.
  double horizon() const { return pieces_.empty() ? 0.0 : pieces_.back().end; }

  /// Envelope value at t >= 0; kNever beyond the horizon.
  double value(double t) const;

  /// First t >= 0 at which the envelope is at or below origin + rate t, and
  /// the owner of the segment hit there. Assumes every segment starts at or
  /// above the ray origin. Ties go to the smaller owner.
  std::optional<RayHit> ray_shoot(double origin, double rate) const;

 private:
  struct Vertex {
    double t;
    double y;
  };

  void build_hulls();
  void build_hull_node(std::size_t node, std::size_t lo, std::size_t hi);
  bool reaches(std::size_t node, double origin, double rate) const;
  std::ptrdiff_t first_reaching(std::size_t node, std::size_t lo, std::size_t hi,
                                double origin, double rate) const;

  std::vector<EnvelopePiece> pieces_;
  // Right ends of the finite pieces and, per interval-tree node, the lower
  // convex hull of those in its range (flattened).
  std::vector<Vertex> vertices_;
  std::vector<Vertex> hull_points_;
  std::vector<std::size_t> hull_begin_, hull_end_;
};

}  // namespace growelim
