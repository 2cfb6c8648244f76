#pragma once

// Uncompressed quadtree over disk centers and the candidate-pair solver.
//
// The tree keeps splitting until every center sits alone in a leaf whose
// 5x5 same-level neighbourhood holds no other center. Candidate pairs are
// unrelated nodes of comparable size that are close relative to their size;
// only those can witness an elimination.

#include <array>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "growelim/core.hpp"
#include "growelim/morton.hpp"

namespace growelim {

/// Square cell of the unit square: level l, integer coordinates < 2^l.
struct Cell {
  int level = 0;
  std::uint64_t x = 0;
  std::uint64_t y = 0;

  double side() const { return std::ldexp(1.0, -level); }
  double diameter() const { return std::sqrt(2.0) * side(); }
  Cell parent() const { return {level - 1, x >> 1, y >> 1}; }
  Cell ancestor(int at_level) const {
    const int shift = level - at_level;
    return {at_level, x >> shift, y >> shift};
  }
  /// True when `other` lies inside this cell (or equals it).
  bool contains(const Cell& other) const {
    return other.level >= level && other.ancestor(level) == *this;
  }
  static Cell of(const Fixed2& p, int level) {
    const int shift = kFixedBits - level;
    return {level, p.x >> shift, p.y >> shift};
  }

  friend bool operator==(const Cell&, const Cell&) = default;
  friend auto operator<=>(const Cell&, const Cell&) = default;
};

struct CellHash {
  std::size_t operator()(const Cell& c) const {
    std::uint64_t h = c.x * 0x9E3779B97F4A7C15ull;
    h ^= (c.y + 0x632BE59BD9B4E019ull + (h << 6) + (h >> 2));
    h ^= static_cast<std::uint64_t>(c.level) * 0xC2B2AE3D27D4EB4Full;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

struct UnitPoint {
  double x = 0.0;
  double y = 0.0;
};

/// Affine map from input coordinates onto the unit square. The bounding
/// square is padded by 1e-9 of its side so input points stay interior.
struct Normalization {
  double origin_x = 0.0;
  double origin_y = 0.0;
  double scale = 1.0;

  static Normalization fit(const Instance& inst);
  UnitPoint to_unit(double x, double y) const {
    return {(x - origin_x) / scale, (y - origin_y) / scale};
  }
  std::vector<UnitPoint> unit_centers(const Instance& inst) const;
};

struct CellBox {
  double x0, y0, x1, y1;
};

/// First time a disk centered at (px, py) growing at `rate` covers `box`:
/// the distance to the farthest corner over the rate.
double cover_time(const CellBox& box, double px, double py, double rate);

/// Squared minimum distance between cells a and b in units of the finer
/// cell's side (exact integer arithmetic).
__int128 cell_gap_squared(const Cell& a, const Cell& b);

/// Candidate-pair predicate on two unrelated cells: sizes within a factor
/// 4*delta and gap at most twice the sum of their diameters.
bool is_candidate_pair(const Cell& a, const Cell& b, double delta);

/// Compressed sparse row lists of partner node ids per node.
struct CandidatePairs {
  std::vector<std::size_t> offsets;  ///< size nodes + 1
  std::vector<std::int32_t> partners;

  std::span<const std::int32_t> of(std::int32_t node) const {
    return {partners.data() + offsets[node],
            offsets[node + 1] - offsets[node]};
  }
  /// Each unordered pair is stored twice (once per endpoint).
  std::size_t unordered_count() const { return partners.size() / 2; }

  /// Builds symmetric, sorted, duplicate-free lists from directed pairs.
  static CandidatePairs from_directed(
      std::size_t nodes, std::vector<std::pair<std::int32_t, std::int32_t>> pairs);
};

class Quadtree {
 public:
  struct Node {
    Cell cell;
    std::int32_t parent = -1;
    std::int32_t first_child = -1;  ///< 4 contiguous children or -1 for a leaf
    Index point = kNoIndex;         ///< center stored in this leaf, if any
    bool is_leaf() const { return first_child < 0; }
  };

  /// Builds the tree over points in [0,1]^2. Throws InstanceError when two
  /// points coincide at kFixedBits resolution or cannot be separated by two
  /// empty layers above that resolution.
  static Quadtree build(std::span<const UnitPoint> points);

  std::size_t size() const { return nodes_.size(); }
  std::int32_t root() const { return 0; }
  const Node& node(std::int32_t id) const { return nodes_[id]; }
  std::span<const Node> nodes() const { return nodes_; }
  std::int32_t leaf_of(Index point) const { return leaf_of_[point]; }
  std::int32_t find(const Cell& cell) const;
  int depth() const { return depth_; }
  std::size_t point_count() const { return leaf_of_.size(); }
  std::span<const Fixed2> fixed_points() const { return fixed_; }

  /// Number of centers inside each node's cell.
  std::vector<std::uint32_t> subtree_counts() const;

 private:
  std::vector<Node> nodes_;
  std::vector<std::int32_t> leaf_of_;
  std::vector<Fixed2> fixed_;
  std::unordered_map<Cell, std::int32_t, CellHash> index_;
  int depth_ = 0;
};

/// Enumerates, for every node, the candidate partners of equal or larger size
/// through the per-level cell index, then symmetrises. Parallel over nodes.
CandidatePairs compute_cnp(const Quadtree& tree, double delta);
CandidatePairs compute_cnp_serial(const Quadtree& tree, double delta);

/// Per-solve counters and, on request, the log of examined disk pairs.
struct SolveDiagnostics {
  bool log_pairs = false;
  std::size_t nodes = 0;
  std::size_t candidate_pairs = 0;  ///< unordered
  int depth = 0;
  /// (lower index, higher index) pairs looked at by the solver.
  std::vector<std::pair<Index, Index>> examined;
};

/// Candidate-pair elimination over the uncompressed quadtree. Requires a
/// structurally valid disk instance.
EliminationSchedule solve_quadtree(const Instance& inst,
                                   SolveDiagnostics* diag = nullptr);

namespace detail {
void require_planar_disks(const Instance& inst, const char* algorithm);
CellBox input_box(const Normalization& norm, const Cell& cell);
}  // namespace detail

}  // namespace growelim
