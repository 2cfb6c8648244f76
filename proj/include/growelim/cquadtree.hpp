#pragma once

// Compressed quadtree: every maximal chain of single-non-empty-child cells is
// spliced into one edge, leaving O(n) nodes. Each center hangs below its leaf
// as a zero-size node.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "growelim/core.hpp"
#include "growelim/quadtree.hpp"

namespace growelim {

class CompressedQuadtree {
 public:
  struct Node {
    Cell cell;                ///< for a zero node: the cell of its leaf
    Index point = kNoIndex;   ///< set only on zero nodes
    bool leaf_cell = false;   ///< cell is a leaf of the uncompressed tree
    std::int32_t parent = -1;
    std::array<std::int32_t, 4> children{-1, -1, -1, -1};
    std::uint8_t child_count = 0;

    bool is_zero() const { return point != kNoIndex; }
  };

  /// Splices every maximal singular path of `q` into one edge.
  static CompressedQuadtree from_quadtree(const Quadtree& q);

  /// Same tree built from Morton order and longest-common-prefix depths in
  /// O(n log n). Throws InstanceError for duplicate points and for points the
  /// fixed-point resolution cannot separate.
  static CompressedQuadtree direct(std::span<const UnitPoint> points);

  std::size_t size() const { return nodes_.size(); }
  std::int32_t root() const { return 0; }
  const Node& node(std::int32_t id) const { return nodes_[id]; }
  std::span<const Node> nodes() const { return nodes_; }
  std::int32_t zero_node_of(Index point) const { return zero_of_[point]; }
  /// Cell node with exactly this cell, or -1.
  std::int32_t find(const Cell& cell) const;
  int depth() const { return depth_; }

  /// Edge into `id` is compressed: its parent has a single child.
  bool compressed_edge(std::int32_t id) const {
    const std::int32_t p = nodes_[id].parent;
    return p >= 0 && nodes_[p].child_count == 1;
  }

  /// Deepest node whose cell contains `cell` (the lowest surviving ancestor).
  std::int32_t lowest_surviving(const Cell& cell) const;

  /// Cells of nodes with at least two non-empty children, sorted.
  std::vector<Cell> branching_cells() const;
  /// All cell nodes as (cell, parent cell) pairs, sorted; root has itself as
  /// parent. Used to compare two builds structurally.
  std::vector<std::pair<Cell, Cell>> structure() const;

 private:
  std::int32_t add(const Node& node);
  void link(std::int32_t parent, std::int32_t child);
  void finish();

  std::vector<Node> nodes_;
  std::vector<std::int32_t> zero_of_;
  std::unordered_map<Cell, std::int32_t, CellHash> index_;
  int depth_ = 0;
};

/// Per node ν, CNP_C(ν) = {π(ν') : (ν, ν') candidate pair, |ν| <= |π(ν')|},
/// symmetrised. Nodes are visited by decreasing size; larger partners are
/// drawn from the parent's lists.
CandidatePairs compute_cnp_c(const CompressedQuadtree& tree, double delta);

/// Occupant of `node` as seen through a compressed edge: the node's own mark,
/// else the mark of its single compressed child.
std::optional<Index> resolve_occupant(const CompressedQuadtree& tree,
                                      std::span<const Index> marks,
                                      std::int32_t node);

enum class CompressedBuild { from_quadtree, direct };

EliminationSchedule solve_cquadtree(const Instance& inst,
                                    CompressedBuild build = CompressedBuild::from_quadtree,
                                    SolveDiagnostics* diag = nullptr);

}  // namespace growelim
