#include "growelim/cquadtree.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <unordered_set>

namespace growelim {

std::int32_t CompressedQuadtree::add(const Node& node) {
  const auto id = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back(node);
  if (node.is_zero()) {
    zero_of_[node.point] = id;
  } else {
    index_.emplace(node.cell, id);
    depth_ = std::max(depth_, node.cell.level);
  }
  return id;
}

void CompressedQuadtree::link(std::int32_t parent, std::int32_t child) {
  Node& p = nodes_[parent];
  p.children[p.child_count++] = child;
  nodes_[child].parent = parent;
}

std::int32_t CompressedQuadtree::find(const Cell& cell) const {
  const auto it = index_.find(cell);
  return it == index_.end() ? -1 : it->second;
}

std::int32_t CompressedQuadtree::lowest_surviving(const Cell& cell) const {
  for (Cell c = cell;; c = c.parent()) {
    const std::int32_t id = find(c);
    if (id >= 0) return id;
    if (c.level == 0) return -1;
  }
}

std::vector<Cell> CompressedQuadtree::branching_cells() const {
  std::vector<Cell> out;
  for (const Node& v : nodes_) {
    if (v.child_count != 4) continue;
    int nonempty = 0;
    for (const std::int32_t c : v.children) nonempty += nodes_[c].child_count > 0;
    if (nonempty >= 2) out.push_back(v.cell);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<Cell, Cell>> CompressedQuadtree::structure() const {
  std::vector<std::pair<Cell, Cell>> out;
  for (const Node& v : nodes_) {
    if (v.is_zero()) continue;
    out.emplace_back(v.cell, v.parent >= 0 ? nodes_[v.parent].cell : v.cell);
  }
  std::sort(out.begin(), out.end());
  return out;
}

CompressedQuadtree CompressedQuadtree::from_quadtree(const Quadtree& q) {
  CompressedQuadtree out;
  out.zero_of_.assign(q.point_count(), -1);
  const std::vector<std::uint32_t> count = q.subtree_counts();

  auto nonempty_children = [&](std::int32_t v, std::int32_t* only) {
    int k = 0;
    for (int c = 0; c < 4; ++c) {
      const std::int32_t child = q.node(v).first_child + c;
      if (count[child] > 0) {
        ++k;
        *only = child;
      }
    }
    return k;
  };

  const std::int32_t root = out.add(
      Node{q.node(q.root()).cell, kNoIndex, q.node(q.root()).is_leaf()});
  std::vector<std::pair<std::int32_t, std::int32_t>> stack{{q.root(), root}};
  while (!stack.empty()) {
    const auto [qv, cv] = stack.back();
    stack.pop_back();
    const Quadtree::Node& qn = q.node(qv);
    if (qn.is_leaf()) {
      if (qn.point != kNoIndex)
        out.link(cv, out.add(Node{qn.cell, qn.point, true}));
      continue;
    }
    std::int32_t only = -1;
    if (nonempty_children(qv, &only) >= 2) {
      for (int c = 0; c < 4; ++c) {
        const std::int32_t child = qn.first_child + c;
        const std::int32_t id =
            out.add(Node{q.node(child).cell, kNoIndex, q.node(child).is_leaf()});
        out.link(cv, id);
        stack.emplace_back(child, id);
      }
      continue;
    }
    // Follow the singular path down to its last node.
    std::int32_t w = only;
    std::int32_t next = -1;
    while (!q.node(w).is_leaf() && nonempty_children(w, &next) == 1) w = next;
    const std::int32_t id = out.add(Node{q.node(w).cell, kNoIndex, q.node(w).is_leaf()});
    out.link(cv, id);
    stack.emplace_back(w, id);
  }
  return out;
}

namespace {

int bit_length(std::uint64_t x) { return 64 - std::countl_zero(x); }

// Level of the smallest cell containing both points.
int common_level(const Fixed2& a, const Fixed2& b) {
  return kFixedBits - std::max(bit_length(a.x ^ b.x), bit_length(a.y ^ b.y));
}

class MortonIndex {
 public:
  explicit MortonIndex(std::vector<Fixed2> sorted) : pts_(std::move(sorted)) {}

  bool empty(const Cell& c) const {
    const int shift = kFixedBits - c.level;
    const Fixed2 lo{c.x << shift, c.y << shift};
    const auto it = std::lower_bound(pts_.begin(), pts_.end(), lo,
                                     [](const Fixed2& a, const Fixed2& b) {
                                       return morton_less(a, b);
                                     });
    return it == pts_.end() || Cell::of(*it, c.level) != c;
  }

  bool neighbour_occupied(const Fixed2& p, int level) const {
    const Cell c = Cell::of(p, level);
    const std::int64_t top = (std::int64_t{1} << level) - 1;
    for (std::int64_t dx = -2; dx <= 2; ++dx) {
      for (std::int64_t dy = -2; dy <= 2; ++dy) {
        if (dx == 0 && dy == 0) continue;
        const std::int64_t x = static_cast<std::int64_t>(c.x) + dx;
        const std::int64_t y = static_cast<std::int64_t>(c.y) + dy;
        if (x < 0 || y < 0 || x > top || y > top) continue;
        if (!empty({level, static_cast<std::uint64_t>(x), static_cast<std::uint64_t>(y)}))
          return true;
      }
    }
    return false;
  }

 private:
  std::vector<Fixed2> pts_;
};

}  // namespace

CompressedQuadtree CompressedQuadtree::direct(std::span<const UnitPoint> points) {
  CompressedQuadtree out;
  const std::size_t n = points.size();
  out.zero_of_.assign(n, -1);

  std::vector<Fixed2> fixed(n);
  for (std::size_t i = 0; i < n; ++i)
    fixed[i] = {to_fixed(points[i].x), to_fixed(points[i].y)};
  std::vector<Index> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<Index>(i);
  std::sort(order.begin(), order.end(),
            [&](Index a, Index b) { return morton_less(fixed[a], fixed[b]); });
  std::vector<Fixed2> sorted(n);
  for (std::size_t k = 0; k < n; ++k) sorted[k] = fixed[order[k]];
  for (std::size_t k = 1; k < n; ++k)
    if (sorted[k] == sorted[k - 1])
      throw InstanceError("quadtree: duplicate centers at fixed-point resolution");
  const MortonIndex index(sorted);

  // Branching cells are the smallest common cells of Morton neighbours.
  std::vector<int> shared(n > 1 ? n - 1 : 0);
  std::unordered_set<Cell, CellHash> branching;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    shared[k] = common_level(sorted[k], sorted[k + 1]);
    branching.insert(Cell::of(sorted[k], shared[k]));
  }

  // Leaf level: the first level at which the point is alone and its 5x5
  // neighbourhood is empty. The neighbourhood test is monotone in the level.
  std::vector<Cell> leaf(n);
  for (std::size_t k = 0; k < n; ++k) {
    int lo = 0;
    if (k > 0) lo = std::max(lo, shared[k - 1] + 1);
    if (k + 1 < n) lo = std::max(lo, shared[k] + 1);
    if (lo > kFixedBits || index.neighbour_occupied(sorted[k], kFixedBits))
      throw InstanceError("quadtree: centers too close for the fixed-point resolution");
    int hi = kFixedBits;
    while (lo < hi) {
      const int mid = (lo + hi) / 2;
      if (index.neighbour_occupied(sorted[k], mid))
        lo = mid + 1;
      else
        hi = mid;
    }
    leaf[k] = Cell::of(sorted[k], lo);
  }

  std::vector<Cell> cells{Cell{}};
  for (const Cell& b : branching) {
    cells.push_back(b);
    for (int q = 0; q < 4; ++q)
      cells.push_back({b.level + 1, 2 * b.x + (q & 1), 2 * b.y + (q >> 1)});
  }
  cells.insert(cells.end(), leaf.begin(), leaf.end());
  std::sort(cells.begin(), cells.end());
  cells.erase(std::unique(cells.begin(), cells.end()), cells.end());

  std::unordered_set<Cell, CellHash> leaf_cells(leaf.begin(), leaf.end());
  for (const Cell& c : cells) {
    const bool is_leaf =
        leaf_cells.count(c) > 0 || (!branching.count(c) && index.empty(c));
    out.add(Node{c, kNoIndex, is_leaf});
  }
  // Cells are sorted by level, so every parent already exists.
  for (std::size_t id = 1; id < cells.size(); ++id) {
    Cell up = cells[id].parent();
    std::int32_t parent = out.find(up);
    while (parent < 0) {
      up = up.parent();
      parent = out.find(up);
    }
    out.link(parent, static_cast<std::int32_t>(id));
  }
  for (std::size_t k = 0; k < n; ++k)
    out.link(out.find(leaf[k]), out.add(Node{leaf[k], order[k], true}));
  return out;
}

namespace {

// Some node of the uncompressed tree folded into `mu` (mu itself, the inner
// nodes of the spliced path below it, or their empty siblings) forms a
// candidate pair with `cell`.
bool folded_pair(const CompressedQuadtree& tree, const Cell& cell, std::int32_t mu,
                 double delta, int span) {
  const CompressedQuadtree::Node& m = tree.node(mu);
  if (is_candidate_pair(cell, m.cell, delta)) return true;
  if (m.child_count != 1) return false;
  const CompressedQuadtree::Node& c = tree.node(m.children[0]);
  if (c.is_zero()) return false;
  const int first = std::max(m.cell.level + 1, cell.level - span);
  const int last = std::min(c.cell.level, cell.level + span);
  for (int l = first; l <= last; ++l) {
    const Cell up = c.cell.ancestor(l - 1);
    for (int q = 0; q < 4; ++q) {
      const Cell s{l, 2 * up.x + (q & 1), 2 * up.y + (q >> 1)};
      if (s == c.cell) continue;
      if (is_candidate_pair(cell, s, delta)) return true;
    }
  }
  return false;
}

}  // namespace

CandidatePairs compute_cnp_c(const CompressedQuadtree& tree, double delta) {
  const int span = static_cast<int>(std::floor(std::log2(4.0 * delta)));
  std::vector<std::int32_t> order;
  for (std::size_t v = 1; v < tree.size(); ++v)
    if (!tree.node(static_cast<std::int32_t>(v)).is_zero())
      order.push_back(static_cast<std::int32_t>(v));
  std::stable_sort(order.begin(), order.end(), [&](std::int32_t a, std::int32_t b) {
    return tree.node(a).cell.level < tree.node(b).cell.level;
  });

  std::vector<std::vector<std::int32_t>> larger(tree.size()), smaller(tree.size());
  std::vector<std::int32_t> candidates, seen(tree.size(), -1);
  for (const std::int32_t v : order) {
    const Cell cell = tree.node(v).cell;
    auto insert = [&](std::int32_t mu) {
      larger[v].push_back(mu);
      smaller[mu].push_back(v);
    };

    const std::int64_t top = (std::int64_t{1} << cell.level) - 1;
    const auto cx = static_cast<std::int64_t>(cell.x);
    const auto cy = static_cast<std::int64_t>(cell.y);
    for (std::int64_t x = std::max<std::int64_t>(0, cx - 6); x <= std::min(top, cx + 6); ++x) {
      for (std::int64_t y = std::max<std::int64_t>(0, cy - 6); y <= std::min(top, cy + 6);
           ++y) {
        if (x == cx && y == cy) continue;
        const Cell other{cell.level, static_cast<std::uint64_t>(x),
                         static_cast<std::uint64_t>(y)};
        const std::int32_t mu = tree.find(other);
        if (mu >= 0 && is_candidate_pair(cell, other, delta)) insert(mu);
      }
    }

    const std::int32_t parent = tree.node(v).parent;
    candidates.clear();
    for (const auto* list : {&larger[parent], &smaller[parent]})
      for (const std::int32_t mu : *list)
        if (seen[mu] != v) {
          seen[mu] = v;
          candidates.push_back(mu);
        }
    for (const std::int32_t mu : candidates) {
      const Cell& mc = tree.node(mu).cell;
      if (mc.level >= cell.level || mc.contains(cell)) continue;
      if (folded_pair(tree, cell, mu, delta, span)) insert(mu);
    }
  }

  std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
  for (const std::int32_t v : order)
    for (const std::int32_t mu : larger[v]) pairs.emplace_back(v, mu);
  return CandidatePairs::from_directed(tree.size(), std::move(pairs));
}

std::optional<Index> resolve_occupant(const CompressedQuadtree& tree,
                                      std::span<const Index> marks, std::int32_t node) {
  if (marks[node] != kNoIndex) return marks[node];
  const CompressedQuadtree::Node& v = tree.node(node);
  if (v.child_count == 1 && tree.compressed_edge(v.children[0]) &&
      marks[v.children[0]] != kNoIndex)
    return marks[v.children[0]];
  return std::nullopt;
}

EliminationSchedule solve_cquadtree(const Instance& inst, CompressedBuild build,
                                    SolveDiagnostics* diag) {
  detail::require_planar_disks(inst, "compressed quadtree");
  const std::size_t n = inst.size();
  if (n == 0) return {};

  const Normalization norm = Normalization::fit(inst);
  const std::vector<UnitPoint> unit = norm.unit_centers(inst);
  const CompressedQuadtree tree = build == CompressedBuild::direct
                                      ? CompressedQuadtree::direct(unit)
                                      : CompressedQuadtree::from_quadtree(Quadtree::build(unit));
  const CandidatePairs cnp = compute_cnp_c(tree, rate_ratio(inst));
  const bool log = diag && diag->log_pairs;
  if (diag) {
    diag->nodes = tree.size();
    diag->candidate_pairs = cnp.unordered_count();
    diag->depth = tree.depth();
    diag->examined.clear();
  }

  std::vector<Index> marks(tree.size(), kNoIndex);
  marks[tree.root()] = 0;
  std::vector<TouchTime> t(n, kNever);
  std::vector<Index> by(n, kNoIndex);

  for (Index i = 0; i < n; ++i) {
    const auto p = inst.center(i);
    const double v = inst.scalar_rate(i);
    TouchTime ti = kNever;
    Index best = kNoIndex;
    auto examine = [&](std::int32_t node) {
      for (const std::int32_t other : cnp.of(node)) {
        const std::optional<Index> k = resolve_occupant(tree, marks, other);
        if (!k || *k == i) continue;
        if (log) diag->examined.emplace_back(std::min(i, *k), std::max(i, *k));
        const TouchTime tik = detail::touch_unchecked(inst, i, *k);
        if (tik <= t[*k] && (tik < ti || (tik == ti && *k < best))) {
          ti = tik;
          best = *k;
        }
      }
    };

    std::int32_t node = tree.zero_node_of(i);
    std::int32_t below = -1;
    for (; node != tree.root(); below = node, node = tree.node(node).parent) {
      const CompressedQuadtree::Node& q = tree.node(node);
      if (!q.is_zero() && !q.leaf_cell) {
        const CellBox b = detail::input_box(norm, q.cell);
        const double dx = std::max(p[0] - b.x0, b.x1 - p[0]);
        const double dy = std::max(p[1] - b.y0, b.y1 - p[1]);
        if (ti < std::hypot(dx, dy) / v) break;
      }
      marks[node] = i;
      examine(node);
    }
    // The walk stopped on a spliced path: the disk still occupies the part
    // of that path below the stop node.
    if (node != tree.root() && below >= 0 && tree.node(node).child_count == 1)
      examine(node);
    if (i > 0) {
      t[i] = ti;
      by[i] = best;
    }
  }
  if (log) {
    auto& e = diag->examined;
    std::sort(e.begin(), e.end());
    e.erase(std::unique(e.begin(), e.end()), e.end());
  }
  return make_schedule(t, by);
}

}  // namespace growelim
