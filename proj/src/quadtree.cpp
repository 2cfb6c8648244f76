#include "growelim/quadtree.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace growelim {

namespace detail {

void require_planar_disks(const Instance& inst, const char* algorithm) {
  if (inst.kind() != ShapeKind::disk || inst.dimension() != 2)
    throw InstanceError(std::string(algorithm) +
                        " solver requires a planar disk instance");
  require_valid(inst);
}

CellBox input_box(const Normalization& norm, const Cell& cell) {
  const double side = cell.side() * norm.scale;
  const double x0 = norm.origin_x + static_cast<double>(cell.x) * side;
  const double y0 = norm.origin_y + static_cast<double>(cell.y) * side;
  return {x0, y0, x0 + side, y0 + side};
}

}  // namespace detail

Normalization Normalization::fit(const Instance& inst) {
  if (inst.dimension() != 2)
    throw InstanceError("normalization requires planar centers");
  if (inst.empty()) return {};
  double lo_x = kNever, lo_y = kNever, hi_x = -kNever, hi_y = -kNever;
  for (Index i = 0; i < inst.size(); ++i) {
    const auto c = inst.center(i);
    lo_x = std::min(lo_x, c[0]);
    hi_x = std::max(hi_x, c[0]);
    lo_y = std::min(lo_y, c[1]);
    hi_y = std::max(hi_y, c[1]);
  }
  const double extent = std::max(hi_x - lo_x, hi_y - lo_y);
  if (extent == 0.0) return {lo_x - 0.5, lo_y - 0.5, 1.0};
  const double pad = 1e-9 * extent;
  return {lo_x - pad, lo_y - pad, extent + 2.0 * pad};
}

std::vector<UnitPoint> Normalization::unit_centers(const Instance& inst) const {
  std::vector<UnitPoint> out(inst.size());
  for (Index i = 0; i < inst.size(); ++i) {
    const auto c = inst.center(i);
    out[i] = to_unit(c[0], c[1]);
  }
  return out;
}

double cover_time(const CellBox& box, double px, double py, double rate) {
  if (px < box.x0 || px > box.x1 || py < box.y0 || py > box.y1)
    throw InstanceError("cover_time: point outside the cell");
  const double dx = std::max(px - box.x0, box.x1 - px);
  const double dy = std::max(py - box.y0, box.y1 - py);
  return std::hypot(dx, dy) / rate;
}

__int128 cell_gap_squared(const Cell& a, const Cell& b) {
  const Cell& fine = a.level >= b.level ? a : b;
  const Cell& coarse = a.level >= b.level ? b : a;
  const int k = fine.level - coarse.level;
  auto gap = [k](std::uint64_t f, std::uint64_t c) -> __int128 {
    const __int128 lo = static_cast<__int128>(c) << k;
    const __int128 hi = static_cast<__int128>(c + 1) << k;
    const __int128 f0 = f, f1 = static_cast<__int128>(f) + 1;
    if (f1 < lo) return lo - f1;
    if (f0 > hi) return f0 - hi;
    return 0;
  };
  const __int128 gx = gap(fine.x, coarse.x);
  const __int128 gy = gap(fine.y, coarse.y);
  return gx * gx + gy * gy;
}

bool is_candidate_pair(const Cell& a, const Cell& b, double delta) {
  const int k = std::abs(a.level - b.level);
  if (k >= 62 || static_cast<double>(std::uint64_t{1} << k) > 4.0 * delta) return false;
  // gap <= 2 (|a| + |b|)  <=>  gap^2 <= 8 (s_fine + s_coarse)^2
  const __int128 sum = (static_cast<__int128>(1) << k) + 1;
  return cell_gap_squared(a, b) <= 8 * sum * sum;
}

CandidatePairs CandidatePairs::from_directed(
    std::size_t nodes, std::vector<std::pair<std::int32_t, std::int32_t>> pairs) {
  std::vector<std::size_t> start(nodes + 1, 0);
  for (const auto& [a, b] : pairs) {
    ++start[a + 1];
    ++start[b + 1];
  }
  for (std::size_t v = 0; v < nodes; ++v) start[v + 1] += start[v];
  std::vector<std::int32_t> all(start[nodes]);
  {
    std::vector<std::size_t> fill(start.begin(), start.end() - 1);
    for (const auto& [a, b] : pairs) {
      all[fill[a]++] = b;
      all[fill[b]++] = a;
    }
  }
  pairs = {};

  std::vector<std::size_t> kept(nodes, 0);
  const auto count = static_cast<std::int64_t>(nodes);
#pragma omp parallel for schedule(dynamic, 1024)
  for (std::int64_t v = 0; v < count; ++v) {
    const auto first = all.begin() + static_cast<std::ptrdiff_t>(start[v]);
    const auto last = all.begin() + static_cast<std::ptrdiff_t>(start[v + 1]);
    std::sort(first, last);
    kept[v] = static_cast<std::size_t>(std::unique(first, last) - first);
  }

  CandidatePairs out;
  out.offsets.assign(nodes + 1, 0);
  for (std::size_t v = 0; v < nodes; ++v) out.offsets[v + 1] = out.offsets[v] + kept[v];
  out.partners.resize(out.offsets[nodes]);
  for (std::size_t v = 0; v < nodes; ++v)
    std::copy_n(all.begin() + static_cast<std::ptrdiff_t>(start[v]), kept[v],
                out.partners.begin() + static_cast<std::ptrdiff_t>(out.offsets[v]));
  return out;
}

namespace {

bool neighbourhood_occupied(
    const Cell& c, const std::unordered_map<Cell, std::int32_t, CellHash>& occupied) {
  const std::int64_t top = (std::int64_t{1} << c.level) - 1;
  for (std::int64_t dx = -2; dx <= 2; ++dx) {
    for (std::int64_t dy = -2; dy <= 2; ++dy) {
      if (dx == 0 && dy == 0) continue;
      const std::int64_t x = static_cast<std::int64_t>(c.x) + dx;
      const std::int64_t y = static_cast<std::int64_t>(c.y) + dy;
      if (x < 0 || y < 0 || x > top || y > top) continue;
      if (occupied.count({c.level, static_cast<std::uint64_t>(x),
                          static_cast<std::uint64_t>(y)}))
        return true;
    }
  }
  return false;
}

}  // namespace

Quadtree Quadtree::build(std::span<const UnitPoint> points) {
  Quadtree tree;
  const std::size_t n = points.size();
  tree.fixed_.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    tree.fixed_[i] = {to_fixed(points[i].x), to_fixed(points[i].y)};
  tree.leaf_of_.assign(n, -1);

  std::vector<Index> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<Index>(i);
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    return morton_less(tree.fixed_[a], tree.fixed_[b]);
  });
  for (std::size_t k = 1; k < n; ++k)
    if (tree.fixed_[order[k]] == tree.fixed_[order[k - 1]])
      throw InstanceError("quadtree: duplicate centers at fixed-point resolution");

  tree.nodes_.push_back(Node{Cell{}, -1, -1, kNoIndex});
  tree.index_.emplace(Cell{}, 0);

  // Frontier entries are non-empty nodes of the current level with their
  // contiguous range in `order`.
  struct Entry {
    std::int32_t node;
    std::size_t begin, end;
  };
  std::vector<Entry> frontier;
  if (n > 0) frontier.push_back({0, 0, n});
  std::unordered_map<Cell, std::int32_t, CellHash> occupied;

  for (int level = 0; !frontier.empty(); ++level) {
    occupied.clear();
    for (const Entry& e : frontier) occupied.emplace(tree.nodes_[e.node].cell, e.node);

    std::vector<Entry> next;
    for (const Entry& e : frontier) {
      const Cell cell = tree.nodes_[e.node].cell;
      const bool split = e.end - e.begin >= 2 || neighbourhood_occupied(cell, occupied);
      if (!split) {
        tree.nodes_[e.node].point = order[e.begin];
        tree.leaf_of_[order[e.begin]] = e.node;
        continue;
      }
      if (level >= kFixedBits)
        throw InstanceError("quadtree: centers too close for the fixed-point resolution");
      const auto first = static_cast<std::int32_t>(tree.nodes_.size());
      tree.nodes_[e.node].first_child = first;
      const int shift = kFixedBits - level - 1;
      std::size_t at = e.begin;
      for (int q = 0; q < 4; ++q) {
        const Cell child{level + 1, 2 * cell.x + (q & 1), 2 * cell.y + (q >> 1)};
        tree.nodes_.push_back(Node{child, e.node, -1, kNoIndex});
        tree.index_.emplace(child, first + q);
      }
      std::size_t counts[4] = {0, 0, 0, 0};
      for (std::size_t k = e.begin; k < e.end; ++k) {
        const Fixed2& p = tree.fixed_[order[k]];
        ++counts[((p.x >> shift) & 1) | (((p.y >> shift) & 1) << 1)];
      }
      std::stable_sort(order.begin() + e.begin, order.begin() + e.end,
                       [&](Index a, Index b) {
                         const Fixed2& pa = tree.fixed_[a];
                         const Fixed2& pb = tree.fixed_[b];
                         const int qa = static_cast<int>(((pa.x >> shift) & 1) |
                                                         (((pa.y >> shift) & 1) << 1));
                         const int qb = static_cast<int>(((pb.x >> shift) & 1) |
                                                         (((pb.y >> shift) & 1) << 1));
                         return qa < qb;
                       });
      for (int q = 0; q < 4; ++q) {
        if (counts[q] > 0) next.push_back({first + q, at, at + counts[q]});
        at += counts[q];
      }
      tree.depth_ = std::max(tree.depth_, level + 1);
    }
    frontier = std::move(next);
  }
  return tree;
}

std::int32_t Quadtree::find(const Cell& cell) const {
  const auto it = index_.find(cell);
  return it == index_.end() ? -1 : it->second;
}

std::vector<std::uint32_t> Quadtree::subtree_counts() const {
  std::vector<std::uint32_t> count(nodes_.size(), 0);
  // Children always have larger ids than their parent.
  for (std::size_t v = nodes_.size(); v-- > 0;) {
    if (nodes_[v].point != kNoIndex) ++count[v];
    if (nodes_[v].parent >= 0) count[nodes_[v].parent] += count[v];
  }
  return count;
}

namespace {

int level_span(double delta) {
  return static_cast<int>(std::ceil(std::log2(4.0 * delta))) + 1;
}

// Partners of equal or larger size for one node.
void collect_partners(const Quadtree& tree, std::int32_t v, double delta, int span,
                      std::vector<std::pair<std::int32_t, std::int32_t>>& out) {
  const Cell cell = tree.node(v).cell;
  const int lowest = std::max(0, cell.level - span);
  for (int l = cell.level; l >= lowest; --l) {
    const Cell anchor = cell.ancestor(l);
    const double r = 2.0 * std::sqrt(2.0) * (std::ldexp(1.0, l - cell.level) + 1.0);
    const auto radius = static_cast<std::int64_t>(std::ceil(r)) + 1;
    const std::int64_t top = (std::int64_t{1} << std::min(l, 62)) - 1;
    const auto ax = static_cast<std::int64_t>(anchor.x);
    const auto ay = static_cast<std::int64_t>(anchor.y);
    for (std::int64_t x = std::max<std::int64_t>(0, ax - radius);
         x <= std::min(top, ax + radius); ++x) {
      for (std::int64_t y = std::max<std::int64_t>(0, ay - radius);
           y <= std::min(top, ay + radius); ++y) {
        if (x == ax && y == ay) continue;  // the node itself or its ancestor
        const Cell other{l, static_cast<std::uint64_t>(x), static_cast<std::uint64_t>(y)};
        const std::int32_t w = tree.find(other);
        if (w < 0 || !is_candidate_pair(cell, other, delta)) continue;
        out.emplace_back(v, w);
      }
    }
  }
}

}  // namespace

CandidatePairs compute_cnp_serial(const Quadtree& tree, double delta) {
  const int span = level_span(delta);
  std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
  for (std::size_t v = 1; v < tree.size(); ++v)
    collect_partners(tree, static_cast<std::int32_t>(v), delta, span, pairs);
  return CandidatePairs::from_directed(tree.size(), std::move(pairs));
}

CandidatePairs compute_cnp(const Quadtree& tree, double delta) {
  const int span = level_span(delta);
  const auto nodes = static_cast<std::int64_t>(tree.size());
  std::vector<std::pair<std::int32_t, std::int32_t>> pairs;
#pragma omp parallel
  {
    std::vector<std::pair<std::int32_t, std::int32_t>> local;
#pragma omp for schedule(dynamic, 256) nowait
    for (std::int64_t v = 1; v < nodes; ++v)
      collect_partners(tree, static_cast<std::int32_t>(v), delta, span, local);
#pragma omp critical
    pairs.insert(pairs.end(), local.begin(), local.end());
  }
  return CandidatePairs::from_directed(tree.size(), std::move(pairs));
}

EliminationSchedule solve_quadtree(const Instance& inst, SolveDiagnostics* diag) {
  detail::require_planar_disks(inst, "quadtree");
  const std::size_t n = inst.size();
  if (n == 0) return {};

  const Normalization norm = Normalization::fit(inst);
  const Quadtree tree = Quadtree::build(norm.unit_centers(inst));
  const CandidatePairs cnp = compute_cnp(tree, rate_ratio(inst));
  const bool log = diag && diag->log_pairs;
  if (diag) {
    diag->nodes = tree.size();
    diag->candidate_pairs = cnp.unordered_count();
    diag->depth = tree.depth();
    diag->examined.clear();
  }

  std::vector<Index> occupant(tree.size(), kNoIndex);
  occupant[tree.root()] = 0;
  std::vector<TouchTime> t(n, kNever);
  std::vector<Index> by(n, kNoIndex);

  for (Index i = 0; i < n; ++i) {
    const auto p = inst.center(i);
    const double v = inst.scalar_rate(i);
    TouchTime ti = kNever;
    Index best = kNoIndex;
    for (std::int32_t node = tree.leaf_of(i); node != tree.root();
         node = tree.node(node).parent) {
      const Quadtree::Node& q = tree.node(node);
      if (!q.is_leaf()) {
        const CellBox b = detail::input_box(norm, q.cell);
        const double dx = std::max(p[0] - b.x0, b.x1 - p[0]);
        const double dy = std::max(p[1] - b.y0, b.y1 - p[1]);
        if (ti < std::hypot(dx, dy) / v) break;
      }
      occupant[node] = i;
      for (const std::int32_t other : cnp.of(node)) {
        const Index k = occupant[other];
        if (k == kNoIndex || k == i) continue;
        if (log) diag->examined.emplace_back(std::min(i, k), std::max(i, k));
        const TouchTime tik = detail::touch_unchecked(inst, i, k);
        if (tik <= t[k] && (tik < ti || (tik == ti && k < best))) {
          ti = tik;
          best = k;
        }
      }
    }
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
