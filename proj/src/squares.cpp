#include "growelim/squares.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <memory>

namespace growelim {

namespace {

double rot_u(double x, double y) { return x + y; }
double rot_w(double x, double y) { return y - x; }

// Coordinate along which quadrant q measures distance (0..3 matches the
// Quadrant enumerators).
double quadrant_coordinate(int q, double x, double y) {
  switch (q) {
    case 0: return y;
    case 1: return x;
    case 2: return -y;
    default: return -x;
  }
}

}  // namespace

bool in_quadrant(Quadrant q, double cx, double cy, double px, double py) {
  const double du = rot_u(px, py), cu = rot_u(cx, cy);
  const double dw = rot_w(px, py), cw = rot_w(cx, cy);
  switch (q) {
    case Quadrant::north: return du >= cu && dw >= cw;
    case Quadrant::east: return du >= cu && dw <= cw;
    case Quadrant::south: return du <= cu && dw <= cw;
    case Quadrant::west: return du <= cu && dw >= cw;
  }
  return false;
}

QuadrantStructure::QuadrantStructure(std::vector<QuadrantEntry> entries)
    : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end(),
            [](const QuadrantEntry& a, const QuadrantEntry& b) {
              return rot_u(a.x, a.y) < rot_u(b.x, b.y);
            });
  u_.resize(entries_.size());
  for (std::size_t k = 0; k < entries_.size(); ++k)
    u_[k] = rot_u(entries_[k].x, entries_[k].y);
  if (entries_.empty()) return;
  primary_.resize(2 * entries_.size() - 1);
  build_primary(0, 0, entries_.size());
}

void QuadrantStructure::build_primary(std::size_t node, std::size_t lo, std::size_t hi) {
  Secondary& s = primary_[node];
  s.by_w.resize(hi - lo);
  for (std::size_t k = lo; k < hi; ++k) s.by_w[k - lo] = k;
  std::sort(s.by_w.begin(), s.by_w.end(), [&](std::size_t a, std::size_t b) {
    return rot_w(entries_[a].x, entries_[a].y) < rot_w(entries_[b].x, entries_[b].y);
  });
  s.w.resize(hi - lo);
  for (std::size_t k = 0; k < s.by_w.size(); ++k)
    s.w[k] = rot_w(entries_[s.by_w[k]].x, entries_[s.by_w[k]].y);
  s.envelopes.resize(2 * (hi - lo) - 1);
  build_secondary(s, 0, 0, hi - lo);
  if (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    build_primary(node + 1, lo, mid);
    build_primary(node + 2 * (mid - lo), mid, hi);
  }
}

void QuadrantStructure::build_secondary(Secondary& s, std::size_t node, std::size_t lo,
                                        std::size_t hi) {
  std::vector<EnvelopeSegment> segments(hi - lo);
  for (int q = 0; q < 4; ++q) {
    for (std::size_t k = lo; k < hi; ++k) {
      const QuadrantEntry& e = entries_[s.by_w[k]];
      segments[k - lo] = {e.index, quadrant_coordinate(q, e.x, e.y), e.rate, e.time};
    }
    s.envelopes[node][q] = LowerEnvelope::build(segments);
  }
  if (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    build_secondary(s, node + 1, lo, mid);
    build_secondary(s, node + 2 * (mid - lo), mid, hi);
  }
}

namespace {

// Canonical DFS-ordered node ids of a segment tree over [lo, hi) covering
// [a, b).
void canonical(std::size_t node, std::size_t lo, std::size_t hi, std::size_t a,
               std::size_t b, std::vector<std::size_t>& out) {
  if (b <= lo || hi <= a) return;
  if (a <= lo && hi <= b) {
    out.push_back(node);
    return;
  }
  const std::size_t mid = (lo + hi) / 2;
  canonical(node + 1, lo, mid, a, b, out);
  canonical(node + 2 * (mid - lo), mid, hi, a, b, out);
}

void keep_first(std::optional<RayHit>& best, const std::optional<RayHit>& hit) {
  if (!hit) return;
  if (!best || hit->time < best->time ||
      (hit->time == best->time && hit->owner < best->owner))
    best = hit;
}

}  // namespace

std::optional<RayHit> QuadrantStructure::query(Quadrant q, double x, double y,
                                               double rate) const {
  if (entries_.empty()) return std::nullopt;
  const double qu = rot_u(x, y), qw = rot_w(x, y);
  const bool u_above = q == Quadrant::north || q == Quadrant::east;
  const bool w_above = q == Quadrant::north || q == Quadrant::west;
  const int coord = static_cast<int>(q);
  const double origin = quadrant_coordinate(coord, x, y);

  std::size_t a = 0, b = u_.size();
  if (u_above)
    a = static_cast<std::size_t>(std::lower_bound(u_.begin(), u_.end(), qu) - u_.begin());
  else
    b = static_cast<std::size_t>(std::upper_bound(u_.begin(), u_.end(), qu) - u_.begin());
  std::vector<std::size_t> nodes;
  canonical(0, 0, u_.size(), a, b, nodes);

  std::optional<RayHit> best;
  std::vector<std::size_t> inner;
  for (const std::size_t p : nodes) {
    const Secondary& s = primary_[p];
    std::size_t c = 0, d = s.w.size();
    if (w_above)
      c = static_cast<std::size_t>(std::lower_bound(s.w.begin(), s.w.end(), qw) -
                                   s.w.begin());
    else
      d = static_cast<std::size_t>(std::upper_bound(s.w.begin(), s.w.end(), qw) -
                                   s.w.begin());
    inner.clear();
    canonical(0, 0, s.w.size(), c, d, inner);
    for (const std::size_t k : inner)
      keep_first(best, s.envelopes[k][coord].ray_shoot(origin, rate));
  }
  return best;
}

std::vector<std::pair<std::size_t, std::size_t>> prefix_blocks(std::size_t i) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t start = 0;
  for (int bit = 63; bit >= 0; --bit) {
    const std::size_t size = std::size_t{1} << bit;
    if (i & size) {
      out.emplace_back(start, size);
      start += size;
    }
  }
  return out;
}

EliminationSchedule solve_squares(const Instance& inst) {
  if (inst.kind() != ShapeKind::square || inst.dimension() != 2)
    throw InstanceError("squares solver requires a planar square instance");
  require_valid(inst);
  const std::size_t n = inst.size();
  std::vector<TouchTime> t(n, kNever);
  std::vector<Index> by(n, kNoIndex);

  // Built structures keyed by block start; a block's structure replaces
  // those of the blocks it contains.
  std::map<std::size_t, std::unique_ptr<QuadrantStructure>> blocks;
  for (std::size_t i = 0; i < n; ++i) {
    const Index vi = static_cast<Index>(i);
    const auto p = inst.center(vi);
    const double rate = inst.scalar_rate(vi);
    TouchTime best = kNever;
    Index owner = kNoIndex;
    for (const auto& [start, size] : prefix_blocks(i)) {
      const QuadrantStructure& s = *blocks.at(start);
      for (const Quadrant q :
           {Quadrant::north, Quadrant::east, Quadrant::south, Quadrant::west}) {
        const std::optional<RayHit> hit = s.query(q, p[0], p[1], rate);
        if (!hit) continue;
        const TouchTime tt = detail::touch_unchecked(inst, vi, hit->owner);
        if (tt < best || (tt == best && hit->owner < owner)) {
          best = tt;
          owner = hit->owner;
        }
      }
    }
    if (i > 0) {
      t[i] = best;
      by[i] = owner;
    }

    const std::size_t end = i + 1;
    const std::size_t size = end & (~end + 1);
    const std::size_t start = end - size;
    std::vector<QuadrantEntry> entries;
    entries.reserve(size);
    for (std::size_t j = start; j < end; ++j) {
      const auto c = inst.center(static_cast<Index>(j));
      entries.push_back({static_cast<Index>(j), c[0], c[1],
                         inst.scalar_rate(static_cast<Index>(j)), t[j]});
    }
    blocks.erase(blocks.lower_bound(start), blocks.end());
    blocks.emplace(start, std::make_unique<QuadrantStructure>(std::move(entries)));
  }
  return make_schedule(t, by);
}

}  // namespace growelim
