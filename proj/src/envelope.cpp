#include "growelim/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace growelim {

namespace {

using Pieces = std::vector<EnvelopePiece>;

// Pointwise minimum of two envelopes that both start at t = 0.
Pieces merge(const Pieces& a, const Pieces& b) {
  Pieces out;
  out.reserve(a.size() + b.size() + 1);
  auto emit = [&](const EnvelopePiece& src, double from, double to) {
    if (!(from < to)) return;
    if (!out.empty() && out.back().owner == src.owner && out.back().end == from) {
      out.back().end = to;
      return;
    }
    EnvelopePiece p = src;
    p.begin = from;
    p.end = to;
    out.push_back(p);
  };

  std::size_t i = 0, j = 0;
  double t = 0.0;
  while (i < a.size() || j < b.size()) {
    const EnvelopePiece* pa = i < a.size() ? &a[i] : nullptr;
    const EnvelopePiece* pb = j < b.size() ? &b[j] : nullptr;
    const double next = std::min(pa ? pa->end : kNever, pb ? pb->end : kNever);
    if (!pa || !pb) {
      emit(pa ? *pa : *pb, t, next);
    } else {
      const double fa = pa->at(t), fb = pb->at(t);
      bool a_low;
      if (fa != fb)
        a_low = fa < fb;
      else if (pa->rate != pb->rate)
        a_low = pa->rate > pb->rate;
      else
        a_low = pa->owner < pb->owner;
      const EnvelopePiece& lo = a_low ? *pa : *pb;
      const EnvelopePiece& hi = a_low ? *pb : *pa;
      const double tx = hi.rate > lo.rate
                            ? (hi.intercept - lo.intercept) / (hi.rate - lo.rate)
                            : kNever;
      if (tx > t && tx < next) {
        emit(lo, t, tx);
        emit(hi, tx, next);
      } else {
        emit(lo, t, next);
      }
    }
    if (pa && pa->end == next) ++i;
    if (pb && pb->end == next) ++j;
    t = next;
  }
  return out;
}

Pieces build_range(std::span<const EnvelopeSegment> s) {
  if (s.size() == 1) {
    return {EnvelopePiece{s[0].owner, s[0].intercept, s[0].rate, s[0].end, 0.0,
                          s[0].end}};
  }
  const std::size_t mid = s.size() / 2;
  return merge(build_range(s.first(mid)), build_range(s.subspan(mid)));
}

}  // namespace

LowerEnvelope LowerEnvelope::build(std::span<const EnvelopeSegment> segments) {
  if (segments.empty()) throw std::invalid_argument("envelope of no segments");
  for (const EnvelopeSegment& s : segments)
    if (!(s.rate > 0.0) || !(s.end > 0.0) || !std::isfinite(s.intercept))
      throw std::invalid_argument("envelope segment needs rate > 0 and end > 0");
  LowerEnvelope env;
  env.pieces_ = build_range(segments);
  env.build_hulls();
  return env;
}

double LowerEnvelope::value(double t) const {
  if (pieces_.empty() || t > horizon()) return kNever;
  const auto it = std::lower_bound(
      pieces_.begin(), pieces_.end(), t,
      [](const EnvelopePiece& p, double x) { return p.end < x; });
  return it->at(t);
}

void LowerEnvelope::build_hulls() {
  vertices_.clear();
  for (const EnvelopePiece& p : pieces_)
    if (p.end != kNever) vertices_.push_back({p.end, p.at(p.end)});
  const std::size_t f = vertices_.size();
  hull_points_.clear();
  hull_begin_.assign(f > 0 ? 4 * f : 0, 0);
  hull_end_.assign(f > 0 ? 4 * f : 0, 0);
  if (f > 0) build_hull_node(1, 0, f);
}

void LowerEnvelope::build_hull_node(std::size_t node, std::size_t lo, std::size_t hi) {
  hull_begin_[node] = hull_points_.size();
  for (std::size_t k = lo; k < hi; ++k) {
    const Vertex& c = vertices_[k];
    while (hull_points_.size() >= hull_begin_[node] + 2) {
      const Vertex& a = hull_points_[hull_points_.size() - 2];
      const Vertex& b = hull_points_.back();
      const double cross = (b.t - a.t) * (c.y - a.y) - (b.y - a.y) * (c.t - a.t);
      if (cross > 0.0) break;
      hull_points_.pop_back();
    }
    hull_points_.push_back(c);
  }
  hull_end_[node] = hull_points_.size();
  if (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    build_hull_node(2 * node, lo, mid);
    build_hull_node(2 * node + 1, mid, hi);
  }
}

bool LowerEnvelope::reaches(std::size_t node, double origin, double rate) const {
  // min over the hull of y - rate * t sits where the edge slope passes rate.
  std::size_t lo = hull_begin_[node], hi = hull_end_[node] - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    const Vertex& a = hull_points_[mid];
    const Vertex& b = hull_points_[mid + 1];
    if (b.y - a.y >= rate * (b.t - a.t))
      hi = mid;
    else
      lo = mid + 1;
  }
  const Vertex& v = hull_points_[lo];
  return v.y - rate * v.t <= origin;
}

std::ptrdiff_t LowerEnvelope::first_reaching(std::size_t node, std::size_t lo,
                                             std::size_t hi, double origin,
                                             double rate) const {
  if (!reaches(node, origin, rate)) return -1;
  if (hi - lo == 1) return static_cast<std::ptrdiff_t>(lo);
  const std::size_t mid = (lo + hi) / 2;
  const std::ptrdiff_t left = first_reaching(2 * node, lo, mid, origin, rate);
  if (left >= 0) return left;
  return first_reaching(2 * node + 1, mid, hi, origin, rate);
}

std::optional<RayHit> LowerEnvelope::ray_shoot(double origin, double rate) const {
  if (pieces_.empty()) return std::nullopt;
  const auto m = static_cast<std::ptrdiff_t>(pieces_.size());
  std::ptrdiff_t k =
      vertices_.empty() ? -1 : first_reaching(1, 0, vertices_.size(), origin, rate);
  if (k < 0) k = m - 1;

  // The descent is exact up to rounding near a piece boundary; settle the
  // hit among the neighbouring pieces with each owner's own crossing time.
  std::optional<RayHit> best;
  for (std::ptrdiff_t p = std::max<std::ptrdiff_t>(0, k - 2);
       p <= std::min(m - 1, k + 1); ++p) {
    const EnvelopePiece& piece = pieces_[p];
    const double h = std::max(0.0, (piece.intercept - origin) / (piece.rate + rate));
    if (!(h <= piece.limit)) continue;
    if (!best || h < best->time || (h == best->time && piece.owner < best->owner))
      best = RayHit{piece.owner, h};
  }
  return best;
}

}  // namespace growelim
