#include "growelim/core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "growelim/morton.hpp"

namespace growelim {

std::string_view to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::disk: return "disk";
    case ShapeKind::square: return "square";
    case ShapeKind::rect: return "rect";
    case ShapeKind::ball: return "ball";
    case ShapeKind::box: return "box";
  }
  return "?";
}

std::optional<ShapeKind> parse_shape_kind(std::string_view text) {
  if (text == "disk") return ShapeKind::disk;
  if (text == "square") return ShapeKind::square;
  if (text == "rect") return ShapeKind::rect;
  if (text == "ball") return ShapeKind::ball;
  if (text == "box") return ShapeKind::box;
  return std::nullopt;
}

Instance::Instance(ShapeKind kind, int dimension, std::vector<double> centers,
                   std::vector<double> rates)
    : kind_(kind), dim_(dimension), centers_(std::move(centers)),
      rates_(std::move(rates)) {
  if (dim_ < 1) throw InstanceError("dimension must be positive");
  const bool planar = kind_ == ShapeKind::disk || kind_ == ShapeKind::square ||
                      kind_ == ShapeKind::rect;
  if (planar && dim_ != 2)
    throw InstanceError(std::string(to_string(kind_)) +
                        " instances must have dimension 2");
  if (centers_.size() % static_cast<std::size_t>(dim_) != 0)
    throw InstanceError("center coordinates do not match the dimension");
  n_ = centers_.size() / static_cast<std::size_t>(dim_);
  if (rates_.size() != n_ * rate_components())
    throw InstanceError("rate count does not match the number of shapes");
  if (n_ >= kNoIndex) throw InstanceError("too many shapes");
}

TouchTime touch_time(const Instance& inst, Index i, Index j) {
  if (i >= inst.size() || j >= inst.size())
    throw std::out_of_range("shape index out of range");
  if (i == j) throw InstanceError("touch_time needs two distinct shapes");
  return detail::touch_unchecked(inst, i, j);
}

EliminationSchedule make_schedule(std::span<const TouchTime> times,
                                  std::span<const Index> eliminators) {
  EliminationSchedule s;
  s.survivor = 0;
  s.records.reserve(times.size() > 0 ? times.size() - 1 : 0);
  for (std::size_t i = 1; i < times.size(); ++i)
    s.records.push_back({static_cast<Index>(i), eliminators[i], times[i]});
  std::sort(s.records.begin(), s.records.end(),
            [](const EliminationRecord& a, const EliminationRecord& b) {
              return earlier_event(a.time, a.eliminator, a.victim, b.time,
                                   b.eliminator, b.victim);
            });
  return s;
}

std::vector<TouchTime> elimination_times(const EliminationSchedule& schedule,
                                         std::size_t n) {
  std::vector<TouchTime> t(n, kNever);
  for (const auto& r : schedule.records)
    if (r.victim < n) t[r.victim] = r.time;
  return t;
}

std::vector<std::string> check_schedule(const EliminationSchedule& schedule,
                                        std::size_t n) {
  std::vector<std::string> problems;
  auto fail = [&problems](const std::string& msg) {
    if (problems.size() < 32) problems.push_back(msg);
  };
  if (schedule.survivor != 0) fail("survivor must be shape 1");
  const std::size_t expected = n == 0 ? 0 : n - 1;
  if (schedule.records.size() != expected)
    fail("expected " + std::to_string(expected) + " records, found " +
         std::to_string(schedule.records.size()));

  std::vector<int> seen(n, 0);
  for (std::size_t k = 0; k < schedule.records.size(); ++k) {
    const auto& r = schedule.records[k];
    const std::string where = "record " + std::to_string(k + 1) + ": ";
    if (r.victim >= n || r.eliminator >= n) {
      fail(where + "index out of range");
      continue;
    }
    if (r.victim == 0) fail(where + "shape 1 cannot be eliminated");
    if (++seen[r.victim] > 1) fail(where + "victim eliminated twice");
    if (r.eliminator >= r.victim)
      fail(where + "eliminator does not have higher priority");
    if (!(r.time >= 0.0) || std::isinf(r.time))
      fail(where + "time must be finite and nonnegative");
    if (k > 0) {
      const auto& p = schedule.records[k - 1];
      if (earlier_event(r.time, r.eliminator, r.victim, p.time, p.eliminator,
                        p.victim))
        fail(where + "records not sorted by time");
    }
  }
  const auto t = elimination_times(schedule, n);
  for (std::size_t k = 0; k < schedule.records.size(); ++k) {
    const auto& r = schedule.records[k];
    if (r.victim >= n || r.eliminator >= n) continue;
    if (t[r.eliminator] < r.time)
      fail("record " + std::to_string(k + 1) +
           ": eliminator was already gone at that time");
  }
  return problems;
}

bool ValidationReport::structurally_valid() const {
  return std::none_of(violations.begin(), violations.end(),
                      [](const Violation& v) {
                        return v.kind != Violation::Kind::tie;
                      });
}

namespace {

// Exact touching time as num/den for integer inputs. Euclidean shapes keep
// squared quantities so no square root is needed.
struct ExactTime {
  __int128 num = 0;
  __int128 den = 1;
};

bool exact_less(const ExactTime& a, const ExactTime& b) {
  return a.num * b.den < b.num * a.den;
}
bool exact_equal(const ExactTime& a, const ExactTime& b) {
  return a.num * b.den == b.num * a.den;
}

ExactTime exact_touch(const Instance& inst, Index i, Index j) {
  const int d = inst.dimension();
  auto ci = inst.center(i);
  auto cj = inst.center(j);
  auto as_int = [](double v) { return static_cast<__int128>(std::llround(v)); };
  switch (inst.kind()) {
    case ShapeKind::disk:
    case ShapeKind::ball: {
      __int128 sq = 0;
      for (int k = 0; k < d; ++k) {
        const __int128 diff = as_int(ci[k]) - as_int(cj[k]);
        sq += diff * diff;
      }
      const __int128 s = as_int(inst.scalar_rate(i)) + as_int(inst.scalar_rate(j));
      return {sq, s * s};
    }
    case ShapeKind::square: {
      __int128 m = 0;
      for (int k = 0; k < d; ++k) {
        __int128 diff = as_int(ci[k]) - as_int(cj[k]);
        if (diff < 0) diff = -diff;
        m = std::max(m, diff);
      }
      return {m, as_int(inst.scalar_rate(i)) + as_int(inst.scalar_rate(j))};
    }
    case ShapeKind::rect:
    case ShapeKind::box: {
      auto ri = inst.rate(i);
      auto rj = inst.rate(j);
      ExactTime best{0, 1};
      for (int k = 0; k < d; ++k) {
        __int128 diff = as_int(ci[k]) - as_int(cj[k]);
        if (diff < 0) diff = -diff;
        const ExactTime cand{diff, as_int(ri[k]) + as_int(rj[k])};
        if (exact_less(best, cand)) best = cand;
      }
      return best;
    }
  }
  return {};
}

bool exactly_representable(const Instance& inst) {
  constexpr double limit = 1 << 20;
  if (inst.dimension() > 8) return false;
  auto ok = [](double v) {
    return std::isfinite(v) && std::abs(v) <= limit && v == std::floor(v);
  };
  return std::all_of(inst.centers().begin(), inst.centers().end(), ok) &&
         std::all_of(inst.rates().begin(), inst.rates().end(), ok);
}

struct PairTime {
  double t;
  Index i;
  Index j;
};

void check_general_position(const Instance& inst, ValidationReport& report) {
  const std::size_t n = inst.size();
  report.general_position_checked = true;
  report.exact_predicates = exactly_representable(inst);

  std::vector<PairTime> pairs(n * (n - 1) / 2);
  const std::int64_t sn = static_cast<std::int64_t>(n);
#pragma omp parallel for schedule(dynamic, 64)
  for (std::int64_t i = 0; i < sn; ++i) {
    std::size_t base = static_cast<std::size_t>(i) * (2 * n - i - 1) / 2;
    for (std::size_t j = static_cast<std::size_t>(i) + 1; j < n; ++j)
      pairs[base + (j - i - 1)] = {
          detail::touch_unchecked(inst, static_cast<Index>(i), static_cast<Index>(j)),
          static_cast<Index>(i), static_cast<Index>(j)};
  }
  std::sort(pairs.begin(), pairs.end(),
            [](const PairTime& a, const PairTime& b) { return a.t < b.t; });

  std::size_t ties = 0;
  std::ostringstream example;
  for (std::size_t a = 0; a < pairs.size();) {
    // Cluster of nearly equal doubles; exact equal values can round apart.
    std::size_t b = a + 1;
    while (b < pairs.size() &&
           pairs[b].t - pairs[a].t <= 1e-12 * std::abs(pairs[a].t))
      ++b;
    for (std::size_t x = a; x < b; ++x) {
      for (std::size_t y = x + 1; y < b; ++y) {
        const bool tie =
            report.exact_predicates
                ? exact_equal(exact_touch(inst, pairs[x].i, pairs[x].j),
                              exact_touch(inst, pairs[y].i, pairs[y].j))
                : pairs[x].t == pairs[y].t;
        if (!tie) continue;
        if (ties == 0)
          example << "t(" << pairs[x].i + 1 << "," << pairs[x].j + 1
                  << ") = t(" << pairs[y].i + 1 << "," << pairs[y].j + 1
                  << ") = " << pairs[x].t;
        ++ties;
      }
    }
    a = b;
  }
  if (ties > 0)
    report.violations.push_back(
        {Violation::Kind::tie, "general position violated: " +
                                   std::to_string(ties) +
                                   " tied touching-time pairs, e.g. " +
                                   example.str()});
}

}  // namespace

ValidationReport validate_instance(const Instance& inst, bool strict) {
  ValidationReport report;
  const std::size_t n = inst.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (double c : inst.center(static_cast<Index>(i))) {
      if (!std::isfinite(c)) {
        report.violations.push_back({Violation::Kind::nonfinite_value,
                                     "non-finite coordinate for shape " +
                                         std::to_string(i + 1)});
        break;
      }
    }
    for (double r : inst.rate(static_cast<Index>(i))) {
      if (!(r > 0.0) || !std::isfinite(r)) {
        report.violations.push_back({Violation::Kind::nonpositive_rate,
                                     "nonpositive rate for shape " +
                                         std::to_string(i + 1)});
        break;
      }
    }
  }

  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  auto lex_less = [&](Index a, Index b) {
    auto ca = inst.center(a);
    auto cb = inst.center(b);
    return std::lexicographical_compare(ca.begin(), ca.end(), cb.begin(),
                                        cb.end());
  };
  std::sort(order.begin(), order.end(), lex_less);
  for (std::size_t k = 1; k < n; ++k) {
    auto ca = inst.center(order[k - 1]);
    auto cb = inst.center(order[k]);
    if (std::equal(ca.begin(), ca.end(), cb.begin())) {
      const Index lo = std::min(order[k - 1], order[k]);
      const Index hi = std::max(order[k - 1], order[k]);
      report.violations.push_back(
          {Violation::Kind::duplicate_centers,
           "duplicate centers: shapes " + std::to_string(lo + 1) + " and " +
               std::to_string(hi + 1)});
    }
  }

  if (strict && report.structurally_valid() && n >= 3 &&
      n <= kStrictCheckLimit)
    check_general_position(inst, report);
  return report;
}

void require_valid(const Instance& inst) {
  const auto report = validate_instance(inst, false);
  if (!report.structurally_valid())
    throw InstanceError("invalid instance: " + report.violations.front().message);
}

double rate_ratio(const Instance& inst) {
  if (inst.rates().empty()) return 1.0;
  auto [lo, hi] = std::minmax_element(inst.rates().begin(), inst.rates().end());
  return *hi / *lo;
}

namespace {

double squared_distance(const Instance& inst, Index a, Index b) {
  auto ca = inst.center(a);
  auto cb = inst.center(b);
  double s = 0.0;
  for (std::size_t k = 0; k < ca.size(); ++k) {
    const double diff = ca[k] - cb[k];
    s += diff * diff;
  }
  return s;
}

void require_pairs(const Instance& inst) {
  if (inst.size() < 2) throw InstanceError("spread needs at least two shapes");
}

}  // namespace

double exact_spread_serial(const Instance& inst) {
  require_pairs(inst);
  const std::size_t n = inst.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double s = squared_distance(inst, static_cast<Index>(i),
                                        static_cast<Index>(j));
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
  return std::sqrt(hi) / std::sqrt(lo);
}

double exact_spread(const Instance& inst) {
  require_pairs(inst);
  const std::int64_t n = static_cast<std::int64_t>(inst.size());
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
#pragma omp parallel for schedule(dynamic, 32) reduction(min : lo) reduction(max : hi)
  for (std::int64_t i = 0; i < n; ++i)
    for (std::int64_t j = i + 1; j < n; ++j) {
      const double s = squared_distance(inst, static_cast<Index>(i),
                                        static_cast<Index>(j));
      lo = std::min(lo, s);
      hi = std::max(hi, s);
    }
  return std::sqrt(hi) / std::sqrt(lo);
}

double approximate_spread(const Instance& inst) {
  require_pairs(inst);
  const std::size_t n = inst.size();
  const std::size_t d = static_cast<std::size_t>(inst.dimension());

  std::vector<double> lo(d, std::numeric_limits<double>::infinity());
  std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < n; ++i) {
    auto c = inst.center(static_cast<Index>(i));
    for (std::size_t k = 0; k < d; ++k) {
      lo[k] = std::min(lo[k], c[k]);
      hi[k] = std::max(hi[k], c[k]);
    }
  }
  double extent = 0.0;
  double diag_sq = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    extent = std::max(extent, hi[k] - lo[k]);
    diag_sq += (hi[k] - lo[k]) * (hi[k] - lo[k]);
  }
  if (extent == 0.0) return std::numeric_limits<double>::infinity();

  std::vector<std::uint64_t> fixed(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    auto c = inst.center(static_cast<Index>(i));
    for (std::size_t k = 0; k < d; ++k)
      fixed[i * d + k] = to_fixed((c[k] - lo[k]) / extent);
  }
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    return morton_less({fixed.data() + a * d, d}, {fixed.data() + b * d, d});
  });

  constexpr std::size_t kWindow = 16;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < n; ++k)
    for (std::size_t back = 1; back <= kWindow && back <= k; ++back)
      best = std::min(best, squared_distance(inst, order[k], order[k - back]));
  double dmin = std::sqrt(best);
  if (dmin == 0.0) return std::numeric_limits<double>::infinity();

  // Grid refinement: with cells of side dmin every closer pair lies in
  // neighbouring cells.
  if (d <= 3 && extent / dmin < 1e15) {
    struct KeyHash {
      std::size_t operator()(const std::array<std::int64_t, 3>& k) const {
        std::size_t h = 0;
        for (auto v : k) h = h * 0x9E3779B97F4A7C15ull + static_cast<std::size_t>(v);
        return h;
      }
    };
    std::unordered_map<std::array<std::int64_t, 3>, std::vector<Index>, KeyHash> grid;
    grid.reserve(n);
    auto key_of = [&](Index i) {
      std::array<std::int64_t, 3> key{0, 0, 0};
      auto c = inst.center(i);
      for (std::size_t k = 0; k < d; ++k)
        key[k] = static_cast<std::int64_t>(std::floor((c[k] - lo[k]) / dmin));
      return key;
    };
    for (std::size_t i = 0; i < n; ++i)
      grid[key_of(static_cast<Index>(i))].push_back(static_cast<Index>(i));
    for (std::size_t i = 0; i < n; ++i) {
      const auto key = key_of(static_cast<Index>(i));
      const int span = 3;
      int total = 1;
      for (std::size_t k = 0; k < d; ++k) total *= span;
      for (int code = 0; code < total; ++code) {
        auto nb = key;
        int rest = code;
        for (std::size_t k = 0; k < d; ++k) {
          nb[k] += rest % span - 1;
          rest /= span;
        }
        auto it = grid.find(nb);
        if (it == grid.end()) continue;
        for (Index j : it->second)
          if (j > i) best = std::min(best, squared_distance(inst, static_cast<Index>(i), j));
      }
    }
    dmin = std::sqrt(best);
  }
  return std::sqrt(diag_sq) / dmin;
}

InstanceStats compute_stats(const Instance& inst, bool exact_phi) {
  require_pairs(inst);
  InstanceStats s;
  s.delta = rate_ratio(inst);
  if (exact_phi) {
    if (inst.size() > kExactSpreadLimit)
      throw InstanceError("exact spread limited to " +
                          std::to_string(kExactSpreadLimit) + " shapes");
    s.phi = exact_spread(inst);
    s.phi_exact = true;
  } else {
    s.phi = approximate_spread(inst);
  }
  s.alpha = std::max(0.0, std::min(std::log2(s.phi), std::log2(s.delta)));
  return s;
}

}  // namespace growelim
