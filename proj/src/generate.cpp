#include "growelim/generate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

namespace growelim {

std::string_view to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::uniform: return "uniform";
    case GeneratorKind::grid: return "grid";
    case GeneratorKind::cluster: return "cluster";
    case GeneratorKind::sortlb: return "sortlb";
  }
  return "?";
}

std::optional<GeneratorKind> parse_generator_kind(std::string_view text) {
  for (const GeneratorKind k : {GeneratorKind::uniform, GeneratorKind::grid,
                                GeneratorKind::cluster, GeneratorKind::sortlb})
    if (to_string(k) == text) return k;
  return std::nullopt;
}

namespace {

int dimension_of(const GeneratorParams& p) {
  switch (p.shape) {
    case ShapeKind::disk:
    case ShapeKind::square:
    case ShapeKind::rect:
      return 2;
    case ShapeKind::ball:
    case ShapeKind::box:
      if (p.dimension < 1) throw InstanceError("dimension must be positive");
      return p.dimension;
  }
  return 2;
}

std::vector<double> draw_rates(const GeneratorParams& p, std::size_t count,
                               std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double span = std::log(p.rate_max / p.rate_min);
  std::vector<double> rates(count);
  for (double& r : rates)
    r = std::clamp(p.rate_min * std::exp(span * unit(rng)), p.rate_min, p.rate_max);
  return rates;
}

Instance sortlb(const GeneratorParams& p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> rate(1.0, 100.0);
  std::set<double> seen;
  std::vector<double> top;
  top.reserve(p.n);
  while (top.size() < p.n) {
    // (1, 100]: reflect the half-open draw.
    const double v = 101.0 - rate(rng);
    if (v > 1.0 && seen.insert(v).second) top.push_back(v);
  }
  return sortlb_instance(top, p.shape);
}

}  // namespace

Instance generate(const GeneratorParams& p) {
  if (p.n == 0) throw InstanceError("generator needs n >= 1");
  if (!(p.rate_min > 0.0) || !(p.rate_max >= p.rate_min) || !std::isfinite(p.rate_max))
    throw InstanceError("rate range must satisfy 0 < rate-min <= rate-max");
  std::mt19937_64 rng(p.seed);
  if (p.kind == GeneratorKind::sortlb) return sortlb(p, rng);

  const int d = dimension_of(p);
  std::vector<double> centers(p.n * d);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  switch (p.kind) {
    case GeneratorKind::uniform:
      for (double& c : centers) c = unit(rng);
      break;
    case GeneratorKind::grid: {
      const auto side = static_cast<std::size_t>(
          std::ceil(std::pow(static_cast<double>(p.n), 1.0 / d) - 1e-9));
      const double cell = 1.0 / static_cast<double>(side);
      std::uniform_real_distribution<double> jitter(-0.25, 0.25);
      std::vector<std::size_t> slot(p.n);
      for (std::size_t i = 0; i < p.n; ++i) slot[i] = i;
      std::shuffle(slot.begin(), slot.end(), rng);
      for (std::size_t i = 0; i < p.n; ++i) {
        std::size_t rest = slot[i];
        for (int k = 0; k < d; ++k) {
          const auto coord = static_cast<double>(rest % side);
          rest /= side;
          centers[i * d + k] = (coord + 0.5 + jitter(rng)) * cell;
        }
      }
      break;
    }
    case GeneratorKind::cluster: {
      const std::size_t k = std::max<std::size_t>(1, p.clusters);
      std::vector<double> hubs(k * d);
      for (double& h : hubs) h = unit(rng);
      std::uniform_int_distribution<std::size_t> pick(0, k - 1);
      std::normal_distribution<double> offset(0.0, p.cluster_sigma);
      for (std::size_t i = 0; i < p.n; ++i) {
        const std::size_t c = pick(rng);
        for (int a = 0; a < d; ++a) centers[i * d + a] = hubs[c * d + a] + offset(rng);
      }
      break;
    }
    case GeneratorKind::sortlb:
      break;
  }
  const std::size_t per = has_axis_rates(p.shape) ? static_cast<std::size_t>(d) : 1;
  return Instance(p.shape, d, std::move(centers), draw_rates(p, p.n * per, rng));
}

Instance sortlb_instance(std::span<const double> top_rates, ShapeKind shape) {
  if (shape != ShapeKind::disk && shape != ShapeKind::square)
    throw InstanceError("sortlb supports disk and square shapes only");
  const std::size_t n = top_rates.size();
  if (n == 0) throw InstanceError("sortlb needs n >= 1");
  std::vector<double> centers, rates;
  for (std::size_t i = 1; i <= n; ++i) {
    centers.insert(centers.end(), {2.0 * static_cast<double>(i), 0.0});
    rates.push_back(1.0);
  }
  for (std::size_t i = 1; i <= n; ++i) {
    if (!(top_rates[i - 1] > 1.0)) throw InstanceError("sortlb top rates must exceed 1");
    centers.insert(centers.end(), {2.0 * static_cast<double>(i), 1.0});
    rates.push_back(top_rates[i - 1]);
  }
  return Instance(shape, 2, std::move(centers), std::move(rates));
}

RectGrowth rect_from_corners(std::array<double, 2> a, std::array<double, 2> b) {
  return {{(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0},
          {std::abs(b[0] - a[0]) / 2.0, std::abs(b[1] - a[1]) / 2.0}};
}

std::array<std::array<double, 2>, 2> rect_corners(const RectGrowth& r) {
  return {{{r.center[0] - r.rates[0], r.center[1] - r.rates[1]},
           {r.center[0] + r.rates[0], r.center[1] + r.rates[1]}}};
}

}  // namespace growelim
