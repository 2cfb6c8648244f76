#pragma once

// Seeded instance generators. Every generator is deterministic per seed.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

#include "growelim/core.hpp"

namespace growelim {

enum class GeneratorKind { uniform, grid, cluster, sortlb };

std::string_view to_string(GeneratorKind kind);
std::optional<GeneratorKind> parse_generator_kind(std::string_view text);

struct GeneratorParams {
  GeneratorKind kind = GeneratorKind::uniform;
  std::size_t n = 100;
  std::uint64_t seed = 1;
  double rate_min = 1.0;  ///< rates are log-uniform in [rate_min, rate_max]
  double rate_max = 1.0;
  ShapeKind shape = ShapeKind::disk;
  int dimension = 2;          ///< used by ball and box only
  std::size_t clusters = 8;   ///< cluster generator only
  double cluster_sigma = 0.01;
};

/// uniform: centers i.i.d. in the unit cube.
/// grid:    perturbed lattice (jitter up to a quarter cell), priorities shuffled.
/// cluster: Gaussian blobs around uniform cluster centers.
/// sortlb:  n bottom shapes at (2i, 0) with rate 1 and n top shapes at
///          (2i, 1) with distinct rates drawn from (1, 100]; 2n shapes, disk or
///          square only; the rate range is ignored.
/// Throws InstanceError for n = 0, a bad rate range or an unsupported shape.
Instance generate(const GeneratorParams& params);

/// The sorting construction for explicit top-row rates (each > 1, distinct).
Instance sortlb_instance(std::span<const double> top_rates,
                         ShapeKind shape = ShapeKind::disk);

/// Rectangle given by two opposite corners after one unit of time, as
/// center plus per-axis half-extent rates.
struct RectGrowth {
  std::array<double, 2> center;
  std::array<double, 2> rates;
};
RectGrowth rect_from_corners(std::array<double, 2> a, std::array<double, 2> b);
/// Lower-left and upper-right corners after one unit of time.
std::array<std::array<double, 2>, 2> rect_corners(const RectGrowth& r);

}  // namespace growelim
