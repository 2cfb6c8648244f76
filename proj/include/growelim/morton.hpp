#pragma once

// Fixed-point coordinates and Z-order (Morton) comparison for points in the
// unit cube. Used by the compressed quadtree builder and the spread estimate.

#include <cmath>
#include <cstdint>
#include <span>

namespace growelim {

/// Bits of fixed-point resolution per axis; also the deepest quadtree level.
inline constexpr int kFixedBits = 60;

/// Maps x in [0, 1] to an integer in [0, 2^kFixedBits).
inline std::uint64_t to_fixed(double x) {
  constexpr double scale = static_cast<double>(std::uint64_t{1} << kFixedBits);
  constexpr std::uint64_t top = (std::uint64_t{1} << kFixedBits) - 1;
  if (!(x > 0.0)) return 0;
  const double y = std::floor(x * scale);
  if (y >= scale) return top;
  return static_cast<std::uint64_t>(y);
}

inline bool less_msb(std::uint64_t a, std::uint64_t b) {
  return a < b && a < (a ^ b);
}

/// Z-order comparison of two fixed-point points of equal dimension: the axis
/// holding the most significant differing bit decides.
inline bool morton_less(std::span<const std::uint64_t> a,
                        std::span<const std::uint64_t> b) {
  std::size_t axis = 0;
  std::uint64_t best = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const std::uint64_t x = a[k] ^ b[k];
    if (less_msb(best, x)) {
      best = x;
      axis = k;
    }
  }
  return a[axis] < b[axis];
}

struct Fixed2 {
  std::uint64_t x = 0;
  std::uint64_t y = 0;
  friend bool operator==(const Fixed2&, const Fixed2&) = default;
};

inline bool morton_less(const Fixed2& a, const Fixed2& b) {
  const std::uint64_t dx = a.x ^ b.x;
  const std::uint64_t dy = a.y ^ b.y;
  if (less_msb(dx, dy)) return a.y < b.y;
  return a.x < b.x;
}

}  // namespace growelim
