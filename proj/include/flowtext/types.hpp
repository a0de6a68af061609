#pragma once

#include <Eigen/Core>
#include <array>
#include <compare>
#include <cstdint>

namespace flowtext {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Four corner points, clockwise from top-left in image coordinates.
using Quad = std::array<Vec2, 4>;

/// Integer pixel coordinate. Ordered row-major so point sets sort
/// deterministically.
struct PixelCoord {
  int x = 0;
  int y = 0;

  friend auto operator<=>(const PixelCoord& a, const PixelCoord& b) {
    if (auto c = a.y <=> b.y; c != 0) return c;
    return a.x <=> b.x;
  }
  friend bool operator==(const PixelCoord&, const PixelCoord&) = default;
};

/// Deterministic 64-bit mix (splitmix64 finalizer). Used to derive
/// independent RNG streams from one job seed.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace flowtext
