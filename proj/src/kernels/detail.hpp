// Shared per-element scalar bodies. The scalar backend loops over these;
// the SIMD backends reuse them for row tails so both paths stay
// bit-identical on every element.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>

namespace flowtext::kernels::detail {

inline float sample_or_zero(const float* plane, int w, int h, int x, int y) {
  if (x < 0 || x >= w || y < 0 || y >= h) return 0.0f;
  return plane[static_cast<std::size_t>(y) * w + x];
}

// Coordinates are clamped to +/-1e9 before the int cast; anything that far
// out samples nothing but must not overflow the cast.
inline void warp_pixel(const float* const src[4], int src_w, int src_h,
                       float* const dst[4], std::size_t o, int x, int y,
                       const double h[9]) {
  const double xd = static_cast<double>(x);
  const double yd = static_cast<double>(y);
  const double sx = h[0] * xd + h[1] * yd + h[2];
  const double sy = h[3] * xd + h[4] * yd + h[5];
  const double sw = h[6] * xd + h[7] * yd + h[8];
  if (std::abs(sw) < 1e-12) {
    for (int c = 0; c < 4; ++c) dst[c][o] = 0.0f;
    return;
  }
  double u = sx / sw;
  double v = sy / sw;
  if (u > 1e9) u = 1e9;
  if (u < -1e9) u = -1e9;
  if (v > 1e9) v = 1e9;
  if (v < -1e9) v = -1e9;
  const double fx0 = std::floor(u);
  const double fy0 = std::floor(v);
  const int x0 = static_cast<int>(fx0);
  const int y0 = static_cast<int>(fy0);
  const double ax = u - fx0;
  const double ay = v - fy0;
  const double wtl = (1.0 - ax) * (1.0 - ay);
  const double wtr = ax * (1.0 - ay);
  const double wbl = (1.0 - ax) * ay;
  const double wbr = ax * ay;
  for (int c = 0; c < 4; ++c) {
    const double tl = sample_or_zero(src[c], src_w, src_h, x0, y0);
    const double tr = sample_or_zero(src[c], src_w, src_h, x0 + 1, y0);
    const double bl = sample_or_zero(src[c], src_w, src_h, x0, y0 + 1);
    const double br = sample_or_zero(src[c], src_w, src_h, x0 + 1, y0 + 1);
    const double acc = wtl * tl + wtr * tr + wbl * bl + wbr * br;
    dst[c][o] = static_cast<float>(acc);
  }
}

inline void composite_pixel(float* dst_r, float* dst_g, float* dst_b,
                            const float* src_r, const float* src_g,
                            const float* src_b, const float* src_a,
                            std::size_t i) {
  const float a = src_a[i];
  const float ia = 1.0f - a;
  dst_r[i] = std::min(1.0f, std::max(0.0f, src_r[i] * a + dst_r[i] * ia));
  dst_g[i] = std::min(1.0f, std::max(0.0f, src_g[i] * a + dst_g[i] * ia));
  dst_b[i] = std::min(1.0f, std::max(0.0f, src_b[i] * a + dst_b[i] * ia));
}

}  // namespace flowtext::kernels::detail
