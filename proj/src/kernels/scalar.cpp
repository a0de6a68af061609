// Scalar reference kernels. These define the semantics the SIMD variants
// must reproduce: per-element operation order is part of the contract, so
// the elementwise kernels stay bit-identical across backends.

#include <cstddef>
#include <cstdint>

#include "flowtext/kernels/dispatch.hpp"
#include "kernels/detail.hpp"

namespace flowtext::kernels::scalar_impl {

void warp_bilinear_row(const float* const src[4], int src_w, int src_h,
                       float* const dst[4], int dst_w, int y,
                       const double h[9]) {
  for (int x = 0; x < dst_w; ++x) {
    detail::warp_pixel(src, src_w, src_h, dst, static_cast<std::size_t>(x), x,
                       y, h);
  }
}

void composite_over(float* dst_r, float* dst_g, float* dst_b,
                    const float* src_r, const float* src_g,
                    const float* src_b, const float* src_a, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    detail::composite_pixel(dst_r, dst_g, dst_b, src_r, src_g, src_b, src_a,
                            i);
  }
}

void mask_alpha(float* alpha, const std::uint16_t* ids, std::uint16_t entity,
                std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (ids[i] != entity) alpha[i] = 0.0f;
  }
}

double sum_f32(const float* p, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += static_cast<double>(p[i]);
  return acc;
}

}  // namespace flowtext::kernels::scalar_impl
