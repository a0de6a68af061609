// AVX2 kernel variants. Elementwise kernels replicate the scalar
// reference's per-element operation order exactly (explicit mul/add
// intrinsics, no FMA), so results are bit-identical; only sum_f32 uses a
// different accumulation order. Row tails fall through to the shared
// scalar bodies.

#if defined(__AVX2__)

#include <immintrin.h>

#include <cstddef>
#include <cstdint>

#include "flowtext/kernels/dispatch.hpp"
#include "kernels/detail.hpp"

namespace flowtext::kernels::avx2_impl {

namespace {

inline __m256d mad4(__m256d acc, __m256d w, __m256d t) {
  return _mm256_add_pd(acc, _mm256_mul_pd(w, t));
}

inline __m256d gather_tap_pd(const float* plane, __m128i idx, __m128i valid) {
  const __m128i safe_idx = _mm_and_si128(idx, valid);
  const __m128 taps = _mm_mask_i32gather_ps(
      _mm_setzero_ps(), plane, safe_idx, _mm_castsi128_ps(valid), 4);
  return _mm256_cvtps_pd(taps);
}

}  // namespace

void warp_bilinear_row(const float* const src[4], int src_w, int src_h,
                       float* const dst[4], int dst_w, int y,
                       const double h[9]) {
  const __m256d vy = _mm256_set1_pd(static_cast<double>(y));
  const __m256d h0 = _mm256_set1_pd(h[0]), h1 = _mm256_set1_pd(h[1]),
                h2 = _mm256_set1_pd(h[2]), h3 = _mm256_set1_pd(h[3]),
                h4 = _mm256_set1_pd(h[4]), h5 = _mm256_set1_pd(h[5]),
                h6 = _mm256_set1_pd(h[6]), h7 = _mm256_set1_pd(h[7]),
                h8 = _mm256_set1_pd(h[8]);
  const __m256d lane = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d eps = _mm256_set1_pd(1e-12);
  const __m256d clamp_hi = _mm256_set1_pd(1e9);
  const __m256d clamp_lo = _mm256_set1_pd(-1e9);
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  const __m128i vzero = _mm_setzero_si128();
  const __m128i vone = _mm_set1_epi32(1);
  const __m128i vw = _mm_set1_epi32(src_w);
  const __m128i vh = _mm_set1_epi32(src_h);

  int x = 0;
  for (; x + 4 <= dst_w; x += 4) {
    const __m256d vx =
        _mm256_add_pd(_mm256_set1_pd(static_cast<double>(x)), lane);
    const __m256d sx =
        _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(h0, vx), _mm256_mul_pd(h1, vy)), h2);
    const __m256d sy =
        _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(h3, vx), _mm256_mul_pd(h4, vy)), h5);
    const __m256d sw =
        _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(h6, vx), _mm256_mul_pd(h7, vy)), h8);

    const __m256d abs_sw = _mm256_andnot_pd(sign_mask, sw);
    const __m256d guard = _mm256_cmp_pd(abs_sw, eps, _CMP_LT_OQ);
    const __m256d sw_safe = _mm256_blendv_pd(sw, one, guard);

    __m256d u = _mm256_div_pd(sx, sw_safe);
    __m256d v = _mm256_div_pd(sy, sw_safe);
    u = _mm256_max_pd(_mm256_min_pd(u, clamp_hi), clamp_lo);
    v = _mm256_max_pd(_mm256_min_pd(v, clamp_hi), clamp_lo);

    const __m256d fu = _mm256_floor_pd(u);
    const __m256d fv = _mm256_floor_pd(v);
    const __m128i x0 = _mm256_cvttpd_epi32(fu);
    const __m128i y0 = _mm256_cvttpd_epi32(fv);
    const __m128i x1 = _mm_add_epi32(x0, vone);
    const __m128i y1 = _mm_add_epi32(y0, vone);

    const __m256d ax = _mm256_sub_pd(u, fu);
    const __m256d ay = _mm256_sub_pd(v, fv);
    const __m256d iax = _mm256_sub_pd(one, ax);
    const __m256d iay = _mm256_sub_pd(one, ay);
    const __m256d wtl = _mm256_mul_pd(iax, iay);
    const __m256d wtr = _mm256_mul_pd(ax, iay);
    const __m256d wbl = _mm256_mul_pd(iax, ay);
    const __m256d wbr = _mm256_mul_pd(ax, ay);

    // in-range tests: 0 <= c < extent, as full-lane masks
    const __m128i vx0ok = _mm_and_si128(_mm_cmpgt_epi32(x0, _mm_sub_epi32(vzero, vone)),
                                        _mm_cmpgt_epi32(vw, x0));
    const __m128i vx1ok = _mm_and_si128(_mm_cmpgt_epi32(x1, _mm_sub_epi32(vzero, vone)),
                                        _mm_cmpgt_epi32(vw, x1));
    const __m128i vy0ok = _mm_and_si128(_mm_cmpgt_epi32(y0, _mm_sub_epi32(vzero, vone)),
                                        _mm_cmpgt_epi32(vh, y0));
    const __m128i vy1ok = _mm_and_si128(_mm_cmpgt_epi32(y1, _mm_sub_epi32(vzero, vone)),
                                        _mm_cmpgt_epi32(vh, y1));

    const __m128i row0 = _mm_mullo_epi32(y0, vw);
    const __m128i row1 = _mm_mullo_epi32(y1, vw);
    const __m128i itl = _mm_add_epi32(row0, x0);
    const __m128i itr = _mm_add_epi32(row0, x1);
    const __m128i ibl = _mm_add_epi32(row1, x0);
    const __m128i ibr = _mm_add_epi32(row1, x1);
    const __m128i mtl = _mm_and_si128(vx0ok, vy0ok);
    const __m128i mtr = _mm_and_si128(vx1ok, vy0ok);
    const __m128i mbl = _mm_and_si128(vx0ok, vy1ok);
    const __m128i mbr = _mm_and_si128(vx1ok, vy1ok);

    const int guard_bits = _mm256_movemask_pd(guard);

    for (int c = 0; c < 4; ++c) {
      const __m256d tl = gather_tap_pd(src[c], itl, mtl);
      const __m256d tr = gather_tap_pd(src[c], itr, mtr);
      const __m256d bl = gather_tap_pd(src[c], ibl, mbl);
      const __m256d br = gather_tap_pd(src[c], ibr, mbr);
      __m256d acc = _mm256_mul_pd(wtl, tl);
      acc = mad4(acc, wtr, tr);
      acc = mad4(acc, wbl, bl);
      acc = mad4(acc, wbr, br);
      _mm_storeu_ps(dst[c] + x, _mm256_cvtpd_ps(acc));
    }
    if (guard_bits) {
      for (int l = 0; l < 4; ++l) {
        if (guard_bits & (1 << l)) {
          for (int c = 0; c < 4; ++c) dst[c][x + l] = 0.0f;
        }
      }
    }
  }
  for (; x < dst_w; ++x) {
    detail::warp_pixel(src, src_w, src_h, dst, static_cast<std::size_t>(x), x,
                       y, h);
  }
}

void composite_over(float* dst_r, float* dst_g, float* dst_b,
                    const float* src_r, const float* src_g,
                    const float* src_b, const float* src_a, std::size_t n) {
  const __m256 ones = _mm256_set1_ps(1.0f);
  const __m256 zeros = _mm256_setzero_ps();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256 a = _mm256_loadu_ps(src_a + i);
    const __m256 ia = _mm256_sub_ps(ones, a);
    const __m256 r = _mm256_add_ps(_mm256_mul_ps(_mm256_loadu_ps(src_r + i), a),
                                   _mm256_mul_ps(_mm256_loadu_ps(dst_r + i), ia));
    const __m256 g = _mm256_add_ps(_mm256_mul_ps(_mm256_loadu_ps(src_g + i), a),
                                   _mm256_mul_ps(_mm256_loadu_ps(dst_g + i), ia));
    const __m256 bch = _mm256_add_ps(_mm256_mul_ps(_mm256_loadu_ps(src_b + i), a),
                                     _mm256_mul_ps(_mm256_loadu_ps(dst_b + i), ia));
    _mm256_storeu_ps(dst_r + i, _mm256_min_ps(_mm256_max_ps(r, zeros), ones));
    _mm256_storeu_ps(dst_g + i, _mm256_min_ps(_mm256_max_ps(g, zeros), ones));
    _mm256_storeu_ps(dst_b + i, _mm256_min_ps(_mm256_max_ps(bch, zeros), ones));
  }
  for (; i < n; ++i) {
    detail::composite_pixel(dst_r, dst_g, dst_b, src_r, src_g, src_b, src_a,
                            i);
  }
}

void mask_alpha(float* alpha, const std::uint16_t* ids, std::uint16_t entity,
                std::size_t n) {
  const __m256i ventity = _mm256_set1_epi32(static_cast<int>(entity));
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m128i raw =
        _mm_loadu_si128(reinterpret_cast<const __m128i*>(ids + i));
    const __m256i ids32 = _mm256_cvtepu16_epi32(raw);
    const __m256i keep = _mm256_cmpeq_epi32(ids32, ventity);
    const __m256 a = _mm256_loadu_ps(alpha + i);
    _mm256_storeu_ps(alpha + i,
                     _mm256_and_ps(a, _mm256_castsi256_ps(keep)));
  }
  for (; i < n; ++i) {
    if (ids[i] != entity) alpha[i] = 0.0f;
  }
}

double sum_f32(const float* p, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256 v = _mm256_loadu_ps(p + i);
    acc0 = _mm256_add_pd(acc0, _mm256_cvtps_pd(_mm256_castps256_ps128(v)));
    acc1 = _mm256_add_pd(acc1, _mm256_cvtps_pd(_mm256_extractf128_ps(v, 1)));
  }
  const __m256d acc = _mm256_add_pd(acc0, acc1);
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double total = ((lanes[0] + lanes[1]) + lanes[2]) + lanes[3];
  for (; i < n; ++i) total += static_cast<double>(p[i]);
  return total;
}

}  // namespace flowtext::kernels::avx2_impl

#endif  // __AVX2__
