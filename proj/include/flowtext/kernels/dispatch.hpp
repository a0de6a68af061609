#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace flowtext::kernels {

enum class Backend { scalar, avx2 };

std::string backend_name(Backend b);

/// Kernel table. Every entry has a scalar reference implementation and,
/// where the build targets x86-64, an AVX2 variant. The two paths are
/// bit-exact for the elementwise kernels (identical operation order per
/// element); the reduction kernel may differ by accumulation order and is
/// equivalence-tested under tolerance.
struct Kernels {
  /// Projective warp of one output row with bilinear sampling and zero
  /// padding outside the source. `h` maps output pixel coordinates to
  /// source coordinates (row-major 3x3). Coordinates and tap blending are
  /// computed in double; taps are float32. Pixels whose homogeneous w
  /// collapses below 1e-12 produce zeros in all planes.
  void (*warp_bilinear_row)(const float* const src[4], int src_w, int src_h,
                            float* const dst[4], int dst_w, int y,
                            const double h[9]);

  /// Alpha-over: dst = src*a + dst*(1-a) per channel, clamped to [0,1].
  void (*composite_over)(float* dst_r, float* dst_g, float* dst_b,
                         const float* src_r, const float* src_g,
                         const float* src_b, const float* src_a,
                         std::size_t n);

  /// Zero alpha wherever ids != entity.
  void (*mask_alpha)(float* alpha, const std::uint16_t* ids,
                     std::uint16_t entity, std::size_t n);

  /// Sum of a float32 buffer in double precision.
  double (*sum_f32)(const float* p, std::size_t n);
};

/// Table for an explicit backend. Throws ContractError if the backend is
/// not compiled in or not supported by the running CPU.
const Kernels& table(Backend b);

bool backend_available(Backend b);
std::vector<Backend> available_backends();

/// Backend selected at startup: FLOWTEXT_KERNELS=scalar|avx2 overrides,
/// otherwise the widest supported instruction set wins.
Backend active_backend();
const Kernels& active();

}  // namespace flowtext::kernels
