#include "flowtext/kernels/dispatch.hpp"

#include <cstdlib>
#include <string>

#include "flowtext/errors.hpp"

namespace flowtext::kernels {

namespace scalar_impl {
void warp_bilinear_row(const float* const src[4], int src_w, int src_h,
                       float* const dst[4], int dst_w, int y,
                       const double h[9]);
void composite_over(float* dst_r, float* dst_g, float* dst_b,
                    const float* src_r, const float* src_g,
                    const float* src_b, const float* src_a, std::size_t n);
void mask_alpha(float* alpha, const std::uint16_t* ids, std::uint16_t entity,
                std::size_t n);
double sum_f32(const float* p, std::size_t n);
}  // namespace scalar_impl

#if FLOWTEXT_COMPILE_AVX2
namespace avx2_impl {
void warp_bilinear_row(const float* const src[4], int src_w, int src_h,
                       float* const dst[4], int dst_w, int y,
                       const double h[9]);
void composite_over(float* dst_r, float* dst_g, float* dst_b,
                    const float* src_r, const float* src_g,
                    const float* src_b, const float* src_a, std::size_t n);
void mask_alpha(float* alpha, const std::uint16_t* ids, std::uint16_t entity,
                std::size_t n);
double sum_f32(const float* p, std::size_t n);
}  // namespace avx2_impl
#endif

namespace {

constexpr Kernels kScalarTable{
    &scalar_impl::warp_bilinear_row,
    &scalar_impl::composite_over,
    &scalar_impl::mask_alpha,
    &scalar_impl::sum_f32,
};

#if FLOWTEXT_COMPILE_AVX2
constexpr Kernels kAvx2Table{
    &avx2_impl::warp_bilinear_row,
    &avx2_impl::composite_over,
    &avx2_impl::mask_alpha,
    &avx2_impl::sum_f32,
};

bool cpu_has_avx2() { return __builtin_cpu_supports("avx2") != 0; }
#endif

Backend select_backend() {
  if (const char* env = std::getenv("FLOWTEXT_KERNELS")) {
    const std::string want(env);
    if (want == "scalar") return Backend::scalar;
    if (want == "avx2") {
      if (!backend_available(Backend::avx2))
        throw ContractError("FLOWTEXT_KERNELS=avx2 but AVX2 is unavailable");
      return Backend::avx2;
    }
    throw ContractError("unknown FLOWTEXT_KERNELS value: " + want);
  }
  if (backend_available(Backend::avx2)) return Backend::avx2;
  return Backend::scalar;
}

}  // namespace

std::string backend_name(Backend b) {
  switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
  }
  return "?";
}

bool backend_available(Backend b) {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
#if FLOWTEXT_COMPILE_AVX2
      return cpu_has_avx2();
#else
      return false;
#endif
  }
  return false;
}

std::vector<Backend> available_backends() {
  std::vector<Backend> out{Backend::scalar};
  if (backend_available(Backend::avx2)) out.push_back(Backend::avx2);
  return out;
}

const Kernels& table(Backend b) {
  switch (b) {
    case Backend::scalar:
      return kScalarTable;
    case Backend::avx2:
#if FLOWTEXT_COMPILE_AVX2
      if (cpu_has_avx2()) return kAvx2Table;
#endif
      throw ContractError("AVX2 kernel backend unavailable on this machine");
  }
  throw ContractError("unknown kernel backend");
}

Backend active_backend() {
  static const Backend selected = select_backend();
  return selected;
}

const Kernels& active() { return table(active_backend()); }

}  // namespace flowtext::kernels
