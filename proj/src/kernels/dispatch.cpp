#include <cassert>
#include <cstdlib>
#include <string_view>

#include "kernels_internal.hpp"

namespace lrange::kernels {

const KernelSet* avx2_kernels() {
#if defined(LRANGE_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &detail::avx2_kernel_set() : nullptr;
#else
  return nullptr;
#endif
}

const KernelSet* neon_kernels() {
#if defined(LRANGE_HAVE_NEON)
  // Advanced SIMD is mandatory on aarch64.
  return &detail::neon_kernel_set();
#else
  return nullptr;
#endif
}

namespace {

const KernelSet& select_kernels() {
  if (const char* forced = std::getenv("LRANGE_KERNELS")) {
    const std::string_view name(forced);
    if (name == "scalar") return scalar_kernels();
    if (name == "avx2" && avx2_kernels() != nullptr) return *avx2_kernels();
    if (name == "neon" && neon_kernels() != nullptr) return *neon_kernels();
  }
  if (const KernelSet* k = avx2_kernels()) return *k;
  if (const KernelSet* k = neon_kernels()) return *k;
  return scalar_kernels();
}

}  // namespace

const KernelSet& active_kernels() {
  static const KernelSet& selected = select_kernels();
  return selected;
}

Complex conj_dot(std::span<const Complex> a, std::span<const Complex> b) {
  assert(a.size() == b.size());
  return active_kernels().conj_dot(a.data(), b.data(), a.size());
}

void axpy(double w, std::span<const Complex> x, std::span<Complex> y) {
  assert(x.size() == y.size());
  active_kernels().axpy(w, x.data(), y.data(), x.size());
}

}  // namespace lrange::kernels
