#pragma once

// Data-parallel inner loops shared by map evaluation, slicing and gradients.
//
// Every kernel has a scalar reference implementation. SIMD variants (AVX2+FMA
// on x86-64, NEON on aarch64) are compiled into separate translation units and
// selected once at runtime. Setting LRANGE_KERNELS=scalar|avx2|neon in the
// environment forces a particular variant when it is available.

#include <complex>
#include <cstddef>
#include <span>

namespace lrange::kernels {

using Complex = std::complex<double>;

struct KernelSet {
  const char* name;
  /// sum_k a[k] * conj(b[k])
  Complex (*conj_dot)(const Complex* a, const Complex* b, std::size_t len);
  /// y[k] += w * x[k]
  void (*axpy)(double w, const Complex* x, Complex* y, std::size_t len);
};

const KernelSet& scalar_kernels();

/// nullptr when the variant was not compiled in or the CPU lacks the feature.
const KernelSet* avx2_kernels();
const KernelSet* neon_kernels();

/// The variant used by the library; resolved on first call.
const KernelSet& active_kernels();

Complex conj_dot(std::span<const Complex> a, std::span<const Complex> b);
void axpy(double w, std::span<const Complex> x, std::span<Complex> y);

}  // namespace lrange::kernels
