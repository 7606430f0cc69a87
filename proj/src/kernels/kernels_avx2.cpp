// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include "kernels_internal.hpp"

namespace lrange::kernels::detail {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

Complex conj_dot_avx2(const Complex* a, const Complex* b, std::size_t len) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  const std::size_t doubles = 2 * len;

  // Lanes hold (re, im) pairs. re_acc collects ar*br and ai*bi; im_acc uses b
  // with re/im swapped, so odd lanes carry ai*br and even lanes ar*bi.
  __m256d re_acc0 = _mm256_setzero_pd(), re_acc1 = _mm256_setzero_pd();
  __m256d im_acc0 = _mm256_setzero_pd(), im_acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 8 <= doubles; k += 8) {
    const __m256d va0 = _mm256_loadu_pd(pa + k);
    const __m256d vb0 = _mm256_loadu_pd(pb + k);
    const __m256d va1 = _mm256_loadu_pd(pa + k + 4);
    const __m256d vb1 = _mm256_loadu_pd(pb + k + 4);
    re_acc0 = _mm256_fmadd_pd(va0, vb0, re_acc0);
    re_acc1 = _mm256_fmadd_pd(va1, vb1, re_acc1);
    im_acc0 = _mm256_fmadd_pd(va0, _mm256_permute_pd(vb0, 0b0101), im_acc0);
    im_acc1 = _mm256_fmadd_pd(va1, _mm256_permute_pd(vb1, 0b0101), im_acc1);
  }
  for (; k + 4 <= doubles; k += 4) {
    const __m256d va = _mm256_loadu_pd(pa + k);
    const __m256d vb = _mm256_loadu_pd(pb + k);
    re_acc0 = _mm256_fmadd_pd(va, vb, re_acc0);
    im_acc0 = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0b0101), im_acc0);
  }
  double re = hsum(_mm256_add_pd(re_acc0, re_acc1));
  const __m256d im_acc = _mm256_add_pd(im_acc0, im_acc1);
  const __m256d sign = _mm256_setr_pd(-1.0, 1.0, -1.0, 1.0);
  double im = hsum(_mm256_mul_pd(im_acc, sign));
  for (; k < doubles; k += 2) {
    re += pa[k] * pb[k] + pa[k + 1] * pb[k + 1];
    im += pa[k + 1] * pb[k] - pa[k] * pb[k + 1];
  }
  return {re, im};
}

void axpy_avx2(double w, const Complex* x, Complex* y, std::size_t len) {
  const double* px = reinterpret_cast<const double*>(x);
  double* py = reinterpret_cast<double*>(y);
  const std::size_t doubles = 2 * len;
  const __m256d vw = _mm256_set1_pd(w);
  std::size_t k = 0;
  for (; k + 4 <= doubles; k += 4) {
    const __m256d vy = _mm256_loadu_pd(py + k);
    _mm256_storeu_pd(py + k, _mm256_fmadd_pd(vw, _mm256_loadu_pd(px + k), vy));
  }
  for (; k < doubles; ++k) py[k] += w * px[k];
}

}  // namespace

const KernelSet& avx2_kernel_set() {
  static const KernelSet set{"avx2", &conj_dot_avx2, &axpy_avx2};
  return set;
}

}  // namespace lrange::kernels::detail
