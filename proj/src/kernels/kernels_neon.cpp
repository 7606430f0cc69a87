#include <arm_neon.h>

#include "kernels_internal.hpp"

namespace lrange::kernels::detail {
namespace {

Complex conj_dot_neon(const Complex* a, const Complex* b, std::size_t len) {
  const double* pa = reinterpret_cast<const double*>(a);
  const double* pb = reinterpret_cast<const double*>(b);
  float64x2_t re_acc = vdupq_n_f64(0.0);
  float64x2_t im_acc = vdupq_n_f64(0.0);
  for (std::size_t k = 0; k < len; ++k) {
    const float64x2_t va = vld1q_f64(pa + 2 * k);
    const float64x2_t vb = vld1q_f64(pb + 2 * k);
    re_acc = vfmaq_f64(re_acc, va, vb);
    im_acc = vfmaq_f64(im_acc, va, vextq_f64(vb, vb, 1));
  }
  const double re = vaddvq_f64(re_acc);
  const double im = vgetq_lane_f64(im_acc, 1) - vgetq_lane_f64(im_acc, 0);
  return {re, im};
}

void axpy_neon(double w, const Complex* x, Complex* y, std::size_t len) {
  const double* px = reinterpret_cast<const double*>(x);
  double* py = reinterpret_cast<double*>(y);
  const float64x2_t vw = vdupq_n_f64(w);
  for (std::size_t k = 0; k < len; ++k) {
    vst1q_f64(py + 2 * k, vfmaq_f64(vld1q_f64(py + 2 * k), vw, vld1q_f64(px + 2 * k)));
  }
}

}  // namespace

const KernelSet& neon_kernel_set() {
  static const KernelSet set{"neon", &conj_dot_neon, &axpy_neon};
  return set;
}

}  // namespace lrange::kernels::detail
