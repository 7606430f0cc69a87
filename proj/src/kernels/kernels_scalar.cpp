#include "lrange/kernels.hpp"

namespace lrange::kernels {
namespace {

Complex conj_dot_scalar(const Complex* a, const Complex* b, std::size_t len) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t k = 0; k < len; ++k) {
    const double ar = a[k].real(), ai = a[k].imag();
    const double br = b[k].real(), bi = b[k].imag();
    re += ar * br + ai * bi;
    im += ai * br - ar * bi;
  }
  return {re, im};
}

void axpy_scalar(double w, const Complex* x, Complex* y, std::size_t len) {
  for (std::size_t k = 0; k < len; ++k) y[k] += w * x[k];
}

}  // namespace

const KernelSet& scalar_kernels() {
  static const KernelSet set{"scalar", &conj_dot_scalar, &axpy_scalar};
  return set;
}

}  // namespace lrange::kernels
