#pragma once

#include "lrange/kernels.hpp"

namespace lrange::kernels::detail {

#if defined(LRANGE_HAVE_AVX2)
const KernelSet& avx2_kernel_set();
#endif
#if defined(LRANGE_HAVE_NEON)
const KernelSet& neon_kernel_set();
#endif

}  // namespace lrange::kernels::detail
