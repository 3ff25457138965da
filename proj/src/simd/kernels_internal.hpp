#pragma once

#include "avbench/simd/kernels.hpp"

namespace avbench::simd::detail {

const KernelTable& scalar_kernels();
#if defined(AVBENCH_HAVE_AVX2_KERNELS)
const KernelTable& avx2_kernels();
#endif

inline double combine_lanes(const double lanes[4]) {
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

}  // namespace avbench::simd::detail
