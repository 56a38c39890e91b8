#pragma once

#include "csg/simd/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#define CSG_HAVE_AVX2 1
#endif

#if defined(__aarch64__) && defined(__ARM_NEON)
#define CSG_HAVE_NEON 1
#endif

namespace csg::simd {

#if defined(CSG_HAVE_AVX2)
const KernelTable* avx2_table_unchecked() noexcept;
#endif
#if defined(CSG_HAVE_NEON)
const KernelTable* neon_table_unchecked() noexcept;
#endif

}  // namespace csg::simd
