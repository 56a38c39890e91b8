#include <cstdlib>
#include <string_view>

#include "kernels_internal.hpp"

namespace csg::simd {

const KernelTable* avx2_kernels() noexcept {
#if defined(CSG_HAVE_AVX2)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return avx2_table_unchecked();
#endif
  return nullptr;
}

const KernelTable* neon_kernels() noexcept {
#if defined(CSG_HAVE_NEON)
  return neon_table_unchecked();  // NEON is baseline on AArch64
#else
  return nullptr;
#endif
}

namespace {

const KernelTable& select_kernels() noexcept {
  const char* env = std::getenv("SEMIGROUP_SIMD");
  const std::string_view request = env ? env : "auto";
  if (request == "scalar") return scalar_kernels();
  if (request == "avx2") return avx2_kernels() ? *avx2_kernels() : scalar_kernels();
  if (request == "neon") return neon_kernels() ? *neon_kernels() : scalar_kernels();
  if (const auto* t = avx2_kernels()) return *t;
  if (const auto* t = neon_kernels()) return *t;
  return scalar_kernels();
}

}  // namespace

const KernelTable& active_kernels() noexcept {
  static const KernelTable& table = select_kernels();
  return table;
}

}  // namespace csg::simd
