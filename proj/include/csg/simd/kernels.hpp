#pragma once

// Inner-loop kernels behind the dense matrix code. Every kernel has a scalar
// reference implementation; vectorized variants (AVX2+FMA on x86-64, NEON on
// AArch64) are selected once at first use according to the running CPU.
//
// SEMIGROUP_SIMD=scalar|avx2|neon|auto forces a particular table. Requesting an
// unsupported variant falls back to scalar.

#include <cstddef>
#include <span>
#include <string_view>

namespace csg::simd {

struct KernelTable {
  std::string_view name;
  /// sum_i x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  /// y[i] += alpha * x[i]
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  /// Plane rotation: (x, y) <- (c x - s y, s x + c y)
  void (*rotate)(double* x, double* y, std::size_t n, double c, double s);
  /// x[i] *= alpha
  void (*scale)(double alpha, double* x, std::size_t n);
};

const KernelTable& scalar_kernels() noexcept;

/// nullptr when the variant is not compiled in or the CPU lacks the feature.
const KernelTable* avx2_kernels() noexcept;
const KernelTable* neon_kernels() noexcept;

/// The table used by the library, fixed for the lifetime of the process.
const KernelTable& active_kernels() noexcept;

inline double dot(std::span<const double> x, std::span<const double> y) {
  return active_kernels().dot(x.data(), y.data(), x.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  active_kernels().axpy(alpha, x.data(), y.data(), x.size());
}

inline void rotate(std::span<double> x, std::span<double> y, double c, double s) {
  active_kernels().rotate(x.data(), y.data(), x.size(), c, s);
}

inline void scale(double alpha, std::span<double> x) {
  active_kernels().scale(alpha, x.data(), x.size());
}

}  // namespace csg::simd
