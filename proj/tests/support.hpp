#pragma once

// Seeded generators and brute-force oracles shared by the unit tests.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "csg/error.hpp"
#include "csg/matrix.hpp"

namespace csg::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo = -1.0, double hi = 1.0) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline std::vector<double> random_vector(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = uniform(rng);
  return v;
}

inline RealMatrix random_matrix(Rng& rng, std::size_t r, std::size_t c) {
  RealMatrix m(r, c);
  for (auto& x : m.data()) x = uniform(rng);
  return m;
}

inline RealMatrix random_symmetric(Rng& rng, std::size_t n) {
  RealMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m(i, j) = m(j, i) = uniform(rng);
  return m;
}

/// B^T B, formed by a plain triple loop.
inline RealMatrix random_psd(Rng& rng, std::size_t n) {
  const auto b = random_matrix(rng, n, n);
  RealMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += b(k, i) * b(k, j);
      m(i, j) = s;
    }
  return m;
}

inline RealMatrix naive_product(const RealMatrix& a, const RealMatrix& b) {
  RealMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

inline double max_diff(const RealMatrix& a, const RealMatrix& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

inline double max_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return std::max(max_diff(a.real(), b.real()), max_diff(a.imag(), b.imag()));
}

/// Largest singular value by power iteration on A^T A; independent of Jacobi.
inline double power_iteration_norm(const RealMatrix& a, int iters = 2000) {
  std::vector<double> v(a.cols(), 1.0);
  double sigma = 0.0;
  for (int it = 0; it < iters; ++it) {
    std::vector<double> av(a.rows(), 0.0), w(a.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) av[i] += a(i, j) * v[j];
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) w[j] += a(i, j) * av[i];
    double n = 0.0;
    for (double x : w) n += x * x;
    n = std::sqrt(n);
    if (n == 0.0) return 0.0;
    sigma = std::sqrt(n);
    for (std::size_t j = 0; j < w.size(); ++j) v[j] = w[j] / n;
  }
  return sigma;
}

/// Kind of the csg::Error thrown by f, or nullopt when nothing is thrown.
template <typename F>
std::optional<ErrorKind> error_kind(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return std::nullopt;
}

}  // namespace csg::testing

#define CHECK_ERROR_KIND(expr, expected_kind) \
  CHECK(::csg::testing::error_kind([&] { (void)(expr); }) == std::optional<::csg::ErrorKind>(expected_kind))
