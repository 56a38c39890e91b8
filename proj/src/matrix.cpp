#include "csg/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "csg/error.hpp"
#include "csg/simd/kernels.hpp"

namespace csg {

std::size_t max_dimension() {
  if (const char* env = std::getenv("SEMIGROUP_MAX_DIM")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 4096;
}

namespace {

void check_dims(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) {
    throw Error(ErrorKind::shape_mismatch, "matrix dimensions must be positive");
  }
  const std::size_t cap = max_dimension();
  if (rows > cap || cols > cap) {
    throw Error(ErrorKind::dimension_overflow, std::to_string(rows) + "x" + std::to_string(cols) +
                                                   " exceeds the cap " + std::to_string(cap));
  }
}

void require_same_shape(std::size_t r0, std::size_t c0, std::size_t r1, std::size_t c1) {
  if (r0 != r1 || c0 != c1) {
    throw Error(ErrorKind::shape_mismatch, std::to_string(r0) + "x" + std::to_string(c0) + " vs " +
                                               std::to_string(r1) + "x" + std::to_string(c1));
  }
}

void require_inner(std::size_t lhs_cols, std::size_t rhs_rows) {
  if (lhs_cols != rhs_rows) {
    throw Error(ErrorKind::shape_mismatch, "inner dimensions " + std::to_string(lhs_cols) +
                                               " and " + std::to_string(rhs_rows) + " differ");
  }
}

// c += alpha * a * b, skipping zero entries of a.
void gemm_accumulate(double alpha, const RealMatrix& a, const RealMatrix& b, RealMatrix& c) {
  const auto& k = simd::active_kernels();
  const std::size_t n = b.cols();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double* out = c.row(i).data();
    const auto arow = a.row(i);
    for (std::size_t p = 0; p < a.cols(); ++p) {
      const double v = arow[p];
      if (v == 0.0) continue;
      k.axpy(alpha * v, b.row(p).data(), out, n);
    }
  }
}

}  // namespace

RealMatrix::RealMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
  check_dims(rows, cols);
  data_.assign(rows * cols, 0.0);
}

RealMatrix::RealMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  check_dims(rows, cols);
  if (data_.size() != rows * cols) {
    throw Error(ErrorKind::shape_mismatch, "entry count does not match rows*cols");
  }
}

RealMatrix RealMatrix::identity(std::size_t n) {
  RealMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

RealMatrix RealMatrix::diagonal(std::span<const double> diag) {
  RealMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

RealMatrix RealMatrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.begin()->size() : 0;
  std::vector<double> entries;
  entries.reserve(r * c);
  for (const auto& row : rows) {
    if (row.size() != c) throw Error(ErrorKind::shape_mismatch, "ragged row literal");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return RealMatrix(r, c, std::move(entries));
}

std::vector<double> RealMatrix::diagonal_entries() const {
  std::vector<double> d(std::min(rows_, cols_));
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = (*this)(i, i);
  return d;
}

RealMatrix RealMatrix::transposed() const {
  RealMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols) : re_(rows, cols), im_(rows, cols) {}

ComplexMatrix::ComplexMatrix(RealMatrix re, RealMatrix im) : re_(std::move(re)), im_(std::move(im)) {
  require_same_shape(re_.rows(), re_.cols(), im_.rows(), im_.cols());
}

ComplexMatrix::ComplexMatrix(const RealMatrix& re) : re_(re), im_(re.rows(), re.cols()) {}

ComplexMatrix ComplexMatrix::identity(std::size_t n) { return ComplexMatrix(RealMatrix::identity(n)); }

ComplexMatrix ComplexMatrix::adjoint() const {
  RealMatrix im = im_.transposed();
  simd::scale(-1.0, im.data());
  return ComplexMatrix(re_.transposed(), std::move(im));
}

RealMatrix operator+(const RealMatrix& a, const RealMatrix& b) {
  require_same_shape(a.rows(), a.cols(), b.rows(), b.cols());
  RealMatrix c = a;
  simd::axpy(1.0, b.data(), c.data());
  return c;
}

RealMatrix operator-(const RealMatrix& a, const RealMatrix& b) {
  require_same_shape(a.rows(), a.cols(), b.rows(), b.cols());
  RealMatrix c = a;
  simd::axpy(-1.0, b.data(), c.data());
  return c;
}

RealMatrix operator*(double s, const RealMatrix& a) {
  RealMatrix c = a;
  simd::scale(s, c.data());
  return c;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  return ComplexMatrix(a.real() + b.real(), a.imag() + b.imag());
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  return ComplexMatrix(a.real() - b.real(), a.imag() - b.imag());
}

ComplexMatrix operator*(std::complex<double> s, const ComplexMatrix& a) {
  RealMatrix re = s.real() * a.real();
  RealMatrix im = s.real() * a.imag();
  simd::axpy(-s.imag(), a.imag().data(), re.data());
  simd::axpy(s.imag(), a.real().data(), im.data());
  return ComplexMatrix(std::move(re), std::move(im));
}

RealMatrix operator*(const RealMatrix& a, const RealMatrix& b) {
  require_inner(a.cols(), b.rows());
  RealMatrix c(a.rows(), b.cols());
  gemm_accumulate(1.0, a, b, c);
  return c;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_inner(a.cols(), b.rows());
  RealMatrix re(a.rows(), b.cols());
  RealMatrix im(a.rows(), b.cols());
  gemm_accumulate(1.0, a.real(), b.real(), re);
  gemm_accumulate(-1.0, a.imag(), b.imag(), re);
  gemm_accumulate(1.0, a.real(), b.imag(), im);
  gemm_accumulate(1.0, a.imag(), b.real(), im);
  return ComplexMatrix(std::move(re), std::move(im));
}

ComplexMatrix operator*(const RealMatrix& a, const ComplexMatrix& b) {
  require_inner(a.cols(), b.rows());
  return ComplexMatrix(a * b.real(), a * b.imag());
}

ComplexMatrix operator*(const ComplexMatrix& a, const RealMatrix& b) {
  require_inner(a.cols(), b.rows());
  return ComplexMatrix(a.real() * b, a.imag() * b);
}

std::vector<double> operator*(const RealMatrix& a, std::span<const double> x) {
  require_inner(a.cols(), x.size());
  const auto& k = simd::active_kernels();
  std::vector<double> y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) y[i] = k.dot(a.row(i).data(), x.data(), x.size());
  return y;
}

ComplexVector operator*(const RealMatrix& a, const ComplexVector& x) {
  return ComplexVector(a * std::span<const double>(x.re), a * std::span<const double>(x.im));
}

ComplexVector operator*(const ComplexMatrix& a, const ComplexVector& x) {
  require_inner(a.cols(), x.size());
  const auto& k = simd::active_kernels();
  const std::size_t n = x.size();
  ComplexVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const double* ar = a.real().row(i).data();
    const double* ai = a.imag().row(i).data();
    y.re[i] = k.dot(ar, x.re.data(), n) - k.dot(ai, x.im.data(), n);
    y.im[i] = k.dot(ar, x.im.data(), n) + k.dot(ai, x.re.data(), n);
  }
  return y;
}

double frobenius(const RealMatrix& a) {
  const auto d = a.data();
  return std::sqrt(simd::dot(d, d));
}

double frobenius(const ComplexMatrix& a) {
  const auto r = a.real().data();
  const auto i = a.imag().data();
  return std::sqrt(simd::dot(r, r) + simd::dot(i, i));
}

double max_abs(const RealMatrix& a) {
  double m = 0.0;
  for (double v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace csg
