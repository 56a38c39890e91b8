#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace csg {

/// Largest admissible row or column count. Defaults to 4096 and can be
/// overridden through the SEMIGROUP_MAX_DIM environment variable.
std::size_t max_dimension();

/// Dense row-major real matrix.
class RealMatrix {
 public:
  RealMatrix(std::size_t rows, std::size_t cols);
  RealMatrix(std::size_t rows, std::size_t cols, std::vector<double> entries);

  static RealMatrix identity(std::size_t n);
  static RealMatrix diagonal(std::span<const double> diag);
  /// Row-wise literal, mainly for tests and small constant matrices.
  static RealMatrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
  std::span<const double> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }

  std::span<double> data() noexcept { return data_; }
  std::span<const double> data() const noexcept { return data_; }

  std::vector<double> diagonal_entries() const;
  RealMatrix transposed() const;

  friend bool operator==(const RealMatrix&, const RealMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

/// Dense row-major complex matrix stored as split real and imaginary planes.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(RealMatrix re, RealMatrix im);
  explicit ComplexMatrix(const RealMatrix& re);

  static ComplexMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return re_.rows(); }
  std::size_t cols() const noexcept { return re_.cols(); }
  bool is_square() const noexcept { return re_.is_square(); }

  std::complex<double> operator()(std::size_t i, std::size_t j) const noexcept {
    return {re_(i, j), im_(i, j)};
  }
  void set(std::size_t i, std::size_t j, std::complex<double> v) noexcept {
    re_(i, j) = v.real();
    im_(i, j) = v.imag();
  }

  const RealMatrix& real() const noexcept { return re_; }
  const RealMatrix& imag() const noexcept { return im_; }
  RealMatrix& real() noexcept { return re_; }
  RealMatrix& imag() noexcept { return im_; }

  /// Conjugate transpose.
  ComplexMatrix adjoint() const;

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  RealMatrix re_;
  RealMatrix im_;
};

/// Complex vector in split storage.
struct ComplexVector {
  std::vector<double> re;
  std::vector<double> im;

  ComplexVector() = default;
  explicit ComplexVector(std::size_t n) : re(n, 0.0), im(n, 0.0) {}
  explicit ComplexVector(std::vector<double> real_part)
      : re(std::move(real_part)), im(re.size(), 0.0) {}
  ComplexVector(std::vector<double> real_part, std::vector<double> imag_part)
      : re(std::move(real_part)), im(std::move(imag_part)) {}

  std::size_t size() const noexcept { return re.size(); }
  std::complex<double> operator[](std::size_t i) const noexcept { return {re[i], im[i]}; }
};

// Elementwise arithmetic. Shapes must agree; violations throw shape_mismatch.
RealMatrix operator+(const RealMatrix& a, const RealMatrix& b);
RealMatrix operator-(const RealMatrix& a, const RealMatrix& b);
RealMatrix operator*(double s, const RealMatrix& a);
ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(std::complex<double> s, const ComplexMatrix& a);

// Products. Zero entries of the left operand are skipped, so block-sparse
// operands (diagonal Gram forms, element-local derivatives) multiply cheaply.
RealMatrix operator*(const RealMatrix& a, const RealMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const RealMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const RealMatrix& b);

std::vector<double> operator*(const RealMatrix& a, std::span<const double> x);
ComplexVector operator*(const RealMatrix& a, const ComplexVector& x);
ComplexVector operator*(const ComplexMatrix& a, const ComplexVector& x);

/// Frobenius norm.
double frobenius(const RealMatrix& a);
double frobenius(const ComplexMatrix& a);

/// max |a_ij|.
double max_abs(const RealMatrix& a);

}  // namespace csg
