#include "csg/matlin.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "csg/error.hpp"
#include "csg/simd/kernels.hpp"

namespace csg::matlin {
namespace {

constexpr double kJacobiRelTol = 1e-13;
constexpr int kMaxSweeps = 100;

void require_square(const RealMatrix& a, const char* what) {
  if (!a.is_square()) {
    throw Error(ErrorKind::shape_mismatch, std::string(what) + " requires a square matrix");
  }
}

double off_diagonal_frobenius(const RealMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

// One cyclic sweep over all (p, q) pairs. `vt` holds eigenvectors as rows so
// that both the matrix and the basis updates are contiguous row rotations.
void jacobi_sweep(RealMatrix& a, RealMatrix* vt) {
  const std::size_t n = a.rows();
  const auto& k = simd::active_kernels();
  for (std::size_t p = 0; p + 1 < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      const double apq = a(p, q);
      if (apq == 0.0) continue;
      const double app = a(p, p);
      const double aqq = a(q, q);
      if (std::abs(apq) < 1e-18 * (std::abs(app) + std::abs(aqq))) {
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        continue;
      }
      const double theta = (aqq - app) / (2.0 * apq);
      const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
      const double c = 1.0 / std::sqrt(1.0 + t * t);
      const double s = t * c;

      // Rows p, q of J^T A, then mirror into columns to keep exact symmetry.
      k.rotate(a.row(p).data(), a.row(q).data(), n, c, s);
      for (std::size_t r = 0; r < n; ++r) {
        if (r == p || r == q) continue;
        a(r, p) = a(p, r);
        a(r, q) = a(q, r);
      }
      a(p, p) = app - t * apq;
      a(q, q) = aqq + t * apq;
      a(p, q) = 0.0;
      a(q, p) = 0.0;

      if (vt) k.rotate(vt->row(p).data(), vt->row(q).data(), n, c, s);
    }
  }
}

}  // namespace

bool is_symmetric(const RealMatrix& a) {
  if (!a.is_square()) return false;
  const double tol = 1e-12 * (1.0 + max_abs(a));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j)
      if (std::abs(a(i, j) - a(j, i)) > tol) return false;
  return true;
}

RealMatrix kron(const RealMatrix& a, const RealMatrix& b) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  const std::size_t cap = max_dimension();
  if (rows > cap || cols > cap) {
    throw Error(ErrorKind::dimension_overflow,
                "kron result " + std::to_string(rows) + "x" + std::to_string(cols));
  }
  RealMatrix out(rows, cols);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const double aij = a(i, j);
      if (aij == 0.0) continue;
      for (std::size_t r = 0; r < b.rows(); ++r) {
        const auto brow = b.row(r);
        double* dst = &out(i * b.rows() + r, j * b.cols());
        for (std::size_t c = 0; c < b.cols(); ++c) dst[c] = aij * brow[c];
      }
    }
  }
  return out;
}

namespace {

// Diagonalizes `a` in place; eigenvectors accumulate as rows of *vt when given.
void jacobi_diagonalize(RealMatrix& a, RealMatrix* vt) {
  const double threshold = kJacobiRelTol * frobenius(a);
  int sweeps = 0;
  while (off_diagonal_frobenius(a) > threshold) {
    if (++sweeps > kMaxSweeps) {
      throw Error(ErrorKind::no_convergence, "Jacobi sweep cap reached");
    }
    jacobi_sweep(a, vt);
  }
  if (sweeps > 0 && off_diagonal_frobenius(a) > 0.0) jacobi_sweep(a, vt);
}

RealMatrix symmetric_copy(const RealMatrix& input) {
  require_square(input, "sym_eig");
  if (!is_symmetric(input)) throw Error(ErrorKind::not_symmetric, "sym_eig input");
  RealMatrix a = input;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i + 1; j < a.cols(); ++j) a(i, j) = a(j, i) = 0.5 * (a(i, j) + a(j, i));
  return a;
}

}  // namespace

SpectralDecomposition sym_eig(const RealMatrix& input) {
  RealMatrix a = symmetric_copy(input);
  const std::size_t n = a.rows();
  RealMatrix vt = RealMatrix::identity(n);
  jacobi_diagonalize(a, &vt);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });

  SpectralDecomposition out{std::vector<double>(n), RealMatrix(n, n)};
  for (std::size_t j = 0; j < n; ++j) {
    out.eigenvalues[j] = a(order[j], order[j]);
    const auto v = vt.row(order[j]);
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, j) = v[i];
  }
  return out;
}

std::vector<double> sym_eigenvalues(const RealMatrix& input) {
  RealMatrix a = symmetric_copy(input);
  jacobi_diagonalize(a, nullptr);
  auto ev = a.diagonal_entries();
  std::sort(ev.begin(), ev.end());
  return ev;
}

double hermitian_max_eigenvalue(const ComplexMatrix& h) {
  const std::size_t n = h.rows();
  if (!h.is_square()) throw Error(ErrorKind::shape_mismatch, "hermitian_max_eigenvalue");
  RealMatrix big(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double re = h.real()(i, j);
      const double im = h.imag()(i, j);
      big(i, j) = re;
      big(i + n, j + n) = re;
      big(i, j + n) = -im;
      big(i + n, j) = im;
    }
  }
  return sym_eigenvalues(big).back();
}

double norm_inf(const RealMatrix& a) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (double v : a.row(i)) s += std::abs(v);
    best = std::max(best, s);
  }
  return best;
}

double norm_inf(const ComplexMatrix& a) {
  double best = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += std::hypot(a.real()(i, j), a.imag()(i, j));
    best = std::max(best, s);
  }
  return best;
}

double norm_2(const RealMatrix& a) {
  if (is_symmetric(a)) {
    const auto ev = sym_eigenvalues(a);
    return std::max(std::abs(ev.front()), std::abs(ev.back()));
  }
  const RealMatrix ata = a.transposed() * a;
  const auto ev = sym_eigenvalues(ata);
  return std::sqrt(std::max(0.0, ev.back()));
}

double norm_2(const ComplexMatrix& a) {
  ComplexMatrix aha = a.adjoint() * a;
  // Force exact Hermitian structure before the embedding.
  const std::size_t n = aha.rows();
  for (std::size_t i = 0; i < n; ++i) {
    aha.imag()(i, i) = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      const double re = 0.5 * (aha.real()(i, j) + aha.real()(j, i));
      const double im = 0.5 * (aha.imag()(i, j) - aha.imag()(j, i));
      aha.real()(i, j) = aha.real()(j, i) = re;
      aha.imag()(i, j) = im;
      aha.imag()(j, i) = -im;
    }
  }
  return std::sqrt(std::max(0.0, hermitian_max_eigenvalue(aha)));
}

std::vector<GershgorinDisk> gershgorin_disks(const RealMatrix& a) {
  require_square(a, "gershgorin_disks");
  std::vector<GershgorinDisk> disks;
  disks.reserve(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double r = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (j != i) r += std::abs(a(i, j));
    disks.push_back({a(i, i), r});
  }
  return disks;
}

bool in_disk_union(double lambda, std::span<const GershgorinDisk> disks, double tol) {
  return std::any_of(disks.begin(), disks.end(), [&](const GershgorinDisk& d) {
    return std::abs(lambda - d.center) <= d.radius + tol;
  });
}

SpdRoots spd_sqrt(const RealMatrix& m) {
  const auto eig = sym_eig(m);
  const double lmax = eig.eigenvalues.back();
  const double lmin = eig.eigenvalues.front();
  if (!(lmax > 0.0) || lmin <= 1e-14 * lmax) {
    throw Error(ErrorKind::not_spd, "minimum eigenvalue " + std::to_string(lmin));
  }
  const std::size_t n = m.rows();
  // P f(D) P^T, built as (P f(D)) P^T.
  RealMatrix ps(n, n), pis(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double s = std::sqrt(eig.eigenvalues[j]);
      ps(i, j) = eig.eigenvectors(i, j) * s;
      pis(i, j) = eig.eigenvectors(i, j) / s;
    }
  }
  const RealMatrix pt = eig.eigenvectors.transposed();
  RealMatrix root = ps * pt;
  RealMatrix inv_root = pis * pt;
  for (RealMatrix* r : {&root, &inv_root})
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        (*r)(i, j) = (*r)(j, i) = 0.5 * ((*r)(i, j) + (*r)(j, i));
  return {std::move(root), std::move(inv_root)};
}

RealMatrix matrix_poly(std::span<const double> coeffs, const RealMatrix& a) {
  require_square(a, "matrix_poly");
  const std::size_t n = a.rows();
  if (coeffs.empty()) return RealMatrix(n, n);
  RealMatrix p = coeffs.back() * RealMatrix::identity(n);
  for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
    p = p * a;
    for (std::size_t i = 0; i < n; ++i) p(i, i) += coeffs[k];
  }
  return p;
}

ComplexMatrix matrix_poly(std::span<const double> coeffs, const ComplexMatrix& a) {
  if (!a.is_square()) throw Error(ErrorKind::shape_mismatch, "matrix_poly requires a square matrix");
  const std::size_t n = a.rows();
  if (coeffs.empty()) return ComplexMatrix(n, n);
  ComplexMatrix p(coeffs.back() * RealMatrix::identity(n));
  for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
    p = p * a;
    for (std::size_t i = 0; i < n; ++i) p.real()(i, i) += coeffs[k];
  }
  return p;
}

ComplexMatrix matrix_poly(std::span<const std::complex<double>> coeffs, const RealMatrix& a) {
  require_square(a, "matrix_poly");
  const std::size_t n = a.rows();
  if (coeffs.empty()) return ComplexMatrix(n, n);
  ComplexMatrix p(n, n);
  for (std::size_t i = 0; i < n; ++i) p.set(i, i, coeffs.back());
  for (std::size_t k = coeffs.size() - 1; k-- > 0;) {
    p = p * a;
    for (std::size_t i = 0; i < n; ++i) {
      p.real()(i, i) += coeffs[k].real();
      p.imag()(i, i) += coeffs[k].imag();
    }
  }
  return p;
}

double poly_eval(std::span<const double> coeffs, double x) {
  double acc = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * x + coeffs[k];
  return acc;
}

std::complex<double> poly_eval(std::span<const double> coeffs, std::complex<double> z) {
  std::complex<double> acc = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * z + coeffs[k];
  return acc;
}

std::vector<double> taylor_coefficients(int n) {
  std::vector<double> c(static_cast<std::size_t>(std::max(n, 0)) + 1);
  double f = 1.0;
  for (int k = 0; k <= n; ++k) {
    if (k > 0) f *= k;
    c[static_cast<std::size_t>(k)] = 1.0 / f;
  }
  return c;
}

double alternating_tail_bound(double first_omitted_term) {
  if (first_omitted_term < 0.0 || std::isnan(first_omitted_term)) {
    throw Error(ErrorKind::negative_input, "tail bound expects a magnitude");
  }
  return first_omitted_term;
}

}  // namespace csg::matlin
