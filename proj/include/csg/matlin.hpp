#pragma once

// Dense linear algebra used by the discretization: Kronecker products,
// symmetric eigendecomposition, induced norms, Gershgorin localization,
// SPD square roots and matrix polynomials.
//
// Eigen-based routines cover the symmetric (and, through a real embedding,
// Hermitian) case only. That is all the stability analysis needs.

#include <complex>
#include <span>
#include <vector>

#include "csg/matrix.hpp"

namespace csg::matlin {

struct SpectralDecomposition {
  std::vector<double> eigenvalues;  // ascending
  RealMatrix eigenvectors;          // column j pairs with eigenvalues[j]
};

struct GershgorinDisk {
  double center;
  double radius;
};

struct SpdRoots {
  RealMatrix sqrt;
  RealMatrix inv_sqrt;
};

/// Tolerance used by every "must be symmetric" precondition:
/// max|A - A^T| <= 1e-12 * (1 + max|A|).
bool is_symmetric(const RealMatrix& a);

/// Kronecker product. Throws dimension_overflow past max_dimension().
RealMatrix kron(const RealMatrix& a, const RealMatrix& b);

/// Cyclic Jacobi. Stops once the off-diagonal Frobenius norm drops below
/// 1e-13 * ||A||_F (one extra polishing sweep follows); 100 sweeps at most.
SpectralDecomposition sym_eig(const RealMatrix& a);

/// Same iteration without accumulating eigenvectors; ascending.
std::vector<double> sym_eigenvalues(const RealMatrix& a);

/// Largest eigenvalue of a Hermitian matrix, via the real symmetric embedding
/// [[Re, -Im], [Im, Re]].
double hermitian_max_eigenvalue(const ComplexMatrix& h);

double norm_inf(const RealMatrix& a);
double norm_inf(const ComplexMatrix& a);

/// Spectral norm. Symmetric real input uses max|lambda|; everything else
/// goes through the largest eigenvalue of A^* A.
double norm_2(const RealMatrix& a);
double norm_2(const ComplexMatrix& a);

std::vector<GershgorinDisk> gershgorin_disks(const RealMatrix& a);

/// True when `lambda` is within `tol` of at least one disk.
bool in_disk_union(double lambda, std::span<const GershgorinDisk> disks, double tol);

SpdRoots spd_sqrt(const RealMatrix& m);

/// sum_k coeffs[k] * a^k by Horner's rule.
RealMatrix matrix_poly(std::span<const double> coeffs, const RealMatrix& a);
ComplexMatrix matrix_poly(std::span<const double> coeffs, const ComplexMatrix& a);
/// Complex coefficients on a real argument; used for exp(-i t A) truncations.
ComplexMatrix matrix_poly(std::span<const std::complex<double>> coeffs, const RealMatrix& a);

/// Scalar polynomial value, same coefficient convention.
double poly_eval(std::span<const double> coeffs, double x);
std::complex<double> poly_eval(std::span<const double> coeffs, std::complex<double> z);

/// 1/k! for k = 0..n.
std::vector<double> taylor_coefficients(int n);

/// Bound on |sum_{n>=k} a_n| for an alternating series with nonincreasing
/// magnitudes: the magnitude of the first omitted term.
double alternating_tail_bound(double first_omitted_term);

}  // namespace csg::matlin
