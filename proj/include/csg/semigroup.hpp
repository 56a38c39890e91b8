#pragma once

// Discrete semigroups generated by truncated exponentials of a discretized
// generator. The basic element is
//
//   real_negative:  g = sum_{k<=n} (-tau A)^k / k!   (semigroup generated by -A)
//   real_positive:  g = sum_{k<=n} ( tau A)^k / k!
//   imaginary:      G = sum_{k<=n} (-i tau A)^k / k!
//
// and the discrete semigroup is {g^k}. Norms are taken in the Gram-weighted
// space, i.e. ||g||_M = ||M^{1/2} g M^{-1/2}||_2.

#include <complex>
#include <cstddef>
#include <limits>
#include <span>
#include <string_view>
#include <vector>

#include "csg/hilbert.hpp"
#include "csg/matrix.hpp"

namespace csg::semigroup {

enum class Phase { real_negative, real_positive, imaginary };

std::string_view to_string(Phase p) noexcept;
Phase phase_from_string(std::string_view s);

/// tau = alpha h^d / K_A with K_A h^{-d} bounding ||M^{1/2} A M^{-1/2}||_inf.
struct StepRule {
  double alpha;
  double d_exponent;
  double k_a;
  double h;
  double tau;
};

/// ||M^{1/2} A M^{-1/2}||_inf * h^d: the smallest admissible K_A.
double k_a_bound(const hilbert::OperatorRep& rep, double h, double d_exponent);

/// Validates alpha in (0, 1], positivity, and K_A h^{-d} >= ||A_hat||_inf.
StepRule make_step_rule(const hilbert::OperatorRep& rep, double alpha, double h, double d_exponent,
                        double k_a);
/// Same, with K_A = k_a_bound(rep, h, d).
StepRule calibrated_step_rule(const hilbert::OperatorRep& rep, double alpha, double h,
                              double d_exponent);

class DiscreteSemigroup {
 public:
  DiscreteSemigroup(hilbert::OperatorRep rep, int order, double tau, Phase phase,
                    std::size_t k_max = std::numeric_limits<std::size_t>::max());

  const hilbert::OperatorRep& rep() const noexcept { return rep_; }
  int order() const noexcept { return order_; }
  double tau() const noexcept { return tau_; }
  Phase phase() const noexcept { return phase_; }
  std::size_t k_max() const noexcept { return k_max_; }
  const ComplexMatrix& basic() const noexcept { return basic_; }
  /// c_k with basic = sum_k c_k A^k.
  const std::vector<std::complex<double>>& coefficients() const noexcept { return coeffs_; }
  std::size_t size() const noexcept { return basic_.rows(); }

  ComplexVector step(const ComplexVector& u) const;

 private:
  hilbert::OperatorRep rep_;
  int order_;
  double tau_;
  Phase phase_;
  std::size_t k_max_;
  std::vector<std::complex<double>> coeffs_;
  ComplexMatrix basic_;
};

DiscreteSemigroup basic_element(const hilbert::OperatorRep& rep, double tau, int n, Phase phase,
                                std::size_t k_max = std::numeric_limits<std::size_t>::max());

/// ||M^{1/2} g M^{-1/2}||_2.
double contractivity(const DiscreteSemigroup& sg);

/// basic^k by repeated squaring.
ComplexMatrix basic_power(const DiscreteSemigroup& sg, std::size_t k);

/// ||M^{1/2} g^k M^{-1/2}||_2.
double power_norm(const DiscreteSemigroup& sg, std::size_t k);

/// basic^k u0 by k matrix-vector products.
ComplexVector evolve(const DiscreteSemigroup& sg, const ComplexVector& u0, std::size_t k);
ComplexVector evolve(const DiscreteSemigroup& sg, std::span<const double> u0, std::size_t k);

/// Closed Newton-Cotes weights on {0, tau, ..., n tau}.
std::vector<double> newton_cotes_weights(int n, double tau);

/// Duhamel step over n tau: g^n u0 + sum_j w_j g^{n-j} f(j tau), j = 0..n.
ComplexVector quadrature_corrected_step(const DiscreteSemigroup& sg, const ComplexVector& u0,
                                        std::span<const ComplexVector> f_samples);

/// M^{-1/2} P f(D) P^T M^{1/2} where (P, D) diagonalize M^{1/2} A M^{-1/2} and
/// f is the exact exponential matching `phase`.
ComplexMatrix exact_propagator(const hilbert::OperatorRep& rep, double t, Phase phase);

struct CauchyProfile {
  std::vector<double> gaps;  // ||u_{k+1} - u_k||_M, k = 0..k_max
  double contraction;        // measured ||g||_M
  bool envelope_holds;       // gaps[k] <= gaps[0] * v^k * (1 + 1e-10)
};

CauchyProfile cauchy_gap_profile(const DiscreteSemigroup& sg, const ComplexVector& u0,
                                 std::size_t k_max);

struct ConvergenceStudy {
  std::vector<double> taus;
  std::vector<double> errors;
  double fitted_order;  // NaN when undefined
  bool order_defined;
};

/// Errors against the exact propagator at time T for each tau (k = round(T/tau)).
ConvergenceStudy convergence_study(const hilbert::OperatorRep& rep, const ComplexVector& u0,
                                   double final_time, int n, std::span<const double> tau_list,
                                   Phase phase);

}  // namespace csg::semigroup
