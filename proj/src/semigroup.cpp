#include "csg/semigroup.hpp"

#include <cmath>
#include <string>

#include "csg/error.hpp"
#include "csg/matlin.hpp"
#include "csg/simd/kernels.hpp"

namespace csg::semigroup {
namespace {

std::vector<std::complex<double>> phase_coefficients(int n, double tau, Phase phase) {
  const std::complex<double> z = phase == Phase::real_negative   ? std::complex<double>(-tau, 0.0)
                                 : phase == Phase::real_positive ? std::complex<double>(tau, 0.0)
                                                                 : std::complex<double>(0.0, -tau);
  const auto inv_fact = matlin::taylor_coefficients(n);
  std::vector<std::complex<double>> c(inv_fact.size());
  std::complex<double> zk = 1.0;
  for (std::size_t k = 0; k < c.size(); ++k) {
    c[k] = zk * inv_fact[k];
    zk *= z;
  }
  return c;
}

ComplexMatrix similarity(const hilbert::GramForm& g, const ComplexMatrix& x) {
  return g.sqrt_m() * (x * g.inv_sqrt_m());
}

ComplexMatrix power(ComplexMatrix base, std::size_t k) {
  ComplexMatrix result = ComplexMatrix::identity(base.rows());
  bool first = true;
  while (k > 0) {
    if (k & 1U) {
      result = first ? base : result * base;
      first = false;
    }
    k >>= 1U;
    if (k > 0) base = base * base;
  }
  return result;
}

ComplexVector difference(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector d = a;
  simd::axpy(-1.0, b.re, d.re);
  simd::axpy(-1.0, b.im, d.im);
  return d;
}

void add_scaled(ComplexVector& y, double alpha, const ComplexVector& x) {
  simd::axpy(alpha, x.re, y.re);
  simd::axpy(alpha, x.im, y.im);
}

}  // namespace

std::string_view to_string(Phase p) noexcept {
  switch (p) {
    case Phase::real_negative: return "real_negative";
    case Phase::real_positive: return "real_positive";
    case Phase::imaginary: return "imaginary";
  }
  return "unknown";
}

Phase phase_from_string(std::string_view s) {
  if (s == "real_negative") return Phase::real_negative;
  if (s == "real_positive") return Phase::real_positive;
  if (s == "imaginary") return Phase::imaginary;
  throw Error(ErrorKind::validation_error, "unknown phase '" + std::string(s) + "'");
}

double k_a_bound(const hilbert::OperatorRep& rep, double h, double d_exponent) {
  return matlin::norm_inf(rep.symmetrized()) * std::pow(h, d_exponent);
}

StepRule make_step_rule(const hilbert::OperatorRep& rep, double alpha, double h, double d_exponent,
                        double k_a) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw Error(ErrorKind::invalid_step_rule, "alpha must lie in (0, 1], got " + std::to_string(alpha));
  }
  if (!(h > 0.0) || !(d_exponent > 0.0) || !(k_a > 0.0)) {
    throw Error(ErrorKind::invalid_step_rule, "h, d and K_A must be positive");
  }
  const double measured = matlin::norm_inf(rep.symmetrized());
  const double bound = k_a * std::pow(h, -d_exponent);
  if (bound < measured * (1.0 - 1e-12)) {
    throw Error(ErrorKind::invalid_step_rule, "K_A h^-d = " + std::to_string(bound) +
                                                  " is below ||A_hat||_inf = " + std::to_string(measured));
  }
  return StepRule{alpha, d_exponent, k_a, h, alpha * std::pow(h, d_exponent) / k_a};
}

StepRule calibrated_step_rule(const hilbert::OperatorRep& rep, double alpha, double h,
                              double d_exponent) {
  return make_step_rule(rep, alpha, h, d_exponent, k_a_bound(rep, h, d_exponent));
}

DiscreteSemigroup::DiscreteSemigroup(hilbert::OperatorRep rep, int order, double tau, Phase phase,
                                     std::size_t k_max)
    : rep_(std::move(rep)),
      order_(order),
      tau_(tau),
      phase_(phase),
      k_max_(k_max),
      coeffs_(),
      basic_(1, 1) {
  if (order < 1) throw Error(ErrorKind::validation_error, "order n must be >= 1");
  if (!(tau > 0.0)) throw Error(ErrorKind::validation_error, "tau must be positive");
  coeffs_ = phase_coefficients(order, tau, phase);
  basic_ = matlin::matrix_poly(std::span<const std::complex<double>>(coeffs_), rep_.a_mh);
}

ComplexVector DiscreteSemigroup::step(const ComplexVector& u) const {
  if (u.size() != size()) {
    throw Error(ErrorKind::length_mismatch,
                "state has " + std::to_string(u.size()) + " entries, expected " + std::to_string(size()));
  }
  if (phase_ == Phase::imaginary) return basic_ * u;
  return basic_.real() * u;
}

DiscreteSemigroup basic_element(const hilbert::OperatorRep& rep, double tau, int n, Phase phase,
                                std::size_t k_max) {
  return DiscreteSemigroup(rep, n, tau, phase, k_max);
}

double contractivity(const DiscreteSemigroup& sg) {
  const auto s = similarity(sg.rep().gram, sg.basic());
  if (sg.phase() != Phase::imaginary) return matlin::norm_2(s.real());
  return matlin::norm_2(s);
}

ComplexMatrix basic_power(const DiscreteSemigroup& sg, std::size_t k) { return power(sg.basic(), k); }

double power_norm(const DiscreteSemigroup& sg, std::size_t k) {
  const auto s = power(similarity(sg.rep().gram, sg.basic()), k);
  if (sg.phase() != Phase::imaginary) return matlin::norm_2(s.real());
  return matlin::norm_2(s);
}

ComplexVector evolve(const DiscreteSemigroup& sg, const ComplexVector& u0, std::size_t k) {
  if (u0.size() != sg.size()) {
    throw Error(ErrorKind::length_mismatch, "initial state does not match the generator size");
  }
  if (k > sg.k_max()) {
    throw Error(ErrorKind::validation_error, "k exceeds the evolution horizon k_max");
  }
  ComplexVector u = u0;
  for (std::size_t j = 0; j < k; ++j) u = sg.step(u);
  return u;
}

ComplexVector evolve(const DiscreteSemigroup& sg, std::span<const double> u0, std::size_t k) {
  return evolve(sg, ComplexVector(std::vector<double>(u0.begin(), u0.end())), k);
}

std::vector<double> newton_cotes_weights(int n, double tau) {
  if (n < 1) throw Error(ErrorKind::validation_error, "Newton-Cotes degree must be >= 1");
  // Solve sum_j w_j j^p = n^{p+1}/(p+1), p = 0..n, by Gaussian elimination
  // with partial pivoting on the (n+1)x(n+1) Vandermonde system.
  const std::size_t m = static_cast<std::size_t>(n) + 1;
  std::vector<std::vector<double>> a(m, std::vector<double>(m + 1));
  for (std::size_t p = 0; p < m; ++p) {
    for (std::size_t j = 0; j < m; ++j) a[p][j] = std::pow(static_cast<double>(j), static_cast<double>(p));
    a[p][m] = std::pow(static_cast<double>(n), static_cast<double>(p + 1)) / static_cast<double>(p + 1);
  }
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < m; ++r)
      if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
    std::swap(a[col], a[piv]);
    for (std::size_t r = col + 1; r < m; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c <= m; ++c) a[r][c] -= f * a[col][c];
    }
  }
  std::vector<double> w(m);
  for (std::size_t r = m; r-- > 0;) {
    double s = a[r][m];
    for (std::size_t c = r + 1; c < m; ++c) s -= a[r][c] * w[c];
    w[r] = s / a[r][r];
  }
  for (double& x : w) x *= tau;
  return w;
}

ComplexVector quadrature_corrected_step(const DiscreteSemigroup& sg, const ComplexVector& u0,
                                        std::span<const ComplexVector> f_samples) {
  const std::size_t n = static_cast<std::size_t>(sg.order());
  if (f_samples.size() != n + 1) {
    throw Error(ErrorKind::sample_count_mismatch, "expected " + std::to_string(n + 1) +
                                                      " forcing samples, got " +
                                                      std::to_string(f_samples.size()));
  }
  for (const auto& f : f_samples) {
    if (f.size() != sg.size()) throw Error(ErrorKind::length_mismatch, "forcing sample length");
  }
  if (u0.size() != sg.size()) throw Error(ErrorKind::length_mismatch, "initial state length");
  const auto w = newton_cotes_weights(sg.order(), sg.tau());
  // Horner form: r_0 = u0 + w_0 f_0, r_j = g r_{j-1} + w_j f_j.
  ComplexVector r = u0;
  add_scaled(r, w[0], f_samples[0]);
  for (std::size_t j = 1; j <= n; ++j) {
    r = sg.step(r);
    add_scaled(r, w[j], f_samples[j]);
  }
  return r;
}

ComplexMatrix exact_propagator(const hilbert::OperatorRep& rep, double t, Phase phase) {
  const auto eig = matlin::sym_eig(rep.symmetrized());
  const std::size_t n = rep.size();
  RealMatrix pf_re(n, n), pf_im(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const double lambda = eig.eigenvalues[j];
    std::complex<double> f;
    switch (phase) {
      case Phase::real_negative: f = std::exp(-t * lambda); break;
      case Phase::real_positive: f = std::exp(t * lambda); break;
      case Phase::imaginary: f = std::exp(std::complex<double>(0.0, -t * lambda)); break;
    }
    for (std::size_t i = 0; i < n; ++i) {
      pf_re(i, j) = eig.eigenvectors(i, j) * f.real();
      pf_im(i, j) = eig.eigenvectors(i, j) * f.imag();
    }
  }
  const RealMatrix pt = eig.eigenvectors.transposed();
  const ComplexMatrix inner(pf_re * pt, pf_im * pt);
  return rep.gram.inv_sqrt_m() * (inner * rep.gram.sqrt_m());
}

CauchyProfile cauchy_gap_profile(const DiscreteSemigroup& sg, const ComplexVector& u0,
                                 std::size_t k_max) {
  const double v = contractivity(sg);
  if (v > 1.0 + 1e-12) {
    throw Error(ErrorKind::non_contractive_input, "||g||_M = " + std::to_string(v));
  }
  CauchyProfile out{{}, v, true};
  out.gaps.reserve(k_max + 1);
  ComplexVector u = u0;
  ComplexVector next = sg.step(u);
  for (std::size_t k = 0; k <= k_max; ++k) {
    out.gaps.push_back(sg.rep().gram.norm(difference(next, u)));
    u = std::move(next);
    if (k < k_max) next = sg.step(u);
  }
  double envelope = out.gaps.front();
  for (std::size_t k = 0; k < out.gaps.size(); ++k) {
    if (out.gaps[k] > envelope * (1.0 + 1e-10)) out.envelope_holds = false;
    envelope *= v;
  }
  return out;
}

ConvergenceStudy convergence_study(const hilbert::OperatorRep& rep, const ComplexVector& u0,
                                   double final_time, int n, std::span<const double> tau_list,
                                   Phase phase) {
  if (tau_list.empty()) throw Error(ErrorKind::empty_tau_list, "convergence study needs step sizes");
  const ComplexVector exact = exact_propagator(rep, final_time, phase) * u0;
  ConvergenceStudy out{{}, {}, std::numeric_limits<double>::quiet_NaN(), false};
  std::vector<std::pair<double, double>> samples;
  for (double tau : tau_list) {
    const auto steps = static_cast<std::size_t>(std::llround(final_time / tau));
    const DiscreteSemigroup sg(rep, n, tau, phase);
    const double err = rep.gram.norm(difference(exact, evolve(sg, u0, steps)));
    out.taus.push_back(tau);
    out.errors.push_back(err);
    samples.emplace_back(tau, err);
  }
  bool positive = samples.size() >= 3;
  for (const auto& s : samples) positive = positive && s.second > 0.0;
  if (positive) {
    out.fitted_order = hilbert::approximation_order_estimate(samples);
    out.order_defined = true;
  }
  return out;
}

}  // namespace csg::semigroup
