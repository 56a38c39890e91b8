#include "csg/quantum.hpp"

#include <cmath>
#include <string>

#include "csg/error.hpp"
#include "csg/matlin.hpp"
#include "csg/simd/kernels.hpp"

namespace csg::quantum {
namespace {

// Stack [top; bottom].
RealMatrix stack(const RealMatrix& top, const RealMatrix& bottom) {
  RealMatrix out(top.rows() + bottom.rows(), top.cols());
  for (std::size_t i = 0; i < top.rows(); ++i)
    for (std::size_t j = 0; j < top.cols(); ++j) out(i, j) = top(i, j);
  for (std::size_t i = 0; i < bottom.rows(); ++i)
    for (std::size_t j = 0; j < bottom.cols(); ++j) out(top.rows() + i, j) = bottom(i, j);
  return out;
}

std::vector<double> concat_diagonals(const RealMatrix& a, const RealMatrix& b) {
  auto d = a.diagonal_entries();
  const auto e = b.diagonal_entries();
  d.insert(d.end(), e.begin(), e.end());
  return d;
}

// psi^* z for split-storage vectors.
std::complex<double> inner(const ComplexVector& psi, const ComplexVector& z) {
  const double re = simd::dot(psi.re, z.re) + simd::dot(psi.im, z.im);
  const double im = simd::dot(psi.re, z.im) - simd::dot(psi.im, z.re);
  return {re, im};
}

}  // namespace

QuantumSystem build_box_system(std::size_t elements_per_dim, const hilbert::Sampleable& psi0,
                               const hilbert::Sampleable& potential) {
  if (elements_per_dim < 2) {
    throw Error(ErrorKind::degenerate_grid, "the box needs at least 2 elements per dimension");
  }
  const auto g = grid::build_grid_1d({-1.0, 1.0}, elements_per_dim);
  const auto tg = grid::tensor_grid(g, g);
  auto mask = grid::interior_mask(tg);
  hilbert::ParticularProjector projector(tg, mask);

  const RealMatrix w = grid::assemble_weights(g);
  const RealMatrix wl = grid::assemble_local_weights(g);
  const RealMatrix d = grid::assemble_local_derivative(g);
  const RealMatrix id = RealMatrix::identity(g.num_nodes());

  const hilbert::GramForm gram = hilbert::gram_form(matlin::kron(w, w), mask);

  // Gradient level: x-derivatives on element-local x samples, y likewise.
  const RealMatrix adag =
      grid::restrict_columns(stack(matlin::kron(d, id), matlin::kron(id, d)), mask);
  const RealMatrix m1 =
      RealMatrix::diagonal(concat_diagonals(matlin::kron(wl, w), matlin::kron(w, wl)));
  hilbert::OperatorRep h = hilbert::particular_factorization(adag, hilbert::GramForm(m1), gram);

  if (potential) {
    const auto v = hilbert::decompose(potential, projector);
    for (std::size_t i = 0; i < v.size(); ++i) {
      (*h.script_a)(i, i) += gram.m()(i, i) * v[i];
      h.a_mh(i, i) += v[i];
    }
    h.factor_adag.reset();
  }

  ComplexVector psi(hilbert::decompose(psi0, projector));
  bool nonzero = false;
  for (double x : psi.re) nonzero = nonzero || x != 0.0;
  if (!nonzero) throw Error(ErrorKind::zero_initial_state, "psi0 vanishes on every interior node");

  return QuantumSystem{tg, std::move(mask), std::move(projector), std::move(h), std::move(psi)};
}

hilbert::Sampleable symmetric_bump() {
  return [](const grid::Point& p) { return (1.0 - p[0] * p[0]) * (1.0 - p[1] * p[1]); };
}

hilbert::Sampleable offset_bump(double cx, double cy) {
  return [cx, cy](const grid::Point& p) {
    const double dx = p[0] - cx;
    const double dy = p[1] - cy;
    return (1.0 - p[0] * p[0]) * (1.0 - p[1] * p[1]) * std::exp(-8.0 * (dx * dx + dy * dy));
  };
}

semigroup::StepRule reference_step_rule(const QuantumSystem& qs, double alpha, double d_exponent) {
  const auto ref = grid::reference_element_gl2();
  const double k_a = matlin::norm_inf(ref.d * ref.d);
  return semigroup::make_step_rule(qs.hamiltonian, alpha, qs.spacing(), d_exponent, k_a);
}

semigroup::DiscreteSemigroup schrodinger_semigroup(const QuantumSystem& qs, int n, double tau) {
  return semigroup::basic_element(qs.hamiltonian, tau, n, semigroup::Phase::imaginary);
}

Observable position_operator(const QuantumSystem& qs, Axis axis) {
  const auto pts = qs.projector.kept_nodes();
  std::vector<double> diag(pts.size());
  const std::size_t c = axis == Axis::x ? 0 : 1;
  for (std::size_t i = 0; i < pts.size(); ++i) diag[i] = pts[i][c];
  return Observable{RealMatrix::diagonal(diag), axis == Axis::x ? "x" : "y"};
}

Observable identity_observable(const QuantumSystem& qs) {
  return Observable{RealMatrix::identity(qs.mask.size()), "identity"};
}

ComplexMatrix heisenberg_evolve(const QuantumSystem& qs, const semigroup::DiscreteSemigroup& sg,
                                const Observable& obs, std::size_t k) {
  const std::size_t n = qs.mask.size();
  if (obs.matrix.rows() != n || obs.matrix.cols() != n || sg.size() != n) {
    throw Error(ErrorKind::shape_mismatch, "observable, semigroup and system sizes differ");
  }
  const ComplexMatrix u = semigroup::basic_power(sg, k);
  const auto& g = qs.gram();
  const ComplexMatrix u_dagger = g.inv_m() * (u.adjoint() * g.m());
  return u_dagger * (obs.matrix * u);
}

double state_weight(const hilbert::GramForm& gram, const ComplexVector& psi) {
  return inner(psi, gram.m() * psi).real();
}

std::complex<double> state_expectation(const hilbert::GramForm& gram, const Observable& obs,
                                       const ComplexVector& psi) {
  const double p = state_weight(gram, psi);
  if (!(p > 1e-30)) throw Error(ErrorKind::state_annihilated, "P_psi = " + std::to_string(p));
  return inner(psi, gram.m() * (obs.matrix * psi)) / p;
}

std::complex<double> expectation(const QuantumSystem& qs, const semigroup::DiscreteSemigroup& sg,
                                 const Observable& obs, std::size_t k) {
  return state_expectation(qs.gram(), obs, semigroup::evolve(sg, qs.psi0, k));
}

HeisenbergTrace heisenberg_trace(const QuantumSystem& qs, const semigroup::DiscreteSemigroup& sg,
                                 std::size_t k_max) {
  const Observable x = position_operator(qs, Axis::x);
  const Observable y = position_operator(qs, Axis::y);
  HeisenbergTrace trace;
  ComplexVector psi = qs.psi0;
  for (std::size_t k = 0; k <= k_max; ++k) {
    if (k > 0) psi = sg.step(psi);
    trace.times.push_back(static_cast<double>(k) * sg.tau());
    trace.norms.push_back(state_weight(qs.gram(), psi));
    trace.ex_x.push_back(state_expectation(qs.gram(), x, psi));
    trace.ex_y.push_back(state_expectation(qs.gram(), y, psi));
  }
  return trace;
}

HeisenbergTrace run_example(const ExampleConfig& config) {
  const auto qs =
      build_box_system(config.elements_per_dim, config.psi0 ? config.psi0 : symmetric_bump());
  const auto rule = reference_step_rule(qs, config.alpha, config.d_exponent);
  const auto sg = schrodinger_semigroup(qs, config.order, rule.tau);
  return heisenberg_trace(qs, sg, config.k_max);
}

}  // namespace csg::quantum
