#include "csg/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "csg/error.hpp"
#include "csg/matlin.hpp"
#include "csg/simd/kernels.hpp"

namespace csg::hilbert {
namespace {

// Reference quadratic Lagrange basis on nodes (-1, 0, 1) and its derivatives.
std::array<double, 3> lagrange(double xi, int order) {
  switch (order) {
    case 0: return {0.5 * xi * (xi - 1.0), 1.0 - xi * xi, 0.5 * xi * (xi + 1.0)};
    case 1: return {xi - 0.5, -2.0 * xi, xi + 0.5};
    case 2: return {1.0, -2.0, 1.0};
    default: return {0.0, 0.0, 0.0};
  }
}

struct LocalBasis {
  std::array<std::size_t, 3> ids;
  std::array<double, 3> values;
};

LocalBasis local_basis(const grid::Grid1D& g, double x, int order) {
  const std::size_t e = g.element_of(x);
  const auto ids = g.element_nodes(e);
  const double h = g.spacing();
  double xi = (x - g.nodes()[ids[1]]) / h;
  // Snap points that sit on a node so the cardinal property holds bit-exactly.
  const double snapped = std::round(xi);
  if (std::abs(xi - snapped) <= 1e-12) xi = snapped;
  auto vals = lagrange(xi, order);
  const double scale = std::pow(h, -order);
  for (double& v : vals) v *= scale;
  return {ids, vals};
}

}  // namespace

NodalInterpolant::NodalInterpolant(std::vector<grid::Grid1D> axes, std::vector<double> nodal_values)
    : axes_(std::move(axes)), values_(std::move(nodal_values)) {
  std::size_t total = 1;
  for (const auto& a : axes_) total *= a.num_nodes();
  if (axes_.empty() || axes_.size() > 2 || total != values_.size()) {
    throw Error(ErrorKind::length_mismatch, "nodal values do not match the grid");
  }
}

double NodalInterpolant::derivative(const Point& p, std::array<int, 2> orders) const {
  if (orders[0] < 0 || orders[0] > 2 || orders[1] < 0 || orders[1] > 2) {
    throw Error(ErrorKind::validation_error, "derivative order must be in 0..2");
  }
  const auto bx = local_basis(axes_[0], p[0], orders[0]);
  if (axes_.size() == 1) {
    if (orders[1] != 0) return 0.0;
    double s = 0.0;
    for (std::size_t a = 0; a < 3; ++a) s += values_[bx.ids[a]] * bx.values[a];
    return s;
  }
  const auto by = local_basis(axes_[1], p[1], orders[1]);
  const std::size_t ny = axes_[1].num_nodes();
  double s = 0.0;
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b)
      s += values_[bx.ids[a] * ny + by.ids[b]] * bx.values[a] * by.values[b];
  return s;
}

ParticularProjector::ParticularProjector(const grid::Grid1D& g, grid::InteriorMask mask)
    : axes_{g}, mask_(std::move(mask)) {
  if (mask_.total_nodes != g.num_nodes()) {
    throw Error(ErrorKind::shape_mismatch, "mask does not match the 1D grid");
  }
}

ParticularProjector::ParticularProjector(const grid::TensorGrid2D& g, grid::InteriorMask mask)
    : axes_{g.gx(), g.gy()}, mask_(std::move(mask)) {
  if (mask_.total_nodes != g.num_nodes()) {
    throw Error(ErrorKind::shape_mismatch, "mask does not match the 2D grid");
  }
}

Point ParticularProjector::node(std::size_t k) const {
  if (axes_.size() == 1) return {axes_[0].nodes()[k], 0.0};
  const std::size_t ny = axes_[1].num_nodes();
  return {axes_[0].nodes()[k / ny], axes_[1].nodes()[k % ny]};
}

std::vector<Point> ParticularProjector::kept_nodes() const {
  std::vector<Point> pts;
  pts.reserve(mask_.size());
  for (std::size_t k : mask_.kept_indices) pts.push_back(node(k));
  return pts;
}

std::vector<double> decompose(const Sampleable& f, const ParticularProjector& p) {
  std::vector<double> c;
  c.reserve(p.num_coefficients());
  for (const auto& x : p.kept_nodes()) {
    const double v = f(x);
    if (!std::isfinite(v)) {
      throw Error(ErrorKind::non_finite_sample,
                  "f(" + std::to_string(x[0]) + ", " + std::to_string(x[1]) + ")");
    }
    c.push_back(v);
  }
  return c;
}

NodalInterpolant expand(std::span<const double> c, const ParticularProjector& p) {
  if (c.size() != p.num_coefficients()) {
    throw Error(ErrorKind::length_mismatch, "expected " + std::to_string(p.num_coefficients()) +
                                                " coefficients, got " + std::to_string(c.size()));
  }
  std::vector<double> values(p.mask().total_nodes, 0.0);
  for (std::size_t j = 0; j < c.size(); ++j) values[p.mask().kept_indices[j]] = c[j];
  return NodalInterpolant(p.axes(), std::move(values));
}

GramForm::GramForm(RealMatrix m) : m_(std::move(m)), sqrt_m_(1, 1), inv_sqrt_m_(1, 1), inv_m_(1, 1) {
  if (!matlin::is_symmetric(m_)) throw Error(ErrorKind::not_spd, "Gram form is not symmetric");
  auto roots = matlin::spd_sqrt(m_);
  sqrt_m_ = std::move(roots.sqrt);
  inv_sqrt_m_ = std::move(roots.inv_sqrt);
  inv_m_ = inv_sqrt_m_ * inv_sqrt_m_;
}

double GramForm::inner(std::span<const double> x, std::span<const double> y) const {
  const auto my = m_ * y;
  return simd::dot(x, my);
}

double GramForm::norm(std::span<const double> x) const { return std::sqrt(std::max(0.0, inner(x, x))); }

double GramForm::norm(const ComplexVector& u) const {
  return std::sqrt(std::max(0.0, inner(u.re, u.re) + inner(u.im, u.im)));
}

GramForm gram_form(const RealMatrix& weights, const grid::InteriorMask& mask) {
  if (!weights.is_square()) throw Error(ErrorKind::shape_mismatch, "weights must be square");
  for (std::size_t i = 0; i < weights.rows(); ++i) {
    for (std::size_t j = 0; j < weights.cols(); ++j) {
      if (i != j && weights(i, j) != 0.0) {
        throw Error(ErrorKind::not_spd, "quadrature weights must be diagonal");
      }
    }
    if (!(weights(i, i) > 0.0)) throw Error(ErrorKind::not_spd, "nonpositive quadrature weight");
  }
  return GramForm(grid::restrict_square(weights, mask));
}

RealMatrix particular_representation(const OperatorAction& b, const ParticularProjector& p_in,
                                     const ParticularProjector& p_out) {
  if (p_in.dimension() != p_out.dimension()) {
    throw Error(ErrorKind::shape_mismatch, "projectors live on grids of different dimension");
  }
  const std::size_t n_in = p_in.num_coefficients();
  RealMatrix out(p_out.num_coefficients(), n_in);
  std::vector<double> unit(n_in, 0.0);
  for (std::size_t j = 0; j < n_in; ++j) {
    unit[j] = 1.0;
    const auto column = decompose(b(expand(unit, p_in)), p_out);
    unit[j] = 0.0;
    for (std::size_t i = 0; i < column.size(); ++i) out(i, j) = column[i];
  }
  return out;
}

RealMatrix OperatorRep::symmetrized() const {
  RealMatrix s = script_a ? gram.inv_sqrt_m() * (*script_a * gram.inv_sqrt_m())
                          : gram.sqrt_m() * (a_mh * gram.inv_sqrt_m());
  if (script_a) {
    for (std::size_t i = 0; i < s.rows(); ++i)
      for (std::size_t j = i + 1; j < s.cols(); ++j) s(i, j) = s(j, i) = 0.5 * (s(i, j) + s(j, i));
  }
  return s;
}

OperatorRep operator_from_matrix(RealMatrix a_mh, GramForm gram) {
  if (a_mh.rows() != gram.size() || a_mh.cols() != gram.size()) {
    throw Error(ErrorKind::shape_mismatch, "operator and Gram form sizes differ");
  }
  return OperatorRep{std::move(a_mh), std::nullopt, std::move(gram), std::nullopt};
}

OperatorRep negated(const OperatorRep& rep) {
  OperatorRep out = rep;
  out.a_mh = -1.0 * rep.a_mh;
  if (out.script_a) out.script_a = -1.0 * *rep.script_a;
  out.factor_adag.reset();
  return out;
}

OperatorRep particular_factorization(const RealMatrix& adag, const GramForm& gram_x1,
                                     const GramForm& gram_x0) {
  if (adag.rows() != gram_x1.size() || adag.cols() != gram_x0.size()) {
    throw Error(ErrorKind::shape_mismatch, "factor does not map X0 coefficients into X1");
  }
  const RealMatrix adag_t = adag.transposed();
  RealMatrix script_a = adag_t * (gram_x1.m() * adag);
  for (std::size_t i = 0; i < script_a.rows(); ++i)
    for (std::size_t j = i + 1; j < script_a.cols(); ++j)
      script_a(i, j) = script_a(j, i) = 0.5 * (script_a(i, j) + script_a(j, i));
  RealMatrix a_mh = gram_x0.inv_m() * script_a;
  return OperatorRep{std::move(a_mh), std::move(script_a), gram_x0, adag};
}

SobolevChain::SobolevChain(std::vector<std::string> labels, std::vector<RealMatrix> factors,
                           std::vector<GramForm> grams)
    : labels_(std::move(labels)), factors_(std::move(factors)), grams_(std::move(grams)) {
  if (labels_.empty() || factors_.size() != labels_.size() || grams_.size() != labels_.size()) {
    throw Error(ErrorKind::shape_mismatch, "a chain needs one factor and one Gram form per level");
  }
  for (std::size_t k = 0; k < factors_.size(); ++k) {
    const std::size_t in = k == 0 ? grams_[0].size() : grams_[k - 1].size();
    if (factors_[k].cols() != in || factors_[k].rows() != grams_[k].size()) {
      throw Error(ErrorKind::shape_mismatch, "factor " + std::to_string(k) + " has wrong shape");
    }
  }
}

RealMatrix SobolevChain::composite(std::size_t k) const {
  RealMatrix b = factors_.at(0);
  for (std::size_t j = 1; j <= k; ++j) b = factors_.at(j) * b;
  return b;
}

double SobolevChain::inner_product(std::span<const double> x, std::span<const double> y) const {
  double s = 0.0;
  for (std::size_t k = 0; k < levels(); ++k) {
    const RealMatrix b = composite(k);
    s += grams_[k].inner(b * x, b * y);
  }
  return s;
}

OperatorRep SobolevChain::factorization() const {
  if (levels() != 2) throw Error(ErrorKind::shape_mismatch, "factorization needs a two-level chain");
  return particular_factorization(factors_[1], grams_[1], grams_[0]);
}

SobolevChain dirichlet_heat_chain(const grid::Grid1D& g) {
  const auto mask = grid::interior_mask(g);
  GramForm m0 = gram_form(grid::assemble_weights(g), mask);
  GramForm m1(grid::assemble_local_weights(g));
  RealMatrix adag = grid::restrict_columns(grid::assemble_local_derivative(g), mask);
  return SobolevChain({"L2", "H1-seminorm"}, {RealMatrix::identity(mask.size()), std::move(adag)},
                      {std::move(m0), std::move(m1)});
}

SpectralCheck is_accretive(const OperatorRep& rep) {
  const RealMatrix a_hat = rep.symmetrized();
  RealMatrix sym = a_hat;
  for (std::size_t i = 0; i < sym.rows(); ++i)
    for (std::size_t j = 0; j < sym.cols(); ++j) sym(i, j) = 0.5 * (a_hat(i, j) + a_hat(j, i));
  const double min = matlin::sym_eig(sym).eigenvalues.front();
  const double scale = matlin::norm_inf(a_hat);
  return {min >= -1e-12 * scale, min};
}

SpectralCheck spectrum_halfplane_check(const OperatorRep& rep, int sign) {
  if (sign != 1 && sign != -1) throw Error(ErrorKind::validation_error, "sign must be +1 or -1");
  const RealMatrix a_hat = rep.symmetrized();
  const auto ev = matlin::sym_eig(a_hat).eigenvalues;
  const double scale = matlin::norm_inf(a_hat);
  const double extreme = sign > 0 ? ev.front() : ev.back();
  return {sign * extreme >= -1e-12 * scale, extreme};
}

double approximation_order_estimate(std::span<const std::pair<double, double>> samples) {
  if (samples.size() < 3) throw Error(ErrorKind::insufficient_samples, "need at least 3 (h, error) pairs");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!(samples[i].second > 0.0)) throw Error(ErrorKind::nonpositive_error, "errors must be positive");
    if (!(samples[i].first > 0.0) || (i > 0 && !(samples[i].first < samples[i - 1].first))) {
      throw Error(ErrorKind::insufficient_samples, "h must be positive and strictly decreasing");
    }
  }
  double mx = 0.0, my = 0.0;
  for (const auto& [h, e] : samples) {
    mx += std::log(h);
    my += std::log(e);
  }
  const double n = static_cast<double>(samples.size());
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (const auto& [h, e] : samples) {
    const double dx = std::log(h) - mx;
    sxy += dx * (std::log(e) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

}  // namespace csg::hilbert
