#pragma once

// Discrete Hilbert-space machinery on nodal (cardinal Lagrange) bases:
// decomposition/expansion factors, Gram forms, Sobolev chains and the
// particular factorization A_mh = M0^{-1} (adag^T M1 adag).

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "csg/grid.hpp"
#include "csg/matrix.hpp"

namespace csg::hilbert {

using grid::Point;
using Sampleable = std::function<double(const Point&)>;

/// Piecewise-quadratic nodal interpolant on a 1D or tensor 2D grid. In 1D the
/// second coordinate of a Point is ignored.
class NodalInterpolant {
 public:
  NodalInterpolant(std::vector<grid::Grid1D> axes, std::vector<double> nodal_values);

  double operator()(const Point& p) const { return derivative(p, {0, 0}); }
  /// Partial derivative of orders {along x, along y}, each 0..2, evaluated on
  /// the element owning p.
  double derivative(const Point& p, std::array<int, 2> orders) const;

  const std::vector<double>& nodal_values() const noexcept { return values_; }

 private:
  std::vector<grid::Grid1D> axes_;
  std::vector<double> values_;
};

/// Nodal projector: p^dagger samples at kept nodes, p expands to the
/// interpolant with zeros at eliminated nodes.
class ParticularProjector {
 public:
  ParticularProjector(const grid::Grid1D& g, grid::InteriorMask mask);
  ParticularProjector(const grid::TensorGrid2D& g, grid::InteriorMask mask);

  std::size_t dimension() const noexcept { return axes_.size(); }
  std::size_t num_coefficients() const noexcept { return mask_.size(); }
  const grid::InteriorMask& mask() const noexcept { return mask_; }
  const std::vector<grid::Grid1D>& axes() const noexcept { return axes_; }
  Point node(std::size_t global_index) const;
  /// Coordinates of the kept nodes, in coefficient order.
  std::vector<Point> kept_nodes() const;

 private:
  std::vector<grid::Grid1D> axes_;
  grid::InteriorMask mask_;
};

std::vector<double> decompose(const Sampleable& f, const ParticularProjector& p);
NodalInterpolant expand(std::span<const double> c, const ParticularProjector& p);

/// SPD inner-product matrix form with cached square roots.
class GramForm {
 public:
  /// Validates SPD-ness and caches M^{1/2}, M^{-1/2}, M^{-1}.
  explicit GramForm(RealMatrix m);

  const RealMatrix& m() const noexcept { return m_; }
  const RealMatrix& sqrt_m() const noexcept { return sqrt_m_; }
  const RealMatrix& inv_sqrt_m() const noexcept { return inv_sqrt_m_; }
  const RealMatrix& inv_m() const noexcept { return inv_m_; }
  std::size_t size() const noexcept { return m_.rows(); }

  double inner(std::span<const double> x, std::span<const double> y) const;
  double norm(std::span<const double> x) const;
  /// sqrt(u^* M u).
  double norm(const ComplexVector& u) const;

 private:
  RealMatrix m_;
  RealMatrix sqrt_m_;
  RealMatrix inv_sqrt_m_;
  RealMatrix inv_m_;
};

GramForm gram_form(const RealMatrix& weights, const grid::InteriorMask& mask);

/// B_mh = q^dagger B p: column j is the sampled image of the j-th cardinal function.
using OperatorAction = std::function<Sampleable(const NodalInterpolant&)>;
RealMatrix particular_representation(const OperatorAction& b, const ParticularProjector& p_in,
                                     const ParticularProjector& p_out);

struct OperatorRep {
  RealMatrix a_mh;
  std::optional<RealMatrix> script_a;
  GramForm gram;
  std::optional<RealMatrix> factor_adag;

  /// M^{1/2} A M^{-1/2}; exactly symmetrized when built from a factorization.
  RealMatrix symmetrized() const;
  std::size_t size() const noexcept { return a_mh.rows(); }
};

OperatorRep operator_from_matrix(RealMatrix a_mh, GramForm gram);
OperatorRep negated(const OperatorRep& rep);

OperatorRep particular_factorization(const RealMatrix& adag, const GramForm& gram_x1,
                                     const GramForm& gram_x0);

/// Spaces X_0..X_n linked by factors b_k (b_0 is the identity on X_0).
class SobolevChain {
 public:
  SobolevChain(std::vector<std::string> labels, std::vector<RealMatrix> factors,
               std::vector<GramForm> grams);

  std::size_t levels() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const RealMatrix& factor(std::size_t k) const { return factors_.at(k); }
  const GramForm& gram(std::size_t k) const { return grams_.at(k); }

  /// B_k = b_k ... b_1.
  RealMatrix composite(std::size_t k) const;
  /// sum_k <B_k x, B_k y>_{M_k}.
  double inner_product(std::span<const double> x, std::span<const double> y) const;
  /// Particular factorization of the two-level chain {X0, X1}, {1, adag}.
  OperatorRep factorization() const;

 private:
  std::vector<std::string> labels_;
  std::vector<RealMatrix> factors_;
  std::vector<GramForm> grams_;
};

/// {X0, X1}, {1, d/dx} on the interior nodes of `g`: the Dirichlet Laplacian
/// model problem with script_a = D^T W_loc D and M0 = W (both restricted).
SobolevChain dirichlet_heat_chain(const grid::Grid1D& g);

struct SpectralCheck {
  bool flag;
  double extreme;
};

/// Minimum eigenvalue of the symmetric part of M^{1/2} A M^{-1/2}.
SpectralCheck is_accretive(const OperatorRep& rep);

/// sign * lambda >= -1e-12 * scale for every eigenvalue of M^{1/2} A M^{-1/2};
/// `extreme` is the eigenvalue closest to violating it.
SpectralCheck spectrum_halfplane_check(const OperatorRep& rep, int sign);

/// Least-squares slope of log(error) against log(h).
double approximation_order_estimate(std::span<const std::pair<double, double>> samples);

}  // namespace csg::hilbert
