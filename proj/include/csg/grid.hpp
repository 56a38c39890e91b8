#pragma once

// Gauss-Lobatto spectral-element grids of order 2.
//
// Global operators follow standard spectral-element assembly: each element of
// width 2h contributes (h) * w to the quadrature weights of its three nodes and
// (1/h) * d to its element-local derivative samples. Derivative targets are
// element-local (a shared node appears once per element), so the stiffness
// form is sum_e D_e^T W_e D_e.

#include <array>
#include <cstddef>
#include <vector>

#include "csg/matrix.hpp"

namespace csg::grid {

struct Interval {
  double a;
  double b;
};

struct ReferenceElement {
  int order;
  std::vector<double> nodes;  // (-1, 0, 1)
  RealMatrix w;               // diagonal quadrature weights
  RealMatrix d;               // nodal differentiation matrix
};

/// The order-2 Gauss-Lobatto element.
ReferenceElement reference_element_gl2();

/// Validates an element order; only 2 is supported.
void require_supported_order(int order);

class Grid1D {
 public:
  Grid1D(Interval domain, std::size_t num_elements, int order = 2);

  Interval domain() const noexcept { return domain_; }
  std::size_t num_elements() const noexcept { return num_elements_; }
  int order() const noexcept { return order_; }
  /// Node spacing; half the element width.
  double spacing() const noexcept { return h_; }
  double element_width() const noexcept { return 2.0 * h_; }
  std::size_t num_nodes() const noexcept { return nodes_.size(); }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  std::array<std::size_t, 3> element_nodes(std::size_t e) const noexcept {
    return {2 * e, 2 * e + 1, 2 * e + 2};
  }
  /// Element owning coordinate x; interface points go to the element on the right.
  std::size_t element_of(double x) const noexcept;

 private:
  Interval domain_;
  std::size_t num_elements_;
  int order_;
  double h_;
  std::vector<double> nodes_;
};

Grid1D build_grid_1d(Interval domain, std::size_t num_elements);

/// Assembled diagonal quadrature matrix, (2E+1) x (2E+1).
RealMatrix assemble_weights(const Grid1D& g);

/// Element-local derivative samples, 3E x (2E+1).
RealMatrix assemble_local_derivative(const Grid1D& g);

/// Block-diagonal weights paired with the local derivative, 3E x 3E.
RealMatrix assemble_local_weights(const Grid1D& g);

/// D^T W_loc D.
RealMatrix assemble_stiffness(const Grid1D& g);

using Point = std::array<double, 2>;

/// Tensor product grid with x-major flattening k = ix * Ny + iy.
class TensorGrid2D {
 public:
  TensorGrid2D(Grid1D gx, Grid1D gy);

  const Grid1D& gx() const noexcept { return gx_; }
  const Grid1D& gy() const noexcept { return gy_; }
  std::size_t nx() const noexcept { return gx_.num_nodes(); }
  std::size_t ny() const noexcept { return gy_.num_nodes(); }
  std::size_t num_nodes() const noexcept { return nx() * ny(); }

  std::size_t index(std::size_t ix, std::size_t iy) const noexcept { return ix * ny() + iy; }
  std::array<std::size_t, 2> split(std::size_t k) const noexcept { return {k / ny(), k % ny()}; }
  Point coordinate(std::size_t k) const noexcept;

 private:
  Grid1D gx_;
  Grid1D gy_;
};

TensorGrid2D tensor_grid(const Grid1D& gx, const Grid1D& gy);

/// Global node indices kept after homogeneous Dirichlet elimination.
struct InteriorMask {
  std::size_t total_nodes;
  std::vector<std::size_t> kept_indices;  // strictly increasing

  std::size_t size() const noexcept { return kept_indices.size(); }
};

InteriorMask interior_mask(const TensorGrid2D& tg);
InteriorMask interior_mask(const Grid1D& g);
/// Keeps every node.
InteriorMask full_mask(std::size_t total_nodes);

/// Rows and columns of `m` at the kept indices.
RealMatrix restrict_square(const RealMatrix& m, const InteriorMask& mask);
/// Columns of `m` at the kept indices.
RealMatrix restrict_columns(const RealMatrix& m, const InteriorMask& mask);

}  // namespace csg::grid
