#include "csg/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "csg/error.hpp"

namespace csg::grid {

ReferenceElement reference_element_gl2() {
  return ReferenceElement{
      2,
      {-1.0, 0.0, 1.0},
      RealMatrix::from_rows({{1.0 / 3.0, 0.0, 0.0}, {0.0, 4.0 / 3.0, 0.0}, {0.0, 0.0, 1.0 / 3.0}}),
      RealMatrix::from_rows({{-1.5, 2.0, -0.5}, {-0.5, 0.0, 0.5}, {0.5, -2.0, 1.5}}),
  };
}

void require_supported_order(int order) {
  if (order != 2) {
    throw Error(ErrorKind::unsupported_order,
                "only order-2 Gauss-Lobatto elements are available, got " + std::to_string(order));
  }
}

Grid1D::Grid1D(Interval domain, std::size_t num_elements, int order)
    : domain_(domain), num_elements_(num_elements), order_(order), h_(0.0) {
  require_supported_order(order);
  if (!(domain.b > domain.a) || !std::isfinite(domain.a) || !std::isfinite(domain.b)) {
    throw Error(ErrorKind::empty_domain, "interval must satisfy a < b");
  }
  if (num_elements == 0) throw Error(ErrorKind::empty_domain, "at least one element required");
  const std::size_t n = 2 * num_elements + 1;
  h_ = (domain.b - domain.a) / static_cast<double>(2 * num_elements);
  nodes_.resize(n);
  for (std::size_t i = 0; i < n; ++i) nodes_[i] = domain.a + static_cast<double>(i) * h_;
  nodes_.back() = domain.b;
}

std::size_t Grid1D::element_of(double x) const noexcept {
  const double s = std::floor((x - domain_.a) / element_width());
  if (!(s > 0.0)) return 0;
  return std::min(static_cast<std::size_t>(s), num_elements_ - 1);
}

Grid1D build_grid_1d(Interval domain, std::size_t num_elements) { return Grid1D(domain, num_elements); }

RealMatrix assemble_weights(const Grid1D& g) {
  const auto ref = reference_element_gl2();
  const double jac = g.element_width() / 2.0;
  RealMatrix w(g.num_nodes(), g.num_nodes());
  for (std::size_t e = 0; e < g.num_elements(); ++e) {
    const auto ids = g.element_nodes(e);
    for (std::size_t a = 0; a < 3; ++a) w(ids[a], ids[a]) += jac * ref.w(a, a);
  }
  return w;
}

RealMatrix assemble_local_derivative(const Grid1D& g) {
  const auto ref = reference_element_gl2();
  const double inv_jac = 2.0 / g.element_width();
  RealMatrix d(3 * g.num_elements(), g.num_nodes());
  for (std::size_t e = 0; e < g.num_elements(); ++e) {
    const auto ids = g.element_nodes(e);
    for (std::size_t a = 0; a < 3; ++a)
      for (std::size_t b = 0; b < 3; ++b) d(3 * e + a, ids[b]) = inv_jac * ref.d(a, b);
  }
  return d;
}

RealMatrix assemble_local_weights(const Grid1D& g) {
  const auto ref = reference_element_gl2();
  const double jac = g.element_width() / 2.0;
  RealMatrix w(3 * g.num_elements(), 3 * g.num_elements());
  for (std::size_t e = 0; e < g.num_elements(); ++e)
    for (std::size_t a = 0; a < 3; ++a) w(3 * e + a, 3 * e + a) = jac * ref.w(a, a);
  return w;
}

RealMatrix assemble_stiffness(const Grid1D& g) {
  const RealMatrix d = assemble_local_derivative(g);
  return d.transposed() * (assemble_local_weights(g) * d);
}

TensorGrid2D::TensorGrid2D(Grid1D gx, Grid1D gy) : gx_(std::move(gx)), gy_(std::move(gy)) {}

Point TensorGrid2D::coordinate(std::size_t k) const noexcept {
  const auto [ix, iy] = split(k);
  return {gx_.nodes()[ix], gy_.nodes()[iy]};
}

TensorGrid2D tensor_grid(const Grid1D& gx, const Grid1D& gy) { return TensorGrid2D(gx, gy); }

InteriorMask interior_mask(const TensorGrid2D& tg) {
  if (tg.nx() < 3 || tg.ny() < 3) {
    throw Error(ErrorKind::degenerate_grid, "need at least 3 nodes per dimension");
  }
  InteriorMask mask{tg.num_nodes(), {}};
  mask.kept_indices.reserve((tg.nx() - 2) * (tg.ny() - 2));
  for (std::size_t ix = 1; ix + 1 < tg.nx(); ++ix)
    for (std::size_t iy = 1; iy + 1 < tg.ny(); ++iy) mask.kept_indices.push_back(tg.index(ix, iy));
  return mask;
}

InteriorMask interior_mask(const Grid1D& g) {
  if (g.num_nodes() < 3) throw Error(ErrorKind::degenerate_grid, "need at least 3 nodes");
  InteriorMask mask{g.num_nodes(), {}};
  for (std::size_t i = 1; i + 1 < g.num_nodes(); ++i) mask.kept_indices.push_back(i);
  return mask;
}

InteriorMask full_mask(std::size_t total_nodes) {
  InteriorMask mask{total_nodes, std::vector<std::size_t>(total_nodes)};
  for (std::size_t i = 0; i < total_nodes; ++i) mask.kept_indices[i] = i;
  return mask;
}

RealMatrix restrict_square(const RealMatrix& m, const InteriorMask& mask) {
  if (m.rows() != mask.total_nodes || m.cols() != mask.total_nodes) {
    throw Error(ErrorKind::shape_mismatch, "mask does not match matrix size");
  }
  const auto& k = mask.kept_indices;
  RealMatrix out(k.size(), k.size());
  for (std::size_t i = 0; i < k.size(); ++i)
    for (std::size_t j = 0; j < k.size(); ++j) out(i, j) = m(k[i], k[j]);
  return out;
}

RealMatrix restrict_columns(const RealMatrix& m, const InteriorMask& mask) {
  if (m.cols() != mask.total_nodes) {
    throw Error(ErrorKind::shape_mismatch, "mask does not match column count");
  }
  const auto& k = mask.kept_indices;
  RealMatrix out(m.rows(), k.size());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < k.size(); ++j) out(i, j) = m(i, k[j]);
  return out;
}

}  // namespace csg::grid
