#include <doctest.h>

#include <cmath>
#include <set>

#include "csg/grid.hpp"
#include "csg/matlin.hpp"
#include "support.hpp"

using namespace csg;
using namespace csg::grid;
using csg::testing::max_diff;

TEST_CASE("reference element data") {
  const auto ref = reference_element_gl2();
  CHECK(ref.order == 2);
  CHECK(ref.nodes == std::vector<double>{-1.0, 0.0, 1.0});
  CHECK(ref.w == RealMatrix::diagonal(std::vector<double>{1.0 / 3, 4.0 / 3, 1.0 / 3}));
  CHECK(ref.d == RealMatrix::from_rows({{-1.5, 2.0, -0.5}, {-0.5, 0.0, 0.5}, {0.5, -2.0, 1.5}}));
  const std::vector<double> ones{1.0, 1.0, 1.0};
  CHECK(ref.d * std::span<const double>(ones) == std::vector<double>{0.0, 0.0, 0.0});
  CHECK(ref.d * std::span<const double>(ref.nodes) == ones);

  // d is the derivative of the quadratic Lagrange interpolant at the nodes:
  // checked against x^2 -> 2x.
  const std::vector<double> sq{1.0, 0.0, 1.0};
  CHECK(ref.d * std::span<const double>(sq) == std::vector<double>{-2.0, 0.0, 2.0});
  CHECK_ERROR_KIND(require_supported_order(3), ErrorKind::unsupported_order);
  CHECK_ERROR_KIND(Grid1D({-1.0, 1.0}, 2, 1), ErrorKind::unsupported_order);
}

TEST_CASE("build_grid_1d examples") {
  auto g = build_grid_1d({-1.0, 1.0}, 8);
  CHECK(g.num_nodes() == 17);
  CHECK(g.spacing() == 0.125);
  CHECK(g.element_width() == 0.25);

  g = build_grid_1d({-1.0, 1.0}, 1);
  CHECK(g.nodes() == std::vector<double>{-1.0, 0.0, 1.0});
  CHECK(g.spacing() == 1.0);

  g = build_grid_1d({0.0, 2.0}, 2);
  CHECK(g.nodes() == std::vector<double>{0.0, 0.5, 1.0, 1.5, 2.0});

  CHECK_ERROR_KIND(build_grid_1d({1.0, 1.0}, 2), ErrorKind::empty_domain);
  CHECK_ERROR_KIND(build_grid_1d({1.0, -1.0}, 2), ErrorKind::empty_domain);
  CHECK_ERROR_KIND(build_grid_1d({-1.0, 1.0}, 0), ErrorKind::empty_domain);
}

TEST_CASE("grid invariants: uniform spacing, shared interfaces, element lookup") {
  for (std::size_t e : {1u, 2u, 5u, 16u}) {
    const auto g = build_grid_1d({-2.0, 3.0}, e);
    const auto& x = g.nodes();
    for (std::size_t i = 1; i < x.size(); ++i) CHECK(x[i] - x[i - 1] == doctest::Approx(g.spacing()));
    for (std::size_t k = 0; k + 1 < e; ++k) CHECK(g.element_nodes(k)[2] == g.element_nodes(k + 1)[0]);
    CHECK(g.element_of(-2.0) == 0);
    CHECK(g.element_of(3.0) == e - 1);
    if (e > 1) CHECK(g.element_of(x[2]) == 1);
    CHECK(g.element_of(x[1]) == 0);
  }
}

TEST_CASE("assemble_weights examples") {
  CHECK(assemble_weights(build_grid_1d({-1.0, 1.0}, 1)) ==
        RealMatrix::diagonal(std::vector<double>{1.0 / 3, 4.0 / 3, 1.0 / 3}));

  const auto w = assemble_weights(build_grid_1d({-1.0, 1.0}, 8));
  double total = 0.0;
  for (std::size_t i = 0; i < 17; ++i) {
    const double expected = (i == 0 || i == 16) ? 1.0 / 24 : (i % 2 == 1 ? 1.0 / 6 : 1.0 / 12);
    CHECK(w(i, i) == doctest::Approx(expected).epsilon(1e-15));
    total += w(i, i);
  }
  CHECK(total == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(max_abs(w - RealMatrix::diagonal(w.diagonal_entries())) == 0.0);
}

TEST_CASE("property: quadrature is exact on cubics") {
  const auto g = build_grid_1d({-0.5, 1.5}, 7);
  const auto w = assemble_weights(g);
  for (int p = 0; p <= 3; ++p) {
    double q = 0.0;
    for (std::size_t i = 0; i < g.num_nodes(); ++i) q += w(i, i) * std::pow(g.nodes()[i], p);
    const double exact = (std::pow(1.5, p + 1) - std::pow(-0.5, p + 1)) / (p + 1);
    CHECK(std::abs(q - exact) <= 1e-12);
  }
  const auto g8 = build_grid_1d({-1.0, 1.0}, 8);
  const auto w8 = assemble_weights(g8);
  double q = 0.0;
  for (std::size_t i = 0; i < 17; ++i) q += w8(i, i) * g8.nodes()[i] * g8.nodes()[i];
  CHECK(q == doctest::Approx(2.0 / 3).epsilon(1e-14));
}

TEST_CASE("assemble_local_derivative examples and exactness") {
  auto g = build_grid_1d({-1.0, 1.0}, 1);
  auto d = assemble_local_derivative(g);
  CHECK(d.rows() == 3);
  CHECK(d.cols() == 3);
  CHECK(d * std::span<const double>(std::vector<double>{-1.0, 0.0, 1.0}) == std::vector<double>{1.0, 1.0, 1.0});
  CHECK(d * std::span<const double>(std::vector<double>{1.0, 0.0, 1.0}) == std::vector<double>{-2.0, 0.0, 2.0});

  g = build_grid_1d({-1.0, 1.0}, 2);
  d = assemble_local_derivative(g);
  CHECK(d.rows() == 6);
  CHECK(d.cols() == 5);
  for (double v : d * std::span<const double>(std::vector<double>(5, 1.0))) CHECK(v == 0.0);

  // Degree <= 2 polynomials: the element-local samples equal p' at each
  // element's nodes.
  g = build_grid_1d({-1.0, 2.0}, 6);
  d = assemble_local_derivative(g);
  std::vector<double> samples;
  for (double x : g.nodes()) samples.push_back(0.5 - 2.0 * x + 3.0 * x * x);
  const auto ds = d * std::span<const double>(samples);
  for (std::size_t e = 0; e < 6; ++e)
    for (std::size_t j = 0; j < 3; ++j) {
      const double x = g.nodes()[g.element_nodes(e)[j]];
      CHECK(std::abs(ds[3 * e + j] - (-2.0 + 6.0 * x)) <= 1e-12);
    }
}

TEST_CASE("local weights and stiffness") {
  auto g = build_grid_1d({-1.0, 1.0}, 1);
  CHECK(assemble_local_weights(g) == RealMatrix::diagonal(std::vector<double>{1.0 / 3, 4.0 / 3, 1.0 / 3}));

  g = build_grid_1d({-1.0, 1.0}, 8);
  const auto wl = assemble_local_weights(g);
  CHECK(wl.rows() == 24);
  const auto k = assemble_stiffness(g);
  CHECK(max_diff(k, assemble_local_derivative(g).transposed() * wl * assemble_local_derivative(g)) <= 1e-13);
  for (double v : k * std::span<const double>(std::vector<double>(17, 1.0))) CHECK(std::abs(v) <= 1e-12);
  CHECK(max_diff(k, k.transposed()) <= 1e-13);

  const auto ev = matlin::sym_eig(k).eigenvalues;
  const double top = ev.back();
  CHECK(std::abs(ev[0]) <= 1e-12 * top);
  CHECK(ev[1] > 1e-6 * top);
  for (double l : ev) CHECK(l >= -1e-12 * top);

  // The energy of u(x) = x^2 is int (2x)^2 = 8/3 on [-1, 1].
  std::vector<double> u;
  for (double x : g.nodes()) u.push_back(x * x);
  const auto ku = k * std::span<const double>(u);
  double energy = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) energy += u[i] * ku[i];
  CHECK(energy == doctest::Approx(8.0 / 3).epsilon(1e-13));
}

TEST_CASE("tensor grid indexing") {
  const auto g8 = build_grid_1d({-1.0, 1.0}, 8);
  const auto tg = tensor_grid(g8, g8);
  CHECK(tg.num_nodes() == 289);
  for (std::size_t k = 0; k < tg.num_nodes(); ++k) {
    const auto [ix, iy] = tg.split(k);
    CHECK(tg.index(ix, iy) == k);
    const auto p = tg.coordinate(k);
    CHECK(p[0] == g8.nodes()[ix]);
    CHECK(p[1] == g8.nodes()[iy]);
  }
  const auto g1 = build_grid_1d({-1.0, 1.0}, 1);
  const auto small = tensor_grid(g1, g1);
  CHECK(small.coordinate(4) == Point{0.0, 0.0});
  CHECK(small.coordinate(1) == Point{-1.0, 0.0});

  const auto rect = tensor_grid(build_grid_1d({0.0, 1.0}, 2), g1);
  CHECK(rect.nx() == 5);
  CHECK(rect.ny() == 3);
  CHECK(rect.coordinate(rect.index(4, 2)) == Point{1.0, 1.0});
}

TEST_CASE("interior masks") {
  const auto g8 = build_grid_1d({-1.0, 1.0}, 8);
  const auto tg = tensor_grid(g8, g8);
  const auto mask = interior_mask(tg);
  CHECK(mask.size() == 225);
  CHECK(mask.total_nodes == 289);
  std::set<std::size_t> seen;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    const auto k = mask.kept_indices[i];
    if (i) CHECK(k > mask.kept_indices[i - 1]);
    const auto [ix, iy] = tg.split(k);
    CHECK(ix > 0);
    CHECK(ix < 16);
    CHECK(iy > 0);
    CHECK(iy < 16);
    seen.insert(k);
  }
  // Every node with no boundary coordinate is kept.
  std::size_t interior = 0;
  for (std::size_t k = 0; k < 289; ++k) {
    const auto p = tg.coordinate(k);
    if (std::abs(p[0]) < 1.0 && std::abs(p[1]) < 1.0) {
      ++interior;
      CHECK(seen.count(k) == 1);
    }
  }
  CHECK(interior == 225);

  const auto g1 = build_grid_1d({-1.0, 1.0}, 1);
  const auto m3 = interior_mask(tensor_grid(g1, g1));
  CHECK(m3.kept_indices == std::vector<std::size_t>{4});
  CHECK(interior_mask(g8).size() == 15);
  CHECK(interior_mask(g1).kept_indices == std::vector<std::size_t>{1});
  CHECK(full_mask(4).kept_indices == std::vector<std::size_t>{0, 1, 2, 3});
}

TEST_CASE("restriction helpers") {
  const auto m = RealMatrix::from_rows({{1, 2, 3}, {4, 5, 6}, {7, 8, 9}});
  const InteriorMask mask{3, {0, 2}};
  CHECK(restrict_square(m, mask) == RealMatrix::from_rows({{1, 3}, {7, 9}}));
  CHECK(restrict_columns(m, mask) == RealMatrix::from_rows({{1, 3}, {4, 6}, {7, 9}}));
  CHECK_ERROR_KIND(restrict_square(RealMatrix(2, 2), mask), ErrorKind::shape_mismatch);
}
