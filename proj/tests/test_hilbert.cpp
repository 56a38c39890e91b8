#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "csg/grid.hpp"
#include "csg/hilbert.hpp"
#include "csg/matlin.hpp"
#include "support.hpp"

using namespace csg;
using namespace csg::hilbert;
using csg::testing::max_diff;
using csg::testing::Rng;

namespace {

grid::Grid1D unit(std::size_t e) { return grid::build_grid_1d({-1.0, 1.0}, e); }

ParticularProjector box_projector(std::size_t e) {
  const auto tg = grid::tensor_grid(unit(e), unit(e));
  return ParticularProjector(tg, grid::interior_mask(tg));
}

}  // namespace

TEST_CASE("decompose examples") {
  const auto g = unit(4);
  const ParticularProjector p1(g, grid::full_mask(g.num_nodes()));
  CHECK(decompose([](const Point&) { return 1.0; }, p1) == std::vector<double>(9, 1.0));

  const auto p2 = box_projector(8);
  const auto c = decompose([](const Point& x) { return x[0]; }, p2);
  REQUIRE(c.size() == 225);
  const auto nodes = p2.kept_nodes();
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(c[i] == nodes[i][0]);

  CHECK_ERROR_KIND(decompose([](const Point&) { return std::numeric_limits<double>::quiet_NaN(); }, p1),
                   ErrorKind::non_finite_sample);
  CHECK_ERROR_KIND(decompose([](const Point& x) { return 1.0 / x[0]; }, p1), ErrorKind::non_finite_sample);
}

TEST_CASE("expand examples") {
  const auto g = unit(1);
  const ParticularProjector p(g, grid::interior_mask(g));
  const auto zero = expand(std::vector<double>{0.0}, p);
  for (double x : {-1.0, -0.3, 0.0, 0.7, 1.0}) CHECK(zero({x, 0.0}) == 0.0);

  // The single interior cardinal function on [-1, 1] is 1 - x^2.
  const auto tent = expand(std::vector<double>{1.0}, p);
  for (double x : {-1.0, -0.5, 0.0, 0.25, 1.0}) CHECK(tent({x, 0.0}) == doctest::Approx(1.0 - x * x).epsilon(1e-15));

  CHECK_ERROR_KIND(expand(std::vector<double>{1.0, 2.0}, p), ErrorKind::length_mismatch);
}

TEST_CASE("property: expand then decompose is the identity") {
  Rng rng(31);
  const auto p2 = box_projector(4);
  const auto g = unit(6);
  const ParticularProjector p1(g, grid::interior_mask(g));
  for (int trial = 0; trial < 10; ++trial) {
    for (const auto* p : {&p1, &p2}) {
      const auto c = csg::testing::random_vector(rng, p->num_coefficients());
      const auto f = expand(c, *p);
      CHECK(decompose([&](const Point& x) { return f(x); }, *p) == c);
    }
  }
}

TEST_CASE("cardinal property of the interpolant") {
  const auto g = unit(3);
  const ParticularProjector p(g, grid::full_mask(g.num_nodes()));
  for (std::size_t j = 0; j < g.num_nodes(); ++j) {
    std::vector<double> e(g.num_nodes(), 0.0);
    e[j] = 1.0;
    const auto l = expand(e, p);
    for (std::size_t i = 0; i < g.num_nodes(); ++i) CHECK(l({g.nodes()[i], 0.0}) == (i == j ? 1.0 : 0.0));
  }
}

TEST_CASE("interpolant derivatives reproduce quadratics") {
  const auto g = grid::build_grid_1d({0.0, 3.0}, 3);
  const auto tg = grid::tensor_grid(g, g);
  const ParticularProjector p(tg, grid::full_mask(tg.num_nodes()));
  auto f = [](const Point& x) { return 1.0 + x[0] - 2.0 * x[1] + x[0] * x[1] + 0.5 * x[0] * x[0]; };
  const auto u = expand(decompose(f, p), p);
  for (const Point x : {Point{0.3, 2.2}, Point{1.7, 0.1}, Point{2.9, 2.9}}) {
    CHECK(u(x) == doctest::Approx(f(x)).epsilon(1e-13));
    CHECK(u.derivative(x, {1, 0}) == doctest::Approx(1.0 + x[1] + x[0]).epsilon(1e-12));
    CHECK(u.derivative(x, {0, 1}) == doctest::Approx(-2.0 + x[0]).epsilon(1e-12));
    CHECK(u.derivative(x, {2, 0}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(u.derivative(x, {1, 1}) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_ERROR_KIND(u.derivative({0.0, 0.0}, {3, 0}), ErrorKind::validation_error);
}

TEST_CASE("gram_form examples") {
  const auto g1 = unit(1);
  const auto m1 = gram_form(grid::assemble_weights(g1), grid::full_mask(3));
  CHECK(m1.m() == RealMatrix::diagonal(std::vector<double>{1.0 / 3, 4.0 / 3, 1.0 / 3}));

  const auto g8 = unit(8);
  const auto w = grid::assemble_weights(g8);
  const auto tg = grid::tensor_grid(g8, g8);
  const auto mask = grid::interior_mask(tg);
  const auto m = gram_form(matlin::kron(w, w), mask);
  CHECK(m.size() == 225);
  for (std::size_t i = 0; i < 225; ++i) {
    const auto [ix, iy] = tg.split(mask.kept_indices[i]);
    CHECK(m.m()(i, i) == w(ix, ix) * w(iy, iy));
    for (std::size_t j = 0; j < 225; ++j)
      if (j != i) REQUIRE(m.m()(i, j) == 0.0);
  }
  CHECK_ERROR_KIND(gram_form(RealMatrix::from_rows({{1.0, 0.1}, {0.1, 1.0}}), grid::full_mask(2)),
                   ErrorKind::not_spd);
  CHECK_ERROR_KIND(gram_form(RealMatrix::diagonal(std::vector<double>{1.0, 0.0}), grid::full_mask(2)),
                   ErrorKind::not_spd);
  CHECK_ERROR_KIND(GramForm(RealMatrix::diagonal(std::vector<double>{1.0, -1.0})), ErrorKind::not_spd);
}

TEST_CASE("Gram inner product integrates products of interpolants") {
  const auto g = grid::build_grid_1d({-1.0, 1.0}, 5);
  const ParticularProjector p(g, grid::full_mask(g.num_nodes()));
  const auto m = gram_form(grid::assemble_weights(g), p.mask());
  // x and x^2 - x: product degree 3, integral over [-1, 1] is int x^3 - x^2 = -2/3.
  const auto u = decompose([](const Point& x) { return x[0]; }, p);
  const auto v = decompose([](const Point& x) { return x[0] * x[0] - x[0]; }, p);
  CHECK(m.inner(u, v) == doctest::Approx(-2.0 / 3).epsilon(1e-13));
  CHECK(m.norm(u) == doctest::Approx(std::sqrt(2.0 / 3)).epsilon(1e-13));
  CHECK(m.norm(ComplexVector(u, u)) == doctest::Approx(std::sqrt(4.0 / 3)).epsilon(1e-13));
}

TEST_CASE("property: Gram forms are SPD and their inner products symmetric") {
  Rng rng(32);
  for (std::size_t e : {2u, 4u, 8u}) {
    const auto g = unit(e);
    const auto tg = grid::tensor_grid(g, g);
    const auto w = grid::assemble_weights(g);
    const auto m = gram_form(matlin::kron(w, w), grid::interior_mask(tg));
    CHECK(m.m() == m.m().transposed());
    CHECK(matlin::sym_eig(m.m()).eigenvalues.front() > 0.0);
    CHECK(frobenius(m.sqrt_m() * m.sqrt_m() - m.m()) <= 1e-10 * frobenius(m.m()));
    CHECK(max_diff(m.inv_m() * m.m(), RealMatrix::identity(m.size())) <= 1e-12);
    const auto x = csg::testing::random_vector(rng, m.size()), y = csg::testing::random_vector(rng, m.size());
    CHECK(m.inner(x, y) == doctest::Approx(m.inner(y, x)).epsilon(1e-15));
  }
}

TEST_CASE("particular_representation examples") {
  const auto g = unit(4);
  const ParticularProjector p(g, grid::interior_mask(g));
  const auto id = particular_representation([](const NodalInterpolant& u) -> Sampleable {
    return [u](const Point& x) { return u(x); };
  }, p, p);
  CHECK(id == RealMatrix::identity(p.num_coefficients()));

  const auto mult_x = particular_representation([](const NodalInterpolant& u) -> Sampleable {
    return [u](const Point& x) { return x[0] * u(x); };
  }, p, p);
  std::vector<double> xs;
  for (const auto& n : p.kept_nodes()) xs.push_back(n[0]);
  CHECK(max_diff(mult_x, RealMatrix::diagonal(xs)) <= 1e-15);

  // -u'' on a quadratic vanishing at the walls matches M^{-1} (D^T W D).
  const auto minus_dxx = particular_representation([](const NodalInterpolant& u) -> Sampleable {
    return [u](const Point& x) { return -u.derivative(x, {2, 0}); };
  }, p, p);
  const auto rep = dirichlet_heat_chain(g).factorization();
  const auto c = decompose([](const Point& x) { return 1.0 - x[0] * x[0]; }, p);
  const auto lhs = minus_dxx * std::span<const double>(c);
  const auto rhs = rep.a_mh * std::span<const double>(c);
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(lhs[i] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(rhs[i] == doctest::Approx(2.0).epsilon(1e-12));
  }

  const auto p2 = box_projector(2);
  CHECK_ERROR_KIND(particular_representation([](const NodalInterpolant& u) -> Sampleable {
    return [u](const Point& x) { return u(x); };
  }, p, p2), ErrorKind::shape_mismatch);
}

TEST_CASE("particular_factorization examples") {
  const GramForm m(RealMatrix::diagonal(std::vector<double>{1.0, 2.0, 3.0}));
  auto rep = particular_factorization(RealMatrix(3, 3), m, m);
  CHECK(max_abs(*rep.script_a) == 0.0);
  CHECK(max_abs(rep.a_mh) == 0.0);

  rep = particular_factorization(RealMatrix::identity(3), m, m);
  CHECK(max_diff(*rep.script_a, m.m()) <= 1e-15);
  CHECK(max_diff(rep.a_mh, RealMatrix::identity(3)) <= 1e-15);

  CHECK_ERROR_KIND(particular_factorization(RealMatrix(2, 2), m, m), ErrorKind::shape_mismatch);
}

TEST_CASE("heat chain factorization is SPD and matches the restricted stiffness") {
  for (std::size_t e : {2u, 8u, 16u}) {
    const auto g = unit(e);
    const auto chain = dirichlet_heat_chain(g);
    CHECK(chain.levels() == 2);
    const auto rep = chain.factorization();
    const auto& s = *rep.script_a;
    CHECK(max_diff(s, s.transposed()) <= 1e-13);
    CHECK(matlin::sym_eig(s).eigenvalues.front() > 0.0);
    const auto mask = grid::interior_mask(g);
    CHECK(max_diff(s, grid::restrict_square(grid::assemble_stiffness(g), mask)) <= 1e-12);
    CHECK(max_diff(rep.a_mh, rep.gram.inv_m() * s) <= 1e-10);

    // Chain inner product is the H1 form: <x, x>_M0 + <x, Kx>.
    Rng rng(e);
    const auto x = csg::testing::random_vector(rng, mask.size());
    const auto kx = s * std::span<const double>(x);
    double xkx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) xkx += x[i] * kx[i];
    CHECK(chain.inner_product(x, x) == doctest::Approx(rep.gram.inner(x, x) + xkx).epsilon(1e-12));
    CHECK(max_diff(chain.composite(1), chain.factor(1)) == 0.0);
  }
}

TEST_CASE("Sobolev chain validation") {
  const GramForm m(RealMatrix::identity(2));
  CHECK_ERROR_KIND(SobolevChain({"a"}, {}, {m}), ErrorKind::shape_mismatch);
  CHECK_ERROR_KIND(SobolevChain({"a", "b"}, {RealMatrix::identity(2), RealMatrix(3, 2)}, {m, m}),
                   ErrorKind::shape_mismatch);
  const SobolevChain three({"a", "b", "c"}, {RealMatrix::identity(2), 2.0 * RealMatrix::identity(2),
                                             3.0 * RealMatrix::identity(2)}, {m, m, m});
  CHECK(three.composite(2) == 6.0 * RealMatrix::identity(2));
  CHECK_ERROR_KIND(three.factorization(), ErrorKind::shape_mismatch);
}

TEST_CASE("accretivity and half-plane checks") {
  const GramForm m(RealMatrix::diagonal(std::vector<double>{1.0, 2.0}));
  auto check = is_accretive(operator_from_matrix(RealMatrix::identity(2), m));
  CHECK(check.flag);
  CHECK(check.extreme == doctest::Approx(1.0));
  check = is_accretive(operator_from_matrix(-1.0 * RealMatrix::identity(2), m));
  CHECK_FALSE(check.flag);
  CHECK(check.extreme == doctest::Approx(-1.0));

  const auto heat = dirichlet_heat_chain(unit(8)).factorization();
  CHECK(is_accretive(heat).flag);
  check = spectrum_halfplane_check(negated(heat), -1);
  CHECK(check.flag);
  CHECK(check.extreme <= 0.0);
  CHECK(spectrum_halfplane_check(heat, 1).flag);
  CHECK_FALSE(spectrum_halfplane_check(heat, -1).flag);

  check = spectrum_halfplane_check(operator_from_matrix(RealMatrix(2, 2), m), 1);
  CHECK(check.flag);
  CHECK(check.extreme == 0.0);
  CHECK_ERROR_KIND(spectrum_halfplane_check(heat, 0), ErrorKind::validation_error);
  CHECK_ERROR_KIND(operator_from_matrix(RealMatrix::identity(3), m), ErrorKind::shape_mismatch);
}

TEST_CASE("property: factorizations from random factors are symmetric PSD and accretive") {
  Rng rng(33);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n0 = 1 + rng() % 8, n1 = 1 + rng() % 10;
    std::vector<double> d0(n0), d1(n1);
    for (auto& v : d0) v = csg::testing::uniform(rng, 0.1, 2.0);
    for (auto& v : d1) v = csg::testing::uniform(rng, 0.1, 2.0);
    const GramForm m0(RealMatrix::diagonal(d0)), m1(RealMatrix::diagonal(d1));
    const auto rep = particular_factorization(csg::testing::random_matrix(rng, n1, n0), m1, m0);
    const auto& s = *rep.script_a;
    CHECK(max_diff(s, s.transposed()) <= 1e-13);
    CHECK(matlin::sym_eig(s).eigenvalues.front() >= -1e-12 * std::max(1.0, matlin::norm_2(s)));
    CHECK(is_accretive(rep).flag);
    CHECK(spectrum_halfplane_check(negated(rep), -1).flag);
    // Self-adjointness of A in the M0 inner product.
    const auto x = csg::testing::random_vector(rng, n0), y = csg::testing::random_vector(rng, n0);
    CHECK(m0.inner(rep.a_mh * std::span<const double>(x), y) ==
          doctest::Approx(m0.inner(x, rep.a_mh * std::span<const double>(y))).epsilon(1e-10));
  }
}

TEST_CASE("approximation_order_estimate") {
  std::vector<std::pair<double, double>> s;
  for (double h : {0.5, 0.25, 0.125, 0.0625}) s.emplace_back(h, std::pow(h, 4));
  CHECK(std::abs(approximation_order_estimate(s) - 4.0) <= 1e-9);
  for (auto& [h, err] : s) err = 0.3;
  CHECK(std::abs(approximation_order_estimate(s)) <= 1e-12);

  CHECK_ERROR_KIND(approximation_order_estimate(std::span(s).first(2)), ErrorKind::insufficient_samples);
  auto bad = s;
  bad[1].second = 0.0;
  CHECK_ERROR_KIND(approximation_order_estimate(bad), ErrorKind::nonpositive_error);
  bad = s;
  std::swap(bad[0], bad[1]);
  CHECK_ERROR_KIND(approximation_order_estimate(bad), ErrorKind::insufficient_samples);
}

TEST_CASE("nodal interpolation of sin(pi x) converges at order near 3") {
  std::vector<std::pair<double, double>> samples;
  for (std::size_t e : {4u, 8u, 16u}) {
    const auto g = unit(e);
    const ParticularProjector p(g, grid::full_mask(g.num_nodes()));
    const auto u = expand(decompose([](const Point& x) { return std::sin(std::numbers::pi * x[0]); }, p), p);
    // L2 error by a fine midpoint rule.
    const int fine = 4000;
    double err2 = 0.0;
    for (int i = 0; i < fine; ++i) {
      const double x = -1.0 + (i + 0.5) * 2.0 / fine;
      const double r = u({x, 0.0}) - std::sin(std::numbers::pi * x);
      err2 += r * r * 2.0 / fine;
    }
    samples.emplace_back(g.spacing(), std::sqrt(err2));
  }
  const double order = approximation_order_estimate(samples);
  MESSAGE("measured interpolation order: " << order);
  CHECK(order >= 2.5);
}
