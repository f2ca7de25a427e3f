#include <doctest.h>

#include "stabctl/planar_field.hpp"
#include "test_util.hpp"

using namespace stabctl;
using namespace stabctl::testing;

TEST_CASE("bvp field vanishes at the reported fixed point") {
  const PlanarField field = bvp_field({});
  // x-coordinate as published; the sign of y follows the field definition
  // that reproduces the published Jacobian and eigenvalues.
  const Vec2 z_star(0.958366, -0.322957);
  CHECK(field.eval(z_star).norm() <= 1e-4);
}

TEST_CASE("bvp jacobian entries") {
  const PlanarField field = bvp_field({});
  const Mat2 j = field.jac(Vec2(0.0, 1.7));
  CHECK(j(0, 0) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(j(0, 1) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(j(1, 0) == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
  CHECK(j(1, 1) == doctest::Approx(-0.8 / 3.0).epsilon(1e-14));
}

TEST_CASE("bvp value at (1,0) against hand substitution") {
  const PlanarField field = bvp_field({});
  const Vec2 F = field.eval(Vec2(1.0, 0.0));
  // f = 3*(1 - 1/3 + 0 - 0.342); g = -(1 - 0.7)/3
  CHECK(F.x() == doctest::Approx(0.974).epsilon(1e-12));
  CHECK(F.y() == doctest::Approx(-0.1).epsilon(1e-12));
}

TEST_CASE("bvp rejects c = 0") {
  BvpParams p;
  p.c = 0.0;
  CHECK_THROWS_AS(bvp_field(p), std::invalid_argument);
}

namespace {

void check_derivatives(const PlanarField& field) {
  auto rng = test_rng(7);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const Vec2 z(u(rng), u(rng));
    const Mat2 jac = field.jac(z);

    auto f_of = [&](int row) {
      return [&field, row](const Vec2& p) { return field.eval(p)[row]; };
    };
    for (int row = 0; row < 2; ++row)
      for (int col = 0; col < 2; ++col)
        CHECK(close(jac(row, col), fd_partial(f_of(row), z, col), 1e-6));

    const SecondPartials sp = field.second_partials(z);
    auto jac_of = [&](int row, int col) {
      return [&field, row, col](const Vec2& p) { return field.jac(p)(row, col); };
    };
    CHECK(close(sp.fxx, fd_partial(jac_of(0, 0), z, 0), 1e-5));
    CHECK(close(sp.fyy, fd_partial(jac_of(0, 1), z, 1), 1e-5));
    CHECK(close(sp.gxx, fd_partial(jac_of(1, 0), z, 0), 1e-5));
    CHECK(close(sp.gyy, fd_partial(jac_of(1, 1), z, 1), 1e-5));
    // mixed partials via both stencils
    CHECK(close(sp.fxy, fd_partial(jac_of(0, 0), z, 1), 1e-5));
    CHECK(close(sp.fxy, fd_partial(jac_of(0, 1), z, 0), 1e-5));
    CHECK(close(sp.gxy, fd_partial(jac_of(1, 0), z, 1), 1e-5));
    CHECK(close(sp.gxy, fd_partial(jac_of(1, 1), z, 0), 1e-5));
  }
}

}  // namespace

TEST_CASE("analytic derivatives match finite differences") {
  check_derivatives(bvp_field({}));
  check_derivatives(circle_field());
}

TEST_CASE("hessian terms") {
  const PlanarField field = bvp_field({});

  SUBCASE("vanish at q = 0") {
    const HessianTerms h = hessian_terms(field, Vec2(0.3, -0.7), Vec2::Zero());
    CHECK(h.h1 == 0.0);
    CHECK(h.h2 == 0.0);
    CHECK(h.h3 == 0.0);
    CHECK(h.h4 == 0.0);
  }

  SUBCASE("bvp hand value at z=(1,0), q=(2,5)") {
    const HessianTerms h = hessian_terms(field, Vec2(1.0, 0.0), Vec2(2.0, 5.0));
    CHECK(h.h1 == doctest::Approx(-12.0).epsilon(1e-14));  // f_xx q1 = -2*3*1*2
    CHECK(h.h2 == 0.0);
    CHECK(h.h3 == 0.0);
    CHECK(h.h4 == 0.0);
  }

  SUBCASE("mixed symmetry and linearity in q") {
    auto rng = test_rng(11);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (const PlanarField& f : {bvp_field({}), circle_field()}) {
      for (int trial = 0; trial < 200; ++trial) {
        const Vec2 z(u(rng), u(rng));
        const Vec2 q(u(rng), u(rng));
        const double alpha = u(rng);
        const HessianTerms h = hessian_terms(f, z, q);
        CHECK(h.h2 == h.h3);
        const HessianTerms hs = hessian_terms(f, z, alpha * q);
        CHECK(close(hs.h1, alpha * h.h1, 1e-12));
        CHECK(close(hs.h2, alpha * h.h2, 1e-12));
        CHECK(close(hs.h4, alpha * h.h4, 1e-12));
      }
    }
  }
}
