#include <doctest.h>

#include "stabctl/augmented.hpp"
#include "test_util.hpp"

using namespace stabctl;
using namespace stabctl::testing;

TEST_CASE("rho must be positive") {
  CHECK_THROWS_AS(make_aug_system(bvp_field({}), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(make_aug_system(bvp_field({}), -1.0), std::invalid_argument);
}

TEST_CASE("rhs vanishes at the fixed point with q = 0") {
  const AugSystem sys = make_aug_system(bvp_field({}), 2.5);
  const Vec4 s(0.958366, -0.322957, 0.0, 0.0);
  CHECK(aug_rhs(sys, s).norm() <= 1e-3);
}

TEST_CASE("q = 0 plane is invariant in every mode") {
  auto rng = test_rng(21);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (ControlMode mode : {ControlMode::OneSidedX, ControlMode::TwoSided,
                           ControlMode::OneSidedY}) {
    const AugSystem sys = make_aug_system(bvp_field({}), 2.5, mode);
    for (int trial = 0; trial < 200; ++trial) {
      const Vec2 z(u(rng), u(rng));
      const Vec4 ds = aug_rhs(sys, Vec4(z.x(), z.y(), 0.0, 0.0));
      CHECK(ds[2] == 0.0);
      CHECK(ds[3] == 0.0);
      const Vec2 F = sys.field.eval(z);
      CHECK(ds[0] == F.x());
      CHECK(ds[1] == F.y());
    }
  }
}

TEST_CASE("hand substitution at s=(1,0,1,1) with rho=2.5") {
  const AugSystem sys = make_aug_system(bvp_field({}), 2.5);
  const Vec4 ds = aug_rhs(sys, Vec4(1.0, 0.0, 1.0, 1.0));
  CHECK(ds[0] == doctest::Approx(1.974).epsilon(1e-12));       // f + q1
  CHECK(ds[1] == doctest::Approx(-0.1).epsilon(1e-12));        // g
  CHECK(ds[2] == doctest::Approx(-13.0 / 6.0).epsilon(1e-12)); // -(2.5+0) + 1/3
  CHECK(ds[3] == doctest::Approx(-157.0 / 30.0).epsilon(1e-12));
}

TEST_CASE("divergence identity: trace equals -2 rho in all modes") {
  auto rng = test_rng(22);
  for (ControlMode mode : {ControlMode::OneSidedX, ControlMode::TwoSided,
                           ControlMode::OneSidedY}) {
    const AugSystem sys = make_aug_system(bvp_field({}), 2.5, mode);
    for (int trial = 0; trial < 1000; ++trial) {
      const Vec4 s = random_state(rng);
      CHECK(std::abs(aug_jacobian(sys, s).trace() + 2.0 * sys.rho) <= 1e-12);
    }
  }
}

TEST_CASE("analytic 4x4 jacobian matches finite differences") {
  auto rng = test_rng(23);
  for (ControlMode mode : {ControlMode::OneSidedX, ControlMode::TwoSided,
                           ControlMode::OneSidedY}) {
    const AugSystem sys = make_aug_system(bvp_field({}), 2.5, mode);
    for (int trial = 0; trial < 1000; ++trial) {
      const Vec4 s = random_state(rng);
      const Mat4 analytic = aug_jacobian(sys, s);
      const Mat4 fd = fd_aug_jacobian(sys, s);
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) CHECK(close(analytic(r, c), fd(r, c), 1e-5));
    }
  }
}

TEST_CASE("jacobian lower-left block vanishes at q = 0") {
  const AugSystem sys = make_aug_system(bvp_field({}), 2.5);
  const Mat4 j = aug_jacobian(sys, Vec4(0.7, -0.4, 0.0, 0.0));
  CHECK(j.block<2, 2>(2, 0).norm() == 0.0);
}

TEST_CASE("one-dimensional right-hand side") {
  const ScalarField f = double_well_field();

  SUBCASE("trivial fixed point") {
    const Vec2 ds = rhs_1d(f, 2.0, Vec2(1.0, 0.0));
    CHECK(ds.x() == 0.0);
    CHECK(ds.y() == 0.0);
  }

  SUBCASE("hand value at (0,1), rho=2") {
    const Vec2 ds = rhs_1d(f, 2.0, Vec2(0.0, 1.0));
    CHECK(ds.x() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(ds.y() == doctest::Approx(-3.0).epsilon(1e-14));  // -(2 + f'(0)) = -(2+1)
  }

  SUBCASE("q = 0 plane invariant") {
    auto rng = test_rng(24);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 100; ++trial) {
      const double x = u(rng);
      CHECK(rhs_1d(f, 2.0, Vec2(x, 0.0)).y() == 0.0);
    }
  }

  SUBCASE("jacobian matches finite differences") {
    auto rng = test_rng(25);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
      const Vec2 s(u(rng), u(rng));
      const Mat2 analytic = jacobian_1d(f, 2.0, s);
      for (int c = 0; c < 2; ++c) {
        const double h = 1e-5 * std::max(1.0, std::abs(s[c]));
        Vec2 sp = s, sm = s;
        sp[c] += h;
        sm[c] -= h;
        const Vec2 col = (rhs_1d(f, 2.0, sp) - rhs_1d(f, 2.0, sm)) / (2.0 * h);
        CHECK(close(analytic(0, c), col.x(), 1e-5));
        CHECK(close(analytic(1, c), col.y(), 1e-5));
      }
    }
  }
}
