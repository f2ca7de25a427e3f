#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <complex>

#include "stabctl/equilibria.hpp"
#include "test_util.hpp"

using namespace stabctl;
using namespace stabctl::testing;

namespace {

Complex det_char(const AugSystem& sys, const EquilibriumReport& rep, Complex lambda) {
  const Vec4 s(rep.z.x(), rep.z.y(), rep.q.x(), rep.q.y());
  const Mat4 j = aug_jacobian(sys, s);
  Eigen::Matrix4cd m = lambda * Eigen::Matrix4cd::Identity() - j.cast<Complex>();
  return m.determinant();
}

}  // namespace

TEST_CASE("bvp trivial equilibrium and planar eigenvalues") {
  const PlanarField field = bvp_field({});
  const auto roots = find_trivial_equilibria(field, Vec2(-3, -3), Vec2(3, 3));
  REQUIRE(roots.size() == 1);
  CHECK(std::abs(roots[0].z.x() - 0.958366) <= 1e-4);
  CHECK(std::abs(roots[0].z.y() - (-0.322957)) <= 1e-4);
  CHECK(field.eval(roots[0].z).norm() <= 1e-10);

  // published eigenvalues -0.011031 +- 0.966773i
  const auto& e = roots[0].df_eigs;
  CHECK(std::abs(e[0].real() - (-0.011031)) <= 1e-4);
  CHECK(std::abs(std::abs(e[0].imag()) - 0.966773) <= 1e-4);
  CHECK(e[1] == std::conj(e[0]));
}

TEST_CASE("double well roots classified by slope") {
  const ScalarField f = double_well_field();
  REQUIRE(f.stable_roots.size() == 2);
  REQUIRE(f.unstable_roots.size() == 1);
  CHECK(f.stable_roots[0] == doctest::Approx(-1.0).epsilon(1e-10));
  CHECK(f.stable_roots[1] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(f.unstable_roots[0] == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(f.fp(f.stable_roots[0]) < 0);
  CHECK(f.fp(f.unstable_roots[0]) > 0);
}

TEST_CASE("bvp nontrivial equilibria match the closed-form reduction") {
  const AugSystem sys = make_aug_system(bvp_field({}), 2.5);
  const auto reports = find_nontrivial_equilibria(sys, Vec2(-3, -3), Vec2(3, 3));
  REQUIRE(reports.size() == 2);

  for (int k = 0; k < 2; ++k) {
    const auto oracle = bvp_nontrivial_oracle({}, 2.5, k == 0 ? -1 : +1);
    const auto& rep = reports[k];
    CHECK(std::abs(rep.z.x() - oracle.x) <= 1e-9);
    CHECK(std::abs(rep.z.y() - oracle.y) <= 1e-9);
    CHECK(std::abs(rep.q.x() - oracle.q1) <= 1e-8);
    CHECK(std::abs(rep.q.y() - oracle.q2) <= 1e-8);
    CHECK(std::abs(std::abs(rep.z.x()) - 1.40804) <= 1e-5);

    // residual and the three-stable-directions structure
    const Vec4 s(rep.z.x(), rep.z.y(), rep.q.x(), rep.q.y());
    CHECK(aug_rhs(sys, s).norm() <= 1e-9 * (1.0 + rep.z.norm() + rep.q.norm()));
    CHECK(rep.a3_satisfied);
    CHECK(rep.stable_dim == 3);
    int positive = 0;
    for (const auto& e : rep.eigenvalues)
      if (e.real() > 1e-10) ++positive;
    CHECK(positive == 1);
  }
}

TEST_CASE("characteristic quartic equals the determinant at equilibria") {
  auto rng = test_rng(31);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (ControlMode mode : {ControlMode::OneSidedX, ControlMode::TwoSided,
                           ControlMode::OneSidedY}) {
    const AugSystem sys = make_aug_system(bvp_field({}), 2.5, mode);
    const auto reports = find_nontrivial_equilibria(sys, Vec2(-3, -3), Vec2(3, 3));
    REQUIRE(reports.size() == 2);
    for (const auto& rep : reports) {
      for (int trial = 0; trial < 20; ++trial) {
        const Complex lambda(u(rng), u(rng));
        const Complex lhs = char_poly(sys, rep, lambda);
        const Complex rhs = det_char(sys, rep, lambda);
        CHECK(std::abs(lhs - rhs) <= 1e-8 * std::max(1.0, std::abs(rhs)));
      }
    }
  }
}

TEST_CASE("extremum of the quartic at -rho/2") {
  const AugSystem sys = make_aug_system(bvp_field({}), 2.5);
  const auto reports = find_nontrivial_equilibria(sys, Vec2(-3, -3), Vec2(3, 3));
  REQUIRE(reports.size() == 2);
  for (const auto& rep : reports) {
    CHECK(std::abs(char_poly_derivative(sys, rep, Complex(-1.25, 0.0))) <= 1e-8);
    // independent numeric derivative
    const double h = 1e-6;
    const Complex num =
        (char_poly(sys, rep, Complex(-1.25 + h, 0)) - char_poly(sys, rep, Complex(-1.25 - h, 0))) /
        (2.0 * h);
    CHECK(std::abs(num) <= 1e-4);
  }
}

TEST_CASE("a3 value and lambda0 are consistent in every mode") {
  for (ControlMode mode : {ControlMode::OneSidedX, ControlMode::TwoSided,
                           ControlMode::OneSidedY}) {
    const AugSystem sys = make_aug_system(bvp_field({}), 2.5, mode);
    for (const auto& rep : find_nontrivial_equilibria(sys, Vec2(-3, -3), Vec2(3, 3))) {
      CHECK(rep.lambda0 == -rep.a3_value);
      CHECK(rep.a3_satisfied == (rep.a3_value > 0.0));
      if (mode != ControlMode::OneSidedY) {
        // lambda0 agrees with the true constant term for the injected modes
        CHECK(std::abs(rep.lambda0 - char_poly(sys, rep, Complex(0, 0)).real()) <=
              1e-8 * std::max(1.0, std::abs(rep.lambda0)));
      }
    }
  }
}

TEST_CASE("y-only control: the displayed inequality fails, Lambda(0) positive") {
  const AugSystem sys = make_aug_system(bvp_field({}), 2.5, ControlMode::OneSidedY);
  const auto reports = find_nontrivial_equilibria(sys, Vec2(-3, -3), Vec2(3, 3));
  REQUIRE(reports.size() == 2);
  for (const auto& rep : reports) {
    CHECK(rep.lambda0 > 0.0);
    CHECK_FALSE(rep.a3_satisfied);
    // the true determinant is nonetheless negative: three stable directions
    CHECK(char_poly(sys, rep, Complex(0, 0)).real() < 0.0);
    CHECK(rep.stable_dim == 3);
  }
}

TEST_CASE("trivial augmented spectrum pairs as {lambda_i, -lambda_i - rho}") {
  const AugSystem sys = make_aug_system(bvp_field({}), 2.5);
  const auto roots = find_trivial_equilibria(sys.field, Vec2(-3, -3), Vec2(3, 3));
  REQUIRE(roots.size() == 1);
  const EquilibriumReport rep = trivial_report(sys, roots[0].z);

  std::vector<Complex> expected;
  for (const auto& lam : roots[0].df_eigs) {
    expected.push_back(lam);
    expected.push_back(-lam - sys.rho);
  }
  for (const auto& want : expected) {
    double best = 1e9;
    for (const auto& got : rep.eigenvalues) best = std::min(best, std::abs(got - want));
    CHECK(best <= 1e-8);
  }
  CHECK(rep.stable_dim == 4);
}

TEST_CASE("nontrivial spectra pair-sum to -rho") {
  for (double rho : {1.0, 2.5, 5.0}) {
    const AugSystem sys = make_aug_system(bvp_field({}), rho);
    for (const auto& rep : find_nontrivial_equilibria(sys, Vec2(-3, -3), Vec2(3, 3))) {
      // each eigenvalue lambda has a partner -rho - lambda
      for (const auto& e : rep.eigenvalues) {
        double best = 1e9;
        for (const auto& other : rep.eigenvalues)
          best = std::min(best, std::abs(e + other + rho));
        CHECK(best <= 1e-7);
      }
    }
  }
}

TEST_CASE("degenerate kernel is flagged when g_x vanishes") {
  // f = -x^2/2, g = -2y: at rho=1 the nontrivial point sits at (1, 0) and
  // the spec'd kernel row (rho+f_x) q1 + g_x q2 = 0 degenerates to 0 = 0.
  PlanarField field;
  field.name = "kernel-degenerate";
  field.eval = [](const Vec2& z) { return Vec2(-0.5 * z.x() * z.x(), -2.0 * z.y()); };
  field.jac = [](const Vec2& z) {
    Mat2 j;
    j << -z.x(), 0.0, 0.0, -2.0;
    return j;
  };
  field.second_partials = [](const Vec2&) {
    SecondPartials s;
    s.fxx = -1.0;
    return s;
  };
  const AugSystem sys = make_aug_system(field, 1.0);
  const auto reports = find_nontrivial_equilibria(sys, Vec2(-3, -3), Vec2(3, 3));
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].degenerate);
  CHECK(std::abs(reports[0].z.x() - 1.0) <= 1e-9);
  CHECK(std::abs(reports[0].q.x() - 0.5) <= 1e-9);
}

TEST_CASE("one-dimensional equilibria") {
  const ScalarField f = double_well_field();

  SUBCASE("nontrivial pair at rho = 0.5") {
    const auto reports = equilibria_1d(f, 0.5);
    int nontrivial = 0;
    for (const auto& e : reports) {
      if (e.kind != EquilibriumKind::Nontrivial) continue;
      ++nontrivial;
      // oracle: 0.5 + 1 - 3 x^2 = 0
      CHECK(std::abs(std::abs(e.x) - std::sqrt(0.5)) <= 1e-10);
      CHECK(std::abs(e.q - (-f.f(e.x))) <= 1e-12);
    }
    CHECK(nontrivial == 2);
  }

  SUBCASE("trivial eigenvalues {f', -f'-rho} and the marginal case") {
    const auto at_15 = equilibria_1d(f, 1.5);
    for (const auto& e : at_15) {
      if (e.kind != EquilibriumKind::Trivial || std::abs(e.x - 1.0) > 1e-9) continue;
      CHECK(e.eig1.real() == doctest::Approx(-2.0).epsilon(1e-9));
      CHECK(e.eig2.real() == doctest::Approx(0.5).epsilon(1e-9));
      CHECK(e.saddle);  // stable root turned saddle: rho below -f'(x*)
    }
    const auto at_2 = equilibria_1d(f, 2.0);
    for (const auto& e : at_2) {
      if (e.kind != EquilibriumKind::Trivial || std::abs(e.x - 1.0) > 1e-9) continue;
      CHECK(e.eig2.real() == doctest::Approx(0.0).epsilon(1e-12));
    }
  }

  SUBCASE("eigenvalue formula matches the 2x2 jacobian") {
    for (double rho : {0.5, 3.5}) {
      for (const auto& e : equilibria_1d(f, rho)) {
        if (e.kind != EquilibriumKind::Nontrivial) continue;
        Eigen::EigenSolver<Mat2> solver(jacobian_1d(f, rho, Vec2(e.x, e.q)));
        for (const Complex want : {e.eig1, e.eig2}) {
          double best = 1e9;
          for (int i = 0; i < 2; ++i)
            best = std::min(best, std::abs(Complex(solver.eigenvalues()[i]) - want));
          CHECK(best <= 1e-10);
        }
        CHECK(e.saddle == (f.fpp(e.x) * f.f(e.x) > 0.0));
      }
    }
  }
}
