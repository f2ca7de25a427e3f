#include <doctest.h>

#include <cmath>

#include "stabctl/integrator.hpp"
#include "stabctl/planar_field.hpp"
#include "test_util.hpp"

using namespace stabctl;
using namespace stabctl::testing;

namespace {

void bvp_planar(double, const Vec2& z, Vec2& dz) {
  static const PlanarField field = bvp_field({});
  dz = field.eval(z);
}

}  // namespace

TEST_CASE("exponential decay to 1e-6") {
  auto rhs = [](double, const Vec2& y, Vec2& dy) { dy = Vec2(-y.x(), 0.0); };
  IntegrationSpec spec;
  spec.t_max = 5.0;
  const auto traj = integrate<2>(rhs, Vec2(1.0, 0.0), spec);
  CHECK(traj.termination == Termination::ReachedTmax);
  CHECK(std::abs(traj.states.back().x() - std::exp(-5.0)) <= 1e-6);
}

TEST_CASE("harmonic oscillator returns after one period") {
  auto rhs = [](double, const Vec2& y, Vec2& dy) { dy = Vec2(y.y(), -y.x()); };
  IntegrationSpec spec;
  spec.t_max = 2.0 * M_PI;
  const auto traj = integrate<2>(rhs, Vec2(1.0, 0.0), spec);
  CHECK((traj.states.back() - Vec2(1.0, 0.0)).norm() <= 1e-5);
}

TEST_CASE("times are strictly increasing and states finite") {
  IntegrationSpec spec;
  spec.t_max = 30.0;
  const auto traj = integrate<2>(bvp_planar, Vec2(2.0, 0.0), spec);
  REQUIRE(traj.states.size() > 10);
  for (std::size_t i = 1; i < traj.times.size(); ++i) {
    CHECK(traj.times[i] > traj.times[i - 1]);
    CHECK(traj.states[i].allFinite());
  }
}

TEST_CASE("fixed-step order of accuracy at least 3.5 on the oscillation") {
  // reference endpoint with tight adaptive tolerances
  IntegrationSpec ref;
  ref.t_max = 1.0;
  ref.abs_tol = ref.rel_tol = 1e-13;
  const Vec2 s0(2.0, 0.0);
  const Vec2 exact = integrate<2>(bvp_planar, s0, ref).states.back();

  auto endpoint_err = [&](double dt) {
    IntegrationSpec spec;
    spec.method = StepMethod::RungeKutta4;
    spec.dt = dt;
    spec.t_max = 1.0;
    return (integrate<2>(bvp_planar, s0, spec).states.back() - exact).norm();
  };
  const double e1 = endpoint_err(1e-2);
  const double e2 = endpoint_err(5e-3);
  const double order = std::log2(e1 / e2);
  CHECK(order >= 3.5);
}

TEST_CASE("forward then backward returns to the start") {
  const Vec2 s0(2.0, 0.0);
  IntegrationSpec fwd;
  fwd.t_max = 20.0;
  const Vec2 mid = integrate<2>(bvp_planar, s0, fwd).states.back();
  IntegrationSpec bwd = fwd;
  bwd.direction = Direction::Backward;
  const Vec2 back = integrate<2>(bvp_planar, mid, bwd).states.back();
  CHECK((back - s0).norm() <= 1e-6 * (1.0 + s0.norm()));
}

TEST_CASE("immediate blowup outside the radius") {
  auto rhs = [](double, const Vec2& y, Vec2& dy) { dy = y; };
  IntegrationSpec spec;
  spec.blowup_radius = 10.0;
  const auto traj = integrate<2>(rhs, Vec2(20.0, 0.0), spec);
  CHECK(traj.termination == Termination::Blowup);
  CHECK(traj.states.size() == 1);
}

TEST_CASE("blowup of a cubically growing solution") {
  auto rhs = [](double, const Vec2& y, Vec2& dy) { dy = Vec2(y.x() * y.x(), 0.0); };
  IntegrationSpec spec;
  spec.t_max = 10.0;
  const auto traj = integrate<2>(rhs, Vec2(1.0, 0.0), spec);
  CHECK(traj.termination == Termination::Blowup);
}

TEST_CASE("event terminates the run") {
  auto rhs = [](double, const Vec2& y, Vec2& dy) { dy = Vec2(1.0, 0.0); };
  IntegrationSpec spec;
  spec.t_max = 100.0;
  const auto traj = integrate<2>(rhs, Vec2(0.0, 0.0), spec,
                                 [](double, const Vec2& y) { return y.x() >= 3.0; });
  CHECK(traj.termination == Termination::EventHit);
  CHECK(traj.states.back().x() >= 3.0);
  CHECK(traj.states.back().x() <= 3.2);
}

TEST_CASE("derivative singularity reports stiffness failure") {
  // y' = 0.5 / sqrt(1 - t): bounded solution, unbounded slope at t = 1.
  auto rhs = [](double t, const Vec2&, Vec2& dy) {
    dy = Vec2(0.5 / std::sqrt(std::max(1.0 - t, 0.0)), 0.0);
  };
  IntegrationSpec spec;
  spec.t_max = 2.0;
  const auto traj = integrate<2>(rhs, Vec2(0.0, 0.0), spec);
  CHECK(traj.termination == Termination::StiffnessFailure);
  CHECK(traj.states.back().x() <= 1.1);
}

TEST_CASE("backward time flips the field sign for nonautonomous terms") {
  // y' = t: backward run integrates y(tau) = y0 - (physical t) ... the
  // recorded state must satisfy y(tau) = y0 + tau^2/2 since t = -tau.
  auto rhs = [](double t, const Vec2&, Vec2& dy) { dy = Vec2(t, 0.0); };
  IntegrationSpec spec;
  spec.t_max = 2.0;
  spec.direction = Direction::Backward;
  const auto traj = integrate<2>(rhs, Vec2(0.0, 0.0), spec);
  CHECK(std::abs(traj.states.back().x() - 2.0) <= 1e-8);
}
