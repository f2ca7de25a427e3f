#include "stabctl/limit_cycle.hpp"

#include <algorithm>
#include <cmath>

#include "stabctl/geometry.hpp"

namespace stabctl {

double ClosedOrbit::x_min() const {
  double m = points.front().x();
  for (const auto& p : points) m = std::min(m, p.x());
  return m;
}

double ClosedOrbit::x_max() const {
  double m = points.front().x();
  for (const auto& p : points) m = std::max(m, p.x());
  return m;
}

namespace {

struct PlanarRhs {
  const PlanarField* field;
  void operator()(double, const Vec2& z, Vec2& dz) const { dz = field->eval(z); }
};

// Advance a state by dt with fixed RK4 substeps; used for section-crossing
// refinement where dt is already a fraction of an accepted step.
Vec2 advance_fixed(const PlanarRhs& rhs, const Vec2& z0, double dt, int substeps) {
  Vec2 z = z0;
  const double h = dt / substeps;
  for (int i = 0; i < substeps; ++i) {
    Vec2 k1, k2, k3, k4, tmp;
    rhs(0, z, k1);
    tmp = z + 0.5 * h * k1;
    rhs(0, tmp, k2);
    tmp = z + 0.5 * h * k2;
    rhs(0, tmp, k3);
    tmp = z + h * k3;
    rhs(0, tmp, k4);
    z += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return z;
}

struct Crossing {
  double t;
  Vec2 z;
};

}  // namespace

ClosedOrbit find_cycle(const PlanarField& field, const Vec2& seed, Direction direction,
                       const CycleSearch& search) {
  IntegrationSpec spec = search.integ;
  spec.direction = direction;
  const double sign = direction == Direction::Forward ? 1.0 : -1.0;
  PlanarRhs fwd{&field};         // drive() applies the direction itself
  PlanarRhs refine_rhs{&field};  // used with signed dt during refinement

  // Settle onto the cycle.
  spec.t_max = search.transient;
  double tf;
  Vec2 z;
  auto term = drive<2>(fwd, seed, spec, [](double, const Vec2&) { return false; }, tf, z);
  if (term != Termination::ReachedTmax)
    throw NoCycleFound("transient escaped: " + std::string(to_string(term)));

  // Probe one loop to find an interior anchor for the section.
  spec.t_max = search.horizon / 4.0;
  std::vector<Vec2> probe;
  Vec2 z_after_probe;
  term = drive<2>(
      fwd, z, spec,
      [&](double, const Vec2& s) {
        probe.push_back(s);
        return false;
      },
      tf, z_after_probe);
  if (term != Termination::ReachedTmax || probe.size() < 8)
    throw NoCycleFound("probe loop escaped");
  Vec2 anchor = Vec2::Zero();
  for (const auto& p : probe) anchor += p;
  anchor /= double(probe.size());

  // Collect section crossings {y = anchor_y, x > anchor_x}, locking onto the
  // sign change direction of the first detected crossing.
  std::vector<Crossing> crossings;
  int lock_dir = 0;  // +1: y-anchor_y rises through 0, -1: falls
  double prev_t = 0.0;
  Vec2 prev_z = z;
  bool have_prev = false;
  double period = -1.0;
  auto on_step = [&](double t, const Vec2& s) {
    if (have_prev) {
      const double f0 = prev_z.y() - anchor.y();
      const double f1 = s.y() - anchor.y();
      const int dir = f0 <= 0.0 && f1 > 0.0 ? +1 : (f0 >= 0.0 && f1 < 0.0 ? -1 : 0);
      if (dir != 0 && (lock_dir == 0 || dir == lock_dir) &&
          std::max(prev_z.x(), s.x()) > anchor.x()) {
        // refine by bisection on the step interval
        double lo = 0.0, hi = t - prev_t;
        Vec2 z_hi = s;
        for (int it = 0; it < 60 && hi - lo > 1e-14 * std::max(1.0, t); ++it) {
          const double mid = 0.5 * (lo + hi);
          const Vec2 zm = advance_fixed(refine_rhs, prev_z, sign * mid, 4);
          const double fm = zm.y() - anchor.y();
          if ((dir > 0) == (fm > 0.0)) {
            hi = mid;
            z_hi = zm;
          } else {
            lo = mid;
          }
        }
        if (z_hi.x() > anchor.x()) {
          if (lock_dir == 0) lock_dir = dir;
          crossings.push_back({prev_t + 0.5 * (lo + hi), z_hi});
          if (crossings.size() >= 4) {
            const auto k = crossings.size();
            const double t1 = crossings[k - 1].t - crossings[k - 2].t;
            const double t2 = crossings[k - 2].t - crossings[k - 3].t;
            const double t3 = crossings[k - 3].t - crossings[k - 4].t;
            if (std::abs(t1 - t2) < search.period_rtol * t1 &&
                std::abs(t2 - t3) < search.period_rtol * t1) {
              period = t1;
              return true;  // converged
            }
          }
        }
      }
    }
    prev_t = t;
    prev_z = s;
    have_prev = true;
    return false;
  };
  spec.t_max = search.horizon;
  Vec2 z_end;
  term = drive<2>(fwd, z, spec, on_step, tf, z_end);
  if (period <= 0.0)
    throw NoCycleFound(crossings.empty() ? "no section crossings within horizon"
                                         : "period estimates did not settle");

  // Sample one period densely from the last crossing and resample uniformly.
  ClosedOrbit orbit;
  orbit.period = period;
  orbit.stability = direction == Direction::Forward ? CycleStability::Stable
                                                    : CycleStability::Unstable;
  Vec2 start = crossings.back().z;
  for (int attempt = 0; attempt < 3; ++attempt) {
    std::vector<Vec2> dense;
    IntegrationSpec pass = search.integ;
    pass.direction = direction;
    pass.t_max = period;
    pass.max_step = period / 1500.0;
    Vec2 ret;
    drive<2>(
        fwd, start, pass,
        [&](double, const Vec2& s) {
          dense.push_back(s);
          return false;
        },
        tf, ret);
    orbit.points = arclength_resample(dense, search.samples);
    if ((orbit.points.back() - orbit.points.front()).norm() <= search.closure_tol) return orbit;
    start = ret;  // settle one more loop and retry
  }
  throw NoCycleFound("cycle closure residual above tolerance");
}

double distance_to_orbit(const Vec4& s, const ClosedOrbit& orbit) {
  const Vec2 z = s.head<2>();
  const double q2 = s.tail<2>().squaredNorm();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < orbit.points.size(); ++i)
    best = std::min(best, segment_point_dist2(orbit.points[i], orbit.points[i + 1], z));
  return std::sqrt(best + q2);
}

double planar_distance_to_orbit(const Vec2& z, const ClosedOrbit& orbit) {
  return distance_to_orbit(Vec4(z.x(), z.y(), 0.0, 0.0), orbit);
}

}  // namespace stabctl
