#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <vector>

namespace stabctl {

enum class Direction { Forward, Backward };
enum class StepMethod { DormandPrince, RungeKutta4 };

/// Knobs for a single integration run. `dt` is the fixed step for
/// RungeKutta4 and the initial trial step for DormandPrince.
struct IntegrationSpec {
  double dt = 1e-3;
  double t_max = 500.0;
  Direction direction = Direction::Forward;
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
  double blowup_radius = 1e3;
  StepMethod method = StepMethod::DormandPrince;
  double max_step = std::numeric_limits<double>::infinity();

  bool operator==(const IntegrationSpec&) const = default;
};

enum class Termination { ReachedTmax, Blowup, EventHit, StiffnessFailure };

const char* to_string(Termination t);

/// Sampled solution. `times` holds the elapsed time in the integration
/// direction (always increasing); for backward runs the physical time is
/// the negative of the recorded value. All states are finite except
/// possibly the final sample of a Blowup run.
template <int N>
struct Trajectory {
  std::vector<double> times;
  std::vector<Eigen::Matrix<double, N, 1>> states;
  Termination termination = Termination::ReachedTmax;
};

namespace detail {

/// One embedded Dormand-Prince 5(4) step with FSAL. `k1` must hold
/// rhs(t, y) on entry; `k_last` receives rhs(t+h, y5) for FSAL reuse.
/// Returns the scaled error norm (accept when <= 1).
template <int N, class Rhs>
double dopri_step(Rhs& rhs, double t, const Eigen::Matrix<double, N, 1>& y, double h,
                  const Eigen::Matrix<double, N, 1>& k1, Eigen::Matrix<double, N, 1>& y5,
                  Eigen::Matrix<double, N, 1>& k_last, double abs_tol, double rel_tol) {
  using Vec = Eigen::Matrix<double, N, 1>;
  Vec k2, k3, k4, k5, k6, k7, tmp;

  tmp = y + h * (1.0 / 5.0) * k1;
  rhs(t + h / 5.0, tmp, k2);
  tmp = y + h * (3.0 / 40.0 * k1 + 9.0 / 40.0 * k2);
  rhs(t + 3.0 * h / 10.0, tmp, k3);
  tmp = y + h * (44.0 / 45.0 * k1 - 56.0 / 15.0 * k2 + 32.0 / 9.0 * k3);
  rhs(t + 4.0 * h / 5.0, tmp, k4);
  tmp = y + h * (19372.0 / 6561.0 * k1 - 25360.0 / 2187.0 * k2 + 64448.0 / 6561.0 * k3 -
                 212.0 / 729.0 * k4);
  rhs(t + 8.0 * h / 9.0, tmp, k5);
  tmp = y + h * (9017.0 / 3168.0 * k1 - 355.0 / 33.0 * k2 + 46732.0 / 5247.0 * k3 +
                 49.0 / 176.0 * k4 - 5103.0 / 18656.0 * k5);
  rhs(t + h, tmp, k6);
  y5 = y + h * (35.0 / 384.0 * k1 + 500.0 / 1113.0 * k3 + 125.0 / 192.0 * k4 -
                2187.0 / 6784.0 * k5 + 11.0 / 84.0 * k6);
  rhs(t + h, y5, k7);

  const Vec err = h * (71.0 / 57600.0 * k1 - 71.0 / 16695.0 * k3 + 71.0 / 1920.0 * k4 -
                       17253.0 / 339200.0 * k5 + 22.0 / 525.0 * k6 - 1.0 / 40.0 * k7);
  double acc = 0.0;
  for (int i = 0; i < N; ++i) {
    const double scale = abs_tol + rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
    const double e = err[i] / scale;
    acc += e * e;
  }
  k_last = k7;
  return std::sqrt(acc / N);
}

template <int N, class Rhs>
void rk4_step(Rhs& rhs, double t, const Eigen::Matrix<double, N, 1>& y, double h,
              Eigen::Matrix<double, N, 1>& out) {
  using Vec = Eigen::Matrix<double, N, 1>;
  Vec k1, k2, k3, k4, tmp;
  rhs(t, y, k1);
  tmp = y + 0.5 * h * k1;
  rhs(t + 0.5 * h, tmp, k2);
  tmp = y + 0.5 * h * k2;
  rhs(t + 0.5 * h, tmp, k3);
  tmp = y + h * k3;
  rhs(t + h, tmp, k4);
  out = y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

}  // namespace detail

/// Low-level driver. Steps from s0 at t=0 toward spec.t_max, reversing the
/// vector field for backward runs, and invokes on_accept(t, state) after
/// every accepted step (and once for the initial sample at t=0). Returning
/// true from on_accept stops integration with Termination::EventHit.
///
/// `final_time`/`final_state` hold the last sample on exit.
template <int N, class Rhs, class AcceptFn>
Termination drive(Rhs&& user_rhs, const Eigen::Matrix<double, N, 1>& s0,
                  const IntegrationSpec& spec, AcceptFn&& on_accept, double& final_time,
                  Eigen::Matrix<double, N, 1>& final_state) {
  using Vec = Eigen::Matrix<double, N, 1>;
  const double sign = spec.direction == Direction::Forward ? 1.0 : -1.0;
  auto rhs = [&](double t, const Vec& y, Vec& dy) {
    user_rhs(sign * t, y, dy);
    if (sign < 0.0) dy = -dy;
  };

  double t = 0.0;
  Vec y = s0;
  final_time = t;
  final_state = y;

  if (!y.allFinite() || y.norm() > spec.blowup_radius) {
    on_accept(t, y);
    return Termination::Blowup;
  }
  if (on_accept(t, y)) return Termination::EventHit;

  const double h_min = 1e-12 * spec.t_max;
  const bool adaptive = spec.method == StepMethod::DormandPrince;
  double h_next = std::min(spec.dt, spec.max_step);
  Vec k1, y_new, k_last;
  if (adaptive) rhs(t, y, k1);

  while (t < spec.t_max * (1.0 - 1e-15)) {
    const double h = std::min(h_next, spec.t_max - t);

    if (adaptive) {
      const double err =
          detail::dopri_step<N>(rhs, t, y, h, k1, y_new, k_last, spec.abs_tol, spec.rel_tol);
      if (!(std::isfinite(err) && err <= 1.0)) {
        const double shrink =
            std::isfinite(err) ? std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9) : 0.1;
        h_next = h * shrink;
        if (h_next < h_min) {
          return Termination::StiffnessFailure;
        }
        continue;
      }
      const double grow = err > 0.0 ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0) : 5.0;
      h_next = std::min(h * grow, spec.max_step);
      k1 = k_last;
    } else {
      detail::rk4_step<N>(rhs, t, y, h, y_new);
    }

    t += h;
    y = y_new;
    final_time = t;
    final_state = y;

    if (!y.allFinite() || y.norm() > spec.blowup_radius) {
      on_accept(t, y);
      return Termination::Blowup;
    }
    if (on_accept(t, y)) return Termination::EventHit;
  }
  return Termination::ReachedTmax;
}

/// Records every accepted step. `event` is evaluated at each sample;
/// a true result terminates the run with Termination::EventHit.
template <int N, class Rhs, class Event>
Trajectory<N> integrate(Rhs&& rhs, const Eigen::Matrix<double, N, 1>& s0,
                        const IntegrationSpec& spec, Event&& event) {
  Trajectory<N> out;
  double tf;
  Eigen::Matrix<double, N, 1> sf;
  out.termination = drive<N>(
      std::forward<Rhs>(rhs), s0, spec,
      [&](double t, const Eigen::Matrix<double, N, 1>& y) {
        out.times.push_back(t);
        out.states.push_back(y);
        return event(t, y);
      },
      tf, sf);
  return out;
}

template <int N, class Rhs>
Trajectory<N> integrate(Rhs&& rhs, const Eigen::Matrix<double, N, 1>& s0,
                        const IntegrationSpec& spec) {
  return integrate<N>(std::forward<Rhs>(rhs), s0, spec,
                      [](double, const Eigen::Matrix<double, N, 1>&) { return false; });
}

}  // namespace stabctl
