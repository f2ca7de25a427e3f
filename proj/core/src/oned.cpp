#include "stabctl/oned.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "stabctl/augmented.hpp"
#include "stabctl/integrator.hpp"

namespace stabctl {

OneDAudit audit_1d(const ScalarField& f, double rho) {
  if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
  OneDAudit out;
  std::ostringstream detail;
  detail.precision(9);

  // A2': count sign changes of rho + f' and record the interval bounds.
  std::vector<double> boundary;
  auto g = [&](double x) { return rho + f.fp(x); };
  const double lo = -20.0, hi = 20.0;
  const int n = 40000;
  double prev_x = lo, prev_g = g(lo);
  for (int i = 1; i <= n; ++i) {
    const double x = lo + (hi - lo) * double(i) / n;
    const double gx = g(x);
    if ((prev_g < 0) != (gx < 0)) {
      double a = prev_x, b = x, fa = prev_g;
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (a + b);
        if ((fa < 0) == (g(mid) < 0)) {
          a = mid;
          fa = g(mid);
        } else {
          b = mid;
        }
      }
      boundary.push_back(0.5 * (a + b));
    }
    prev_x = x;
    prev_g = gx;
  }
  out.nontrivial_count = int(boundary.size());
  out.a2 = boundary.size() == 2;
  detail << "roots of rho+f': " << boundary.size() << "; ";

  if (out.a2) {
    out.d_rho_lo = boundary[0];
    out.d_rho_hi = boundary[1];
    detail << "D_rho = (" << out.d_rho_lo << ", " << out.d_rho_hi << "); ";

    // A1': all classified roots of f inside the interval.
    out.a1 = true;
    for (const auto& list : {f.stable_roots, f.unstable_roots})
      for (double x : list)
        if (!(x > out.d_rho_lo && x < out.d_rho_hi)) {
          out.a1 = false;
          detail << "root " << x << " outside D_rho; ";
        }

    // A3': f f'' > 0 sampled outside D_rho.
    out.a3 = true;
    for (int i = 0; i < 2000; ++i) {
      const double span = 8.0;
      const double x_left = out.d_rho_lo - span * (i + 0.5) / 2000.0;
      const double x_right = out.d_rho_hi + span * (i + 0.5) / 2000.0;
      if (f.f(x_left) * f.fpp(x_left) <= 0.0) {
        out.a3 = false;
        detail << "f f'' <= 0 at " << x_left << "; ";
        break;
      }
      if (f.f(x_right) * f.fpp(x_right) <= 0.0) {
        out.a3 = false;
        detail << "f f'' <= 0 at " << x_right << "; ";
        break;
      }
    }
  }

  // A4': f' heading to -infinity (monotone decrease at large |x|).
  out.a4 = f.fp(1e3) > f.fp(1e4) && f.fp(-1e3) > f.fp(-1e4) && f.fp(1e4) < -1.0 &&
           f.fp(-1e4) < -1.0;
  detail << "f'(1e3)=" << f.fp(1e3) << " f'(1e4)=" << f.fp(1e4);
  out.detail = detail.str();
  return out;
}

Separatrix trace_separatrix(const ScalarField& f, double rho, const OneDEquilibrium& saddle,
                            double arc_budget) {
  const Vec2 s(saddle.x, saddle.q);
  const Mat2 j = jacobian_1d(f, rho, s);
  Eigen::EigenSolver<Mat2> solver(j);
  int stable_index = -1;
  int stable_count = 0;
  for (int i = 0; i < 2; ++i) {
    if (std::abs(solver.eigenvalues()[i].imag()) > 1e-12) continue;
    if (solver.eigenvalues()[i].real() < 0.0) {
      stable_index = i;
      ++stable_count;
    }
  }
  if (stable_count != 1)
    throw std::invalid_argument("trace_separatrix: equilibrium is not a saddle");

  Vec2 v = solver.eigenvectors().col(stable_index).real();
  v.normalize();
  constexpr double kEps = 1e-6;

  Separatrix out;
  auto rhs = [&](double, const Vec2& y, Vec2& dy) { dy = rhs_1d(f, rho, y); };
  for (int branch = 0; branch < 2; ++branch) {
    const Vec2 start = s + (branch == 0 ? kEps : -kEps) * v;
    IntegrationSpec spec;
    spec.direction = Direction::Backward;
    spec.t_max = 1e4;
    spec.blowup_radius = 1e6;
    double arc = 0.0;
    Vec2 prev = start;
    std::vector<Vec2>& line = out.branches[branch];
    double tf;
    Vec2 sf;
    drive<2>(
        rhs, start, spec,
        [&](double, const Vec2& y) {
          arc += (y - prev).norm();
          prev = y;
          line.push_back(y);
          return arc >= arc_budget;
        },
        tf, sf);
  }
  return out;
}

}  // namespace stabctl
