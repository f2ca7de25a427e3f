#include "stabctl/equilibria.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stabctl {
namespace {

constexpr double kResidualTol = 1e-10;
constexpr double kDedupRadius = 1e-6;
constexpr int kGrid = 50;
constexpr int kMaxNewton = 100;

std::array<Complex, 2> eig2x2(const Mat2& m) {
  const double tr = m.trace();
  const double det = m.determinant();
  const Complex disc = std::sqrt(Complex(tr * tr - 4.0 * det, 0.0));
  return {0.5 * (tr + disc), 0.5 * (tr - disc)};
}

// Damped Newton for a planar system; returns true on residual convergence.
template <class Fn, class Jn>
bool newton2d(const Fn& fn, const Jn& jn, Vec2& z) {
  for (int it = 0; it < kMaxNewton; ++it) {
    const Vec2 r = fn(z);
    if (!r.allFinite()) return false;
    if (r.norm() <= 1e-12) return true;
    const Mat2 j = jn(z);
    const double det = j.determinant();
    if (det == 0.0 || !std::isfinite(det)) return false;
    Vec2 step = j.inverse() * r;
    double lambda = 1.0;
    const double r0 = r.norm();
    for (int back = 0; back < 30; ++back) {
      const Vec2 trial = z - lambda * step;
      if (fn(trial).norm() < r0) {
        z = trial;
        break;
      }
      lambda *= 0.5;
      if (back == 29) z -= lambda * step;
    }
    if (z.norm() > 1e3) return false;
  }
  return fn(z).norm() <= 1e-12;
}

template <class Fn, class Jn>
std::vector<Vec2> grid_newton(const Fn& fn, const Jn& jn, const Vec2& lo, const Vec2& hi,
                              double residual_tol) {
  std::vector<Vec2> roots;
  for (int i = 0; i < kGrid; ++i) {
    for (int j = 0; j < kGrid; ++j) {
      Vec2 z(lo.x() + (hi.x() - lo.x()) * (i + 0.5) / kGrid,
             lo.y() + (hi.y() - lo.y()) * (j + 0.5) / kGrid);
      if (!newton2d(fn, jn, z)) continue;
      if (fn(z).norm() > residual_tol) continue;
      bool dup = false;
      for (const auto& r : roots)
        if ((r - z).norm() < kDedupRadius) {
          dup = true;
          break;
        }
      if (!dup) roots.push_back(z);
    }
  }
  std::sort(roots.begin(), roots.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() != b.x() ? a.x() < b.x() : a.y() < b.y();
  });
  return roots;
}

double det_rho_df(const AugSystem& sys, const Vec2& z) {
  const Mat2 j = sys.field.jac(z);
  return (sys.rho + j(0, 0)) * (sys.rho + j(1, 1)) - j(0, 1) * j(1, 0);
}

Vec2 det_rho_df_grad(const AugSystem& sys, const Vec2& z) {
  const Mat2 j = sys.field.jac(z);
  const SecondPartials s = sys.field.second_partials(z);
  const double fx = j(0, 0), fy = j(0, 1), gx = j(1, 0), gy = j(1, 1);
  return Vec2(s.fxx * (sys.rho + gy) + (sys.rho + fx) * s.gxy - s.fxy * gx - fy * s.gxx,
              s.fxy * (sys.rho + gy) + (sys.rho + fx) * s.gyy - s.fyy * gx - fy * s.gxy);
}

void fill_eigen_data(const AugSystem& sys, EquilibriumReport& rep) {
  const Vec4 s(rep.z.x(), rep.z.y(), rep.q.x(), rep.q.y());
  Eigen::EigenSolver<Mat4> solver(aug_jacobian(sys, s));
  std::array<Complex, 4> eigs;
  for (int i = 0; i < 4; ++i) eigs[i] = solver.eigenvalues()[i];
  std::sort(eigs.begin(), eigs.end(), [](const Complex& a, const Complex& b) {
    return a.real() != b.real() ? a.real() > b.real() : a.imag() > b.imag();
  });
  rep.eigenvalues = eigs;
  rep.stable_dim = 0;
  rep.marginal = false;
  for (const auto& e : eigs) {
    if (std::abs(e.real()) < 1e-10)
      rep.marginal = true;
    else if (e.real() < 0.0)
      ++rep.stable_dim;
  }
}

}  // namespace

std::vector<PlanarRoot> find_trivial_equilibria(const PlanarField& field, const Vec2& box_lo,
                                                const Vec2& box_hi) {
  auto fn = [&](const Vec2& z) { return field.eval(z); };
  auto jn = [&](const Vec2& z) { return field.jac(z); };
  std::vector<PlanarRoot> out;
  for (const Vec2& z : grid_newton(fn, jn, box_lo, box_hi, kResidualTol))
    out.push_back({z, eig2x2(field.jac(z))});
  return out;
}

A3Check check_a3(const AugSystem& sys, const Vec2& z, const Vec2& q) {
  const Mat2 j = sys.field.jac(z);
  const HessianTerms h = hessian_terms(sys.field, z, q);
  const double fx = j(0, 0), fy = j(0, 1), gx = j(1, 0), gy = j(1, 1);
  const double quad_g = gx * gx * h.h4 - gx * gy * (h.h2 + h.h3) + gy * gy * h.h1;
  double value;
  if (sys.mode == ControlMode::TwoSided) {
    const double quad_f = fx * fx * h.h4 - fx * fy * (h.h2 + h.h3) + fy * fy * h.h1;
    value = quad_f + quad_g + sys.rho * (h.h1 * gy - h.h2 * gx - h.h3 * fy + h.h4 * fx) -
            (h.h1 * h.h4 - h.h2 * h.h3);
  } else {
    value = quad_g + sys.rho * (h.h1 * gy - h.h2 * gx);
  }
  return A3Check{value, value > 0.0};
}

std::vector<EquilibriumReport> find_nontrivial_equilibria(const AugSystem& sys,
                                                          const Vec2& box_lo,
                                                          const Vec2& box_hi) {
  auto closure = [&](const Vec2& z) -> double {
    const Vec2 F = sys.field.eval(z);
    const Mat2 j = sys.field.jac(z);
    switch (sys.mode) {
      case ControlMode::OneSidedX: return F.y();
      case ControlMode::OneSidedY: return F.x();
      case ControlMode::TwoSided: return (sys.rho + j(0, 0)) * F.x() + j(1, 0) * F.y();
    }
    return 0.0;
  };
  auto closure_grad = [&](const Vec2& z) -> Vec2 {
    const Mat2 j = sys.field.jac(z);
    switch (sys.mode) {
      case ControlMode::OneSidedX: return Vec2(j(1, 0), j(1, 1));
      case ControlMode::OneSidedY: return Vec2(j(0, 0), j(0, 1));
      case ControlMode::TwoSided: {
        const Vec2 F = sys.field.eval(z);
        const SecondPartials s = sys.field.second_partials(z);
        const double fx = j(0, 0), fy = j(0, 1), gx = j(1, 0), gy = j(1, 1);
        return Vec2(s.fxx * F.x() + (sys.rho + fx) * fx + s.gxx * F.y() + gx * gx,
                    s.fxy * F.x() + (sys.rho + fx) * fy + s.gxy * F.y() + gx * gy);
      }
    }
    return Vec2::Zero();
  };

  auto fn = [&](const Vec2& z) { return Vec2(det_rho_df(sys, z), closure(z)); };
  auto jn = [&](const Vec2& z) {
    Mat2 m;
    m.row(0) = det_rho_df_grad(sys, z).transpose();
    m.row(1) = closure_grad(z).transpose();
    return m;
  };

  std::vector<EquilibriumReport> reports;
  for (const Vec2& z : grid_newton(fn, jn, box_lo, box_hi, kResidualTol)) {
    const Vec2 F = sys.field.eval(z);
    const Mat2 j = sys.field.jac(z);
    const double fx = j(0, 0), fy = j(0, 1), gx = j(1, 0), gy = j(1, 1);

    EquilibriumReport rep;
    rep.z = z;
    rep.kind = EquilibriumKind::Nontrivial;
    switch (sys.mode) {
      case ControlMode::OneSidedX: {
        const double q1 = -F.x();
        if (std::abs(gx) < 1e-12 * (1.0 + std::abs(sys.rho + fx))) {
          rep.degenerate = std::abs(q1) > 0.0;
          rep.q = Vec2(q1, 0.0);
        } else {
          rep.q = Vec2(q1, -(sys.rho + fx) * q1 / gx);
        }
        break;
      }
      case ControlMode::OneSidedY: {
        const double q2 = -F.y();
        // kernel rows of [rho I + D_F^T]: (rho+fx) q1 + gx q2 = 0,
        //                                 fy q1 + (rho+gy) q2 = 0
        if (std::abs(sys.rho + fx) >= std::abs(fy)) {
          if (std::abs(sys.rho + fx) < 1e-12) {
            rep.degenerate = std::abs(q2) > 0.0;
            rep.q = Vec2(0.0, q2);
          } else {
            rep.q = Vec2(-gx * q2 / (sys.rho + fx), q2);
          }
        } else {
          rep.q = Vec2(-(sys.rho + gy) * q2 / fy, q2);
        }
        break;
      }
      case ControlMode::TwoSided: rep.q = -F; break;
    }
    if (rep.q.norm() < 1e-8) continue;  // coincides with a trivial root

    const Vec4 s(z.x(), z.y(), rep.q.x(), rep.q.y());
    if (aug_rhs(sys, s).norm() > 1e-9 * (1.0 + z.norm() + rep.q.norm())) continue;

    const A3Check a3 = check_a3(sys, z, rep.q);
    rep.a3_value = a3.value;
    rep.a3_satisfied = a3.satisfied;
    rep.lambda0 = -a3.value;
    fill_eigen_data(sys, rep);
    reports.push_back(rep);
  }
  return reports;
}

EquilibriumReport trivial_report(const AugSystem& sys, const Vec2& z) {
  EquilibriumReport rep;
  rep.z = z;
  rep.q = Vec2::Zero();
  rep.kind = EquilibriumKind::Trivial;
  rep.lambda0 = std::numeric_limits<double>::quiet_NaN();
  rep.a3_value = std::numeric_limits<double>::quiet_NaN();
  rep.a3_satisfied = false;
  fill_eigen_data(sys, rep);
  return rep;
}

namespace {

// Mode-dependent quartic data at an equilibrium: the curvature term H in
// the lambda^2 / lambda coefficients and the constant term (true det).
struct QuarticData {
  double sigma;
  double H;
  double c0;
};

QuarticData quartic_data(const AugSystem& sys, const Vec2& z, const Vec2& q) {
  const Mat2 j = sys.field.jac(z);
  const HessianTerms h = hessian_terms(sys.field, z, q);
  const double fx = j(0, 0), fy = j(0, 1), gx = j(1, 0), gy = j(1, 1);
  const double quad_g = gx * gx * h.h4 - gx * gy * (h.h2 + h.h3) + gy * gy * h.h1;
  const double quad_f = fy * fy * h.h1 - fx * fy * (h.h2 + h.h3) + fx * fx * h.h4;
  QuarticData d;
  d.sigma = fx + gy;
  switch (sys.mode) {
    case ControlMode::OneSidedX:
      d.H = h.h1;
      d.c0 = -quad_g - sys.rho * (h.h1 * gy - h.h2 * gx);
      break;
    case ControlMode::TwoSided:
      d.H = h.h1 + h.h4;
      d.c0 = -quad_f - quad_g - sys.rho * (h.h1 * gy - h.h2 * gx - h.h3 * fy + h.h4 * fx) +
             (h.h1 * h.h4 - h.h2 * h.h3);
      break;
    case ControlMode::OneSidedY:
      d.H = h.h4;
      d.c0 = -quad_f - sys.rho * (fx * h.h4 - fy * h.h3);
      break;
  }
  return d;
}

}  // namespace

Complex char_poly(const AugSystem& sys, const EquilibriumReport& report, Complex lambda) {
  const QuarticData d = quartic_data(sys, report.z, report.q);
  const double rho = sys.rho;
  const double c2 = rho * rho + 3.0 * d.sigma * rho + d.sigma * d.sigma - d.H;
  const Complex l2 = lambda * lambda;
  return l2 * l2 + 2.0 * rho * l2 * lambda - c2 * l2 - (c2 + rho * rho) * rho * lambda + d.c0;
}

Complex char_poly_derivative(const AugSystem& sys, const EquilibriumReport& report,
                             Complex lambda) {
  const QuarticData d = quartic_data(sys, report.z, report.q);
  const double rho = sys.rho;
  const double c2 = rho * rho + 3.0 * d.sigma * rho + d.sigma * d.sigma - d.H;
  return 4.0 * lambda * lambda * lambda + 6.0 * rho * lambda * lambda - 2.0 * c2 * lambda -
         (c2 + rho * rho) * rho;
}

std::vector<OneDEquilibrium> equilibria_1d(const ScalarField& f, double rho, double x_min,
                                           double x_max) {
  if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
  std::vector<OneDEquilibrium> out;
  for (const auto& list : {f.stable_roots, f.unstable_roots}) {
    for (double x : list) {
      OneDEquilibrium e;
      e.x = x;
      e.q = 0.0;
      e.kind = EquilibriumKind::Trivial;
      e.eig1 = Complex(f.fp(x), 0.0);
      e.eig2 = Complex(-f.fp(x) - rho, 0.0);
      e.saddle = e.eig1.real() * e.eig2.real() < 0.0;
      out.push_back(e);
    }
  }

  // Nontrivial points: roots of rho + f'(x), located by sign scan.
  auto g = [&](double x) { return rho + f.fp(x); };
  const int n = 20000;
  double prev_x = x_min, prev_g = g(x_min);
  for (int i = 1; i <= n; ++i) {
    const double x = x_min + (x_max - x_min) * double(i) / n;
    const double gx = g(x);
    if ((prev_g < 0) != (gx < 0)) {
      double lo = prev_x, hi = x, flo = prev_g;
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = g(mid);
        if ((flo < 0) == (fm < 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      const double xh = 0.5 * (lo + hi);
      OneDEquilibrium e;
      e.x = xh;
      e.q = -f.f(xh);
      e.kind = EquilibriumKind::Nontrivial;
      const double prod = f.fpp(xh) * f.f(xh);
      const Complex disc = std::sqrt(Complex(rho * rho + 4.0 * prod, 0.0));
      e.eig1 = 0.5 * (-rho + disc);
      e.eig2 = 0.5 * (-rho - disc);
      e.saddle = prod > 0.0;
      out.push_back(e);
    }
    prev_x = x;
    prev_g = gx;
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
  return out;
}

}  // namespace stabctl
