#include "stabctl/assumptions.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "stabctl/equilibria.hpp"
#include "stabctl/geometry.hpp"

namespace stabctl {

DefinitenessResult in_D_rho(const PlanarField& field, double rho, const Vec2& z) {
  const Mat2 df = field.jac(z);
  const Mat2 m = -(rho * Mat2::Identity() + df);
  const Mat2 sym = 0.5 * (m + m.transpose());
  const double tr = sym.trace();
  const double det = sym.determinant();
  const double disc = std::sqrt(std::max(0.0, tr * tr - 4.0 * det));
  DefinitenessResult r;
  r.point = z;
  r.sym_eigs[0] = 0.5 * (tr - disc);
  r.sym_eigs[1] = 0.5 * (tr + disc);
  r.negative_definite = r.sym_eigs[1] < 0.0;
  r.positive_definite = r.sym_eigs[0] > 0.0;
  return r;
}

DRhoInterval bvp_D_rho_interval(const BvpParams& p, double rho) {
  DRhoInterval out;
  if (p.c * rho - p.b <= 0.0) {
    out.reason = "c*rho - b <= 0";
    return out;
  }
  const double radicand =
      1.0 + rho / p.c - (p.c * p.c - 1.0) * (p.c * p.c - 1.0) /
                            (4.0 * p.c * p.c * (p.c * rho - p.b));
  if (radicand < 0.0) {
    out.reason = "negative radicand";
    return out;
  }
  out.empty = false;
  out.x_bound = std::sqrt(radicand);
  return out;
}

CheckStatus AssumptionReport::status(const std::string& id) const { return check(id).status; }

const AssumptionCheck& AssumptionReport::check(const std::string& id) const {
  for (const auto& c : checks)
    if (c.id == id) return c;
  throw std::out_of_range("no such check: " + id);
}

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "PASS";
    case CheckStatus::Fail: return "FAIL";
    case CheckStatus::NotChecked: return "NOT-CHECKED";
    case CheckStatus::HeuristicPass: return "HEURISTIC-PASS";
    case CheckStatus::HeuristicSuspect: return "HEURISTIC-SUSPECT";
  }
  return "?";
}

namespace {

std::string fmt_point(const Vec2& z) {
  std::ostringstream os;
  os.precision(9);
  os << "(" << z.x() << ", " << z.y() << ")";
  return os.str();
}

AssumptionCheck check_a1(const AugSystem& sys, const ClosedOrbit& gamma_s,
                         const AuditOptions& opt) {
  AssumptionCheck c{"A1", CheckStatus::Pass, ""};
  for (const auto& p : gamma_s.points) {
    if (!in_D_rho(sys.field, sys.rho, p).negative_definite) {
      c.status = CheckStatus::Fail;
      c.detail = "cycle sample outside D_rho at " + fmt_point(p);
      return c;
    }
  }
  // Interior fill over the cycle bounding box.
  Vec2 lo = gamma_s.points.front(), hi = lo;
  for (const auto& p : gamma_s.points) {
    lo = lo.cwiseMin(p);
    hi = hi.cwiseMax(p);
  }
  const int n = opt.fill_resolution;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Vec2 z(lo.x() + (hi.x() - lo.x()) * (i + 0.5) / n,
                   lo.y() + (hi.y() - lo.y()) * (j + 0.5) / n);
      if (!point_in_polygon(gamma_s.points, z)) continue;
      if (!in_D_rho(sys.field, sys.rho, z).negative_definite) {
        c.status = CheckStatus::Fail;
        c.detail = "interior point outside D_rho at " + fmt_point(z);
        return c;
      }
    }
  }
  c.detail = "cycle and interior fill contained in D_rho";
  return c;
}

AssumptionCheck check_a2_a3(const AugSystem& sys, std::vector<EquilibriumReport>& reports,
                            AssumptionCheck& a3) {
  reports = find_nontrivial_equilibria(sys, Vec2(-3.0, -3.0), Vec2(3.0, 3.0));
  AssumptionCheck a2{"A2", CheckStatus::Pass, ""};
  {
    std::ostringstream os;
    os << "found " << reports.size() << " nontrivial equilibria";
    a2.detail = os.str();
  }
  if (reports.size() != 2) a2.status = CheckStatus::Fail;

  a3 = AssumptionCheck{"A3", CheckStatus::Pass, ""};
  std::ostringstream os;
  os.precision(9);
  for (const auto& r : reports) {
    os << "value " << r.a3_value << " at " << fmt_point(r.z) << "; ";
    if (!r.a3_satisfied) a3.status = CheckStatus::Fail;
  }
  if (reports.empty()) a3.status = CheckStatus::NotChecked;
  a3.detail = os.str();
  return a2;
}

AssumptionCheck check_a4(const AugSystem& sys, const AuditOptions& opt) {
  AssumptionCheck c{"A4", CheckStatus::NotChecked, "no Lyapunov candidate supplied"};
  if (!opt.lyapunov) return c;
  const auto& V = *opt.lyapunov;
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> ux(-6.0, 6.0), uy(-6.0, 6.0);
  c.status = CheckStatus::Pass;
  int tested = 0;
  for (int i = 0; i < opt.boundary_samples * 4 && tested < opt.boundary_samples; ++i) {
    const Vec2 z(ux(rng), uy(rng));
    const bool in_k = (z.x() >= opt.k_lo.x() && z.x() <= opt.k_hi.x() &&
                       z.y() >= opt.k_lo.y() && z.y() <= opt.k_hi.y());
    if (in_k) continue;
    ++tested;
    const double v = V.value(z);
    const double vdot = V.gradient(z).dot(sys.field.eval(z));
    if (v <= 0.0 || vdot >= 0.0) {
      c.status = CheckStatus::Fail;
      std::ostringstream os;
      os.precision(9);
      os << "V=" << v << " Vdot=" << vdot << " at " << fmt_point(z);
      c.detail = os.str();
      return c;
    }
  }
  // radial growth probe
  for (double radius : {10.0, 100.0, 1000.0}) {
    for (int k = 0; k < 16; ++k) {
      const double th = 2.0 * M_PI * k / 16.0;
      const Vec2 z(radius * std::cos(th), radius * std::sin(th));
      if (V.value(z) < V.value(0.1 * z)) {
        c.status = CheckStatus::Fail;
        c.detail = "V not radially increasing at " + fmt_point(z);
        return c;
      }
    }
  }
  c.detail = "candidate positive with negative derivative outside K";
  return c;
}

AssumptionCheck check_a5(const AugSystem& sys, const AuditOptions& opt) {
  AssumptionCheck c{"A5", CheckStatus::Pass, ""};
  std::mt19937 rng(2025);
  std::uniform_real_distribution<double> ux(opt.k_lo.x() - 3.0, opt.k_hi.x() + 3.0);
  std::uniform_real_distribution<double> uy(opt.k_lo.y() - 3.0, opt.k_hi.y() + 3.0);
  int tested = 0;
  for (int i = 0; i < opt.boundary_samples * 4 && tested < opt.boundary_samples; ++i) {
    const Vec2 z(ux(rng), uy(rng));
    const bool in_k = (z.x() >= opt.k_lo.x() && z.x() <= opt.k_hi.x() &&
                       z.y() >= opt.k_lo.y() && z.y() <= opt.k_hi.y());
    if (in_k) continue;
    ++tested;
    if (!in_D_rho(sys.field, sys.rho, z).positive_definite) {
      c.status = CheckStatus::Fail;
      c.detail = "-[rho I + D_F] not positive definite at " + fmt_point(z);
      return c;
    }
  }
  c.detail = "positive definite on all exterior samples";
  return c;
}

AssumptionCheck check_aa(const AugSystem& sys, const AuditOptions& opt) {
  AssumptionCheck c{"AA", CheckStatus::HeuristicPass, ""};
  std::mt19937 rng(2026);
  std::uniform_real_distribution<double> ux(opt.k_lo.x(), opt.k_hi.x());
  std::uniform_real_distribution<double> uy(opt.k_lo.y(), opt.k_hi.y());
  std::uniform_real_distribution<double> uq(-opt.q_bound, opt.q_bound);

  int suspects = 0, launched = 0;
  for (int i = 0; i < opt.recurrence_seeds * 20 && launched < opt.recurrence_seeds; ++i) {
    const Vec2 z(ux(rng), uy(rng));
    if (in_D_rho(sys.field, sys.rho, z).negative_definite) continue;  // want K \ D_rho
    ++launched;
    const Vec4 s0(z.x(), z.y(), uq(rng), uq(rng));
    IntegrationSpec spec;
    spec.direction = Direction::Backward;
    spec.t_max = opt.recurrence_horizon;
    spec.blowup_radius = 1e4;
    const double delta = 0.05 * (1.0 + s0.norm());
    bool left = false, returned = false;
    double tf;
    Vec4 sf;
    auto rhs = [&](double, const Vec4& s, Vec4& ds) { ds = aug_rhs(sys, s); };
    drive<4>(
        rhs, s0, spec,
        [&](double t, const Vec4& s) {
          const double d = (s - s0).norm();
          if (t > 1.0 && d > 2.0 * delta) left = true;
          if (left && d < delta) {
            returned = true;
            return true;
          }
          return false;
        },
        tf, sf);
    if (returned) ++suspects;
  }
  std::ostringstream os;
  os << suspects << " suspected recurrences over " << launched
     << " backward orbits (heuristic only, never a certificate)";
  c.detail = os.str();
  if (suspects > 0) c.status = CheckStatus::HeuristicSuspect;
  return c;
}

}  // namespace

AssumptionReport audit(const AugSystem& sys, const ClosedOrbit& gamma_s,
                       const AuditOptions& options) {
  AssumptionReport report;
  report.checks.push_back(check_a1(sys, gamma_s, options));
  std::vector<EquilibriumReport> reports;
  AssumptionCheck a3;
  report.checks.push_back(check_a2_a3(sys, reports, a3));
  report.checks.push_back(a3);
  report.checks.push_back(check_a4(sys, options));
  report.checks.push_back(check_a5(sys, options));
  report.checks.push_back(check_aa(sys, options));
  return report;
}

}  // namespace stabctl
