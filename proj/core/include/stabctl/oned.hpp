#pragma once

#include <array>
#include <string>
#include <vector>

#include "stabctl/equilibria.hpp"
#include "stabctl/scalar_field.hpp"

namespace stabctl {

/// Audit of the one-dimensional assumptions:
///   A1' all roots of f inside D_rho = {rho + f' > 0},
///   A2' exactly two roots of rho + f' = 0,
///   A3' f f'' > 0 outside D_rho (sampled),
///   A4' f' decreasing without bound for large |x| (probed at 1e3, 1e4).
struct OneDAudit {
  bool a1 = false, a2 = false, a3 = false, a4 = false;
  double d_rho_lo = 0.0, d_rho_hi = 0.0;  // D_rho interval when a2 holds
  int nontrivial_count = 0;
  std::string detail;
};

OneDAudit audit_1d(const ScalarField& f, double rho);

/// The two branches of the stable set of a saddle of the 1D augmented
/// system, traced by backward integration from saddle +- eps * v_stable.
struct Separatrix {
  std::array<std::vector<Vec2>, 2> branches;
};

/// Throws std::invalid_argument unless the equilibrium is a saddle with
/// exactly one stable eigendirection.
Separatrix trace_separatrix(const ScalarField& f, double rho, const OneDEquilibrium& saddle,
                            double arc_budget);

}  // namespace stabctl
