#pragma once

#include <array>
#include <complex>
#include <vector>

#include "stabctl/augmented.hpp"

namespace stabctl {

using Complex = std::complex<double>;

/// Planar root of F with the 2x2 Jacobian eigenvalues at the root.
struct PlanarRoot {
  Vec2 z;
  std::array<Complex, 2> df_eigs;
};

/// Newton search over a seeded grid; returns deduplicated roots with
/// |F| <= 1e-10, sorted by (x, y).
std::vector<PlanarRoot> find_trivial_equilibria(const PlanarField& field, const Vec2& box_lo,
                                                const Vec2& box_hi);

enum class EquilibriumKind { Trivial, Nontrivial };

/// A fixed point of the augmented system with its full spectrum and the
/// stability data used by the three-stable-directions criterion.
///
/// `a3_value` is the mode's inequality expression; the criterion holds
/// when it is positive, equivalently lambda0 = -a3_value < 0.
/// `stable_dim` counts eigenvalues with real part < 0; eigenvalues with
/// |Re| < 1e-10 set `marginal` and are not counted.
struct EquilibriumReport {
  Vec2 z = Vec2::Zero();
  Vec2 q = Vec2::Zero();
  EquilibriumKind kind = EquilibriumKind::Nontrivial;
  std::array<Complex, 4> eigenvalues{};  // sorted by real part, descending
  int stable_dim = 0;
  bool marginal = false;
  double lambda0 = 0.0;
  double a3_value = 0.0;
  bool a3_satisfied = false;
  bool degenerate = false;
};

/// Solves det[rho I + D_F(z)] = 0 together with the mode's closure
/// condition, then recovers the costate from the kernel of
/// [rho I + D_F(z)^T]. Reports are sorted by (x, y).
std::vector<EquilibriumReport> find_nontrivial_equilibria(const AugSystem& sys,
                                                          const Vec2& box_lo,
                                                          const Vec2& box_hi);

/// Assembles the report for the augmented equilibrium (z, 0) above a
/// planar root z of F.
EquilibriumReport trivial_report(const AugSystem& sys, const Vec2& z);

/// The quartic characteristic polynomial of the augmented Jacobian at a
/// nontrivial equilibrium, evaluated in closed form from the field's
/// first/second derivatives (valid at equilibria of the given mode).
Complex char_poly(const AugSystem& sys, const EquilibriumReport& report, Complex lambda);

/// d(char_poly)/d(lambda), same validity domain.
Complex char_poly_derivative(const AugSystem& sys, const EquilibriumReport& report,
                             Complex lambda);

struct A3Check {
  double value = 0.0;
  bool satisfied = false;
};

/// Evaluates the three-stable-directions inequality at (z, q) for the
/// system's control mode.
A3Check check_a3(const AugSystem& sys, const Vec2& z, const Vec2& q);

/// Equilibria of the one-dimensional augmented system.
struct OneDEquilibrium {
  double x = 0.0;
  double q = 0.0;
  EquilibriumKind kind = EquilibriumKind::Trivial;
  Complex eig1, eig2;
  bool saddle = false;
};

std::vector<OneDEquilibrium> equilibria_1d(const ScalarField& f, double rho,
                                           double x_min = -10.0, double x_max = 10.0);

}  // namespace stabctl
