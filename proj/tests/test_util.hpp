#pragma once

#include <Eigen/Dense>
#include <functional>
#include <random>

#include "stabctl/augmented.hpp"
#include "stabctl/planar_field.hpp"

namespace stabctl::testing {

/// Scaled-relative closeness: |a - b| <= tol * max(1, |a|, |b|).
inline bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

/// Central finite difference with h = 1e-5 * max(1, |coordinate|).
template <class Fn>
double fd_partial(const Fn& fn, Vec2 z, int coord) {
  const double h = 1e-5 * std::max(1.0, std::abs(z[coord]));
  Vec2 zp = z, zm = z;
  zp[coord] += h;
  zm[coord] -= h;
  return (fn(zp) - fn(zm)) / (2.0 * h);
}

/// Finite-difference Jacobian of the augmented right-hand side.
inline Mat4 fd_aug_jacobian(const AugSystem& sys, const Vec4& s) {
  Mat4 j;
  for (int c = 0; c < 4; ++c) {
    const double h = 1e-5 * std::max(1.0, std::abs(s[c]));
    Vec4 sp = s, sm = s;
    sp[c] += h;
    sm[c] -= h;
    j.col(c) = (aug_rhs(sys, sp) - aug_rhs(sys, sm)) / (2.0 * h);
  }
  return j;
}

inline std::mt19937 test_rng(unsigned seed = 12345) { return std::mt19937(seed); }

inline Vec4 random_state(std::mt19937& rng, double z_range = 3.0, double q_range = 5.0) {
  std::uniform_real_distribution<double> uz(-z_range, z_range), uq(-q_range, q_range);
  return Vec4(uz(rng), uz(rng), uq(rng), uq(rng));
}

/// Closed-form nontrivial equilibrium of the one-sided-x BvP system,
/// derived independently of the Newton search:
///   x^2 = 1 + rho/c + 1/(c (rho - b/c)), y from g = 0, q1 = -f,
///   q2 from the costate kernel row.
struct BvpNontrivialOracle {
  double x, y, q1, q2;
};

inline BvpNontrivialOracle bvp_nontrivial_oracle(const BvpParams& p, double rho,
                                                 int sign_of_x) {
  const double x2 = 1.0 + rho / p.c + 1.0 / (p.c * (rho - p.b / p.c));
  const double x = sign_of_x * std::sqrt(x2);
  const double y = (p.a - x) / p.b;
  const double f = p.c * (x - x * x * x / 3.0 + y - p.r);
  const double fx = p.c * (1.0 - x * x);
  const double gx = -1.0 / p.c;
  const double q1 = -f;
  const double q2 = -(rho + fx) * q1 / gx;
  return {x, y, q1, q2};
}

}  // namespace stabctl::testing
