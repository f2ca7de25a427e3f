#pragma once

#include <Eigen/Dense>
#include <functional>
#include <string>

namespace stabctl {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;
using Vec4 = Eigen::Vector4d;
using Mat4 = Eigen::Matrix4d;

/// Six second partial derivatives of a planar field F = (f, g).
/// Mixed partials are stored once; fxy == fyx by smoothness.
struct SecondPartials {
  double fxx = 0, fxy = 0, fyy = 0;
  double gxx = 0, gxy = 0, gyy = 0;
};

/// A smooth planar vector field with analytic first and second derivatives.
///
/// `jac` returns rows (f_x f_y; g_x g_y). Fields are immutable after
/// construction and safe to share across threads.
struct PlanarField {
  std::string name;
  std::function<Vec2(const Vec2&)> eval;
  std::function<Mat2(const Vec2&)> jac;
  std::function<SecondPartials(const Vec2&)> second_partials;
};

/// Bonhoeffer-van der Pol / FitzHugh oscillator parameters.
struct BvpParams {
  double a = 0.7;
  double b = 0.8;
  double c = 3.0;
  double r = 0.342;

  bool operator==(const BvpParams&) const = default;
};

/// Builds the Bonhoeffer-van der Pol field
///   f(x,y) = c (x - x^3/3 + y - r),   g(x,y) = -(x - a + b y) / c.
/// Throws std::invalid_argument when c == 0.
PlanarField bvp_field(const BvpParams& params);

/// Planar rotation with cubic radial damping; the unit circle is an
/// attracting limit cycle with period 2*pi. Used as a known-answer model.
PlanarField circle_field();

/// The four curvature terms h_i contracting the field's second derivatives
/// against a costate vector q:
///   h1 = f_xx q1 + g_xx q2, h2 = f_xy q1 + g_xy q2,
///   h3 = f_yx q1 + g_yx q2, h4 = f_yy q1 + g_yy q2.
struct HessianTerms {
  double h1, h2, h3, h4;
};

HessianTerms hessian_terms(const PlanarField& field, const Vec2& z, const Vec2& q);

}  // namespace stabctl
