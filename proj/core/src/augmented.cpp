#include "stabctl/augmented.hpp"

#include <stdexcept>
#include <utility>

namespace stabctl {

const char* to_string(ControlMode mode) {
  switch (mode) {
    case ControlMode::OneSidedX: return "one-sided-x";
    case ControlMode::TwoSided: return "two-sided";
    case ControlMode::OneSidedY: return "one-sided-y";
  }
  return "?";
}

AugSystem make_aug_system(PlanarField field, double rho, ControlMode mode) {
  if (!(rho > 0.0)) throw std::invalid_argument("rho must be positive");
  return AugSystem{std::move(field), rho, mode};
}

Vec4 aug_rhs(const AugSystem& sys, const Vec4& s) {
  const Vec2 z = s.head<2>();
  const double q1 = s[2], q2 = s[3];
  const Vec2 F = sys.field.eval(z);
  const Mat2 J = sys.field.jac(z);
  const double fx = J(0, 0), fy = J(0, 1), gx = J(1, 0), gy = J(1, 1);

  Vec4 ds;
  ds[0] = F.x() + (sys.mode != ControlMode::OneSidedY ? q1 : 0.0);
  ds[1] = F.y() + (sys.mode != ControlMode::OneSidedX ? q2 : 0.0);
  ds[2] = -(sys.rho + fx) * q1 - gx * q2;
  ds[3] = -fy * q1 - (sys.rho + gy) * q2;
  return ds;
}

Mat4 aug_jacobian(const AugSystem& sys, const Vec4& s) {
  const Vec2 z = s.head<2>();
  const Vec2 q = s.tail<2>();
  const Mat2 J = sys.field.jac(z);
  const HessianTerms h = hessian_terms(sys.field, z, q);
  const double fx = J(0, 0), fy = J(0, 1), gx = J(1, 0), gy = J(1, 1);

  Mat4 m;
  m << fx, fy, (sys.mode != ControlMode::OneSidedY ? 1.0 : 0.0), 0.0,
      gx, gy, 0.0, (sys.mode != ControlMode::OneSidedX ? 1.0 : 0.0),
      -h.h1, -h.h2, -(sys.rho + fx), -gx,
      -h.h3, -h.h4, -fy, -(sys.rho + gy);
  return m;
}

Vec2 rhs_1d(const ScalarField& f, double rho, const Vec2& s) {
  const double x = s.x(), q = s.y();
  return Vec2(f.f(x) + q, -(rho + f.fp(x)) * q);
}

Mat2 jacobian_1d(const ScalarField& f, double rho, const Vec2& s) {
  const double x = s.x(), q = s.y();
  Mat2 m;
  m << f.fp(x), 1.0, -f.fpp(x) * q, -(rho + f.fp(x));
  return m;
}

}  // namespace stabctl
