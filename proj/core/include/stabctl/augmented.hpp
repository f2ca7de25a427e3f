#pragma once

#include "stabctl/planar_field.hpp"
#include "stabctl/scalar_field.hpp"

namespace stabctl {

/// Which state components receive costate feedback.
///   OneSidedX injects (q1, 0), TwoSided injects (q1, q2),
///   OneSidedY injects (0, q2).
enum class ControlMode { OneSidedX, TwoSided, OneSidedY };

const char* to_string(ControlMode mode);

/// The augmented control system
///   z' = F(z) + injected(q),   q' = -[rho I + D_F(z)^T] q
/// on states s = (x, y, q1, q2). The costate block is mode-independent;
/// the mode selects the injection into z'.
struct AugSystem {
  PlanarField field;
  double rho = 2.5;
  ControlMode mode = ControlMode::OneSidedX;
};

/// Validating constructor; throws std::invalid_argument unless rho > 0.
AugSystem make_aug_system(PlanarField field, double rho,
                          ControlMode mode = ControlMode::OneSidedX);

Vec4 aug_rhs(const AugSystem& sys, const Vec4& s);

/// Analytic 4x4 Jacobian of aug_rhs. Its trace is exactly -2*rho at every
/// state and in every mode.
Mat4 aug_jacobian(const AugSystem& sys, const Vec4& s);

/// One-dimensional analogue on (x, q):
///   x' = f(x) + q,   q' = -(rho + f'(x)) q.
Vec2 rhs_1d(const ScalarField& f, double rho, const Vec2& s);

Mat2 jacobian_1d(const ScalarField& f, double rho, const Vec2& s);

}  // namespace stabctl
