#include "stabctl/planar_field.hpp"

#include <cmath>
#include <stdexcept>

namespace stabctl {

PlanarField bvp_field(const BvpParams& p) {
  if (p.c == 0.0) throw std::invalid_argument("bvp_field: c must be nonzero");
  const double a = p.a, b = p.b, c = p.c, r = p.r;
  PlanarField field;
  field.name = "bvp";
  field.eval = [=](const Vec2& z) {
    const double x = z.x(), y = z.y();
    return Vec2(c * (x - x * x * x / 3.0 + y - r), -(x - a + b * y) / c);
  };
  field.jac = [=](const Vec2& z) {
    const double x = z.x();
    Mat2 j;
    j << c * (1.0 - x * x), c, -1.0 / c, -b / c;
    return j;
  };
  field.second_partials = [=](const Vec2& z) {
    SecondPartials s;
    s.fxx = -2.0 * c * z.x();
    return s;
  };
  return field;
}

PlanarField circle_field() {
  PlanarField field;
  field.name = "circle";
  field.eval = [](const Vec2& z) {
    const double x = z.x(), y = z.y();
    const double damp = 1.0 - x * x - y * y;
    return Vec2(y + x * damp, -x + y * damp);
  };
  field.jac = [](const Vec2& z) {
    const double x = z.x(), y = z.y();
    Mat2 j;
    j << 1.0 - 3.0 * x * x - y * y, 1.0 - 2.0 * x * y,
        -1.0 - 2.0 * x * y, 1.0 - x * x - 3.0 * y * y;
    return j;
  };
  field.second_partials = [](const Vec2& z) {
    const double x = z.x(), y = z.y();
    SecondPartials s;
    s.fxx = -6.0 * x;
    s.fxy = -2.0 * y;
    s.fyy = -2.0 * x;
    s.gxx = -2.0 * y;
    s.gxy = -2.0 * x;
    s.gyy = -6.0 * y;
    return s;
  };
  return field;
}

HessianTerms hessian_terms(const PlanarField& field, const Vec2& z, const Vec2& q) {
  const SecondPartials s = field.second_partials(z);
  return HessianTerms{
      s.fxx * q.x() + s.gxx * q.y(),
      s.fxy * q.x() + s.gxy * q.y(),
      s.fxy * q.x() + s.gxy * q.y(),
      s.fyy * q.x() + s.gyy * q.y(),
  };
}

}  // namespace stabctl
