#include "stabctl/scalar_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stabctl {
namespace {

double polyval(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
  return v;
}

std::vector<double> derivative(const std::vector<double>& c) {
  std::vector<double> d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * double(i));
  if (d.empty()) d.push_back(0.0);
  return d;
}

double bisect(const std::function<double(double)>& f, double lo, double hi) {
  double flo = f(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((flo < 0) == (fm < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

ScalarField polynomial_field(std::span<const double> coeffs, std::string name) {
  if (coeffs.size() > 8) throw std::invalid_argument("polynomial_field: degree > 7 unsupported");
  std::vector<double> c(coeffs.begin(), coeffs.end());
  if (c.empty()) c.push_back(0.0);
  const auto d1 = derivative(c);
  const auto d2 = derivative(d1);

  ScalarField field;
  field.name = std::move(name);
  field.f = [c](double x) { return polyval(c, x); };
  field.fp = [d1](double x) { return polyval(d1, x); };
  field.fpp = [d2](double x) { return polyval(d2, x); };

  // Locate simple roots by sign scan + bisection. Grid points that hit a
  // root exactly are taken as-is rather than bracketed.
  const double lo = -20.0, hi = 20.0;
  const int n = 40000;
  std::vector<double> roots;
  auto push_root = [&](double root) {
    if (!roots.empty() && std::abs(root - roots.back()) < 1e-8) return;
    if (std::abs(field.f(root)) > 1e-10)
      throw std::invalid_argument("polynomial_field: root refinement failed");
    roots.push_back(root);
  };
  double prev_x = lo, prev_f = field.f(lo);
  if (prev_f == 0.0) push_root(prev_x);
  for (int i = 1; i <= n; ++i) {
    const double x = lo + (hi - lo) * double(i) / n;
    const double fx = field.f(x);
    if (fx == 0.0)
      push_root(x);
    else if (prev_f != 0.0 && (prev_f < 0) != (fx < 0))
      push_root(bisect(field.f, prev_x, x));
    prev_x = x;
    prev_f = fx;
  }
  for (double root : roots) {
    const double slope = field.fp(root);
    if (slope == 0.0) throw std::invalid_argument("polynomial_field: non-simple root");
    (slope < 0 ? field.stable_roots : field.unstable_roots).push_back(root);
  }
  std::sort(field.stable_roots.begin(), field.stable_roots.end());
  std::sort(field.unstable_roots.begin(), field.unstable_roots.end());
  return field;
}

ScalarField double_well_field() {
  const double coeffs[] = {0.0, 1.0, 0.0, -1.0};
  auto field = polynomial_field(coeffs, "double-well-1d");
  return field;
}

}  // namespace stabctl
