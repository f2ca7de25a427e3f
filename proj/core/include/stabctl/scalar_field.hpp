#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace stabctl {

/// A scalar field f with analytic f' and f'' plus its classified roots.
/// Roots alternate stable/unstable along the line; stable roots have
/// f' < 0, unstable ones f' > 0.
struct ScalarField {
  std::string name;
  std::function<double(double)> f;
  std::function<double(double)> fp;
  std::function<double(double)> fpp;
  std::vector<double> stable_roots;
  std::vector<double> unstable_roots;
};

/// Builds a polynomial scalar field from coefficients c0 + c1 x + ... c7 x^7.
/// Roots are located numerically on [-20, 20] and verified to |f| <= 1e-10.
/// Throws std::invalid_argument for degree > 7 or degenerate (non-simple)
/// roots inside the scan range.
ScalarField polynomial_field(std::span<const double> coeffs, std::string name = "poly-1d");

/// The double well f(x) = x - x^3 with stable roots {-1, 1} and unstable {0}.
ScalarField double_well_field();

}  // namespace stabctl
