#include "stabctl/registry.hpp"

#include <stdexcept>

namespace stabctl {

std::vector<std::string> planar_model_names() { return {"bvp", "circle"}; }

std::vector<std::string> scalar_model_names() { return {"double-well-1d", "poly-1d"}; }

bool is_scalar_model(const std::string& name) {
  for (const auto& n : scalar_model_names())
    if (n == name) return true;
  return false;
}

PlanarField make_planar_model(const std::string& name, const BvpParams& params) {
  if (name == "bvp") return bvp_field(params);
  if (name == "circle") return circle_field();
  throw std::invalid_argument("unknown planar model: " + name);
}

ScalarField make_scalar_model(const std::string& name, std::span<const double> coeffs) {
  if (name == "double-well-1d") return double_well_field();
  if (name == "poly-1d") {
    if (coeffs.empty()) throw std::invalid_argument("poly-1d requires coefficients c0..c7");
    return polynomial_field(coeffs);
  }
  throw std::invalid_argument("unknown 1d model: " + name);
}

}  // namespace stabctl
