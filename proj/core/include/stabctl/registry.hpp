#pragma once

#include <span>
#include <string>
#include <vector>

#include "stabctl/planar_field.hpp"
#include "stabctl/scalar_field.hpp"

namespace stabctl {

/// Names of the registered planar models ("bvp", "circle").
std::vector<std::string> planar_model_names();

/// Names of the registered one-dimensional models ("double-well-1d", "poly-1d").
std::vector<std::string> scalar_model_names();

bool is_scalar_model(const std::string& name);

/// Instantiates a planar model by name. Throws std::invalid_argument for
/// unknown names.
PlanarField make_planar_model(const std::string& name, const BvpParams& params);

/// Instantiates a 1D model by name; `coeffs` is used by "poly-1d" only.
ScalarField make_scalar_model(const std::string& name, std::span<const double> coeffs);

}  // namespace stabctl
