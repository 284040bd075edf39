#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sphinterp/cubature.hpp"

namespace sphinterp::cli {

struct BuiltinFunction {
  std::string name;
  std::string description;
  SphereFunction f;
  /// Polynomial degree, absent for non-polynomial functions.
  std::optional<Index> degree;
  /// Surface integral over the unit sphere.
  double integral = 0.0;
};

const std::vector<BuiltinFunction>& builtin_functions();

/// Throws InvalidInput listing the known names.
const BuiltinFunction& find_function(const std::string& name);

}  // namespace sphinterp::cli
