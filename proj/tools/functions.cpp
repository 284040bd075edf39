#include "functions.hpp"

#include <cmath>
#include <numbers>

namespace sphinterp::cli {

namespace {

constexpr double kPi = std::numbers::pi;

double x_of(const SphericalCoord& p) { return std::sin(p.theta) * std::cos(p.phi); }
double y_of(const SphericalCoord& p) { return std::sin(p.theta) * std::sin(p.phi); }
double z_of(const SphericalCoord& p) { return std::cos(p.theta); }

}  // namespace

const std::vector<BuiltinFunction>& builtin_functions() {
  static const std::vector<BuiltinFunction> registry = {
      {"one", "constant 1", [](const SphericalCoord&) { return 1.0; }, 0, 4.0 * kPi},
      {"x", "x", x_of, 1, 0.0},
      {"y", "y", y_of, 1, 0.0},
      {"z", "z", z_of, 1, 0.0},
      {"z2", "z^2", [](const SphericalCoord& p) { return z_of(p) * z_of(p); }, 2, 4.0 * kPi / 3.0},
      {"xy", "x y", [](const SphericalCoord& p) { return x_of(p) * y_of(p); }, 2, 0.0},
      {"x2my2", "x^2 - y^2", [](const SphericalCoord& p) { return x_of(p) * x_of(p) - y_of(p) * y_of(p); },
       2, 0.0},
      {"z3", "z^3", [](const SphericalCoord& p) { return std::pow(z_of(p), 3); }, 3, 0.0},
      {"x2z2", "x^2 z^2", [](const SphericalCoord& p) { return std::pow(x_of(p) * z_of(p), 2); }, 4,
       4.0 * kPi / 15.0},
      {"expz", "exp(z)", [](const SphericalCoord& p) { return std::exp(z_of(p)); }, std::nullopt,
       2.0 * kPi * (std::exp(1.0) - std::exp(-1.0))},
  };
  return registry;
}

const BuiltinFunction& find_function(const std::string& name) {
  for (const auto& fn : builtin_functions())
    if (fn.name == name) return fn;
  std::string known;
  for (const auto& fn : builtin_functions()) known += (known.empty() ? "" : ", ") + fn.name;
  throw InvalidInput("unknown function '" + name + "' (known: " + known + ")");
}

}  // namespace sphinterp::cli
