#pragma once

// Latitude-by-azimuth cubature on the sphere, exact for polynomials of
// degree 2m - 1. Latitude i carries the weight (pi/m) w_i at each of its 2m
// azimuths, where w_i integrates the i-th Lagrange cardinal over the cosines.

#include <cstdint>
#include <functional>
#include <vector>

#include "sphinterp/spherical.hpp"

namespace sphinterp {

struct CubatureNode {
  double theta = 0.0;
  double phi = 0.0;
  double weight = 0.0;
};

struct CubatureRule {
  Index m = 0;
  std::vector<double> latitudes;  // 2m angles, theta_{2m+1-i} = pi - theta_i
  std::vector<double> weights;    // w_i, summing to 2
  std::vector<double> alphas;     // 0 for the first m latitudes, 1 after
  std::vector<CubatureNode> nodes;

  double total_weight() const;
};

/// Throws InvalidInput unless the 2m angles are distinct, inside (0, pi) and
/// symmetric to within 1e-12.
CubatureRule build_rule(const std::vector<double>& latitudes);

using SphereFunction = std::function<double(const SphericalCoord&)>;

double apply_rule(const CubatureRule& rule, const SphereFunction& f);
double apply_rule(const CubatureRule& rule, const SphericalPoly& T);

/// Largest |mean - (1/2m) sum_j p(phi_j)| over `trials` random trigonometric
/// polynomials of the given degree on the grid (2j + alpha) pi / (2m).
/// Requires degree <= m.
double trig_quadrature_check(Index degree, Index m, int alpha, Index trials, std::uint64_t seed);

/// Same measurement without the degree restriction, for degrees up to 2m.
double trig_quadrature_error(Index degree, Index m, int alpha, Index trials, std::uint64_t seed);

struct ExactnessReport {
  Index degree = 0;
  Index elements = 0;
  double max_error = 0.0;
  /// max |rule - exact| / max(1, |exact|)
  double max_scaled_error = 0.0;
};

/// Applies the rule to every basis element of degree 2m - 1 and compares with
/// the analytic integral.
ExactnessReport exactness_certificate(const CubatureRule& rule);

/// True iff every weight of the Legendre-latitude rule is >= 0.
bool nonnegativity_check(Index m);

/// Angles with cosines 1 - (2i - 1)/(2m), i = 1..2m.
std::vector<double> equispaced_cosine_latitudes(Index m);

/// m seeded cosines in [0.05, 0.95] (gap >= 0.02) and their mirrors.
std::vector<double> random_symmetric_latitudes(Index m, std::uint64_t seed);

}  // namespace sphinterp
