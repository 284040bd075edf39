#include "sphinterp/cubature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "sphinterp/nodes.hpp"

namespace sphinterp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSymmetryTol = 1e-12;

double trig_error_impl(Index degree, Index m, int alpha, Index trials, std::uint64_t seed) {
  if (m < 1) throw InvalidInput("trigonometric quadrature needs m >= 1");
  if (degree < 0) throw InvalidInput("trigonometric degree must be >= 0");
  if (alpha != 0 && alpha != 1) throw InvalidInput("alpha must be 0 or 1");
  const AzimuthGrid grid = azimuth_grid(m, double(alpha));
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  double worst = 0.0;
  for (Index trial = 0; trial < trials; ++trial) {
    const double c0 = dist(rng);
    std::vector<double> ck(static_cast<std::size_t>(degree) + 1), sk(ck.size());
    for (Index k = 1; k <= degree; ++k) {
      ck[static_cast<std::size_t>(k)] = dist(rng);
      sk[static_cast<std::size_t>(k)] = dist(rng);
    }
    double sum = 0.0;
    for (double phi : grid.angles) {
      double value = c0;
      for (Index k = 1; k <= degree; ++k)
        value += ck[static_cast<std::size_t>(k)] * std::cos(double(k) * phi) +
                 sk[static_cast<std::size_t>(k)] * std::sin(double(k) * phi);
      sum += value;
    }
    worst = std::max(worst, std::abs(c0 - sum / double(2 * m)));
  }
  return worst;
}

/// Gauss-Legendre nodes and weights with `count` points.
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(Index count) {
  std::vector<double> x, w;
  for (Index i = 1; i <= count; ++i) {
    double t = std::cos(kPi * (double(i) - 0.25) / (double(count) + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const double step = legendre_value(count, t).first / legendre_value(count, t).second;
      t -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double dp = legendre_value(count, t).second;
    x.push_back(t);
    w.push_back(2.0 / ((1.0 - t * t) * dp * dp));
  }
  return {x, w};
}

/// int_{-1}^{1} prod_{k != i} (t - c_k) / (c_i - c_k) dt, exact for the
/// degree 2m-1 cardinal, evaluated in product form.
double cardinal_integral(const std::vector<double>& c, std::size_t i,
                         const std::pair<std::vector<double>, std::vector<double>>& gauss) {
  double total = 0.0;
  for (std::size_t q = 0; q < gauss.first.size(); ++q) {
    double value = 1.0;
    for (std::size_t k = 0; k < c.size(); ++k)
      if (k != i) value *= (gauss.first[q] - c[k]) / (c[i] - c[k]);
    total += gauss.second[q] * value;
  }
  return total;
}

}  // namespace

double CubatureRule::total_weight() const {
  double total = 0.0;
  for (const auto& node : nodes) total += node.weight;
  return total;
}

CubatureRule build_rule(const std::vector<double>& latitudes) {
  const auto count = static_cast<Index>(latitudes.size());
  if (count < 2 || count % 2 != 0) throw InvalidInput("cubature needs an even number (2m) of latitudes");
  const Index m = count / 2;
  for (std::size_t i = 0; i < latitudes.size(); ++i) {
    if (!(latitudes[i] > 0.0 && latitudes[i] < kPi))
      throw InvalidInput("latitude " + std::to_string(latitudes[i]) + " outside (0, pi)");
    for (std::size_t j = i + 1; j < latitudes.size(); ++j)
      if (latitudes[i] == latitudes[j]) throw InvalidInput("duplicate latitude");
  }
  for (Index i = 0; i < m; ++i) {
    const double theta = latitudes[static_cast<std::size_t>(i)];
    const double mirror = latitudes[static_cast<std::size_t>(count - 1 - i)];
    if (std::abs(mirror - (kPi - theta)) > kSymmetryTol)
      throw InvalidInput("latitudes not symmetric: theta_" + std::to_string(count - i) +
                         " != pi - theta_" + std::to_string(i + 1));
  }

  CubatureRule rule;
  rule.m = m;
  rule.latitudes = latitudes;
  std::vector<double> cosines;
  for (double theta : latitudes) cosines.push_back(std::cos(theta));
  const auto gauss = gauss_legendre(m + 1);
  const AzimuthGrid north = azimuth_grid(m, 0.0);
  const AzimuthGrid south = azimuth_grid(m, 1.0);
  for (Index i = 0; i < count; ++i) {
    const double w = cardinal_integral(cosines, std::size_t(i), gauss);
    rule.weights.push_back(w);
    rule.alphas.push_back(i < m ? 0.0 : 1.0);
    for (double phi : (i < m ? north : south).angles)
      rule.nodes.push_back({latitudes[static_cast<std::size_t>(i)], phi, kPi / double(m) * w});
  }
  return rule;
}

double apply_rule(const CubatureRule& rule, const SphereFunction& f) {
  double total = 0.0;
  for (const auto& node : rule.nodes) total += node.weight * f({node.theta, node.phi});
  return total;
}

double apply_rule(const CubatureRule& rule, const SphericalPoly& T) {
  return apply_rule(rule, [&T](const SphericalCoord& p) { return eval_spherical(T, p); });
}

double trig_quadrature_check(Index degree, Index m, int alpha, Index trials, std::uint64_t seed) {
  if (degree > m)
    throw InvalidInput("trigonometric quadrature check needs degree <= m (" + std::to_string(m) + ")");
  return trig_error_impl(degree, m, alpha, trials, seed);
}

double trig_quadrature_error(Index degree, Index m, int alpha, Index trials, std::uint64_t seed) {
  if (degree > 2 * m) throw InvalidInput("trigonometric degree above 2m");
  return trig_error_impl(degree, m, alpha, trials, seed);
}

ExactnessReport exactness_certificate(const CubatureRule& rule) {
  ExactnessReport report;
  report.degree = 2 * rule.m - 1;
  for (const SphericalPoly& T : basis_enumerate(report.degree)) {
    const double exact = integrate_sphere(T);
    const double err = std::abs(apply_rule(rule, T) - exact);
    report.max_error = std::max(report.max_error, err);
    report.max_scaled_error = std::max(report.max_scaled_error, err / std::max(1.0, std::abs(exact)));
    ++report.elements;
  }
  return report;
}

bool nonnegativity_check(Index m) {
  const CubatureRule rule = build_rule(legendre_latitudes(m));
  return std::all_of(rule.weights.begin(), rule.weights.end(), [](double w) { return w >= 0.0; });
}

std::vector<double> equispaced_cosine_latitudes(Index m) {
  if (m < 1) throw InvalidInput("m must be >= 1");
  std::vector<double> north;
  for (Index i = 1; i <= m; ++i) north.push_back(std::acos(1.0 - (2.0 * double(i) - 1.0) / double(2 * m)));
  std::vector<double> out = north;
  for (Index i = m - 1; i >= 0; --i) out.push_back(kPi - north[static_cast<std::size_t>(i)]);
  return out;
}

std::vector<double> random_symmetric_latitudes(Index m, std::uint64_t seed) {
  if (m < 1) throw InvalidInput("m must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.05, 0.95);
  std::vector<double> cosines;
  while (static_cast<Index>(cosines.size()) < m) {
    const double z = dist(rng);
    if (std::all_of(cosines.begin(), cosines.end(), [z](double c) { return std::abs(c - z) >= 0.02; }))
      cosines.push_back(z);
  }
  std::sort(cosines.begin(), cosines.end(), std::greater<>());
  std::vector<double> north;
  for (double c : cosines) north.push_back(std::acos(c));
  std::vector<double> out = north;
  for (Index i = m - 1; i >= 0; --i) out.push_back(kPi - north[static_cast<std::size_t>(i)]);
  return out;
}

}  // namespace sphinterp
