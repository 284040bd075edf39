#include "sphinterp/factorization.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sphinterp {

namespace {

constexpr double kPi = std::numbers::pi;

double binomial(Index n, Index k) {
  double out = 1.0;
  for (Index i = 1; i <= k; ++i) out = out * double(n - k + i) / double(i);
  return out;
}

/// prod_{i=lo}^{hi} f(i), empty products equal 1.
template <typename F>
double product(Index lo, Index hi, F f) {
  double out = 1.0;
  for (Index i = lo; i <= hi; ++i) out *= f(i);
  return out;
}

void require_open_unit_points(const std::vector<double>& points, const char* what) {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i] > 0.0 && points[i] < 1.0))
      throw InvalidInput(std::string(what) + ": points must lie in (0, 1)");
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i] == points[j]) throw InvalidInput(std::string(what) + ": duplicate points");
  }
}

double determinant(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) return 1.0;
  return Eigen::PartialPivLU<Eigen::MatrixXd>(m).determinant();
}

}  // namespace

std::vector<double> latitude_vanishing_system(const SphericalPoly& T, double theta, double alpha) {
  if (!(theta > 0.0 && theta < kPi))
    throw InvalidInput("latitude_vanishing_system: theta must lie in (0, pi) so that sin(theta) != 0");
  const Index n = T.degree();
  if (n % 2 == 0) throw InvalidInput("latitude_vanishing_system: degree must be odd (2m - 1)");
  const Index m = (n + 1) / 2;
  const double t = std::cos(theta);
  const double s = std::sin(theta);
  const double ca = std::cos(alpha * kPi);
  const double sa = std::sin(alpha * kPi);

  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(2 * m));
  out.push_back(T.a(0)(t));
  for (Index k = 1; k < m; ++k) {
    const double lift = std::pow(s, double(2 * m - 2 * k));
    const double hi_a = T.a(2 * m - k)(t);
    const double hi_b = T.b(2 * m - k)(t);
    out.push_back(T.a(k)(t) + lift * (hi_a * ca + hi_b * sa));
    out.push_back(T.b(k)(t) + lift * (hi_a * sa - hi_b * ca));
  }
  const double half = alpha * kPi / 2.0;
  out.push_back(T.a(m)(t) * std::cos(half) + T.b(m)(t) * std::sin(half));
  return out;
}

ChebyshevTestCase ChebyshevTestCase::make(Index r, Index s, int epsilon, int power_sign,
                                          std::vector<double> points) {
  if (!(r > s && s > 0)) throw InvalidInput("Chebyshev case needs r > s > 0");
  if (epsilon != 0 && epsilon != 1) throw InvalidInput("epsilon must be 0 or 1");
  if (power_sign != 1 && power_sign != -1) throw InvalidInput("power sign must be +1 or -1");
  ChebyshevTestCase c{r, s, epsilon, power_sign, std::move(points)};
  if (static_cast<Index>(c.sample_points.size()) != c.size())
    throw InvalidInput("Chebyshev case needs r+s+1+epsilon = " + std::to_string(c.size()) +
                       " sample points");
  require_open_unit_points(c.sample_points, "ChebyshevTestCase");
  return c;
}

Eigen::MatrixXd chebyshev_collocation_matrix(const ChebyshevTestCase& c) {
  const Index size = c.size();
  Eigen::MatrixXd m(static_cast<Index>(c.sample_points.size()), size);
  for (Index i = 0; i < m.rows(); ++i) {
    const double t = c.sample_points[static_cast<std::size_t>(i)];
    const double t2 = t * t;
    Index col = 0;
    for (Index j = 0; j <= c.r; ++j) m(i, col++) = std::pow(t2, double(j));
    const double lead = (c.power_sign > 0 ? t : 1.0 / t) * std::pow(1.0 - t2, double(c.r - c.s));
    for (Index j = 0; j <= c.s - 1 + c.epsilon; ++j) m(i, col++) = lead * std::pow(t2, double(j));
  }
  return m;
}

double chebyshev_collocation_det(const ChebyshevTestCase& c) {
  return determinant(chebyshev_collocation_matrix(c));
}

double hadamard_scale(const Eigen::MatrixXd& m) {
  return m.colwise().norm().prod();
}

double vandermonde_scale(const std::vector<double>& points) {
  double v = 1.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) v *= std::abs(points[j] - points[i]);
  return v;
}

Poly HkFamily::h(Index k) const {
  Poly p = Poly::zero(r - s + k);
  for (Index j = 0; j <= r - s; ++j) p[j + k] = a(k, j);
  return p;
}

HkFamily hk_coefficients(Index r, Index s) {
  if (!(r > s && s > 0)) throw InvalidInput("hk_coefficients needs r > s > 0");
  HkFamily family{r, s, Eigen::MatrixXd(s, r - s + 1)};
  for (Index k = 0; k < s; ++k) {
    for (Index j = 0; j <= r - s; ++j) {
      family.a(k, j) = binomial(r - s, j) *
                       product(0, j, [k](Index i) { return double(2 * k + 2 * i + 1); }) *
                       product(j, r - s, [r, k](Index i) { return double(2 * (r - k - i) - 1); });
    }
  }
  return family;
}

double hk_system_det(Index r, Index s, const std::vector<double>& points) {
  if (static_cast<Index>(points.size()) != s) throw InvalidInput("hk_system_det needs s points");
  require_open_unit_points(points, "hk_system_det");
  const HkFamily family = hk_coefficients(r, s);
  Eigen::MatrixXd m(s, s);
  for (Index j = 0; j < s; ++j) {
    const Poly h = family.h(j);
    for (Index k = 0; k < s; ++k) m(j, k) = h(points[static_cast<std::size_t>(k)]);
  }
  return determinant(m);
}

namespace {

void check_paired_shape(Index k, Index m, const std::vector<double>& points) {
  if (!(k >= 1 && k <= m)) throw InvalidInput("paired system needs 1 <= k <= m");
  if (static_cast<Index>(points.size()) != m) throw InvalidInput("paired system needs m points");
  require_open_unit_points(points, "paired system");
}

}  // namespace

Eigen::MatrixXd paired_system_matrix(Index k, Index m, const std::vector<double>& points) {
  check_paired_shape(k, m, points);
  const Index p_terms = 2 * m - k;
  Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(2 * m, 2 * m);
  for (Index i = 0; i < m; ++i) {
    const double t = points[static_cast<std::size_t>(i)];
    const double weight = std::pow(1.0 - t * t, double(m - k));
    for (Index j = 0; j < p_terms; ++j) sys(j % 2 == 0 ? i : m + i, j) = std::pow(t, double(j));
    for (Index j = 0; j < k; ++j)
      sys(j % 2 == 1 ? i : m + i, p_terms + j) = std::pow(t, double(j)) * weight;
  }
  return sys;
}

std::vector<double> paired_system_residuals(Index k, Index m, const Poly& p, const Poly& q,
                                     const std::vector<double>& points) {
  check_paired_shape(k, m, points);
  const Poly pn = p.normalized();
  const Poly qn = q.normalized();
  if (pn.degree() > 2 * m - k - 1)
    throw InvalidInput("p must have degree <= 2m-k-1 = " + std::to_string(2 * m - k - 1));
  if (qn.degree() > k - 1) throw InvalidInput("q must have degree <= k-1 = " + std::to_string(k - 1));
  const auto [p_even, p_odd] = even_odd_split(pn);
  const auto [q_even, q_odd] = even_odd_split(qn);
  std::vector<double> out(static_cast<std::size_t>(2 * m));
  for (Index i = 0; i < m; ++i) {
    const double t = points[static_cast<std::size_t>(i)];
    const double weight = std::pow(1.0 - t * t, double(m - k));
    out[static_cast<std::size_t>(i)] = p_even(t) + q_odd(t) * weight;
    out[static_cast<std::size_t>(m + i)] = p_odd(t) + q_even(t) * weight;
  }
  return out;
}

bool paired_system_check(Index k, Index m, const Poly& p, const Poly& q,
                  const std::vector<double>& points, double tol) {
  const auto res = paired_system_residuals(k, m, p, q, points);
  const double scale = std::max(p.max_abs_coeff(), q.max_abs_coeff());
  return std::all_of(res.begin(), res.end(),
                     [&](double r) { return std::abs(r) <= tol * scale; });
}

ChebyshevReduction chebyshev_reduction(Index k, Index m, int equation) {
  if (!(k >= 1 && k <= m)) throw InvalidInput("chebyshev_reduction needs 1 <= k <= m");
  if (equation != 1 && equation != 2) throw InvalidInput("equation must be 1 or 2");
  ChebyshevReduction red;
  if (k % 2 == 0) {
    // p* of degree m - k/2 - 1 against q* of degree k/2 - 1; the odd side
    // carries t (first equation) or, after dividing by t, 1/t (second).
    red.r = m - k / 2 - 1;
    red.s = k / 2 - 1;
    red.epsilon = 1;
    red.power_sign = equation == 1 ? 1 : -1;
  } else if (equation == 1) {
    red.r = m - (k + 1) / 2;
    red.s = (k - 1) / 2;
    red.epsilon = 0;
    red.power_sign = 1;
  } else {
    // deg p* = m - (k+3)/2, deg q* = (k-1)/2: matching the exponent m - k
    // forces s = (k-3)/2 and a q of degree s + 1, i.e. epsilon = 2.
    red.r = m - (k + 3) / 2;
    red.s = (k - 3) / 2;
    red.epsilon = 2;
    red.power_sign = -1;
  }
  red.covered = red.r > red.s && red.s > 0 && (red.epsilon == 0 || red.epsilon == 1);
  return red;
}

double reference_value_scale(const SphericalPoly& T) {
  const Index s = T.degree();
  const Index lats = s + 2;
  const Index lons = 2 * s + 3;
  double scale = 0.0;
  for (Index l = 0; l < lats; ++l) {
    const double theta = (double(l) + 0.5) * kPi / double(lats);
    for (Index j = 0; j < lons; ++j) {
      const double phi = 2.0 * kPi * double(j) / double(lons);
      scale = std::max(scale, std::abs(eval_spherical(T, theta, phi)));
    }
  }
  return scale;
}

SphericalPoly factor_step(const SphericalPoly& T, Index m, Index lambda,
                          const std::vector<double>& thetas, const FactorOptions& options) {
  const Index s = T.degree();
  if (!(m <= s && s <= 2 * m - 1))
    throw InvalidInput("factor_step needs m <= s <= 2m-1 (s = " + std::to_string(s) +
                       ", m = " + std::to_string(m) + ")");
  if (lambda != s - m + 1)
    throw InvalidInput("factor_step needs lambda = s - m + 1 = " + std::to_string(s - m + 1));
  if (static_cast<Index>(thetas.size()) != 2 * lambda)
    throw InvalidInput("factor_step needs 2 lambda latitudes");
  for (std::size_t i = 0; i < thetas.size(); ++i) {
    if (!(thetas[i] > 0.0 && thetas[i] < kPi)) throw InvalidInput("latitudes must lie in (0, pi)");
    for (std::size_t j = i + 1; j < thetas.size(); ++j)
      if (thetas[i] == thetas[j]) throw InvalidInput("latitudes must be distinct");
  }
  for (Index i = 0; i < lambda; ++i) {
    const double mirror = thetas[static_cast<std::size_t>(2 * lambda - 1 - i)];
    if (std::abs(mirror - (kPi - thetas[static_cast<std::size_t>(i)])) > 1e-12)
      throw InvalidInput("latitudes are not symmetric: theta_{2l+1-i} != pi - theta_i");
  }

  const double value_scale = options.reference_value_scale.value_or(reference_value_scale(T));
  const double coeff_scale = options.reference_coeff_scale.value_or(T.max_abs_coeff());

  const AzimuthGrid north = azimuth_grid(m, 0.0);
  const AzimuthGrid south = azimuth_grid(m, 1.0);
  for (Index i = 0; i < 2 * lambda; ++i) {
    const double theta = thetas[static_cast<std::size_t>(i)];
    for (double phi : (i < lambda ? north : south).angles) {
      const double value = eval_spherical(T, theta, phi);
      if (std::abs(value) > options.vanish_tol * value_scale)
        throw InvalidInput("polynomial does not vanish at node (theta = " + std::to_string(theta) +
                           ", phi = " + std::to_string(phi) + "): value " + std::to_string(value));
    }
  }

  std::vector<double> roots;
  for (double theta : thetas) roots.push_back(std::cos(theta));

  const Index out_degree = s - 2 * lambda;  // == 2m - s - 2
  const double bound = options.division_tol * coeff_scale;

  // Bands whose degree drops below 2 lambda must vanish identically.
  for (Index k = std::max<Index>(out_degree + 1, 0); k <= s; ++k) {
    const double worst = std::max(T.a(k).max_abs_coeff(), T.b(k).max_abs_coeff());
    if (worst > bound)
      throw InternalInconsistency("band " + std::to_string(k) + " should vanish but has magnitude " +
                                  std::to_string(worst));
  }
  if (out_degree < 0) return SphericalPoly(0);

  auto divide_band = [&](const Poly& band, Index k) {
    const double own = band.max_abs_coeff();
    if (own == 0.0) return Poly::zero(out_degree - k);
    try {
      return divide_by_linear_factors(band, roots, options.division_tol * coeff_scale / own);
    } catch (const DivisibilityError& e) {
      throw InternalInconsistency("band " + std::to_string(k) + " is not divisible by (t - " +
                                  std::to_string(e.root()) + "), residual " +
                                  std::to_string(e.residual()));
    }
  };

  SphericalPoly quotient(out_degree);
  for (Index k = 0; k <= out_degree; ++k) {
    quotient.set_a(k, divide_band(T.a(k), k));
    if (k > 0) quotient.set_b(k, divide_band(T.b(k), k));
  }
  return quotient;
}

FactorChainResult factor_chain(const SphericalPoly& T, const NodeSet& nodes,
                               const FactorOptions& options, Index steps) {
  const PartitionPlan& plan = nodes.plan();
  if (T.degree() != plan.n())
    throw InvalidInput("factor_chain: polynomial degree " + std::to_string(T.degree()) +
                       " does not match node set degree " + std::to_string(plan.n()));
  FactorOptions step_options = options;
  if (!step_options.reference_value_scale)
    step_options.reference_value_scale = reference_value_scale(T);
  if (!step_options.reference_coeff_scale) step_options.reference_coeff_scale = T.max_abs_coeff();

  if (steps < 0) steps = plan.groups();
  if (steps > plan.groups()) throw InvalidInput("factor_chain: more steps than groups");
  FactorChainResult result{T, {plan.n()}};
  for (Index k = 1; k <= steps; ++k) {
    const NodeGroup& group = nodes.groups()[static_cast<std::size_t>(k - 1)];
    std::vector<double> thetas;
    for (const auto& lat : group.latitudes) thetas.push_back(lat.theta);
    result.quotient = factor_step(result.quotient, group.s, plan.lambda(k), thetas, step_options);
    result.degree_trace.push_back(plan.degree_after(k));
  }
  return result;
}

KernelCertificate factorization_kernel_certificate(const NodeSet& nodes, double rank_tol,
                                                   const FactorOptions& options) {
  const PartitionPlan& plan = nodes.plan();
  KernelCertificate cert;
  bool ok = true;
  for (Index k = 1; k <= plan.groups(); ++k) {
    const NodeGroup& group = nodes.groups()[static_cast<std::size_t>(k - 1)];
    KernelStep step;
    step.group = k;
    step.degree_in = plan.degree_after(k - 1);
    step.degree_out = plan.degree_after(k);

    std::vector<SphericalCoord> points;
    std::vector<double> thetas;
    for (const auto& lat : group.latitudes) {
      thetas.push_back(lat.theta);
      for (double phi : lat.grid.angles) points.push_back({lat.theta, phi});
    }
    const Index s = step.degree_in;
    Eigen::MatrixXd constraints(static_cast<Index>(points.size()), space_dimension(s));
    for (Index i = 0; i < constraints.rows(); ++i) {
      const auto& pt = points[static_cast<std::size_t>(i)];
      Index col = 0;
      for (const BasisTerm& term : basis_layout(s))
        constraints(i, col++) = eval_basis_term(term, pt.theta, pt.phi);
    }
    step.constraints = constraints.rows();

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(constraints, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    step.min_singular_ratio = sv(sv.size() - 1) / sv(0);
    step.full_row_rank = constraints.rows() <= constraints.cols() && step.min_singular_ratio > rank_tol;
    step.nullity = constraints.cols() - constraints.rows();

    step.all_factored = step.full_row_rank && step.nullity == space_dimension(step.degree_out);
    if (step.all_factored) {
      const Eigen::MatrixXd null_basis = svd.matrixV().rightCols(step.nullity);
      for (Index col = 0; col < null_basis.cols(); ++col) {
        const SphericalPoly T = SphericalPoly::from_coefficients(s, null_basis.col(col));
        try {
          factor_step(T, group.s, plan.lambda(k), thetas, options);
        } catch (const std::exception&) {
          step.all_factored = false;
          break;
        }
      }
    }
    ok = ok && step.full_row_rank && step.all_factored;
    cert.steps.push_back(step);
  }
  cert.trivial = ok && plan.degree_after(plan.groups()) == -1;
  return cert;
}

}  // namespace sphinterp
