#pragma once

// Spherical polynomials of degree n in the latitude/longitude form
//
//   T(theta, phi) = a_0(cos theta)
//                 + sum_{k=1}^{n} sin^k(theta) [a_k(cos theta) cos(k phi)
//                                             + b_k(cos theta) sin(k phi)]
//
// with deg a_k, deg b_k <= n - k. Points map to the sphere by
// x = sin(theta) cos(phi), y = sin(theta) sin(phi), z = cos(theta).

#include <Eigen/Core>

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "sphinterp/errors.hpp"
#include "sphinterp/polynomial.hpp"

namespace sphinterp {

/// Dimension of the degree-n spherical polynomial space; 0 for n = -1.
constexpr Index space_dimension(Index n) { return n < 0 ? 0 : (n + 1) * (n + 1); }

struct SphericalCoord {
  double theta = 0.0;  // polar angle in [0, pi]
  double phi = 0.0;    // azimuth in [0, 2 pi)

  /// Validates theta and wraps phi into [0, 2 pi).
  static SphericalCoord make(double theta, double phi) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi))
      throw InvalidInput("polar angle outside [0, pi]: " + std::to_string(theta));
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double wrapped = std::fmod(phi, two_pi);
    if (wrapped < 0.0) wrapped += two_pi;
    if (wrapped >= two_pi) wrapped = 0.0;
    return {theta, wrapped};
  }

  Eigen::Vector3d cartesian() const {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
  }
};

enum class Trig { Cos, Sin };

/// One element of the standard basis: the polynomial whose only nonzero
/// coefficient is t^j in band k (a_k for Cos, b_k for Sin).
struct BasisTerm {
  Index k;
  Trig trig;
  Index j;
};

/// Basis order used everywhere a coefficient vector appears: k ascending,
/// the cosine block before the sine block, j ascending within a block.
inline std::vector<BasisTerm> basis_layout(Index n) {
  std::vector<BasisTerm> terms;
  terms.reserve(static_cast<std::size_t>(space_dimension(n)));
  for (Index j = 0; j <= n; ++j) terms.push_back({0, Trig::Cos, j});
  for (Index k = 1; k <= n; ++k) {
    for (Index j = 0; j <= n - k; ++j) terms.push_back({k, Trig::Cos, j});
    for (Index j = 0; j <= n - k; ++j) terms.push_back({k, Trig::Sin, j});
  }
  return terms;
}

template <typename Scalar>
class SphericalPolynomial {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  explicit SphericalPolynomial(Index degree = 0) : degree_(degree) {
    if (degree < 0) throw InvalidInput("spherical polynomial degree must be >= 0");
    a_.reserve(static_cast<std::size_t>(degree + 1));
    b_.reserve(static_cast<std::size_t>(degree + 1));
    for (Index k = 0; k <= degree; ++k) {
      a_.push_back(Polynomial<Scalar>::zero(degree - k));
      b_.push_back(Polynomial<Scalar>::zero(degree - k));
    }
  }

  Index degree() const { return degree_; }

  const Polynomial<Scalar>& a(Index k) const { return a_.at(static_cast<std::size_t>(k)); }
  /// b(0) is structurally zero.
  const Polynomial<Scalar>& b(Index k) const { return b_.at(static_cast<std::size_t>(k)); }

  void set_a(Index k, const Polynomial<Scalar>& p) { assign(a_, k, p, "a"); }
  void set_b(Index k, const Polynomial<Scalar>& p) {
    if (k == 0) throw InvalidInput("b_0 does not exist");
    assign(b_, k, p, "b");
  }

  Scalar& a_coeff(Index k, Index j) { return a_.at(static_cast<std::size_t>(k))[j]; }
  Scalar& b_coeff(Index k, Index j) {
    if (k == 0) throw InvalidInput("b_0 does not exist");
    return b_.at(static_cast<std::size_t>(k))[j];
  }

  /// Coefficients in basis_layout(degree()) order.
  Vector coefficients() const {
    Vector c(space_dimension(degree_));
    Index row = 0;
    for (const BasisTerm& term : basis_layout(degree_))
      c(row++) = (term.trig == Trig::Cos ? a(term.k) : b(term.k))[term.j];
    return c;
  }

  static SphericalPolynomial from_coefficients(Index degree, const Vector& c) {
    if (c.size() != space_dimension(degree))
      throw InvalidInput("coefficient vector has length " + std::to_string(c.size()) +
                         ", expected " + std::to_string(space_dimension(degree)));
    SphericalPolynomial T(degree);
    Index row = 0;
    for (const BasisTerm& term : basis_layout(degree)) {
      auto& band = term.trig == Trig::Cos ? T.a_ : T.b_;
      band[static_cast<std::size_t>(term.k)][term.j] = c(row++);
    }
    return T;
  }

  Scalar max_abs_coeff() const {
    Scalar m(0);
    for (Index k = 0; k <= degree_; ++k) {
      m = std::max(m, a(k).max_abs_coeff());
      m = std::max(m, b(k).max_abs_coeff());
    }
    return m;
  }

  /// Same polynomial viewed in a higher-degree space.
  SphericalPolynomial raised_to(Index degree) const {
    if (degree < degree_) throw InvalidInput("raised_to: target degree below current degree");
    SphericalPolynomial T(degree);
    for (Index k = 0; k <= degree_; ++k) {
      T.a_[static_cast<std::size_t>(k)] = a(k).padded(degree - k);
      T.b_[static_cast<std::size_t>(k)] = b(k).padded(degree - k);
    }
    return T;
  }

 private:
  void assign(std::vector<Polynomial<Scalar>>& band, Index k, const Polynomial<Scalar>& p,
              const char* name) {
    if (k < 0 || k > degree_) throw InvalidInput(std::string(name) + "_k: band out of range");
    const Polynomial<Scalar> trimmed = p.normalized();
    if (trimmed.degree() > degree_ - k)
      throw InvalidInput(std::string(name) + "_" + std::to_string(k) + " has degree " +
                         std::to_string(trimmed.degree()) + " > " + std::to_string(degree_ - k));
    band[static_cast<std::size_t>(k)] = trimmed.padded(degree_ - k);
  }

  Index degree_;
  std::vector<Polynomial<Scalar>> a_;
  std::vector<Polynomial<Scalar>> b_;
};

using SphericalPoly = SphericalPolynomial<double>;

template <typename Scalar>
Scalar eval_spherical(const SphericalPolynomial<Scalar>& T, Scalar theta, Scalar phi) {
  using std::cos;
  using std::sin;
  const Scalar t = cos(theta);
  const Scalar s = sin(theta);
  Scalar value = T.a(0)(t);
  Scalar sin_power(1);
  for (Index k = 1; k <= T.degree(); ++k) {
    sin_power *= s;
    value += sin_power * (T.a(k)(t) * cos(Scalar(k) * phi) + T.b(k)(t) * sin(Scalar(k) * phi));
  }
  return value;
}

inline double eval_spherical(const SphericalPoly& T, const SphericalCoord& pt) {
  return eval_spherical(T, pt.theta, pt.phi);
}

/// Value of one basis element at (theta, phi).
inline double eval_basis_term(const BasisTerm& term, double theta, double phi) {
  const double radial = std::pow(std::cos(theta), double(term.j)) *
                        std::pow(std::sin(theta), double(term.k));
  if (term.k == 0) return radial;
  return radial * (term.trig == Trig::Cos ? std::cos(double(term.k) * phi)
                                          : std::sin(double(term.k) * phi));
}

/// The (n+1)^2 standard basis elements in basis_layout(n) order.
inline std::vector<SphericalPoly> basis_enumerate(Index n) {
  if (n < 0) throw InvalidInput("basis_enumerate: degree must be >= 0");
  std::vector<SphericalPoly> basis;
  basis.reserve(static_cast<std::size_t>(space_dimension(n)));
  for (const BasisTerm& term : basis_layout(n)) {
    SphericalPoly T(n);
    (term.trig == Trig::Cos ? T.a_coeff(term.k, term.j) : T.b_coeff(term.k, term.j)) = 1.0;
    basis.push_back(std::move(T));
  }
  return basis;
}

template <typename Scalar>
SphericalPolynomial<Scalar> operator+(const SphericalPolynomial<Scalar>& S,
                                      const SphericalPolynomial<Scalar>& T) {
  const Index n = std::max(S.degree(), T.degree());
  return SphericalPolynomial<Scalar>::from_coefficients(
      n, S.raised_to(n).coefficients() + T.raised_to(n).coefficients());
}

template <typename Scalar>
SphericalPolynomial<Scalar> operator*(Scalar c, const SphericalPolynomial<Scalar>& T) {
  return SphericalPolynomial<Scalar>::from_coefficients(T.degree(), c * T.coefficients());
}

/// (z - c) * T. Since z = cos(theta) only enters through the band arguments,
/// each band polynomial is multiplied by (t - c).
template <typename Scalar>
SphericalPolynomial<Scalar> multiply_z_minus(const SphericalPolynomial<Scalar>& T, Scalar c) {
  SphericalPolynomial<Scalar> out(T.degree() + 1);
  for (Index k = 0; k <= T.degree(); ++k) {
    out.set_a(k, multiply_linear(T.a(k), c));
    if (k > 0) out.set_b(k, multiply_linear(T.b(k), c));
  }
  return out;
}

/// Surface integral over the sphere. Only the k = 0 band survives the
/// azimuthal integration: 2 pi * int_{-1}^{1} a_0(t) dt.
template <typename Scalar>
Scalar integrate_sphere(const SphericalPolynomial<Scalar>& T) {
  return Scalar(2) * std::numbers::pi_v<Scalar> * integrate_unit_interval(T.a(0));
}

// Folded form of a degree 2m-1 polynomial, valid only on the azimuths
// (2j + alpha) pi / (2m). Bands k and 2m - k collapse onto cos(k phi),
// sin(k phi); band m collapses onto cos(m phi - alpha pi / 2).
class ReducedForm {
 public:
  Index m() const { return m_; }
  double alpha() const { return alpha_; }

  const Poly& a0() const { return a0_; }
  /// Index k runs over 1..m-1.
  const Poly& a(Index k) const { return a_.at(static_cast<std::size_t>(k)); }
  const Poly& b(Index k) const { return b_.at(static_cast<std::size_t>(k)); }
  /// u_{2m-k} and v_{2m-k}, indexed by k.
  const Poly& u(Index k) const { return u_.at(static_cast<std::size_t>(k)); }
  const Poly& v(Index k) const { return v_.at(static_cast<std::size_t>(k)); }
  /// a_m cos(alpha pi / 2) + b_m sin(alpha pi / 2).
  const Poly& middle() const { return middle_; }

  /// Azimuth phi_j = (2j + alpha) pi / (2m), j = 0..2m-1.
  double phi(Index j) const {
    return (2.0 * double(j) + alpha_) * std::numbers::pi / (2.0 * double(m_));
  }

  /// Value at (theta, phi(j)). Evaluation is addressed by grid index so the
  /// form can never be used off its fold set.
  double eval(double theta, Index j) const {
    if (j < 0 || j >= 2 * m_) throw InvalidInput("ReducedForm::eval: azimuth index out of range");
    const double t = std::cos(theta);
    const double s = std::sin(theta);
    const double ph = phi(j);
    double value = a0_(t);
    for (Index k = 1; k < m_; ++k) {
      const double sk = std::pow(s, double(k));
      const double sk2 = std::pow(s, double(2 * m_ - k));
      value += (a(k)(t) * sk + u(k)(t) * sk2) * std::cos(double(k) * ph);
      value += (b(k)(t) * sk + v(k)(t) * sk2) * std::sin(double(k) * ph);
    }
    value += middle_(t) * std::pow(s, double(m_)) *
             std::cos(double(m_) * ph - alpha_ * std::numbers::pi / 2.0);
    return value;
  }

 private:
  friend ReducedForm fold_reduce(const SphericalPoly& T, double alpha, Index m);

  Index m_ = 1;
  double alpha_ = 0.0;
  Poly a0_;
  std::vector<Poly> a_, b_, u_, v_;  // slot 0 unused
  Poly middle_;
};

inline ReducedForm fold_reduce(const SphericalPoly& T, double alpha, Index m) {
  if (m < 1) throw InvalidInput("fold_reduce: m must be positive");
  if (T.degree() != 2 * m - 1)
    throw InvalidInput("fold_reduce: degree " + std::to_string(T.degree()) +
                       " is not 2m-1 for m = " + std::to_string(m));
  if (!(alpha >= 0.0 && alpha < 2.0)) throw InvalidInput("fold_reduce: alpha outside [0, 2)");

  const double ca = std::cos(alpha * std::numbers::pi);
  const double sa = std::sin(alpha * std::numbers::pi);
  ReducedForm r;
  r.m_ = m;
  r.alpha_ = alpha;
  r.a0_ = T.a(0);
  const auto slots = static_cast<std::size_t>(m);
  r.a_.assign(slots, Poly());
  r.b_.assign(slots, Poly());
  r.u_.assign(slots, Poly());
  r.v_.assign(slots, Poly());
  for (Index k = 1; k < m; ++k) {
    const auto i = static_cast<std::size_t>(k);
    const Poly& hi_a = T.a(2 * m - k);
    const Poly& hi_b = T.b(2 * m - k);
    r.a_[i] = T.a(k);
    r.b_[i] = T.b(k);
    r.u_[i] = ca * hi_a + sa * hi_b;
    r.v_[i] = sa * hi_a - ca * hi_b;
  }
  const double half = alpha * std::numbers::pi / 2.0;
  r.middle_ = std::cos(half) * T.a(m) + std::sin(half) * T.b(m);
  return r;
}

}  // namespace sphinterp
