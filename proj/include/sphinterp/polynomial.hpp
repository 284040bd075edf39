#pragma once

// Dense univariate polynomials with real coefficients, stored low to high
// degree. The stored length fixes the degree; trailing zeros are only dropped
// by normalized().

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <ranges>
#include <span>
#include <type_traits>
#include <utility>

#include "sphinterp/errors.hpp"

namespace sphinterp {

using Index = Eigen::Index;

template <typename Scalar>
class Polynomial {
 public:
  using Coefficients = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  /// The zero polynomial of degree 0.
  Polynomial() : coeffs_(Coefficients::Zero(1)) {}

  explicit Polynomial(Coefficients coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() == 0) coeffs_ = Coefficients::Zero(1);
  }

  Polynomial(std::initializer_list<Scalar> coeffs)
      : coeffs_(static_cast<Index>(coeffs.size())) {
    Index j = 0;
    for (Scalar c : coeffs) coeffs_(j++) = c;
    if (coeffs_.size() == 0) coeffs_ = Coefficients::Zero(1);
  }

  static Polynomial zero(Index degree) {
    return Polynomial(Coefficients::Zero(std::max<Index>(degree, 0) + 1));
  }

  static Polynomial constant(Scalar c) { return Polynomial{c}; }

  /// c * t^j
  static Polynomial monomial(Index j, Scalar c = Scalar(1)) {
    Polynomial p = zero(j);
    p.coeffs_(j) = c;
    return p;
  }

  Index degree() const { return coeffs_.size() - 1; }
  const Coefficients& coeffs() const { return coeffs_; }

  Scalar operator[](Index j) const { return coeffs_(j); }
  Scalar& operator[](Index j) { return coeffs_(j); }

  /// Horner evaluation.
  Scalar operator()(Scalar t) const {
    Scalar acc = coeffs_(degree());
    for (Index j = degree() - 1; j >= 0; --j) acc = acc * t + coeffs_(j);
    return acc;
  }

  Scalar max_abs_coeff() const { return coeffs_.cwiseAbs().maxCoeff(); }

  bool is_zero() const { return (coeffs_.array() == Scalar(0)).all(); }

  /// Drops trailing exact zeros (keeps at least the constant term).
  Polynomial normalized() const {
    Index d = degree();
    while (d > 0 && coeffs_(d) == Scalar(0)) --d;
    return Polynomial(Coefficients(coeffs_.head(d + 1)));
  }

  /// Same polynomial stored with at least `degree` + 1 coefficients.
  Polynomial padded(Index degree) const {
    if (degree <= this->degree()) return *this;
    Coefficients c = Coefficients::Zero(degree + 1);
    c.head(coeffs_.size()) = coeffs_;
    return Polynomial(std::move(c));
  }

  Polynomial& operator+=(const Polynomial& q) {
    if (q.degree() > degree()) *this = padded(q.degree());
    coeffs_.head(q.coeffs_.size()) += q.coeffs_;
    return *this;
  }

  Polynomial& operator-=(const Polynomial& q) {
    if (q.degree() > degree()) *this = padded(q.degree());
    coeffs_.head(q.coeffs_.size()) -= q.coeffs_;
    return *this;
  }

  Polynomial& operator*=(Scalar c) {
    coeffs_ *= c;
    return *this;
  }

  friend bool operator==(const Polynomial& p, const Polynomial& q) {
    return p.coeffs_.size() == q.coeffs_.size() && p.coeffs_ == q.coeffs_;
  }

 private:
  Coefficients coeffs_;
};

using Poly = Polynomial<double>;

template <typename Scalar>
Scalar eval(const Polynomial<Scalar>& p, Scalar t) {
  return p(t);
}

template <typename Scalar>
Polynomial<Scalar> operator+(Polynomial<Scalar> p, const Polynomial<Scalar>& q) {
  return p += q;
}

template <typename Scalar>
Polynomial<Scalar> operator-(Polynomial<Scalar> p, const Polynomial<Scalar>& q) {
  return p -= q;
}

template <typename Scalar>
Polynomial<Scalar> operator-(Polynomial<Scalar> p) {
  return p *= Scalar(-1);
}

template <typename Scalar>
Polynomial<Scalar> operator*(Scalar c, Polynomial<Scalar> p) {
  return p *= c;
}

template <typename Scalar>
Polynomial<Scalar> operator*(const Polynomial<Scalar>& p, const Polynomial<Scalar>& q) {
  typename Polynomial<Scalar>::Coefficients c =
      Polynomial<Scalar>::Coefficients::Zero(p.degree() + q.degree() + 1);
  for (Index i = 0; i <= p.degree(); ++i)
    for (Index j = 0; j <= q.degree(); ++j) c(i + j) += p[i] * q[j];
  return Polynomial<Scalar>(std::move(c));
}

/// p(t) * (t - c); raises the stored degree by one.
template <typename Scalar>
Polynomial<Scalar> multiply_linear(const Polynomial<Scalar>& p, Scalar c) {
  typename Polynomial<Scalar>::Coefficients out =
      Polynomial<Scalar>::Coefficients::Zero(p.degree() + 2);
  out.tail(p.degree() + 1) += p.coeffs();
  out.head(p.degree() + 1) -= c * p.coeffs();
  return Polynomial<Scalar>(std::move(out));
}

/// prod_i (t - roots[i])
template <std::ranges::input_range Range,
          typename Scalar = std::ranges::range_value_t<Range>>
Polynomial<Scalar> from_roots(const Range& roots) {
  Polynomial<Scalar> p = Polynomial<Scalar>::constant(Scalar(1));
  for (Scalar r : roots) p = multiply_linear(p, r);
  return p;
}

enum class Parity { Even, Odd };

/// (p_even, p_odd), each stored with p's degree.
template <typename Scalar>
std::pair<Polynomial<Scalar>, Polynomial<Scalar>> even_odd_split(const Polynomial<Scalar>& p) {
  auto even = Polynomial<Scalar>::zero(p.degree());
  auto odd = Polynomial<Scalar>::zero(p.degree());
  for (Index j = 0; j <= p.degree(); ++j) (j % 2 == 0 ? even : odd)[j] = p[j];
  return {even, odd};
}

/// p* with p(t) = p*(t^2) (even) or p(t) = t p*(t^2) (odd).
template <typename Scalar>
Polynomial<Scalar> compress_parity(const Polynomial<Scalar>& p, Parity parity) {
  const Index offset = parity == Parity::Even ? 0 : 1;
  for (Index j = 1 - offset; j <= p.degree(); j += 2) {
    if (p[j] != Scalar(0))
      throw InvalidInput("compress_parity: coefficient of t^" + std::to_string(j) +
                         " violates the requested parity");
  }
  const Index top = p.degree() < offset ? 0 : (p.degree() - offset) / 2;
  auto out = Polynomial<Scalar>::zero(top);
  for (Index j = offset; j <= p.degree(); j += 2) out[(j - offset) / 2] = p[j];
  return out;
}

/// Inverse of compress_parity: p*(t^2) or t p*(t^2).
template <typename Scalar>
Polynomial<Scalar> expand_parity(const Polynomial<Scalar>& compressed, Parity parity) {
  const Index offset = parity == Parity::Even ? 0 : 1;
  auto out = Polynomial<Scalar>::zero(2 * compressed.degree() + offset);
  for (Index j = 0; j <= compressed.degree(); ++j) out[2 * j + offset] = compressed[j];
  return out;
}

/// Lagrange cardinal polynomial l_i for the given nodes: l_i(points[j]) = delta_ij.
template <std::ranges::random_access_range Range,
          typename Scalar = std::ranges::range_value_t<Range>>
Polynomial<Scalar> lagrange_basis(const Range& points, Index i) {
  const Index n = static_cast<Index>(std::ranges::size(points));
  if (i < 0 || i >= n) throw InvalidInput("lagrange_basis: index out of range");
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b)
      if (points[a] == points[b]) throw InvalidInput("lagrange_basis: duplicate points");

  using Wide = std::conditional_t<std::is_same_v<Scalar, double>, long double, Scalar>;
  Polynomial<Wide> l = Polynomial<Wide>::constant(Wide(1));
  Wide denom(1);
  for (Index k = 0; k < n; ++k) {
    if (k == i) continue;
    l = multiply_linear(l, Wide(points[k]));
    denom *= Wide(points[i]) - Wide(points[k]);
  }
  return Polynomial<Scalar>((l.coeffs() / denom).template cast<Scalar>().eval());
}

/// Exact integral over [-1, 1] from the term-wise antiderivative.
template <typename Scalar>
Scalar integrate_unit_interval(const Polynomial<Scalar>& p) {
  Scalar sum(0);
  for (Index j = 0; j <= p.degree(); j += 2) sum += Scalar(2) * p[j] / Scalar(j + 1);
  return sum;
}

/// Quotient of p by prod (t - roots[i]), by synthetic division one root at a
/// time. Every intermediate remainder and the final coefficient mismatch must
/// stay below tol * max|coeff(p)|. If there are more roots than the degree,
/// p must itself be zero to tolerance and the zero polynomial is returned.
template <typename Scalar>
Polynomial<Scalar> divide_by_linear_factors(const Polynomial<Scalar>& p,
                                            std::type_identity_t<std::span<const Scalar>> roots,
                                            std::type_identity_t<Scalar> tol) {
  using std::abs;
  const Scalar bound = tol * p.max_abs_coeff();
  Polynomial<Scalar> q = p;
  for (Scalar r : roots) {
    const Index d = q.degree();
    if (d == 0) {
      if (abs(q[0]) > bound) throw DivisibilityError(double(r), double(abs(q[0])));
      q = Polynomial<Scalar>::zero(0);
      continue;
    }
    auto next = Polynomial<Scalar>::zero(d - 1);
    Scalar carry = q[d];
    for (Index j = d - 1; j >= 0; --j) {
      next[j] = carry;
      carry = q[j] + r * carry;
    }
    if (abs(carry) > bound) throw DivisibilityError(double(r), double(abs(carry)));
    q = std::move(next);
  }

  Polynomial<Scalar> back = q;
  for (Scalar r : roots) back = multiply_linear(back, r);
  const Index top = std::max(back.degree(), p.degree());
  const auto diff = (back.padded(top).coeffs() - p.padded(top).coeffs()).cwiseAbs();
  Index worst = 0;
  const Scalar mismatch = diff.maxCoeff(&worst);
  if (mismatch > bound)
    throw DivisibilityError(roots.empty() ? 0.0 : double(roots.back()), double(mismatch));
  return q;
}

}  // namespace sphinterp
