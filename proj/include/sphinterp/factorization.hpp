#pragma once

// Constructive checks of the factorization argument behind the latitude node
// sets: the per-latitude vanishing systems, the Chebyshev-system determinants
// they reduce to, and division of spherical polynomials by prod (z - cos theta_i).

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <vector>

#include "sphinterp/nodes.hpp"
#include "sphinterp/spherical.hpp"

namespace sphinterp {

// ---------------------------------------------------------------------------
// Single-latitude vanishing system.

/// Left-hand sides of the conditions equivalent to T vanishing on the whole
/// azimuth grid (2j + alpha) pi / (2m) at polar angle theta, for T of degree
/// 2m - 1, in the order
///   a_0(t),
///   for k = 1..m-1:  a_k(t) + s^{2m-2k} (a_{2m-k}(t) cos(alpha pi) + b_{2m-k}(t) sin(alpha pi)),
///                    b_k(t) + s^{2m-2k} (a_{2m-k}(t) sin(alpha pi) - b_{2m-k}(t) cos(alpha pi)),
///   a_m(t) cos(alpha pi / 2) + b_m(t) sin(alpha pi / 2),
/// with t = cos(theta), s = sin(theta). 2m values in total.
std::vector<double> latitude_vanishing_system(const SphericalPoly& T, double theta, double alpha);

// ---------------------------------------------------------------------------
// Chebyshev systems on (0, 1).

/// The function family {t^{2j}}_{j=0..r} together with
/// {t^{+-1} (1 - t^2)^{r-s} t^{2j}}_{j=0..s-1+epsilon}, sampled at r+s+1+epsilon points.
struct ChebyshevTestCase {
  Index r = 2;
  Index s = 1;
  int epsilon = 0;     // 0 or 1
  int power_sign = 1;  // +1 for t, -1 for 1/t
  std::vector<double> sample_points;

  /// Validates r > s > 0, epsilon, sign and the point count.
  static ChebyshevTestCase make(Index r, Index s, int epsilon, int power_sign,
                                std::vector<double> points);

  Index size() const { return r + s + 1 + epsilon; }
};

/// Rows are sample points, columns the functions of the family.
Eigen::MatrixXd chebyshev_collocation_matrix(const ChebyshevTestCase& c);
double chebyshev_collocation_det(const ChebyshevTestCase& c);

/// Product of the column norms: the Hadamard bound on |det(m)|.
double hadamard_scale(const Eigen::MatrixXd& m);

/// prod_{i<j} |t_j - t_i|, the determinant of {1, t, ..., t^{N-1}} at the
/// same points. Collocation determinants are measured against this.
double vandermonde_scale(const std::vector<double>& points);

/// Coefficients a_{k,j}, k = 0..s-1, j = 0..r-s, of
/// h_k(t) = sum_j a_{k,j} t^{j+k}.
struct HkFamily {
  Index r = 0;
  Index s = 0;
  Eigen::MatrixXd a;  // s x (r - s + 1)

  Poly h(Index k) const;
};

/// a_{k,j} = C(r-s, j) prod_{i=0}^{j} (2k + 2i + 1) prod_{i=j}^{r-s} (2(r-k-i) - 1).
HkFamily hk_coefficients(Index r, Index s);

/// det (h_j(points[k]))_{j,k=0}^{s-1}.
double hk_system_det(Index r, Index s, const std::vector<double>& points);

// ---------------------------------------------------------------------------
// Paired parity system on (0, 1).

/// Residuals of
///   p^even(t_i) + q^odd(t_i) (1 - t_i^2)^{m-k}   (first m entries)
///   p^odd(t_i)  + q^even(t_i) (1 - t_i^2)^{m-k}  (last m entries)
/// for deg p <= 2m-k-1 and deg q <= k-1 at m distinct points of (0, 1).
std::vector<double> paired_system_residuals(Index k, Index m, const Poly& p, const Poly& q,
                                     const std::vector<double>& points);

/// True iff every residual is within tol * max(|coeff p|, |coeff q|).
bool paired_system_check(Index k, Index m, const Poly& p, const Poly& q,
                  const std::vector<double>& points, double tol = 1e-12);

/// The 2m x 2m linear map (p_0..p_{2m-k-1}, q_0..q_{k-1}) -> residuals.
Eigen::MatrixXd paired_system_matrix(Index k, Index m, const std::vector<double>& points);

/// Parameters under which one equation of the paired system becomes
/// p_r(t^2) + t^{+-1} (1 - t^2)^{r-s} q(t^2) with deg q = s - 1 + epsilon.
/// `covered` is false when the assignment falls outside r > s > 0,
/// epsilon in {0, 1}; for odd k the second equation needs epsilon = 2.
struct ChebyshevReduction {
  Index r = 0;
  Index s = 0;
  int epsilon = 0;
  int power_sign = 1;
  bool covered = false;
};

ChebyshevReduction chebyshev_reduction(Index k, Index m, int equation);

// ---------------------------------------------------------------------------
// Factorization by latitude factors.

struct FactorOptions {
  /// Node values must be within this fraction of the reference magnitude.
  double vanish_tol = 1e-10;
  /// Division remainders and bands that must vanish, relative to the
  /// coefficient magnitude.
  double division_tol = 1e-9;
  /// Magnitudes to measure against; when absent they come from T itself.
  std::optional<double> reference_value_scale;
  std::optional<double> reference_coeff_scale;
};

/// Largest |T| over a fixed unisolvent latitude/longitude grid.
double reference_value_scale(const SphericalPoly& T);

/// For T of degree s with m <= s <= 2m-1 and lambda = s - m + 1 vanishing on
/// the alpha = 0 grid of size m on thetas[0..lambda) and the alpha = 1 grid on
/// the mirrored thetas[lambda..2 lambda), returns T* of degree s - 2 lambda
/// with T = prod_i (z - cos thetas[i]) T*. When s = 2m-1 the quotient has
/// degree -1 and the degree-0 zero polynomial is returned.
///
/// Throws InvalidInput if T does not vanish on the grid (naming the node) and
/// InternalInconsistency if the divisions or band annihilations fail.
SphericalPoly factor_step(const SphericalPoly& T, Index m, Index lambda,
                          const std::vector<double>& thetas, const FactorOptions& options = {});

struct FactorChainResult {
  SphericalPoly quotient;
  /// n_0 = n, n_1, ..., n_sigma (the last is -1 for complete plans).
  std::vector<Index> degree_trace;
};

/// Applies factor_step group by group with s = n_{k-1}, m = n_{k-1} - lambda_k + 1.
/// `steps` limits the chain to the first groups (-1: all of them).
FactorChainResult factor_chain(const SphericalPoly& T, const NodeSet& nodes,
                               const FactorOptions& options = {}, Index steps = -1);

struct KernelStep {
  Index group = 1;
  Index degree_in = 0;
  Index degree_out = 0;
  Index constraints = 0;
  Index nullity = 0;
  double min_singular_ratio = 0.0;
  bool full_row_rank = false;
  bool all_factored = false;
};

struct KernelCertificate {
  bool trivial = false;
  std::vector<KernelStep> steps;
};

/// Certifies that only the zero polynomial vanishes on the node set by
/// chaining: the vanishing space of group k's nodes inside degree n_{k-1}
/// must have dimension (n_k+1)^2 and each of its basis vectors must divide
/// through factor_step. Independent of the full collocation LU.
KernelCertificate factorization_kernel_certificate(const NodeSet& nodes,
                                                   double rank_tol = 1e-12,
                                                   const FactorOptions& options = {});

}  // namespace sphinterp
