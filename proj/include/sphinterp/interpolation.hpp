#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

#include "sphinterp/nodes.hpp"
#include "sphinterp/spherical.hpp"

namespace sphinterp {

/// Collocation matrix M(i, j) = basis_j(point_i), basis in basis_layout(n) order.
Eigen::MatrixXd assemble_matrix(Index n, const std::vector<SphericalCoord>& points);
Eigen::MatrixXd assemble_matrix(const NodeSet& nodes);

class InterpolationProblem {
 public:
  /// `data` follows the node set's flattened point order.
  InterpolationProblem(NodeSet nodes, Eigen::VectorXd data);

  const NodeSet& nodes() const { return nodes_; }
  const Eigen::VectorXd& data() const { return data_; }

 private:
  NodeSet nodes_;
  Eigen::VectorXd data_;
};

struct SolveReport {
  SphericalPoly solution;
  double residual_inf = 0.0;        // max_i |T(a_i) - f_i|
  double condition_estimate = 1.0;  // 1-norm estimate from the LU factors
  double pivot_min = 0.0;           // smallest |U_ii|
};

/// Dense LU with partial pivoting plus one step of iterative refinement.
/// Throws PoisednessError when a pivot is negligible relative to the matrix.
SolveReport solve(const InterpolationProblem& problem);
SolveReport solve(Index n, const std::vector<SphericalCoord>& points, const Eigen::VectorXd& data);

struct CertificateReport {
  bool pass = false;
  double log_abs_det = 0.0;
  int det_sign = 0;
  double pivot_min = 0.0;
  double condition_estimate = 1.0;
  /// Relative residual of each planted trial: |M c_hat - f|_inf / max(1, |f|_inf).
  std::vector<double> residuals;
  double max_residual = 0.0;
  /// Relative coefficient error of each trial's recovery (reported, not gated).
  double max_recovery_error = 0.0;
};

inline constexpr double kCertificateResidualTol = 1e-8;

/// Plants `trials` seeded random coefficient vectors, samples them at the
/// nodes and solves. PASS when log|det| is finite and every relative
/// residual is within kCertificateResidualTol.
CertificateReport poisedness_certificate(const NodeSet& nodes, Index trials, std::uint64_t seed);
CertificateReport poisedness_certificate(Index n, const std::vector<SphericalCoord>& points,
                                         Index trials, std::uint64_t seed);

}  // namespace sphinterp
