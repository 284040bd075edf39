#include "sphinterp/interpolation.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace sphinterp {

namespace {

void fill_row(Index n, const SphericalCoord& pt, Eigen::Ref<Eigen::RowVectorXd, 0, Eigen::InnerStride<>> row) {
  const double t = std::cos(pt.theta);
  const double s = std::sin(pt.theta);
  Eigen::VectorXd t_pow(n + 1), s_pow(n + 1);
  t_pow(0) = s_pow(0) = 1.0;
  for (Index j = 1; j <= n; ++j) {
    t_pow(j) = t_pow(j - 1) * t;
    s_pow(j) = s_pow(j - 1) * s;
  }
  Index col = 0;
  for (Index j = 0; j <= n; ++j) row(col++) = t_pow(j);
  for (Index k = 1; k <= n; ++k) {
    const double c = std::cos(double(k) * pt.phi);
    const double sn = std::sin(double(k) * pt.phi);
    for (Index j = 0; j <= n - k; ++j) row(col++) = t_pow(j) * s_pow(k) * c;
    for (Index j = 0; j <= n - k; ++j) row(col++) = t_pow(j) * s_pow(k) * sn;
  }
}

struct Factorization {
  Eigen::PartialPivLU<Eigen::MatrixXd> lu;
  double pivot_min = 0.0;
  double condition_estimate = 1.0;
};

Factorization factorize(const Eigen::MatrixXd& m) {
  Factorization f{Eigen::PartialPivLU<Eigen::MatrixXd>(m), 0.0, 1.0};
  f.pivot_min = f.lu.matrixLU().diagonal().cwiseAbs().minCoeff();
  const double rcond = f.lu.rcond();
  f.condition_estimate = rcond > 0.0 ? std::max(1.0, 1.0 / rcond)
                                     : std::numeric_limits<double>::infinity();
  return f;
}

bool negligible_pivot(const Factorization& f, const Eigen::MatrixXd& m) {
  const double scale = m.cwiseAbs().maxCoeff();
  return !(f.pivot_min > double(m.rows()) * std::numeric_limits<double>::epsilon() * scale);
}

Eigen::VectorXd refined_solve(const Factorization& f, const Eigen::MatrixXd& m,
                              const Eigen::VectorXd& rhs) {
  Eigen::VectorXd x = f.lu.solve(rhs);
  x += f.lu.solve(rhs - m * x);
  return x;
}

}  // namespace

Eigen::MatrixXd assemble_matrix(Index n, const std::vector<SphericalCoord>& points) {
  if (n < 0) throw InvalidInput("assemble_matrix: degree must be >= 0");
  Eigen::MatrixXd m(static_cast<Index>(points.size()), space_dimension(n));
  for (Index i = 0; i < m.rows(); ++i) fill_row(n, points[static_cast<std::size_t>(i)], m.row(i));
  return m;
}

Eigen::MatrixXd assemble_matrix(const NodeSet& nodes) {
  return assemble_matrix(nodes.degree(), nodes.points());
}

InterpolationProblem::InterpolationProblem(NodeSet nodes, Eigen::VectorXd data)
    : nodes_(std::move(nodes)), data_(std::move(data)) {
  if (data_.size() != nodes_.size())
    throw InvalidInput("data has " + std::to_string(data_.size()) + " values for " +
                       std::to_string(nodes_.size()) + " nodes");
}

SolveReport solve(Index n, const std::vector<SphericalCoord>& points, const Eigen::VectorXd& data) {
  if (static_cast<Index>(points.size()) != space_dimension(n))
    throw InvalidInput("need (n+1)^2 = " + std::to_string(space_dimension(n)) + " nodes, got " +
                       std::to_string(points.size()));
  if (data.size() != static_cast<Index>(points.size()))
    throw InvalidInput("data length does not match node count");

  const Eigen::MatrixXd m = assemble_matrix(n, points);
  const Factorization f = factorize(m);
  if (negligible_pivot(f, m)) {
    throw PoisednessError(f.pivot_min == 0.0
                              ? "collocation matrix is exactly singular; check the node set"
                              : "collocation matrix is singular to working precision",
                          f.pivot_min);
  }
  const Eigen::VectorXd c = refined_solve(f, m, data);
  SolveReport report{SphericalPoly::from_coefficients(n, c), 0.0, f.condition_estimate, f.pivot_min};
  report.residual_inf = (m * c - data).cwiseAbs().maxCoeff();
  return report;
}

SolveReport solve(const InterpolationProblem& problem) {
  return solve(problem.nodes().degree(), problem.nodes().points(), problem.data());
}

CertificateReport poisedness_certificate(Index n, const std::vector<SphericalCoord>& points,
                                         Index trials, std::uint64_t seed) {
  if (static_cast<Index>(points.size()) != space_dimension(n))
    throw InvalidInput("poisedness_certificate: need (n+1)^2 nodes");
  const Eigen::MatrixXd m = assemble_matrix(n, points);
  const Factorization f = factorize(m);

  CertificateReport report;
  report.pivot_min = f.pivot_min;
  report.condition_estimate = f.condition_estimate;
  const Eigen::VectorXd diag = f.lu.matrixLU().diagonal();
  report.log_abs_det = diag.array().abs().log().sum();
  int sign = static_cast<int>(f.lu.permutationP().determinant());
  for (Index i = 0; i < diag.size(); ++i) sign *= diag(i) < 0 ? -1 : (diag(i) > 0 ? 1 : 0);
  report.det_sign = sign;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  bool residuals_ok = true;
  for (Index trial = 0; trial < trials; ++trial) {
    Eigen::VectorXd planted(m.cols());
    for (Index i = 0; i < planted.size(); ++i) planted(i) = dist(rng);
    const Eigen::VectorXd rhs = m * planted;
    const Eigen::VectorXd c = refined_solve(f, m, rhs);
    const double rel = (m * c - rhs).cwiseAbs().maxCoeff() / std::max(1.0, rhs.cwiseAbs().maxCoeff());
    const double recovery = (c - planted).cwiseAbs().maxCoeff() / planted.cwiseAbs().maxCoeff();
    report.residuals.push_back(rel);
    report.max_residual = std::max(report.max_residual, rel);
    report.max_recovery_error = std::max(report.max_recovery_error, recovery);
    if (!(rel <= kCertificateResidualTol)) residuals_ok = false;
  }
  report.pass = std::isfinite(report.log_abs_det) && residuals_ok;
  return report;
}

CertificateReport poisedness_certificate(const NodeSet& nodes, Index trials, std::uint64_t seed) {
  return poisedness_certificate(nodes.degree(), nodes.points(), trials, seed);
}

}  // namespace sphinterp
