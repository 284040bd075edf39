#include "suites.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include "functions.hpp"
#include "sphinterp/cubature.hpp"
#include "sphinterp/factorization.hpp"
#include "sphinterp/interpolation.hpp"
#include "sphinterp/io.hpp"
#include "sphinterp/nodes.hpp"

namespace sphinterp::cli {

namespace {

constexpr double kPi = std::numbers::pi;

std::string pad(Index v, int width = 2) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%0*lld", width, static_cast<long long>(v));
  return buf;
}

Status gate(bool ok) { return ok ? Status::Pass : Status::Fail; }

std::string limit_le(double x) { return "<=" + io::format_double(x); }
std::string limit_gt(double x) { return ">" + io::format_double(x); }

SphericalPoly random_spherical(Index n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXd c(space_dimension(n));
  for (Index i = 0; i < c.size(); ++i) c(i) = dist(rng);
  return SphericalPoly::from_coefficients(n, c);
}

std::vector<double> random_unit_points(Index count, std::mt19937_64& rng, bool sorted) {
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  std::vector<double> pts;
  while (static_cast<Index>(pts.size()) < count) {
    const double x = dist(rng);
    if (x > 0.0 && x < 1.0 && std::find(pts.begin(), pts.end(), x) == pts.end()) pts.push_back(x);
  }
  if (sorted) std::sort(pts.begin(), pts.end());
  return pts;
}

/// lambda northern angles (seeded cosines, gap >= 0.02) followed by mirrors.
std::vector<double> random_symmetric_thetas(Index lambda, std::mt19937_64& rng) {
  return random_symmetric_latitudes(lambda, rng());
}

SphericalPoly multiply_factors(SphericalPoly T, const std::vector<double>& thetas) {
  for (double th : thetas) T = multiply_z_minus(T, std::cos(th));
  return T;
}

double max_coeff_diff(const SphericalPoly& A, const SphericalPoly& B) {
  const Index n = std::max(A.degree(), B.degree());
  return (A.raised_to(n).coefficients() - B.raised_to(n).coefficients()).cwiseAbs().maxCoeff();
}

}  // namespace

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Info: return "INFO";
  }
  return "?";
}

Index SuiteResult::failures() const {
  return std::count_if(rows.begin(), rows.end(), [](const CaseRow& r) { return r.status == Status::Fail; });
}

Index SuiteResult::checks() const {
  return std::count_if(rows.begin(), rows.end(), [](const CaseRow& r) { return r.status != Status::Info; });
}

void SuiteResult::sort() {
  std::stable_sort(rows.begin(), rows.end(), [](const CaseRow& a, const CaseRow& b) {
    return std::tie(a.key, a.metric) < std::tie(b.key, b.metric);
  });
}

std::string SuiteResult::csv() const {
  std::ostringstream out;
  out << "suite,case,metric,value,limit,status\n";
  for (const auto& r : rows)
    out << name << ',' << r.key << ',' << r.metric << ',' << io::format_double(r.value) << ','
        << r.limit << ',' << status_name(r.status) << '\n';
  return out.str();
}

SuiteResult poisedness_suite(const SuiteParams& p) {
  SuiteResult res{"poisedness", {}};
  const Index trials = p.trials > 0 ? p.trials : 5;
  for (const PartitionPlan& plan : enumerate_partitions(p.n)) {
    for (int cfg = 0; cfg < 3; ++cfg) {
      const auto lats = cfg == 0 ? default_latitudes(plan) : random_latitudes(plan, p.seed + cfg);
      const NodeSet nodes = build_nodeset(plan, lats);
      const std::string key = "n=" + pad(p.n) + "/plan=" + plan.to_string() + "/latitudes=" +
                              (cfg == 0 ? std::string("default") : "random" + std::to_string(cfg));
      const CertificateReport cert = poisedness_certificate(nodes, trials, p.seed);
      const KernelCertificate kernel = factorization_kernel_certificate(nodes);
      res.rows.push_back({key, "max_residual", cert.max_residual, limit_le(kCertificateResidualTol),
                          gate(cert.max_residual <= kCertificateResidualTol)});
      res.rows.push_back({key, "log_abs_det", cert.log_abs_det, "finite", gate(std::isfinite(cert.log_abs_det))});
      res.rows.push_back({key, "condition_estimate", cert.condition_estimate, "", Status::Info});
      res.rows.push_back({key, "kernel_trivial", kernel.trivial ? 1.0 : 0.0, "==determinant verdict",
                          gate(kernel.trivial == cert.pass && cert.pass)});
    }
  }
  res.sort();
  return res;
}

SuiteResult chebyshev_suite(const SuiteParams& p) {
  SuiteResult res{"chebyshev", {}};
  const Index trials = p.trials > 0 ? p.trials : 25;
  std::mt19937_64 rng(p.seed);
  for (Index r = 2; r <= p.rmax; ++r)
    for (Index s = 1; s < r; ++s)
      for (int eps = 0; eps <= 1; ++eps)
        for (int sign : {1, -1}) {
          double worst = std::numeric_limits<double>::infinity();
          int first_sign = 0;
          bool sign_stable = true;
          for (Index t = 0; t < trials; ++t) {
            const auto pts = random_unit_points(r + s + 1 + eps, rng, true);
            const double det = chebyshev_collocation_det(ChebyshevTestCase::make(r, s, eps, sign, pts));
            worst = std::min(worst, std::abs(det) / vandermonde_scale(pts));
            const int sg = det > 0 ? 1 : (det < 0 ? -1 : 0);
            if (t == 0) first_sign = sg;
            sign_stable = sign_stable && sg == first_sign;
          }
          const std::string key = "det/r=" + pad(r) + "/s=" + pad(s) + "/eps=" + std::to_string(eps) +
                                  "/sign=" + (sign > 0 ? "+" : "-");
          res.rows.push_back({key, "min_abs_det_over_vandermonde", worst, limit_gt(1e-14), gate(worst > 1e-14)});
          res.rows.push_back({key, "sorted_sign_constant", sign_stable ? 1.0 : 0.0, "", Status::Info});
        }
  for (Index r = 2; r <= p.rmax + 2; ++r)
    for (Index s = 1; s < r; ++s) {
      const double min_coeff = hk_coefficients(r, s).a.minCoeff();
      res.rows.push_back({"hk_coeff/r=" + pad(r) + "/s=" + pad(s), "min_coefficient", min_coeff, ">0",
                          gate(min_coeff > 0.0)});
    }
  for (Index r = 2; r <= p.rmax; ++r)
    for (Index s = 1; s < r; ++s) {
      double worst = std::numeric_limits<double>::infinity();
      for (Index t = 0; t < trials; ++t)
        worst = std::min(worst, hk_system_det(r, s, random_unit_points(s, rng, true)));
      res.rows.push_back({"hk_det/r=" + pad(r) + "/s=" + pad(s), "min_det", worst, ">0", gate(worst > 0.0)});
    }
  for (Index m = 1; m <= 5; ++m)
    for (Index k = 1; k <= m; ++k) {
      double worst = std::numeric_limits<double>::infinity();
      for (Index t = 0; t < trials; ++t) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(paired_system_matrix(k, m, random_unit_points(m, rng, false)));
        const auto& sv = svd.singularValues();
        worst = std::min(worst, sv(sv.size() - 1) / sv(0));
      }
      res.rows.push_back({"paired/m=" + pad(m) + "/k=" + pad(k), "min_singular_ratio", worst,
                          limit_gt(1e-10), gate(worst > 1e-10)});
    }
  res.sort();
  return res;
}

SuiteResult factorization_suite(const SuiteParams& p) {
  SuiteResult res{"factorization", {}};
  const Index mmax = p.m > 0 ? p.m : 5;
  const Index trials = p.trials > 0 ? p.trials : 20;
  std::mt19937_64 rng(p.seed);
  for (Index m = 1; m <= mmax; ++m)
    for (Index s = m; s <= 2 * m - 1; ++s) {
      const Index lambda = s - m + 1;
      const Index qdeg = s - 2 * lambda;
      double worst = 0.0;
      bool ok = true;
      for (Index t = 0; t < trials; ++t) {
        const auto thetas = random_symmetric_thetas(lambda, rng);
        if (qdeg >= 0) {
          const SphericalPoly R = random_spherical(qdeg, rng);
          const SphericalPoly T = multiply_factors(R, thetas);
          try {
            worst = std::max(worst, max_coeff_diff(factor_step(T, m, lambda, thetas), R));
          } catch (const std::exception&) {
            ok = false;
          }
        } else {
          // Degree 2m-1 on the full grid: the constraint matrix is square and
          // its best near-vanishing candidate must be rejected.
          std::vector<SphericalCoord> pts;
          const AzimuthGrid g0 = azimuth_grid(m, 0.0), g1 = azimuth_grid(m, 1.0);
          for (Index i = 0; i < 2 * lambda; ++i)
            for (double phi : (i < lambda ? g0 : g1).angles) pts.push_back({thetas[std::size_t(i)], phi});
          Eigen::JacobiSVD<Eigen::MatrixXd> svd(assemble_matrix(s, pts), Eigen::ComputeFullV);
          const auto& sv = svd.singularValues();
          const double ratio = sv(sv.size() - 1) / sv(0);
          worst = std::max(worst, ratio > 1e-12 ? 0.0 : 1.0);
          const SphericalPoly zero = factor_step(SphericalPoly(s), m, lambda, thetas);
          ok = ok && ratio > 1e-12 && zero.max_abs_coeff() == 0.0;
        }
      }
      const std::string key = "step/m=" + pad(m) + "/s=" + pad(s);
      res.rows.push_back({key, qdeg >= 0 ? "max_quotient_error" : "kernel_not_trivial", worst,
                          limit_le(1e-8), gate(ok && worst <= 1e-8)});
    }
  for (Index n = 3; n <= std::max<Index>(p.n, 3); n += 2)
    for (const PartitionPlan& plan : enumerate_partitions(n)) {
      const NodeSet nodes = build_nodeset(plan, default_latitudes(plan));
      const std::string key = "chain/n=" + pad(n) + "/plan=" + plan.to_string();
      std::vector<Index> expected{plan.n()};
      for (Index k = 1; k <= plan.groups(); ++k) expected.push_back(plan.degree_after(k));
      const FactorChainResult zero = factor_chain(SphericalPoly(n), nodes);
      res.rows.push_back({key, "full_trace_matches", zero.degree_trace == expected ? 1.0 : 0.0, "==1",
                          gate(zero.degree_trace == expected && zero.quotient.max_abs_coeff() == 0.0)});
      for (Index steps = 1; steps < plan.groups(); ++steps) {
        double worst = 0.0;
        bool ok = true;
        for (Index t = 0; t < trials; ++t) {
          const SphericalPoly R = random_spherical(plan.degree_after(steps), rng);
          SphericalPoly T = R;
          for (Index k = 1; k <= steps; ++k) {
            for (const auto& lat : nodes.groups()[std::size_t(k - 1)].latitudes)
              T = multiply_z_minus(T, std::cos(lat.theta));
          }
          try {
            const FactorChainResult out = factor_chain(T, nodes, {}, steps);
            ok = ok && std::equal(out.degree_trace.begin(), out.degree_trace.end(), expected.begin());
            worst = std::max(worst, max_coeff_diff(out.quotient, R));
          } catch (const std::exception&) {
            ok = false;
          }
        }
        res.rows.push_back({key + "/steps=" + std::to_string(steps), "max_quotient_error", worst,
                            limit_le(1e-8), gate(ok && worst <= 1e-8)});
      }
    }
  res.sort();
  return res;
}

SuiteResult lemmas_suite(const SuiteParams& p) {
  SuiteResult res{"lemmas", {}};
  const Index mmax = p.m > 0 ? p.m : 6;
  const Index trials = p.trials > 0 ? p.trials : 50;
  std::mt19937_64 rng(p.seed);
  std::uniform_real_distribution<double> angle(0.05, kPi - 0.05);
  for (Index m = 1; m <= mmax; ++m)
    for (double alpha : {0.0, 1.0, 0.37}) {
      double worst = 0.0;
      for (Index t = 0; t < trials; ++t) {
        const SphericalPoly T = random_spherical(2 * m - 1, rng);
        const ReducedForm R = fold_reduce(T, alpha, m);
        const double theta = angle(rng);
        double scale = 1.0;
        for (Index j = 0; j < 2 * m; ++j) scale = std::max(scale, std::abs(eval_spherical(T, theta, R.phi(j))));
        for (Index j = 0; j < 2 * m; ++j)
          worst = std::max(worst, std::abs(eval_spherical(T, theta, R.phi(j)) - R.eval(theta, j)) / scale);
      }
      char akey[16];
      std::snprintf(akey, sizeof akey, "%.2f", alpha);
      res.rows.push_back({"fold/m=" + pad(m) + "/alpha=" + akey, "max_relative_error", worst, limit_le(1e-11),
                          gate(worst <= 1e-11)});
    }

  const Index triples = std::max<Index>(trials * 2, 100);
  Index agree = 0, planted = 0;
  for (Index t = 0; t < triples; ++t) {
    const Index m = 1 + Index(rng() % std::uint64_t(std::min<Index>(mmax, 5)));
    const double alpha = (rng() % 2 == 0) ? 0.0 : 1.0;
    const double theta = angle(rng);
    SphericalPoly T = random_spherical(2 * m - 1, rng);
    const AzimuthGrid grid = azimuth_grid(m, alpha);
    if (t % 2 == 1) {
      std::vector<SphericalCoord> pts;
      for (double phi : grid.angles) pts.push_back({theta, phi});
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(assemble_matrix(2 * m - 1, pts), Eigen::ComputeFullV);
      const Index nullity = space_dimension(2 * m - 1) - 2 * m;
      Eigen::VectorXd w(nullity);
      std::uniform_real_distribution<double> dist(-1.0, 1.0);
      for (Index i = 0; i < nullity; ++i) w(i) = dist(rng);
      T = SphericalPoly::from_coefficients(2 * m - 1, svd.matrixV().rightCols(nullity) * w);
      ++planted;
    }
    const double scale = T.max_abs_coeff();
    const auto residuals = latitude_vanishing_system(T, theta, alpha);
    double max_res = 0.0, max_val = 0.0;
    for (double r : residuals) max_res = std::max(max_res, std::abs(r));
    for (double phi : grid.angles) max_val = std::max(max_val, std::abs(eval_spherical(T, theta, phi)));
    if ((max_res < 1e-11 * scale) == (max_val < 1e-11 * scale)) ++agree;
  }
  res.rows.push_back({"vanishing/triples=" + std::to_string(triples), "agreements", double(agree),
                      "==" + std::to_string(triples), gate(agree == triples)});
  res.rows.push_back({"vanishing/triples=" + std::to_string(triples), "planted_vanishing", double(planted), "",
                      Status::Info});

  Index bad = 0, total = 0;
  for (Index s = 0; s <= 20; ++s)
    for (Index lambda = 1; s - 2 * lambda >= -1; ++lambda, ++total)
      if (!dimension_identity_check(s, lambda)) ++bad;
  res.rows.push_back({"dimension/s<=20", "violations", double(bad), "==0 of " + std::to_string(total),
                      gate(bad == 0)});
  res.sort();
  return res;
}

SuiteResult cubature_suite(const SuiteParams& p) {
  SuiteResult res{"cubature", {}};
  const Index mmax = p.m > 0 ? p.m : 6;
  const Index trials = p.trials > 0 ? p.trials : 50;
  for (Index m = 1; m <= mmax; ++m) {
    const std::vector<std::pair<std::string, std::vector<double>>> families = {
        {"legendre", legendre_latitudes(m)},
        {"equispaced", equispaced_cosine_latitudes(m)},
        {"random", random_symmetric_latitudes(m, p.seed + std::uint64_t(m))}};
    for (const auto& [fam, lats] : families) {
      const CubatureRule rule = build_rule(lats);
      const std::string key = "rule/m=" + pad(m) + "/" + fam;
      const ExactnessReport ex = exactness_certificate(rule);
      res.rows.push_back({key, "exactness_scaled_error", ex.max_scaled_error, limit_le(1e-10),
                          gate(ex.max_scaled_error <= 1e-10)});
      const double total = rule.total_weight();
      res.rows.push_back({key, "total_weight_error", std::abs(total - 4 * kPi), limit_le(1e-10),
                          gate(std::abs(total - 4 * kPi) <= 1e-10)});
      const double z2 = apply_rule(rule, find_function("z2").f);
      if (m >= 2)
        res.rows.push_back({key, "z2_error", std::abs(z2 - 4 * kPi / 3), limit_le(1e-10),
                            gate(std::abs(z2 - 4 * kPi / 3) <= 1e-10)});
      double asym = 0.0, wmax = 1.0;
      for (Index i = 0; i < 2 * m; ++i) {
        asym = std::max(asym, std::abs(rule.weights[std::size_t(i)] - rule.weights[std::size_t(2 * m - 1 - i)]));
        wmax = std::max(wmax, std::abs(rule.weights[std::size_t(i)]));
      }
      res.rows.push_back({key, "weight_asymmetry", asym, limit_le(1e-12 * wmax), gate(asym <= 1e-12 * wmax)});

      // Integrating the interpolant on the matching single-group node set.
      const Index n = 2 * m - 1;
      const PartitionPlan plan(n, {m});
      const NodeSet nodes = build_nodeset(plan, {std::vector<double>(lats.begin(), lats.begin() + m)});
      const auto& fn = find_function("expz");
      Eigen::VectorXd data(nodes.size());
      for (Index i = 0; i < nodes.size(); ++i) data(i) = fn.f(nodes.points()[std::size_t(i)]);
      const double via_interp = integrate_sphere(solve(n, nodes.points(), data).solution);
      const double diff = std::abs(via_interp - apply_rule(rule, fn.f));
      res.rows.push_back({key, "interpolant_consistency", diff, limit_le(1e-8), gate(diff <= 1e-8)});
    }
  }
  for (Index m = 1; m <= 8; ++m) {
    const CubatureRule rule = build_rule(legendre_latitudes(m));
    const double wmin = *std::min_element(rule.weights.begin(), rule.weights.end());
    res.rows.push_back({"legendre/m=" + pad(m), "min_weight", wmin, ">=0", gate(nonnegativity_check(m))});
  }
  for (Index m = 1; m <= 8; ++m)
    for (int alpha : {0, 1})
      for (Index d = 0; d <= 2 * m; ++d) {
        const double err = trig_quadrature_error(d, m, alpha, trials, p.seed + std::uint64_t(100 * m + d));
        const std::string key = "trig/m=" + pad(m) + "/alpha=" + std::to_string(alpha) + "/degree=" + pad(d);
        if (d <= m)
          res.rows.push_back({key, "max_error", err, limit_le(1e-12), gate(err <= 1e-12)});
        else
          res.rows.push_back({key, "max_error", err, "", Status::Info});
      }
  res.sort();
  return res;
}

}  // namespace sphinterp::cli
