#include <doctest.h>

#include <algorithm>
#include <complex>
#include <numbers>
#include <random>

#include "sphinterp/factorization.hpp"
#include "sphinterp/interpolation.hpp"

using namespace sphinterp;
using std::numbers::pi;

namespace {

SphericalPoly random_spherical(Index n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXd c(space_dimension(n));
  for (Index i = 0; i < c.size(); ++i) c(i) = dist(rng);
  return SphericalPoly::from_coefficients(n, c);
}

std::vector<double> sorted_points(std::size_t count, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(0.02, 0.98);
  std::vector<double> p;
  while (p.size() < count) {
    const double x = dist(rng);
    if (std::all_of(p.begin(), p.end(), [&](double y) { return std::abs(x - y) > 1e-3; })) p.push_back(x);
  }
  std::sort(p.begin(), p.end());
  return p;
}

// Symmetric latitude set: lambda northern angles then mirrors in reverse order.
std::vector<double> mirrored(const std::vector<double>& north) {
  std::vector<double> all = north;
  for (auto it = north.rbegin(); it != north.rend(); ++it) all.push_back(pi - *it);
  return all;
}

SphericalPoly plant(const SphericalPoly& R, const std::vector<double>& thetas) {
  SphericalPoly T = R;
  for (double th : thetas) T = multiply_z_minus(T, std::cos(th));
  return T;
}

double max_coeff_diff(const SphericalPoly& a, const SphericalPoly& b) {
  return (a.coefficients() - b.coefficients()).cwiseAbs().maxCoeff();
}

// Complex-step free oracle: the (r+1)-th derivative by Cauchy's integral on a
// circle around t, applied to t^{k+1/2} (1-t)^{r-s} on the principal branch.
double contour_derivative(Index order, double t, Index k, Index r, Index s) {
  const double radius = 0.5 * std::min(t, 1.0 - t);
  const int samples = 256;
  std::complex<double> acc = 0.0;
  for (int j = 0; j < samples; ++j) {
    const std::complex<double> w = std::polar(1.0, 2.0 * pi * j / samples);
    const std::complex<double> z = t + radius * w;
    const std::complex<double> g = std::pow(z, double(k) + 0.5) * std::pow(1.0 - z, double(r - s));
    acc += g / std::pow(radius * w, double(order));
  }
  double fact = 1.0;
  for (Index i = 2; i <= order; ++i) fact *= double(i);
  return (acc.real() / samples) * fact;
}

}  // namespace

TEST_CASE("latitude_vanishing_system") {
  SphericalPoly zero(5);
  for (double r : latitude_vanishing_system(zero, 1.0, 0.0)) CHECK(r == 0.0);

  SphericalPoly one(5);
  one.set_a(0, Poly{1.0});
  const auto r1 = latitude_vanishing_system(one, 1.0, 1.0);
  REQUIRE(r1.size() == 6);
  CHECK(r1[0] == 1.0);
  for (std::size_t i = 1; i < r1.size(); ++i) CHECK(r1[i] == 0.0);

  CHECK_THROWS_AS(latitude_vanishing_system(one, 0.0, 0.0), InvalidInput);
  CHECK_THROWS_AS(latitude_vanishing_system(one, pi, 0.0), InvalidInput);
  CHECK_THROWS_AS(latitude_vanishing_system(SphericalPoly(4), 1.0, 0.0), InvalidInput);
}

TEST_CASE("vanishing system equivalence with grid vanishing") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> th(0.1, pi - 0.1);
  for (int trial = 0; trial < 100; ++trial) {
    const Index m = 1 + Index(trial % 5);
    const double alpha = double(trial % 2);
    const double theta = th(rng);
    SphericalPoly T = random_spherical(2 * m - 1, rng);
    const AzimuthGrid grid = azimuth_grid(m, alpha);
    if (trial % 3 == 0) {
      std::vector<SphericalCoord> pts;
      for (double phi : grid.angles) pts.push_back({theta, phi});
      const Eigen::MatrixXd A = assemble_matrix(2 * m - 1, pts);
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
      T = SphericalPoly::from_coefficients(2 * m - 1, svd.matrixV().col(A.cols() - 1));
    }
    const double scale = std::max(1.0, T.max_abs_coeff());
    double sys = 0.0, grid_max = 0.0;
    for (double r : latitude_vanishing_system(T, theta, alpha)) sys = std::max(sys, std::abs(r));
    for (double phi : grid.angles) grid_max = std::max(grid_max, std::abs(eval_spherical(T, theta, phi)));
    CHECK((sys < 1e-11 * scale) == (grid_max < 1e-11 * scale));
  }
}

TEST_CASE("chebyshev collocation") {
  const auto c = ChebyshevTestCase::make(2, 1, 0, 1, {0.2, 0.5, 0.8, 0.9});
  const Eigen::MatrixXd m = chebyshev_collocation_matrix(c);
  CHECK(m.rows() == 4);
  CHECK(m(1, 3) == doctest::Approx(0.5 * 0.75));
  CHECK(std::abs(chebyshev_collocation_det(c)) > 0.0);

  ChebyshevTestCase dup = c;
  dup.sample_points = {0.2, 0.5, 0.5, 0.9};
  CHECK(chebyshev_collocation_matrix(dup).determinant() == 0.0);
  CHECK_THROWS_AS(ChebyshevTestCase::make(2, 1, 0, 1, {0.2, 0.5, 0.5, 0.9}), InvalidInput);
  CHECK_THROWS_AS(ChebyshevTestCase::make(2, 2, 0, 1, {0.1, 0.2, 0.3, 0.4, 0.5}), InvalidInput);
  CHECK_THROWS_AS(ChebyshevTestCase::make(2, 1, 2, 1, {0.1, 0.2, 0.3, 0.4, 0.5}), InvalidInput);
  CHECK_THROWS_AS(ChebyshevTestCase::make(2, 1, 0, 1, {0.2, 0.5, 0.8}), InvalidInput);

  CHECK(vandermonde_scale({0.0, 1.0, 3.0}) == doctest::Approx(6.0));

  std::mt19937_64 rng(99);
  for (Index r = 2; r <= 6; ++r)
    for (Index s = 1; s < r; ++s)
      for (int eps : {0, 1})
        for (int sign : {1, -1})
          for (int trial = 0; trial < 5; ++trial) {
            const auto pts = sorted_points(std::size_t(r + s + 1 + eps), rng);
            const auto cc = ChebyshevTestCase::make(r, s, eps, sign, pts);
            CHECK(std::abs(chebyshev_collocation_det(cc)) / vandermonde_scale(pts) > 1e-14);
          }
}

TEST_CASE("hk coefficients") {
  for (Index r = 2; r <= 8; ++r)
    for (Index s = 1; s < r; ++s) {
      const HkFamily f = hk_coefficients(r, s);
      CHECK(f.a.rows() == s);
      CHECK(f.a.cols() == r - s + 1);
      CHECK(f.a.minCoeff() > 0.0);
    }
  const HkFamily f21 = hk_coefficients(2, 1);
  CHECK(f21.h(0).degree() == 1);
  CHECK_THROWS_AS(hk_coefficients(2, 2), InvalidInput);
}

TEST_CASE("hk polynomials match the derivative identity") {
  // t^{r+1/2} d^{r+1}/dt^{r+1} [t^{k+1/2} (1-t)^{r-s}] = c_k h_k(t)
  for (Index r = 2; r <= 6; ++r)
    for (Index s = 1; s < r; ++s) {
      const HkFamily f = hk_coefficients(r, s);
      for (Index k = 0; k < s; ++k) {
        double c = ((r - k) % 2 == 0 ? 1.0 : -1.0) * std::pow(2.0, -double(r + 1));
        for (Index i = 0; i < k; ++i) c *= double(2 * i + 1);
        for (Index i = 1; i <= s - k - 1; ++i) c *= double(2 * i - 1);
        for (double t : {0.25, 0.5, 0.7}) {
          const double lhs = std::pow(t, double(r) + 0.5) * contour_derivative(r + 1, t, k, r, s);
          const double rhs = c * f.h(k)(t);
          CHECK(std::abs(lhs - rhs) <= 1e-6 * std::max(1.0, std::abs(rhs)));
        }
      }
    }
}

TEST_CASE("hk system determinants") {
  CHECK(hk_system_det(4, 2, {0.3, 0.7}) > 0.0);
  std::mt19937_64 rng(17);
  for (Index r = 2; r <= 6; ++r)
    for (Index s = 1; s < r; ++s)
      for (int trial = 0; trial < 25; ++trial) CHECK(hk_system_det(r, s, sorted_points(std::size_t(s), rng)) > 0.0);
  CHECK_THROWS_AS(hk_system_det(4, 2, {0.3}), InvalidInput);
}

TEST_CASE("paired parity system") {
  const std::vector<double> pts{0.2, 0.5, 0.8};
  CHECK(paired_system_check(2, 3, Poly::zero(3), Poly::zero(1), pts));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  int false_count = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Index m = 1 + Index(trial % 5);
    const Index k = 1 + Index(rng() % std::uint64_t(m));
    Poly p = Poly::zero(2 * m - k - 1), q = Poly::zero(k - 1);
    for (Index j = 0; j <= p.degree(); ++j) p[j] = dist(rng);
    for (Index j = 0; j <= q.degree(); ++j) q[j] = dist(rng);
    if (!paired_system_check(k, m, p, q, sorted_points(std::size_t(m), rng))) ++false_count;
  }
  CHECK(false_count == 200);

  for (Index m = 1; m <= 5; ++m)
    for (Index k = 1; k <= m; ++k) {
      const Eigen::MatrixXd A = paired_system_matrix(k, m, sorted_points(std::size_t(m), rng));
      CHECK(A.rows() == 2 * m);
      CHECK(A.cols() == 2 * m);
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
      const auto sv = svd.singularValues();
      CHECK(sv(sv.size() - 1) > 1e-10 * sv(0));
    }

  CHECK_THROWS_AS(paired_system_residuals(2, 3, Poly::monomial(4), Poly::zero(1), pts), InvalidInput);
  CHECK_THROWS_AS(paired_system_residuals(2, 3, Poly::zero(3), Poly::monomial(2), pts), InvalidInput);
  CHECK_THROWS_AS(paired_system_residuals(4, 3, Poly::zero(1), Poly::zero(3), pts), InvalidInput);
}

TEST_CASE("chebyshev_reduction") {
  const auto e = chebyshev_reduction(2, 5, 1);
  CHECK(e.r == 3);
  CHECK(e.s == 0);
  CHECK(e.epsilon == 1);
  CHECK(e.power_sign == 1);
  CHECK_FALSE(e.covered);

  const auto e4 = chebyshev_reduction(4, 5, 2);
  CHECK(e4.r == 2);
  CHECK(e4.s == 1);
  CHECK(e4.power_sign == -1);
  CHECK(e4.covered);

  const auto o1 = chebyshev_reduction(3, 5, 1);
  CHECK(o1.r == 3);
  CHECK(o1.s == 1);
  CHECK(o1.epsilon == 0);
  CHECK(o1.covered);

  const auto o2 = chebyshev_reduction(5, 6, 2);
  CHECK(o2.r == 2);
  CHECK(o2.s == 1);
  CHECK(o2.epsilon == 2);
  CHECK_FALSE(o2.covered);

  CHECK_THROWS_AS(chebyshev_reduction(0, 3, 1), InvalidInput);
  CHECK_THROWS_AS(chebyshev_reduction(1, 3, 3), InvalidInput);
}

TEST_CASE("factor_step planted constant") {
  const std::vector<double> thetas = mirrored({pi / 5});
  SphericalPoly c(0);
  c.set_a(0, Poly{1.0});
  // s = 2, m = 2, lambda = 1
  const SphericalPoly T = plant(c, thetas);
  const SphericalPoly q = factor_step(T, 2, 1, thetas);
  CHECK(q.degree() == 0);
  CHECK(std::abs(q.a(0)[0] - 1.0) <= 1e-12);
}

TEST_CASE("factor_step plant and recover") {
  std::mt19937_64 rng(606);
  std::uniform_real_distribution<double> cosine(0.05, 0.95);
  for (Index m = 1; m <= 5; ++m)
    for (Index s = m; s <= 2 * m - 2; ++s) {
      const Index lambda = s - m + 1;
      for (int seed = 0; seed < 20; ++seed) {
        std::vector<double> north;
        for (double c : sorted_points(std::size_t(lambda), rng)) north.push_back(std::acos(c));
        const auto thetas = mirrored(north);
        const SphericalPoly R = random_spherical(s - 2 * lambda, rng);
        const SphericalPoly T = plant(R, thetas);
        const SphericalPoly q = factor_step(T, m, lambda, thetas);
        REQUIRE(q.degree() == R.degree());
        CHECK(max_coeff_diff(q, R) <= 1e-8);
        CHECK(max_coeff_diff(plant(q, thetas), T) <= 1e-8);
      }
    }
}

TEST_CASE("factor_step at s = 2m - 1 returns zero") {
  for (Index m = 1; m <= 4; ++m) {
    std::vector<double> north;
    for (Index i = 1; i <= m; ++i) north.push_back(std::acos(double(m + 1 - i) / double(m + 1)));
    const auto thetas = mirrored(north);
    std::vector<SphericalCoord> pts;
    for (Index i = 0; i < 2 * m; ++i)
      for (double phi : azimuth_grid(m, i < m ? 0.0 : 1.0).angles) pts.push_back({thetas[std::size_t(i)], phi});
    const Eigen::MatrixXd A = assemble_matrix(2 * m - 1, pts);
    // Least-squares fit to zero data: the minimizer of |A c| on the unit sphere.
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullV);
    const auto sv = svd.singularValues();
    CHECK(sv(sv.size() - 1) > 1e-8 * sv(0));
    SphericalPoly zero(2 * m - 1);
    const SphericalPoly q = factor_step(zero, m, m, thetas);
    CHECK(q.max_abs_coeff() <= 1e-8);
  }
}

TEST_CASE("factor_step errors") {
  const auto thetas = mirrored({pi / 5});
  std::mt19937_64 rng(1);
  const SphericalPoly R = random_spherical(2, rng);
  try {
    factor_step(R, 2, 1, thetas);
    FAIL("expected InvalidInput");
  } catch (const InvalidInput& e) {
    CHECK(std::string(e.what()).find("does not vanish at node") != std::string::npos);
  }
  CHECK_THROWS_AS(factor_step(R, 3, 1, thetas), InvalidInput);
  CHECK_THROWS_AS(factor_step(R, 2, 2, thetas), InvalidInput);
  CHECK_THROWS_AS(factor_step(R, 2, 1, {pi / 5, pi / 3}), InvalidInput);
}

TEST_CASE("factor_chain") {
  const NodeSet nodes = build_nodeset(PartitionPlan(3, {1, 1}), {{pi / 5}, {2 * pi / 5}});
  const FactorChainResult zero = factor_chain(SphericalPoly(3), nodes);
  CHECK(zero.degree_trace == std::vector<Index>{3, 1, -1});
  CHECK(zero.quotient.max_abs_coeff() == 0.0);

  // One step on a polynomial planted through the first group's latitudes.
  std::mt19937_64 rng(12);
  const SphericalPoly R = random_spherical(1, rng);
  const SphericalPoly T = plant(R, mirrored({pi / 5}));
  const FactorChainResult one = factor_chain(T, nodes, {}, 1);
  CHECK(one.degree_trace == std::vector<Index>{3, 1});
  CHECK(max_coeff_diff(one.quotient, R) <= 1e-8);
  CHECK_THROWS_AS(factor_chain(T, nodes), InvalidInput);
}

TEST_CASE("kernel certificate agrees with poisedness") {
  for (Index n : {1, 3, 5, 7})
    for (const PartitionPlan& plan : enumerate_partitions(n)) {
      const NodeSet nodes = build_nodeset(plan, default_latitudes(plan));
      const KernelCertificate k = factorization_kernel_certificate(nodes);
      const CertificateReport c = poisedness_certificate(nodes, 3, 1);
      CHECK(k.trivial == c.pass);
      CHECK(k.trivial);
      CHECK(k.steps.size() == std::size_t(plan.groups()));
      for (const KernelStep& st : k.steps) {
        CHECK(st.full_row_rank);
        CHECK(st.nullity == space_dimension(st.degree_out));
      }
    }
}
