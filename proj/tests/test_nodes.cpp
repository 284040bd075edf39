#include <doctest.h>

#include <numbers>
#include <set>

#include "sphinterp/nodes.hpp"

using namespace sphinterp;
using std::numbers::pi;

TEST_CASE("azimuth_grid") {
  const AzimuthGrid g0 = azimuth_grid(2, 0.0);
  REQUIRE(g0.angles.size() == 4);
  CHECK(g0.angles[1] == doctest::Approx(pi / 2));
  CHECK(g0.angles[3] == doctest::Approx(1.5 * pi));
  const AzimuthGrid g1 = azimuth_grid(2, 1.0);
  CHECK(g1.angles[0] == doctest::Approx(pi / 4));
  CHECK(g1.angles[3] == doctest::Approx(7 * pi / 4));
  const AzimuthGrid g3 = azimuth_grid(3, 0.0);
  REQUIRE(g3.angles.size() == 6);
  for (std::size_t j = 1; j < 6; ++j) CHECK(g3.angles[j] - g3.angles[j - 1] == doctest::Approx(pi / 3));
  CHECK(g3.angles.back() < 2 * pi);
  CHECK_THROWS_AS(azimuth_grid(2, 2.0), InvalidInput);
  CHECK_THROWS_AS(azimuth_grid(0, 0.0), InvalidInput);
}

TEST_CASE("enumerate_partitions") {
  const auto p3 = enumerate_partitions(3);
  REQUIRE(p3.size() == 2);
  CHECK(p3[0].lambdas() == std::vector<Index>{2});
  CHECK(p3[1].lambdas() == std::vector<Index>{1, 1});
  const auto p5 = enumerate_partitions(5);
  REQUIRE(p5.size() == 4);
  std::set<std::vector<Index>> got;
  for (const auto& p : p5) got.insert(p.lambdas());
  CHECK(got == std::set<std::vector<Index>>{{3}, {1, 2}, {2, 1}, {1, 1, 1}});
  for (Index n = 1; n <= 13; n += 2) CHECK(enumerate_partitions(n).size() == std::size_t(1) << ((n - 1) / 2));
  CHECK_THROWS_AS(enumerate_partitions(4), InvalidInput);
}

TEST_CASE("PartitionPlan") {
  const PartitionPlan plan = PartitionPlan::parse(7, "3,1");
  CHECK(plan.degree_after(0) == 7);
  CHECK(plan.degree_after(1) == 1);
  CHECK(plan.degree_after(2) == -1);
  CHECK(plan.grid_size(1) == 5);
  CHECK(plan.grid_size(2) == 1);
  CHECK_THROWS_AS(PartitionPlan::parse(7, "3,2"), InvalidInput);
  CHECK_THROWS_AS(PartitionPlan::parse(4, "2"), InvalidInput);
  CHECK_THROWS_AS(PartitionPlan::parse(3, "2,x"), InvalidInput);
  CHECK_THROWS_AS(PartitionPlan(3, {2, 0}), InvalidInput);
}

TEST_CASE("build_nodeset examples") {
  const NodeSet a = build_nodeset(PartitionPlan(3, {2}), {{pi / 6, pi / 3}});
  CHECK(a.size() == 16);
  CHECK(a.summary() == "4 latitudes with 4 points");

  const NodeSet b = build_nodeset(PartitionPlan(3, {1, 1}), {{pi / 5}, {2 * pi / 5}});
  CHECK(b.size() == 16);
  CHECK(b.summary() == "2 latitudes with 6 points and 2 latitudes with 2 points");

  CHECK_THROWS_AS(build_nodeset(PartitionPlan(3, {2}), {{pi / 6, pi / 6}}), InvalidInput);
  CHECK_THROWS_AS(build_nodeset(PartitionPlan(3, {2}), {{pi / 6, pi / 2}}), InvalidInput);
  CHECK_THROWS_AS(build_nodeset(PartitionPlan(3, {2}), {{0.0, pi / 3}}), InvalidInput);
  CHECK_THROWS_AS(build_nodeset(PartitionPlan(3, {1, 1}), {{pi / 5}, {pi / 5}}), InvalidInput);
}

TEST_CASE("node set invariants") {
  for (Index n = 1; n <= 11; n += 2)
    for (const PartitionPlan& plan : enumerate_partitions(n))
      for (int cfg = 0; cfg < 2; ++cfg) {
        const NodeSet nodes = build_nodeset(plan, cfg == 0 ? default_latitudes(plan) : random_latitudes(plan, 9));
        CHECK(nodes.size() == (n + 1) * (n + 1));
        CHECK(min_chordal_distance(nodes.points()) > 0.0);
        for (const NodeGroup& g : nodes.groups()) {
          const Index lambda = plan.lambda(g.k);
          CHECK(g.s == plan.degree_after(g.k - 1) - lambda + 1);
          for (Index i = 0; i < lambda; ++i) {
            const auto& north = g.latitudes[std::size_t(i)];
            const auto& south = g.latitudes[std::size_t(2 * lambda - 1 - i)];
            CHECK(std::abs(south.theta - (pi - north.theta)) <= 1e-14);
            CHECK(north.alpha == 0.0);
            CHECK(south.alpha == 1.0);
            // Mirrored grids differ by a rotation of pi / (2s).
            CHECK(south.grid.angles[0] - north.grid.angles[0] == doctest::Approx(pi / (2.0 * double(g.s))));
          }
        }
      }
}

TEST_CASE("legendre_latitudes") {
  const auto m1 = legendre_latitudes(1);
  REQUIRE(m1.size() == 2);
  CHECK(std::cos(m1[0]) == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(std::cos(m1[1]) == doctest::Approx(-1.0 / std::sqrt(3.0)).epsilon(1e-15));

  const auto m2 = legendre_latitudes(2);
  const double big = std::sqrt((3.0 + 2.0 * std::sqrt(6.0 / 5.0)) / 7.0);
  const double small = std::sqrt((3.0 - 2.0 * std::sqrt(6.0 / 5.0)) / 7.0);
  CHECK(std::abs(std::cos(m2[0]) - big) <= 1e-14);
  CHECK(std::abs(std::cos(m2[1]) - small) <= 1e-14);

  for (Index m = 1; m <= 8; ++m) {
    const auto th = legendre_latitudes(m);
    REQUIRE(th.size() == std::size_t(2 * m));
    for (Index i = 0; i < 2 * m; ++i) {
      CHECK(std::abs(legendre_value(2 * m, std::cos(th[std::size_t(i)])).first) <= 1e-13);
      CHECK(std::abs(th[std::size_t(i)] + th[std::size_t(2 * m - 1 - i)] - pi) <= 1e-14);
    }
  }
}

TEST_CASE("dimension_identity_check") {
  CHECK(dimension_identity_check(3, 2));
  CHECK(dimension_identity_check(5, 1));
  CHECK(dimension_identity_check(7, 3));
  for (Index s = 0; s <= 20; ++s)
    for (Index lambda = 1; s - 2 * lambda >= -1; ++lambda) CHECK(dimension_identity_check(s, lambda));
  CHECK_THROWS_AS(dimension_identity_check(3, 3), InvalidInput);
}
