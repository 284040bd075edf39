#pragma once

// Interpolation node sets made of symmetric latitude pairs carrying
// equidistant azimuth grids, one group of latitudes per part of a
// composition of (n+1)/2.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "sphinterp/spherical.hpp"

namespace sphinterp {

/// The 2s azimuths (2j + alpha) pi / (2s), j = 0..2s-1.
struct AzimuthGrid {
  Index s = 1;
  double alpha = 0.0;
  std::vector<double> angles;
};

AzimuthGrid azimuth_grid(Index s, double alpha);

/// Odd degree n with an ordered composition lambda_1 + ... + lambda_sigma =
/// (n+1)/2. Derived degrees n_0 = n, n_k = n_{k-1} - 2 lambda_k end at -1.
class PartitionPlan {
 public:
  PartitionPlan(Index n, std::vector<Index> lambdas);

  /// Parses "2,1" style compositions.
  static PartitionPlan parse(Index n, std::string_view text);

  Index n() const { return n_; }
  const std::vector<Index>& lambdas() const { return lambdas_; }
  Index groups() const { return static_cast<Index>(lambdas_.size()); }

  /// lambda_k for k = 1..sigma.
  Index lambda(Index k) const { return lambdas_.at(static_cast<std::size_t>(k - 1)); }
  /// n_k for k = 0..sigma.
  Index degree_after(Index k) const { return degrees_.at(static_cast<std::size_t>(k)); }
  /// Half the number of azimuths on each latitude of group k: n_{k-1} - lambda_k + 1.
  Index grid_size(Index k) const { return degree_after(k - 1) - lambda(k) + 1; }

  std::string to_string() const;

  friend bool operator==(const PartitionPlan&, const PartitionPlan&) = default;

 private:
  Index n_;
  std::vector<Index> lambdas_;
  std::vector<Index> degrees_;
};

/// All ordered compositions of (n+1)/2, shortest first, lexicographic within a length.
std::vector<PartitionPlan> enumerate_partitions(Index n);

struct LatitudeRecord {
  double theta = 0.0;
  double alpha = 0.0;
  Index index = 1;  // 1-based position i within its group
  AzimuthGrid grid;
};

struct NodeGroup {
  Index k = 1;
  Index s = 1;
  std::vector<LatitudeRecord> latitudes;
};

class NodeSet {
 public:
  const PartitionPlan& plan() const { return plan_; }
  const std::vector<NodeGroup>& groups() const { return groups_; }
  Index degree() const { return plan_.n(); }

  /// All nodes, group by group, latitude by latitude, azimuth ascending.
  const std::vector<SphericalCoord>& points() const { return points_; }
  Index size() const { return static_cast<Index>(points_.size()); }

  /// The northern angles each group was built from.
  std::vector<std::vector<double>> supplied_latitudes() const;

  /// "2 latitudes with 10 points and 4 latitudes with 4 points"
  std::string summary() const;

 private:
  friend NodeSet build_nodeset(const PartitionPlan&, const std::vector<std::vector<double>>&);

  explicit NodeSet(PartitionPlan plan) : plan_(std::move(plan)) {}

  PartitionPlan plan_;
  std::vector<NodeGroup> groups_;
  std::vector<SphericalCoord> points_;
};

/// Builds the node set from the first lambda_k angles of each group, all in
/// (0, pi/2). Mirrors pi - theta are appended in reverse order; the supplied
/// half gets alpha = 0 grids, the mirrored half alpha = 1 grids.
NodeSet build_nodeset(const PartitionPlan& plan, const std::vector<std::vector<double>>& latitudes);

/// Equally spaced cosines k/(M+1), k = M..1 with M = (n+1)/2, handed out to
/// the groups in order.
std::vector<std::vector<double>> default_latitudes(const PartitionPlan& plan);

/// Seeded random northern angles with cosines in [0.05, 0.95], pairwise at
/// least 0.02 apart in cosine.
std::vector<std::vector<double>> random_latitudes(const PartitionPlan& plan, std::uint64_t seed);

/// arccos of the zeros of the Legendre polynomial of degree 2m, ascending,
/// with theta_{2m+1-i} = pi - theta_i exactly.
std::vector<double> legendre_latitudes(Index m);

/// Legendre polynomial P_degree and its derivative at x.
std::pair<double, double> legendre_value(Index degree, double x);

/// dim(s) == dim(s - 2 lambda) + 2 lambda (2s - 2 lambda + 2).
bool dimension_identity_check(Index s, Index lambda);

/// Smallest Euclidean distance between two nodes on the unit sphere.
double min_chordal_distance(const std::vector<SphericalCoord>& points);

}  // namespace sphinterp
