#include "sphinterp/nodes.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>

namespace sphinterp {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMinLatitudeGap = 1e-12;

}  // namespace

AzimuthGrid azimuth_grid(Index s, double alpha) {
  if (s < 1) throw InvalidInput("azimuth_grid: s must be >= 1");
  if (!(alpha >= 0.0 && alpha < 2.0)) throw InvalidInput("azimuth_grid: alpha outside [0, 2)");
  AzimuthGrid grid{s, alpha, {}};
  grid.angles.reserve(static_cast<std::size_t>(2 * s));
  for (Index j = 0; j < 2 * s; ++j)
    grid.angles.push_back((2.0 * double(j) + alpha) * kPi / (2.0 * double(s)));
  return grid;
}

PartitionPlan::PartitionPlan(Index n, std::vector<Index> lambdas)
    : n_(n), lambdas_(std::move(lambdas)) {
  if (n < 1 || n % 2 == 0) throw InvalidInput("n must be odd and positive, got " + std::to_string(n));
  if (lambdas_.empty()) throw InvalidInput("plan must have at least one part");
  for (Index l : lambdas_)
    if (l < 1) throw InvalidInput("plan parts must be positive integers");
  const Index total = std::accumulate(lambdas_.begin(), lambdas_.end(), Index{0});
  if (total != (n + 1) / 2)
    throw InvalidInput("plan parts must sum to (n+1)/2 = " + std::to_string((n + 1) / 2) +
                       ", got " + std::to_string(total));
  degrees_.push_back(n);
  for (Index l : lambdas_) degrees_.push_back(degrees_.back() - 2 * l);
}

PartitionPlan PartitionPlan::parse(Index n, std::string_view text) {
  std::vector<Index> parts;
  while (!text.empty()) {
    const auto comma = text.find(',');
    std::string_view item = text.substr(0, comma);
    while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
    while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
    Index value = 0;
    const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (ec != std::errc() || ptr != item.data() + item.size() || item.empty())
      throw InvalidInput("cannot parse plan part '" + std::string(item) + "'");
    parts.push_back(value);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return PartitionPlan(n, std::move(parts));
}

std::string PartitionPlan::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < lambdas_.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(lambdas_[i]);
  }
  return out;
}

std::vector<PartitionPlan> enumerate_partitions(Index n) {
  if (n < 1 || n % 2 == 0) throw InvalidInput("n must be odd and positive, got " + std::to_string(n));
  const Index total = (n + 1) / 2;
  std::vector<std::vector<Index>> compositions;
  // Each composition of `total` corresponds to a subset of the total-1 cut points.
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << (total - 1)); ++mask) {
    std::vector<Index> parts;
    Index run = 1;
    for (Index cut = 0; cut < total - 1; ++cut) {
      if (mask & (std::uint64_t{1} << cut)) {
        parts.push_back(run);
        run = 1;
      } else {
        ++run;
      }
    }
    parts.push_back(run);
    compositions.push_back(std::move(parts));
  }
  std::sort(compositions.begin(), compositions.end(), [](const auto& x, const auto& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  });
  std::vector<PartitionPlan> plans;
  plans.reserve(compositions.size());
  for (auto& parts : compositions) plans.emplace_back(n, std::move(parts));
  return plans;
}

std::vector<std::vector<double>> NodeSet::supplied_latitudes() const {
  std::vector<std::vector<double>> out;
  for (const NodeGroup& group : groups_) {
    std::vector<double> north;
    const auto half = group.latitudes.size() / 2;
    for (std::size_t i = 0; i < half; ++i) north.push_back(group.latitudes[i].theta);
    out.push_back(std::move(north));
  }
  return out;
}

std::string NodeSet::summary() const {
  std::vector<std::string> parts;
  for (const NodeGroup& group : groups_) {
    parts.push_back(std::to_string(group.latitudes.size()) + " latitudes with " +
                    std::to_string(2 * group.s) + " points");
  }
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += (i + 1 == parts.size()) ? " and " : ", ";
    out += parts[i];
  }
  return out;
}

NodeSet build_nodeset(const PartitionPlan& plan, const std::vector<std::vector<double>>& latitudes) {
  if (static_cast<Index>(latitudes.size()) != plan.groups())
    throw InvalidInput("expected latitudes for " + std::to_string(plan.groups()) + " groups, got " +
                       std::to_string(latitudes.size()));
  std::vector<double> all;
  for (Index k = 1; k <= plan.groups(); ++k) {
    const auto& group = latitudes[static_cast<std::size_t>(k - 1)];
    if (static_cast<Index>(group.size()) != plan.lambda(k))
      throw InvalidInput("group " + std::to_string(k) + " needs " + std::to_string(plan.lambda(k)) +
                         " latitudes, got " + std::to_string(group.size()));
    for (double theta : group) {
      if (theta == kPi / 2)
        throw InvalidInput("latitude pi/2 coincides with its own mirror");
      if (!(theta > 0.0 && theta < kPi / 2))
        throw InvalidInput("supplied latitude " + std::to_string(theta) + " outside (0, pi/2)");
      all.push_back(theta);
    }
  }
  std::vector<double> sorted = all;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] - sorted[i - 1] <= kMinLatitudeGap)
      throw InvalidInput("duplicate latitude " + std::to_string(sorted[i]));

  NodeSet nodes(plan);
  for (Index k = 1; k <= plan.groups(); ++k) {
    const auto& north = latitudes[static_cast<std::size_t>(k - 1)];
    const Index lambda = plan.lambda(k);
    NodeGroup group{k, plan.grid_size(k), {}};
    const AzimuthGrid grid0 = azimuth_grid(group.s, 0.0);
    const AzimuthGrid grid1 = azimuth_grid(group.s, 1.0);
    for (Index i = 1; i <= 2 * lambda; ++i) {
      LatitudeRecord rec;
      rec.index = i;
      if (i <= lambda) {
        rec.theta = north[static_cast<std::size_t>(i - 1)];
        rec.alpha = 0.0;
        rec.grid = grid0;
      } else {
        rec.theta = kPi - north[static_cast<std::size_t>(2 * lambda - i)];
        rec.alpha = 1.0;
        rec.grid = grid1;
      }
      for (double phi : rec.grid.angles) nodes.points_.push_back({rec.theta, phi});
      group.latitudes.push_back(std::move(rec));
    }
    nodes.groups_.push_back(std::move(group));
  }
  return nodes;
}

std::vector<std::vector<double>> default_latitudes(const PartitionPlan& plan) {
  const Index total = (plan.n() + 1) / 2;
  std::vector<std::vector<double>> out;
  Index next = 0;
  for (Index k = 1; k <= plan.groups(); ++k) {
    std::vector<double> group;
    for (Index i = 0; i < plan.lambda(k); ++i, ++next)
      group.push_back(std::acos(double(total - next) / double(total + 1)));
    out.push_back(std::move(group));
  }
  return out;
}

std::vector<std::vector<double>> random_latitudes(const PartitionPlan& plan, std::uint64_t seed) {
  const Index total = (plan.n() + 1) / 2;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.05, 0.95);
  std::vector<double> cosines;
  while (static_cast<Index>(cosines.size()) < total) {
    const double z = dist(rng);
    const bool clear = std::all_of(cosines.begin(), cosines.end(),
                                   [z](double c) { return std::abs(c - z) >= 0.02; });
    if (clear) cosines.push_back(z);
  }
  std::vector<std::vector<double>> out;
  std::size_t next = 0;
  for (Index k = 1; k <= plan.groups(); ++k) {
    std::vector<double> group;
    for (Index i = 0; i < plan.lambda(k); ++i) group.push_back(std::acos(cosines[next++]));
    out.push_back(std::move(group));
  }
  return out;
}

std::pair<double, double> legendre_value(Index degree, double x) {
  if (degree == 0) return {1.0, 0.0};
  double p_prev = 1.0;
  double p = x;
  for (Index k = 2; k <= degree; ++k) {
    const double p_next = ((2.0 * double(k) - 1.0) * x * p - (double(k) - 1.0) * p_prev) / double(k);
    p_prev = p;
    p = p_next;
  }
  const double dp = double(degree) * (x * p - p_prev) / (x * x - 1.0);
  return {p, dp};
}

std::vector<double> legendre_latitudes(Index m) {
  if (m < 1) throw InvalidInput("legendre_latitudes: m must be >= 1");
  const Index degree = 2 * m;
  std::vector<double> north;
  for (Index i = 1; i <= m; ++i) {
    double x = std::cos(kPi * (double(i) - 0.25) / (double(degree) + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre_value(degree, x);
      const double step = p / dp;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    north.push_back(std::acos(x));
  }
  std::vector<double> thetas = north;
  for (Index i = m - 1; i >= 0; --i) thetas.push_back(kPi - north[static_cast<std::size_t>(i)]);
  return thetas;
}

bool dimension_identity_check(Index s, Index lambda) {
  if (lambda < 1 || s - 2 * lambda < -1)
    throw InvalidInput("dimension identity needs lambda >= 1 and s - 2 lambda >= -1");
  return space_dimension(s) == space_dimension(s - 2 * lambda) + 2 * lambda * (2 * s - 2 * lambda + 2);
}

double min_chordal_distance(const std::vector<SphericalCoord>& points) {
  double best = std::numeric_limits<double>::infinity();
  std::vector<Eigen::Vector3d> xyz;
  xyz.reserve(points.size());
  for (const auto& p : points) xyz.push_back(p.cartesian());
  for (std::size_t i = 0; i < xyz.size(); ++i)
    for (std::size_t j = i + 1; j < xyz.size(); ++j) best = std::min(best, (xyz[i] - xyz[j]).norm());
  return best;
}

}  // namespace sphinterp
