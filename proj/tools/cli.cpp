#include "cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <optional>
#include <sstream>

#include "functions.hpp"
#include "suites.hpp"
#include "sphinterp/cubature.hpp"
#include "sphinterp/interpolation.hpp"
#include "sphinterp/io.hpp"
#include "sphinterp/nodes.hpp"

namespace sphinterp::cli {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kCubatureTol = 1e-10;
constexpr double kInterpolationTol = 1e-8;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SPHINTERP_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return 1;
}

std::string fmt(double x) { return io::format_double(x); }

struct GenNodesArgs {
  Index n = 0;
  std::string plan;
  std::string latitudes = "default";
  std::uint64_t seed = 1;
  std::string output;
};

struct InterpolateArgs {
  std::string nodes;
  std::string data;
  std::string function;
  std::string output;
  std::string report;
  std::string grid;
  Index grid_size = 18;
};

struct CubatureArgs {
  Index m = 0;
  std::string latitudes = "legendre";
  std::uint64_t seed = 1;
  std::string apply;
  std::string output;
  std::string certificate;
};

struct VerifyArgs {
  std::string suite;
  SuiteParams params;
  std::string csv;
};

int cmd_gen_nodes(const GenNodesArgs& a, std::ostream& out) {
  const PartitionPlan plan =
      a.plan.empty() ? PartitionPlan(a.n, {(a.n + 1) / 2}) : PartitionPlan::parse(a.n, a.plan);
  std::vector<std::vector<double>> lats;
  if (a.latitudes == "default") {
    lats = default_latitudes(plan);
  } else if (a.latitudes == "random") {
    lats = random_latitudes(plan, a.seed);
  } else {
    const auto flat = io::parse_angle_list(io::read_text(a.latitudes));
    if (static_cast<Index>(flat.size()) != (a.n + 1) / 2)
      throw InvalidInput("latitude file must list (n+1)/2 = " + std::to_string((a.n + 1) / 2) +
                         " northern angles, found " + std::to_string(flat.size()));
    std::size_t next = 0;
    for (Index k = 1; k <= plan.groups(); ++k) {
      lats.emplace_back(flat.begin() + long(next), flat.begin() + long(next + std::size_t(plan.lambda(k))));
      next += std::size_t(plan.lambda(k));
    }
  }
  const NodeSet nodes = build_nodeset(plan, lats);
  out << "n = " << a.n << ", plan " << plan.to_string() << ": " << nodes.size() << " points\n";
  out << nodes.summary() << "\n";
  if (!a.output.empty()) {
    io::write_json(a.output, io::to_json(nodes));
    out << "wrote " << a.output << "\n";
  }
  return nodes.size() == space_dimension(a.n) ? 0 : 1;
}

int cmd_interpolate(const InterpolateArgs& a, std::ostream& out) {
  const NodeSet nodes = io::nodeset_from_json(io::read_json(a.nodes));
  Eigen::VectorXd data(nodes.size());
  if (!a.data.empty()) {
    const auto values = io::read_samples_csv(a.data, nodes.size());
    for (Index i = 0; i < nodes.size(); ++i) data(i) = values[std::size_t(i)];
  } else {
    const BuiltinFunction& fn = find_function(a.function);
    for (Index i = 0; i < nodes.size(); ++i) data(i) = fn.f(nodes.points()[std::size_t(i)]);
  }
  const SolveReport report = solve(InterpolationProblem(nodes, data));
  const double limit = kInterpolationTol * std::max(1.0, data.cwiseAbs().maxCoeff());
  const bool ok = report.residual_inf <= limit;
  out << "degree " << report.solution.degree() << ", " << nodes.size() << " nodes\n";
  out << "residual_inf = " << fmt(report.residual_inf) << "\n";
  out << "condition_estimate = " << fmt(report.condition_estimate) << "\n";
  out << "integral = " << fmt(integrate_sphere(report.solution)) << "\n";
  if (!a.output.empty()) io::write_json(a.output, io::to_json(report.solution));
  if (!a.report.empty()) {
    io::Json j = io::to_json(report);
    j["residual_limit"] = limit;
    j["pass"] = ok;
    io::write_json(a.report, j);
  }
  if (!a.grid.empty()) {
    std::ostringstream csv;
    csv << "theta,phi,value\n";
    const Index lats = a.grid_size, lons = 2 * a.grid_size;
    for (Index l = 0; l < lats; ++l)
      for (Index j = 0; j < lons; ++j) {
        const double theta = (double(l) + 0.5) * kPi / double(lats);
        const double phi = 2.0 * kPi * double(j) / double(lons);
        csv << fmt(theta) << ',' << fmt(phi) << ',' << fmt(eval_spherical(report.solution, theta, phi)) << '\n';
      }
    io::write_text(a.grid, csv.str());
  }
  out << (ok ? "PASS" : "FAIL") << " residual within " << fmt(limit) << "\n";
  return ok ? 0 : 1;
}

int cmd_cubature(const CubatureArgs& a, std::ostream& out) {
  if (a.m < 1) throw InvalidInput("m must be >= 1");
  std::vector<double> lats;
  if (a.latitudes == "legendre")
    lats = legendre_latitudes(a.m);
  else if (a.latitudes == "equispaced")
    lats = equispaced_cosine_latitudes(a.m);
  else if (a.latitudes == "random")
    lats = random_symmetric_latitudes(a.m, a.seed);
  else
    lats = io::parse_angle_list(io::read_text(a.latitudes));
  if (static_cast<Index>(lats.size()) != 2 * a.m)
    throw InvalidInput("need 2m = " + std::to_string(2 * a.m) + " latitudes, got " + std::to_string(lats.size()));

  const CubatureRule rule = build_rule(lats);
  const ExactnessReport ex = exactness_certificate(rule);
  const double total = rule.total_weight();
  const double wmin = *std::min_element(rule.weights.begin(), rule.weights.end());
  bool ok = ex.max_scaled_error <= kCubatureTol && std::abs(total - 4 * kPi) <= kCubatureTol;
  if (a.latitudes == "legendre") ok = ok && wmin >= 0.0;

  out << "m = " << a.m << ", " << rule.nodes.size() << " nodes on " << lats.size() << " latitudes ("
      << a.latitudes << ")\n";
  out << "weights:";
  for (double w : rule.weights) out << ' ' << fmt(w);
  out << "\n";
  out << "weights nonnegative: " << (wmin >= 0.0 ? "yes" : "no") << "\n";
  out << "total weight = " << fmt(total) << "\n";
  out << "exactness degree " << ex.degree << ": max error " << fmt(ex.max_error) << " over " << ex.elements
      << " basis elements\n";

  io::Json cert;
  cert["m"] = a.m;
  cert["latitudes"] = a.latitudes;
  cert["exactness"] = io::to_json(ex);
  cert["weights"] = rule.weights;
  cert["weights_nonnegative"] = wmin >= 0.0;
  cert["min_weight"] = wmin;
  cert["total_weight"] = total;
  if (!a.apply.empty()) {
    const BuiltinFunction& fn = find_function(a.apply);
    const double value = apply_rule(rule, fn.f);
    const bool exact = fn.degree && *fn.degree <= 2 * a.m - 1;
    const double error = std::abs(value - fn.integral);
    out << "integral of " << fn.name << " = " << fmt(value) << " (exact " << fmt(fn.integral) << ", error "
        << fmt(error) << (exact ? "" : ", rule not exact for this function") << ")\n";
    cert["apply"] = {{"function", fn.name}, {"value", value}, {"exact", fn.integral}, {"error", error},
                     {"gated", exact}};
    if (exact) ok = ok && error <= kCubatureTol;
  }
  cert["pass"] = ok;
  if (!a.output.empty()) io::write_json(a.output, io::to_json(rule));
  if (!a.certificate.empty()) io::write_json(a.certificate, cert);
  out << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? 0 : 1;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  SuiteResult res;
  if (a.suite == "poisedness")
    res = poisedness_suite(a.params);
  else if (a.suite == "chebyshev")
    res = chebyshev_suite(a.params);
  else if (a.suite == "factorization")
    res = factorization_suite(a.params);
  else if (a.suite == "lemmas")
    res = lemmas_suite(a.params);
  else
    res = cubature_suite(a.params);
  for (const CaseRow& row : res.rows)
    if (row.status == Status::Fail)
      out << "FAIL " << row.key << " " << row.metric << " = " << fmt(row.value) << " (" << row.limit << ")\n";
  if (!a.csv.empty()) io::write_text(a.csv, res.csv());
  const Index failures = res.failures();
  out << "suite " << res.name << ": " << res.checks() << " checks, " << failures << " failed: "
      << (failures == 0 ? "PASS" : "FAIL") << "\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Interpolation node sets and cubature on the sphere"};
  app.require_subcommand(1);

  GenNodesArgs gen;
  gen.seed = default_seed();
  auto* gen_cmd = app.add_subcommand("gen-nodes", "Build a node set for odd degree n and a plan");
  gen_cmd->add_option("--n", gen.n, "Polynomial degree (odd)")->required();
  gen_cmd->add_option("--plan", gen.plan, "Comma-separated parts summing to (n+1)/2 (default: one part)");
  gen_cmd->add_option("--latitudes", gen.latitudes, "default, random or a file of northern angles");
  gen_cmd->add_option("--seed", gen.seed, "Seed for random latitudes");
  gen_cmd->add_option("-o,--output", gen.output, "Node set JSON");

  InterpolateArgs interp;
  auto* interp_cmd = app.add_subcommand("interpolate", "Solve the interpolation problem on a node set");
  interp_cmd->add_option("--nodes", interp.nodes, "Node set JSON")->required();
  auto* data_opt = interp_cmd->add_option("--data", interp.data, "Samples CSV (index,value)");
  auto* fn_opt = interp_cmd->add_option("--function", interp.function, "Built-in function name");
  data_opt->excludes(fn_opt);
  interp_cmd->add_option("-o,--output", interp.output, "Coefficients JSON");
  interp_cmd->add_option("--report", interp.report, "Solve report JSON");
  interp_cmd->add_option("--grid", interp.grid, "Evaluation grid CSV (theta,phi,value)");
  interp_cmd->add_option("--grid-size", interp.grid_size, "Grid latitudes (2x as many longitudes)")
      ->check(CLI::PositiveNumber);

  CubatureArgs cub;
  cub.seed = default_seed();
  auto* cub_cmd = app.add_subcommand("cubature", "Build the 2m-latitude cubature rule");
  cub_cmd->add_option("--m", cub.m, "Half the number of latitudes")->required();
  cub_cmd->add_option("--latitudes", cub.latitudes, "legendre, equispaced, random or a file of 2m angles");
  cub_cmd->add_option("--seed", cub.seed, "Seed for random latitudes");
  cub_cmd->add_option("--apply", cub.apply, "Built-in function to integrate");
  cub_cmd->add_option("-o,--output", cub.output, "Rule JSON");
  cub_cmd->add_option("--certificate", cub.certificate, "Certificate JSON");

  VerifyArgs ver;
  ver.params.seed = default_seed();
  auto* ver_cmd = app.add_subcommand("verify", "Run a verification suite");
  ver_cmd->add_option("--suite", ver.suite, "poisedness, chebyshev, factorization, lemmas or cubature")
      ->required()
      ->check(CLI::IsMember({"poisedness", "chebyshev", "factorization", "lemmas", "cubature"}));
  ver_cmd->add_option("--n", ver.params.n, "Degree for poisedness / factorization chains");
  ver_cmd->add_option("--rmax", ver.params.rmax, "Largest r for the Chebyshev sweep");
  ver_cmd->add_option("--m", ver.params.m, "Largest m");
  ver_cmd->add_option("--trials", ver.params.trials, "Random trials per case");
  ver_cmd->add_option("--seed", ver.params.seed, "Seed");
  ver_cmd->add_option("--csv", ver.csv, "Per-case results CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*gen_cmd) return cmd_gen_nodes(gen, out);
    if (*interp_cmd) {
      if (interp.data.empty() && interp.function.empty())
        throw InvalidInput("interpolate needs --data or --function");
      return cmd_interpolate(interp, out);
    }
    if (*cub_cmd) return cmd_cubature(cub, out);
    return cmd_verify(ver, out);
  } catch (const PoisednessError& e) {
    err << "error: " << e.what() << " (min pivot " << fmt(e.pivot_min()) << ")\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return 2;
}

}  // namespace sphinterp::cli
