#pragma once

// JSON and CSV serialization of node sets, coefficients, reports and rules.

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

#include "sphinterp/cubature.hpp"
#include "sphinterp/factorization.hpp"
#include "sphinterp/interpolation.hpp"
#include "sphinterp/nodes.hpp"

namespace sphinterp::io {

using Json = nlohmann::ordered_json;

Json to_json(const NodeSet& nodes);
/// Rebuilds from the plan and the supplied (northern) latitudes, then checks
/// that the stored points agree with the rebuilt set.
NodeSet nodeset_from_json(const Json& j);

/// {"degree": n, "a": [[...], ...], "b": [[...], ...]}; b lists bands 1..n.
Json to_json(const SphericalPoly& T);
SphericalPoly spherical_from_json(const Json& j);

Json to_json(const SolveReport& report);
Json to_json(const CertificateReport& report);
Json to_json(const KernelCertificate& cert);
Json to_json(const CubatureRule& rule);
Json to_json(const ExactnessReport& report);

Json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& j);
void write_text(const std::filesystem::path& path, const std::string& text);

/// Lines "index,value" (optional header "index,value"); every index
/// 0..count-1 must appear exactly once. Errors name the offending line.
std::vector<double> read_samples_csv(const std::filesystem::path& path, Index count);
std::vector<double> parse_samples_csv(const std::string& text, Index count);

/// One angle per line, '#' comments and blank lines ignored.
std::vector<double> parse_angle_list(const std::string& text);
std::string read_text(const std::filesystem::path& path);

/// Shortest round-trip decimal form.
std::string format_double(double x);

}  // namespace sphinterp::io
