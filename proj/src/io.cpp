#include "sphinterp/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace sphinterp::io {

namespace {

Json poly_array(const Poly& p) {
  Json arr = Json::array();
  for (Index j = 0; j <= p.degree(); ++j) arr.push_back(p[j]);
  return arr;
}

Poly poly_from_array(const Json& arr) {
  if (!arr.is_array() || arr.empty()) throw InvalidInput("coefficient band must be a non-empty array");
  Poly::Coefficients c(static_cast<Index>(arr.size()));
  for (std::size_t j = 0; j < arr.size(); ++j) c(static_cast<Index>(j)) = arr[j].get<double>();
  return Poly(c);
}

std::string trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return std::string(s);
}

bool parse_double(const std::string& s, double& out) {
  if (s.empty()) return false;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

Json to_json(const NodeSet& nodes) {
  Json j;
  j["n"] = nodes.degree();
  j["lambdas"] = nodes.plan().lambdas();
  j["point_count"] = nodes.size();
  Json groups = Json::array();
  for (const NodeGroup& g : nodes.groups()) {
    Json lats = Json::array();
    for (const LatitudeRecord& rec : g.latitudes)
      lats.push_back({{"index", rec.index}, {"theta", rec.theta}, {"alpha", rec.alpha}});
    groups.push_back({{"k", g.k}, {"s", g.s}, {"latitudes", std::move(lats)}});
  }
  j["groups"] = std::move(groups);
  Json pts = Json::array();
  for (const SphericalCoord& p : nodes.points()) pts.push_back({p.theta, p.phi});
  j["points"] = std::move(pts);
  return j;
}

NodeSet nodeset_from_json(const Json& j) {
  try {
    const PartitionPlan plan(j.at("n").get<Index>(), j.at("lambdas").get<std::vector<Index>>());
    std::vector<std::vector<double>> north;
    const Json& groups = j.at("groups");
    for (const Json& g : groups) {
      std::vector<double> lats;
      const Json& recs = g.at("latitudes");
      const std::size_t half = recs.size() / 2;
      for (std::size_t i = 0; i < half; ++i) lats.push_back(recs[i].at("theta").get<double>());
      north.push_back(std::move(lats));
    }
    NodeSet nodes = build_nodeset(plan, north);
    if (j.contains("points")) {
      const Json& pts = j.at("points");
      if (static_cast<Index>(pts.size()) != nodes.size())
        throw InvalidInput("node file lists " + std::to_string(pts.size()) + " points, plan needs " +
                           std::to_string(nodes.size()));
      for (std::size_t i = 0; i < pts.size(); ++i) {
        const SphericalCoord& p = nodes.points()[i];
        if (std::abs(pts[i].at(0).get<double>() - p.theta) > 1e-12 ||
            std::abs(pts[i].at(1).get<double>() - p.phi) > 1e-12)
          throw InvalidInput("node file point " + std::to_string(i) + " does not match its plan");
      }
    }
    return nodes;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed node set: ") + e.what());
  }
}

Json to_json(const SphericalPoly& T) {
  Json j;
  j["degree"] = T.degree();
  Json a = Json::array();
  Json b = Json::array();
  for (Index k = 0; k <= T.degree(); ++k) {
    a.push_back(poly_array(T.a(k)));
    if (k > 0) b.push_back(poly_array(T.b(k)));
  }
  j["a"] = std::move(a);
  j["b"] = std::move(b);
  return j;
}

SphericalPoly spherical_from_json(const Json& j) {
  try {
    const Index n = j.at("degree").get<Index>();
    const Json& a = j.at("a");
    const Json& b = j.at("b");
    if (static_cast<Index>(a.size()) != n + 1 || static_cast<Index>(b.size()) != n)
      throw InvalidInput("coefficient file band counts do not match degree " + std::to_string(n));
    SphericalPoly T(n);
    for (Index k = 0; k <= n; ++k) {
      T.set_a(k, poly_from_array(a[static_cast<std::size_t>(k)]));
      if (k > 0) T.set_b(k, poly_from_array(b[static_cast<std::size_t>(k - 1)]));
    }
    return T;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed coefficient file: ") + e.what());
  }
}

Json to_json(const SolveReport& r) {
  return {{"degree", r.solution.degree()},
          {"residual_inf", r.residual_inf},
          {"condition_estimate", r.condition_estimate},
          {"pivot_min", r.pivot_min}};
}

Json to_json(const CertificateReport& r) {
  return {{"pass", r.pass},
          {"log_abs_det", r.log_abs_det},
          {"det_sign", r.det_sign},
          {"pivot_min", r.pivot_min},
          {"condition_estimate", r.condition_estimate},
          {"max_residual", r.max_residual},
          {"max_recovery_error", r.max_recovery_error},
          {"residuals", r.residuals}};
}

Json to_json(const KernelCertificate& cert) {
  Json steps = Json::array();
  for (const KernelStep& s : cert.steps)
    steps.push_back({{"group", s.group},
                     {"degree_in", s.degree_in},
                     {"degree_out", s.degree_out},
                     {"constraints", s.constraints},
                     {"nullity", s.nullity},
                     {"min_singular_ratio", s.min_singular_ratio},
                     {"full_row_rank", s.full_row_rank},
                     {"all_factored", s.all_factored}});
  return {{"trivial", cert.trivial}, {"steps", std::move(steps)}};
}

Json to_json(const CubatureRule& rule) {
  Json nodes = Json::array();
  for (const CubatureNode& n : rule.nodes) nodes.push_back({n.theta, n.phi, n.weight});
  return {{"m", rule.m},
          {"latitudes", rule.latitudes},
          {"weights", rule.weights},
          {"alphas", rule.alphas},
          {"nodes", std::move(nodes)}};
}

Json to_json(const ExactnessReport& r) {
  return {{"degree", r.degree},
          {"elements", r.elements},
          {"max_error", r.max_error},
          {"max_scaled_error", r.max_scaled_error}};
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_json(const std::filesystem::path& path) {
  try {
    return Json::parse(read_text(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidInput(path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << text;
}

void write_json(const std::filesystem::path& path, const Json& j) {
  write_text(path, j.dump(2) + "\n");
}

std::vector<double> parse_samples_csv(const std::string& text, Index count) {
  std::vector<double> values(static_cast<std::size_t>(count), 0.0);
  std::vector<bool> seen(static_cast<std::size_t>(count), false);
  std::istringstream in(text);
  std::string line;
  Index line_no = 0;
  Index filled = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    if (line_no == 1 && body.rfind("index", 0) == 0) continue;
    const auto comma = body.find(',');
    const std::string where = "line " + std::to_string(line_no);
    if (comma == std::string::npos) throw InvalidInput(where + ": expected 'index,value'");
    const std::string idx_text = trim(std::string_view(body).substr(0, comma));
    const std::string val_text = trim(std::string_view(body).substr(comma + 1));
    Index idx = 0;
    const auto [ptr, ec] = std::from_chars(idx_text.data(), idx_text.data() + idx_text.size(), idx);
    if (ec != std::errc() || ptr != idx_text.data() + idx_text.size())
      throw InvalidInput(where + ": bad index '" + idx_text + "'");
    double value = 0.0;
    if (!parse_double(val_text, value)) throw InvalidInput(where + ": bad value '" + val_text + "'");
    if (idx < 0 || idx >= count)
      throw InvalidInput(where + ": index " + std::to_string(idx) + " outside 0.." +
                         std::to_string(count - 1));
    if (seen[static_cast<std::size_t>(idx)])
      throw InvalidInput(where + ": duplicate index " + std::to_string(idx));
    seen[static_cast<std::size_t>(idx)] = true;
    values[static_cast<std::size_t>(idx)] = value;
    ++filled;
  }
  if (filled != count)
    throw InvalidInput("samples file has " + std::to_string(filled) + " values for " +
                       std::to_string(count) + " nodes");
  return values;
}

std::vector<double> read_samples_csv(const std::filesystem::path& path, Index count) {
  return parse_samples_csv(read_text(path), count);
}

std::vector<double> parse_angle_list(const std::string& text) {
  std::vector<double> out;
  std::istringstream in(text);
  std::string line;
  Index line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string body = trim(line.substr(0, line.find('#')));
    if (body.empty()) continue;
    std::istringstream fields(body);
    std::string item;
    while (std::getline(fields, item, ',')) {
      item = trim(item);
      if (item.empty()) continue;
      double v = 0.0;
      if (!parse_double(item, v))
        throw InvalidInput("line " + std::to_string(line_no) + ": bad angle '" + item + "'");
      out.push_back(v);
    }
  }
  return out;
}

}  // namespace sphinterp::io
