#include "conecalc/scenario.hpp"

#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace conecalc::scenario {

using spacetime::flat;
using spacetime::MetricKind;
using spacetime::with_domain;

namespace {

GridSpec cube_grid(int n, double lo, double hi, double h, int r) {
  GridSpec g;
  g.box.assign(static_cast<std::size_t>(n), {lo, hi});
  g.spacing = h;
  g.stencil_radius = r;
  return g;
}

std::vector<int> parse_int_args(const std::string& args, std::size_t expect) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= args.size()) {
    const std::size_t comma = args.find(',', pos);
    const std::string tok = args.substr(pos, comma == std::string::npos ? comma : comma - pos);
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw std::invalid_argument("scenario: malformed integer parameter '" + tok + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (out.size() != expect)
    throw std::invalid_argument("scenario: expected " + std::to_string(expect) + " parameters");
  return out;
}

}  // namespace

SpacetimeStructure notgh_base() {
  // The excluded region is the causal future of the origin: x >= |y|.
  return with_domain(flat(2, 1), [](const Vec& p) { return p[0] < std::fabs(p[1]); });
}

SpacetimeStructure notgh(double eps) { return spacetime::extend_negative(notgh_base(), eps); }

SpacetimeStructure product_structure(int m) {
  require(m >= 1 && m + 1 <= kMaxDim, "product: fiber dimension out of range");
  SpacetimeStructure s = flat(m + 1, 1);
  s.metric.kind = MetricKind::ProductNeg;
  return s;
}

SpacetimeStructure punctured_product(int m) {
  SpacetimeStructure s = product_structure(m);
  s.metric.kind = MetricKind::ProductNeg;
  return with_domain(std::move(s), [](const Vec& p) {
    for (std::size_t i = 1; i < p.size(); ++i)
      if (p[i] != 0.0) return true;
    return false;
  });
}

Scenario make_scenario(const std::string& text) {
  const std::size_t colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : text.substr(colon + 1);

  Scenario sc;
  sc.name = text;
  if (name == "flat") {
    const auto v = parse_int_args(args, 2);
    sc.structure = flat(v[0], v[1]);
    sc.default_grid = cube_grid(v[0], -2.0, 2.0, 0.25, 2);
    sc.description = "flat structure of dimension " + std::to_string(v[0]) + ", index " +
                     std::to_string(v[1]);
  } else if (name == "product") {
    const auto v = parse_int_args(args, 1);
    sc.structure = product_structure(v[0]);
    sc.default_grid = cube_grid(v[0] + 1, -2.0, 2.0, 0.25, 2);
    sc.default_tau = "t";
    sc.description = "Lorentzian product over a Euclidean fiber of dimension " +
                     std::to_string(v[0]);
  } else if (name == "punctured") {
    const auto v = parse_int_args(args, 1);
    sc.structure = punctured_product(v[0]);
    sc.default_grid = cube_grid(v[0] + 1, -1.25, 1.25, 0.25, 2);
    sc.default_grid.box[0] = {-1.0, 1.0};
    sc.default_tau = "t";
    sc.description = "product whose fiber excludes the origin";
  } else if (name == "notgh_base") {
    sc.structure = notgh_base();
    sc.default_grid = cube_grid(2, -2.0, 2.0, 0.25, 2);
    sc.description = "flat(2,1) minus the causal future of the origin";
  } else if (name == "notgh") {
    sc.structure = notgh(0.0);
    sc.default_grid.box = {{-2.0, 2.0}, {-1.0, 1.0}, {-2.0, 1.0}};
    sc.default_grid.spacing = 0.05;
    sc.default_grid.stencil_radius = 1;
    sc.description = "orthogonal extension of notgh_base; diamonds fail to close";
  } else if (name == "torus") {
    const auto v = parse_int_args(args, 2);
    sc.structure = flat(v[0], v[1]);
    sc.default_grid = cube_grid(v[0], 0.0, 4.0, 1.0, 1);
    sc.default_grid.periodic.assign(static_cast<std::size_t>(v[0]), true);
    sc.description = "flat structure on a torus (all axes periodic)";
  } else if (name == "badframe") {
    const auto v = parse_int_args(args, 2);
    require(v[1] < v[0], "badframe: needs nu < n");
    SpacetimeStructure s = flat(v[0], v[1]);
    // Replace the frame by spacelike coordinate fields; validate must fail.
    std::vector<Vec> fields;
    for (int i = 0; i < v[1]; ++i) {
      Vec e(static_cast<std::size_t>(v[0]), 0.0);
      e[static_cast<std::size_t>(v[0] - 1 - i)] = 1.0;
      fields.push_back(std::move(e));
    }
    s.frame = spacetime::TimeFrame::constant_fields(fields);
    sc.structure = std::move(s);
    sc.default_grid = cube_grid(v[0], -2.0, 2.0, 0.25, 2);
    sc.expect_invalid = true;
    sc.description = "flat structure with a spacelike frame; fails validation by design";
  } else {
    throw std::invalid_argument("scenario: unknown scenario '" + name + "'");
  }
  return sc;
}

std::string catalog_json() {
  nlohmann::json j;
  j["schema"] = "conecalc/1";
  nlohmann::json list = nlohmann::json::array();
  auto entry = [&list](const std::string& pattern, const std::string& desc, bool invalid) {
    list.push_back({{"name", pattern}, {"description", desc}, {"expect_invalid", invalid}});
  };
  entry("flat:n,nu", "flat structure of dimension n and index nu", false);
  entry("product:m", "Lorentzian product over a Euclidean fiber of dimension m", false);
  entry("punctured:m", "product whose fiber excludes the origin", false);
  entry("notgh_base", "flat(2,1) minus the causal future of the origin", false);
  entry("notgh", "orthogonal extension of notgh_base; diamonds fail to close", false);
  entry("torus:n,nu", "flat structure on a torus (all axes periodic)", false);
  entry("badframe:n,nu", "flat structure with a spacelike frame (invalid demo)", true);
  j["scenarios"] = std::move(list);
  return j.dump();
}

std::string describe_json(const Scenario& sc) {
  nlohmann::json j;
  j["name"] = sc.name;
  j["kind"] = spacetime::to_string(sc.structure.metric.kind);
  j["dim"] = sc.structure.dim();
  j["index"] = sc.structure.index();
  j["expect_invalid"] = sc.expect_invalid;
  j["default_tau"] = sc.default_tau;
  nlohmann::json box = nlohmann::json::array();
  for (const auto& [lo, hi] : sc.default_grid.box) box.push_back({lo, hi});
  j["default_grid"] = {{"h", sc.default_grid.spacing},
                       {"r", sc.default_grid.stencil_radius},
                       {"box", std::move(box)}};
  if (!sc.default_grid.periodic.empty()) j["default_grid"]["periodic"] = sc.default_grid.periodic;
  return j.dump();
}

nulldist::TimeFunction make_time_function(const std::string& label,
                                          const SpacetimeStructure& s) {
  using nulldist::TimeFunction;
  if (label == "T") return TimeFunction::canonical(s.index());
  if (label == "t") return TimeFunction::product_coordinate();
  if (label == "T3") return TimeFunction::odd_power(s.index(), 1);
  if (label == "T5") return TimeFunction::odd_power(s.index(), 2);
  if (label == "composite") {
    const int base_nu = s.index() - (s.metric.kind == MetricKind::ProductNeg ? 1 : 0);
    return TimeFunction::composite(
        [base_nu](const Vec& p) { return flatspace::time_T(p, base_nu); });
  }
  throw std::invalid_argument("unknown time function '" + label + "' (use T, t, T3, T5, composite)");
}

}  // namespace conecalc::scenario
