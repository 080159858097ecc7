#include <chrono>
#include <cstdio>
#include <ctime>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "conecalc/cone.hpp"
#include "conecalc/lattice.hpp"
#include "conecalc/nulldist.hpp"
#include "conecalc/scenario.hpp"
#include "conecalc/verify.hpp"
#include "json.hpp"

namespace {

using namespace conecalc;

constexpr std::int64_t kDefaultNodeCap = 2'000'000;

Vec parse_point(const std::string& text) {
  Vec out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string tok =
        text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed point literal '" + text + "'");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

struct GridOptions {
  double h = 0.0;  // 0 = scenario default
  int r = 0;
  std::vector<double> box;  // flat lo,hi per axis
  bool periodic = false;

  lattice::GridSpec resolve(const scenario::Scenario& sc) const {
    lattice::GridSpec g = sc.default_grid;
    if (h > 0.0) g.spacing = h;
    if (r > 0) g.stencil_radius = r;
    if (!box.empty()) {
      require(box.size() == 2 * static_cast<std::size_t>(sc.structure.dim()),
              "expected " + std::to_string(2 * sc.structure.dim()) + " box bounds");
      g.box.clear();
      for (std::size_t a = 0; a + 1 < box.size(); a += 2) g.box.push_back({box[a], box[a + 1]});
    }
    if (periodic) g.periodic.assign(g.box.size(), true);
    return g;
  }
};

void attach_grid_options(CLI::App* cmd, GridOptions& g) {
  cmd->add_option("--h", g.h, "lattice spacing (default: scenario)");
  cmd->add_option("--r", g.r, "stencil radius (default: scenario)");
  cmd->add_option("--box", [&g](const std::vector<std::string>& vals) {
    g.box = parse_point(vals.at(0));
    return true;
  }, "box bounds lo,hi per axis, comma separated");
  cmd->add_flag("--periodic", g.periodic, "make all axes periodic");
}

void emit(nlohmann::json j, bool no_timestamp) {
  if (!no_timestamp) {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%FT%TZ", std::gmtime(&now));
    j["timestamp"] = buf;
  }
  std::cout << j.dump() << "\n";
}

std::string csv_nodes(const lattice::CausalGraph& graph, const std::vector<std::int64_t>& ids) {
  std::string out;
  for (const auto id : ids) {
    const Vec p = graph.position(id);
    for (std::size_t a = 0; a < p.size(); ++a) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", p[a]);
      out += buf;
      out += (a + 1 < p.size()) ? "," : "\n";
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"conecalc: causal structure and null distance computations on lattices"};
  app.require_subcommand(1);
  // --h is a documented option (lattice spacing); keep only the long help flag.
  app.set_help_flag("--help", "print help");
  bool no_timestamp = false;
  app.add_flag("--no-timestamp", no_timestamp, "omit the timestamp field from JSON output");

  auto add_cmd = [&app](const std::string& name, const std::string& desc) {
    auto* cmd = app.add_subcommand(name, desc);
    cmd->set_help_flag("--help", "print help");
    cmd->fallthrough();  // global flags like --no-timestamp may follow the subcommand
    return cmd;
  };

  std::string scenario_text, point_text, vector_text, p_text, q_text;
  std::string tau_label, direction = "future", format = "json", suite_name;
  double tol = -1.0;
  std::int64_t max_nodes = kDefaultNodeCap;
  GridOptions grid_classify, grid_dist, grid_reach, grid_diamond, grid_export;

  auto* cmd_classify = add_cmd("classify", "classify a tangent vector");
  cmd_classify->add_option("--scenario", scenario_text)->required();
  cmd_classify->add_option("--point", point_text)->required();
  cmd_classify->add_option("--vector", vector_text)->required();
  cmd_classify->add_option("--tol", tol, "sign-test tolerance (default per scenario)");

  auto* cmd_distance = add_cmd("distance", "estimate the null distance");
  cmd_distance->add_option("--scenario", scenario_text)->required();
  cmd_distance->add_option("--p", p_text)->required();
  cmd_distance->add_option("--q", q_text)->required();
  cmd_distance->add_option("--tau", tau_label, "time function: T | t | T3 | T5 | composite");
  cmd_distance->add_option("--max-nodes", max_nodes, "lattice size cap");
  attach_grid_options(cmd_distance, grid_dist);

  auto* cmd_reach = add_cmd("reach", "discrete causal future/past of a point");
  cmd_reach->add_option("--scenario", scenario_text)->required();
  cmd_reach->add_option("--p", p_text)->required();
  cmd_reach->add_option("--direction", direction)->check(CLI::IsMember({"future", "past"}));
  cmd_reach->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  cmd_reach->add_option("--max-nodes", max_nodes, "lattice size cap");
  attach_grid_options(cmd_reach, grid_reach);

  auto* cmd_diamond = add_cmd("diamond", "discrete causal diamond of a pair");
  cmd_diamond->add_option("--scenario", scenario_text)->required();
  cmd_diamond->add_option("--p", p_text)->required();
  cmd_diamond->add_option("--q", q_text)->required();
  cmd_diamond->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  cmd_diamond->add_option("--max-nodes", max_nodes, "lattice size cap");
  attach_grid_options(cmd_diamond, grid_diamond);

  auto* cmd_suite = add_cmd("suite", "run a named verification suite");
  cmd_suite->add_option("--name", suite_name)->required();
  nlohmann::json suite_cfg = nlohmann::json::object();
  std::vector<std::string> raw_cfg;
  std::int64_t opt_seed = -1, opt_samples = -1, opt_pairs = -1, opt_k = -1, opt_jmax = -1,
               opt_j = -1, opt_chains = -1;
  double opt_eps = -1.0, opt_h = -1.0;
  cmd_suite->add_option("--seed", opt_seed);
  cmd_suite->add_option("--samples", opt_samples);
  cmd_suite->add_option("--pairs", opt_pairs);
  cmd_suite->add_option("--k", opt_k);
  cmd_suite->add_option("--jmax", opt_jmax);
  cmd_suite->add_option("--j", opt_j);
  cmd_suite->add_option("--chains", opt_chains);
  cmd_suite->add_option("--eps", opt_eps);
  cmd_suite->add_option("--h", opt_h);
  cmd_suite->add_option("--config", raw_cfg, "extra key=value entries")->take_all();

  auto* cmd_list = add_cmd("scenario-list", "list available scenarios");

  auto* cmd_export = add_cmd("export-graph", "dump the causal graph adjacency");
  cmd_export->add_option("--scenario", scenario_text)->required();
  cmd_export->add_option("--max-nodes", max_nodes, "lattice size cap");
  attach_grid_options(cmd_export, grid_export);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp")
      return app.exit(e);
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (cmd_classify->parsed()) {
      const auto sc = scenario::make_scenario(scenario_text);
      const Vec p = parse_point(point_text);
      const Vec v = parse_point(vector_text);
      const double use_tol = tol >= 0.0 ? tol : cone::default_tol(sc.structure);
      const auto d = cone::classify_detail(sc.structure, p, v, use_tol);
      nlohmann::json j;
      j["schema"] = "conecalc/1";
      j["class"] = cone::to_string(d.cls);
      j["quad"] = d.quad;
      j["frame_products"] = d.frame_products;
      j["tol"] = use_tol;
      j["scenario"] = nlohmann::json::parse(scenario::describe_json(sc));
      emit(std::move(j), no_timestamp);
      return 0;
    }

    if (cmd_distance->parsed()) {
      const auto sc = scenario::make_scenario(scenario_text);
      const auto grid = grid_dist.resolve(sc);
      const auto tau =
          scenario::make_time_function(tau_label.empty() ? sc.default_tau : tau_label,
                                       sc.structure);
      const auto result = nulldist::estimate(sc.structure, tau, grid, parse_point(p_text),
                                             parse_point(q_text), max_nodes);
      nlohmann::json j = nlohmann::json::parse(result.to_json());
      j["tau"] = tau.label;
      j["scenario"] = nlohmann::json::parse(scenario::describe_json(sc));
      emit(std::move(j), no_timestamp);
      return result.unreachable ? 1 : 0;
    }

    if (cmd_reach->parsed() || cmd_diamond->parsed()) {
      const bool is_reach = cmd_reach->parsed();
      const auto sc = scenario::make_scenario(scenario_text);
      const auto grid = (is_reach ? grid_reach : grid_diamond).resolve(sc);
      const auto graph = lattice::build_graph(sc.structure, grid, max_nodes);
      const auto p = graph.snap(parse_point(p_text));
      if (!p) throw std::runtime_error("p does not snap to an in-domain node");
      std::vector<std::int64_t> ids;
      if (is_reach) {
        ids = lattice::reach(graph, *p,
                             direction == "future" ? lattice::Direction::Future
                                                   : lattice::Direction::Past);
      } else {
        const auto q = graph.snap(parse_point(q_text));
        if (!q) throw std::runtime_error("q does not snap to an in-domain node");
        ids = lattice::diamond(graph, *p, *q);
      }
      if (format == "csv") {
        std::cout << csv_nodes(graph, ids);
        return 0;
      }
      nlohmann::json j;
      j["schema"] = "conecalc/1";
      j["count"] = ids.size();
      nlohmann::json nodes = nlohmann::json::array();
      for (const auto id : ids) nodes.push_back(graph.position(id));
      j["nodes"] = std::move(nodes);
      emit(std::move(j), no_timestamp);
      return 0;
    }

    if (cmd_suite->parsed()) {
      if (opt_seed >= 0) suite_cfg["seed"] = opt_seed;
      if (opt_samples >= 0) suite_cfg["samples"] = opt_samples;
      if (opt_pairs >= 0) suite_cfg["pairs"] = opt_pairs;
      if (opt_k >= 0) suite_cfg["k"] = opt_k;
      if (opt_jmax >= 0) suite_cfg["jmax"] = opt_jmax;
      if (opt_j >= 0) suite_cfg["j"] = opt_j;
      if (opt_chains >= 0) suite_cfg["chains"] = opt_chains;
      if (opt_eps >= 0.0) suite_cfg["eps"] = opt_eps;
      if (opt_h > 0.0) suite_cfg["h"] = opt_h;
      for (const auto& kv : raw_cfg) {
        const auto eq = kv.find('=');
        require(eq != std::string::npos, "expected key=value in --config");
        suite_cfg[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
      }
      const auto report = verify::run_suite(suite_name, suite_cfg);
      emit(report.to_json(!no_timestamp), no_timestamp);
      return report.pass() ? 0 : 1;
    }

    if (cmd_list->parsed()) {
      emit(nlohmann::json::parse(scenario::catalog_json()), no_timestamp);
      return 0;
    }

    if (cmd_export->parsed()) {
      const auto sc = scenario::make_scenario(scenario_text);
      const auto graph =
          lattice::build_graph(sc.structure, grid_export.resolve(sc), max_nodes);
      emit(nlohmann::json::parse(lattice::graph_to_json(graph)), no_timestamp);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
