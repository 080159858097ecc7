#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "conecalc/cone.hpp"
#include "conecalc/flatspace.hpp"
#include "conecalc/lattice.hpp"
#include "conecalc/nulldist.hpp"
#include "conecalc/scenario.hpp"
#include "conecalc/verify.hpp"
#include "json.hpp"

namespace py = pybind11;
using namespace conecalc;

namespace {

py::object json_to_py(const nlohmann::json& j) {
  const py::module_ json = py::module_::import("json");
  return json.attr("loads")(j.dump());
}

nlohmann::json py_to_json(const py::dict& d) {
  const py::module_ json = py::module_::import("json");
  const std::string dumped = py::cast<std::string>(json.attr("dumps")(d));
  return nlohmann::json::parse(dumped);
}

lattice::GridSpec grid_from_args(const scenario::Scenario& sc, double h, int r,
                                 const std::vector<std::pair<double, double>>& box) {
  lattice::GridSpec g = sc.default_grid;
  if (h > 0.0) g.spacing = h;
  if (r > 0) g.stencil_radius = r;
  if (!box.empty()) g.box = box;
  return g;
}

}  // namespace

PYBIND11_MODULE(conecalc, m) {
  m.doc() = "Causal structure and null distance computations on lattices";

  py::class_<spacetime::SpacetimeStructure>(m, "SpacetimeStructure")
      .def_property_readonly("dim", &spacetime::SpacetimeStructure::dim)
      .def_property_readonly("index", &spacetime::SpacetimeStructure::index)
      .def("in_domain", &spacetime::SpacetimeStructure::in_domain);

  m.def("scenario", [](const std::string& text) { return scenario::make_scenario(text).structure; },
        py::arg("name"), "Build a named scenario structure, e.g. 'flat:3,2' or 'notgh'.");

  m.def("flat", &spacetime::flat, py::arg("n"), py::arg("nu"));

  m.def(
      "classify",
      [](const spacetime::SpacetimeStructure& s, const Vec& p, const Vec& v, double tol) {
        return cone::to_string(cone::classify(s, p, v, tol < 0.0 ? cone::default_tol(s) : tol));
      },
      py::arg("structure"), py::arg("point"), py::arg("vector"), py::arg("tol") = -1.0);

  m.def("interior_vector", &cone::interior_vector, py::arg("structure"), py::arg("point"));
  m.def("strict_witness", &cone::strict_witness, py::arg("structure"), py::arg("point"),
        py::arg("vector"), py::arg("tol") = 0.0);

  m.def(
      "leq",
      [](int n, int nu, const Vec& p, const Vec& q, const std::string& mode) {
        return flatspace::leq({n, nu, p, q}, mode == "chronological"
                                                 ? flatspace::OrderMode::Chronological
                                                 : flatspace::OrderMode::Causal);
      },
      py::arg("n"), py::arg("nu"), py::arg("p"), py::arg("q"), py::arg("mode") = "causal");
  m.def("time_T", &flatspace::time_T, py::arg("point"), py::arg("nu"));

  m.def(
      "estimate",
      [](const std::string& scenario_name, const Vec& p, const Vec& q, const std::string& tau,
         double h, int r, const std::vector<std::pair<double, double>>& box) {
        const auto sc = scenario::make_scenario(scenario_name);
        const auto grid = grid_from_args(sc, h, r, box);
        const auto tf = scenario::make_time_function(tau.empty() ? sc.default_tau : tau,
                                                     sc.structure);
        const auto result = nulldist::estimate(sc.structure, tf, grid, p, q, 2'000'000);
        return json_to_py(nlohmann::json::parse(result.to_json()));
      },
      py::arg("scenario"), py::arg("p"), py::arg("q"), py::arg("tau") = "", py::arg("h") = 0.0,
      py::arg("r") = 0, py::arg("box") = std::vector<std::pair<double, double>>{},
      "Null distance estimate between two points of a scenario.");

  m.def(
      "product_oracle",
      [](const Vec& p, const Vec& q) {
        return nulldist::product_oracle(nulldist::euclidean_distance(), p, q);
      },
      py::arg("p"), py::arg("q"));

  m.def(
      "reach",
      [](const std::string& scenario_name, const Vec& p, const std::string& direction, double h,
         int r, const std::vector<std::pair<double, double>>& box) {
        const auto sc = scenario::make_scenario(scenario_name);
        const auto graph = lattice::build_graph(sc.structure, grid_from_args(sc, h, r, box),
                                                2'000'000);
        const auto node = graph.snap(p);
        if (!node) throw std::runtime_error("p does not snap to an in-domain node");
        std::vector<Vec> out;
        for (const auto id : lattice::reach(graph, *node,
                                            direction == "past" ? lattice::Direction::Past
                                                                : lattice::Direction::Future))
          out.push_back(graph.position(id));
        return out;
      },
      py::arg("scenario"), py::arg("p"), py::arg("direction") = "future", py::arg("h") = 0.0,
      py::arg("r") = 0, py::arg("box") = std::vector<std::pair<double, double>>{});

  m.def(
      "diamond",
      [](const std::string& scenario_name, const Vec& p, const Vec& q, double h, int r,
         const std::vector<std::pair<double, double>>& box) {
        const auto sc = scenario::make_scenario(scenario_name);
        const auto graph = lattice::build_graph(sc.structure, grid_from_args(sc, h, r, box),
                                                2'000'000);
        const auto a = graph.snap(p);
        const auto b = graph.snap(q);
        if (!a || !b) throw std::runtime_error("endpoints do not snap to in-domain nodes");
        std::vector<Vec> out;
        for (const auto id : lattice::diamond(graph, *a, *b)) out.push_back(graph.position(id));
        return out;
      },
      py::arg("scenario"), py::arg("p"), py::arg("q"), py::arg("h") = 0.0, py::arg("r") = 0,
      py::arg("box") = std::vector<std::pair<double, double>>{});

  m.def(
      "validate",
      [](const spacetime::SpacetimeStructure& s, const std::vector<Vec>& probes, double tol) {
        return spacetime::validate(s, probes, tol).pass;
      },
      py::arg("structure"), py::arg("probes"), py::arg("tol") = 1e-9);

  m.def("suite_names", &verify::suite_names);
  m.def(
      "run_suite",
      [](const std::string& name, const py::dict& config) {
        return json_to_py(verify::run_suite(name, py_to_json(config)).to_json());
      },
      py::arg("name"), py::arg("config") = py::dict());
}
