#ifndef CONECALC_SCENARIO_HPP
#define CONECALC_SCENARIO_HPP

#include <string>
#include <vector>

#include "conecalc/lattice.hpp"
#include "conecalc/nulldist.hpp"
#include "conecalc/spacetime.hpp"

namespace conecalc::scenario {

using lattice::GridSpec;
using spacetime::SpacetimeStructure;

// Named, reproducible structure configurations. Parameters are encoded as
// name:arg,arg (shell-friendly, no quoting).
struct Scenario {
  std::string name;
  std::string description;
  SpacetimeStructure structure;
  GridSpec default_grid;
  std::string default_tau = "T";
  bool expect_invalid = false;
};

// Builders reused across the toolkit.
SpacetimeStructure notgh_base();                 // flat(2,1) minus the causal future of the origin
SpacetimeStructure notgh(double eps = 0.0);      // orthogonal extension of notgh_base
SpacetimeStructure product_structure(int m);     // R x R^m, product coordinate first
SpacetimeStructure punctured_product(int m);     // R x (R^m minus origin)

// Parses "flat:3,2", "product:2", "punctured:2", "notgh", "notgh_base",
// "torus:2,1", "badframe:2,1". Throws std::invalid_argument on unknown names
// or malformed parameters.
Scenario make_scenario(const std::string& text);

// Catalog of scenario name patterns with descriptions (JSON string).
std::string catalog_json();

// JSON description of a built scenario instance (kind tag + parameters).
std::string describe_json(const Scenario& sc);

// Time function from a CLI label: T | t | T3 | T5 | composite.
nulldist::TimeFunction make_time_function(const std::string& label,
                                          const SpacetimeStructure& s);

}  // namespace conecalc::scenario

#endif
