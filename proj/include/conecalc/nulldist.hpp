#ifndef CONECALC_NULLDIST_HPP
#define CONECALC_NULLDIST_HPP

#include <functional>
#include <string>

#include "conecalc/flatspace.hpp"
#include "conecalc/lattice.hpp"
#include "conecalc/types.hpp"

namespace conecalc::nulldist {

using lattice::CausalGraph;
using lattice::GridSpec;
using lattice::PiecewisePath;
using spacetime::SpacetimeStructure;

// Scalar field used to weight piecewise causal paths.
struct TimeFunction {
  enum class Kind { CanonicalT, ProductT, OddPower, CompositeSum, Custom };

  Kind kind = Kind::CanonicalT;
  int nu = 1;  // CanonicalT / OddPower
  int k = 1;   // OddPower exponent parameter: tau = T^(2k+1)
  std::function<double(const Vec&)> fn;  // CompositeSum base / Custom
  std::string label = "T";

  double eval(const Vec& p) const;

  static TimeFunction canonical(int nu);
  static TimeFunction product_coordinate();
  static TimeFunction odd_power(int nu, int k);
  // tau(p) = base(tail(p)) + p[0], for product structures with a prepended
  // coordinate.
  static TimeFunction composite(std::function<double(const Vec&)> base);
  static TimeFunction custom(std::string label, std::function<double(const Vec&)> fn);
};

// Sum of |tau(v_i) - tau(v_{i-1})| over the path vertices.
double null_length(const TimeFunction& tau, const PiecewisePath& path);

struct DistanceResult {
  double value = 0.0;
  bool unreachable = false;
  bool exact = false;  // true when a closed-form oracle produced the value
  GridSpec grid;
  PiecewisePath witness;

  std::string to_json(bool with_schema = true) const;
};

// Shortest-path distance between the snapped endpoints on the symmetrized
// causal graph (each causal edge contributes an undirected edge of weight
// |tau(b) - tau(a)|). The value is an upper bound on the null distance: graph
// paths are a subclass of piecewise causal paths.
DistanceResult estimate_on(const CausalGraph& graph, const TimeFunction& tau, const Vec& p,
                           const Vec& q);

DistanceResult estimate(const SpacetimeStructure& s, const TimeFunction& tau,
                        const GridSpec& grid, const Vec& p, const Vec& q,
                        std::int64_t max_nodes = 0);

using BaseDistance = std::function<double(const Vec&, const Vec&)>;

BaseDistance euclidean_distance();
// Arc distance on a circle of the given circumference (1-D fiber).
BaseDistance circle_distance(double circumference);

// Product formula max{|t(q)-t(p)|, d_sigma(p_S, q_S)} for points of R x Sigma
// with the product coordinate first.
double product_oracle(const BaseDistance& base_dist, const Vec& p, const Vec& q);

enum class BoundaryClass { ChronologicalInterior, CausalBoundary, Exterior };

std::string to_string(BoundaryClass c);

// Position of q relative to the causal boundary of the future of p in a
// product: boundary iff |dt - d_sigma| <= tol, interior iff dt > d_sigma + tol.
// Requires t(q) >= t(p).
BoundaryClass boundary_classify(const BaseDistance& base_dist, const Vec& p, const Vec& q,
                                double tol);

struct AntiLipschitzReport {
  double min_ratio = 0.0;
  Vec worst_p;
  Vec worst_q;
  int pairs = 0;
};

// Samples causally related pairs q = p + chord inside `region` and reports the
// minimum of (tau(q)-tau(p)) / |q-p|. A ratio bounded away from zero supports
// anti-Lipschitzness on the region; a ratio near zero flags degeneracy.
// Throws when the region yields no causal pairs.
AntiLipschitzReport anti_lipschitz_probe(const SpacetimeStructure& s, const TimeFunction& tau,
                                         const flatspace::Box& region, int n_pairs,
                                         std::uint64_t seed = 1);

// Piecewise null competitor from the origin to the unit shift of the last
// coordinate in the flat structure (nu < n): 2j legs alternating future/past,
// each of first-coordinate height 1/(2j).
PiecewisePath null_zigzag_path(int n, int nu, int j);

}  // namespace conecalc::nulldist

#endif
