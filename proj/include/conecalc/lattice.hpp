#ifndef CONECALC_LATTICE_HPP
#define CONECALC_LATTICE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conecalc/cone.hpp"
#include "conecalc/spacetime.hpp"
#include "conecalc/types.hpp"

namespace conecalc::lattice {

using cone::ConeClass;
using spacetime::SpacetimeStructure;

struct GridSpec {
  std::vector<std::pair<double, double>> box;  // per-axis (min, max)
  double spacing = 0.25;
  std::vector<bool> periodic;    // empty = none
  int stencil_radius = 2;
};

struct PiecewisePath {
  enum class Dir { Future, Past };
  std::vector<Vec> vertices;
  std::vector<Dir> directions;  // one per segment
};

std::string to_string(PiecewisePath::Dir d);

// Directed graph over the lattice points of `grid` that lie in the domain of
// the structure. An edge a->b exists for every stencil offset (coprime integer
// components, Chebyshev norm <= r) whose chord classifies future-causal at the
// segment midpoint, with the midpoint itself in-domain. Node and edge order is
// deterministic (lexicographic indices, lexicographic offsets).
class CausalGraph {
 public:
  int dim() const { return dim_; }
  std::int64_t node_count() const { return static_cast<std::int64_t>(node_pos_.size()) / dim_; }
  std::int64_t edge_count() const { return static_cast<std::int64_t>(fwd_to_.size()); }
  const GridSpec& grid() const { return grid_; }

  Vec position(std::int64_t node) const;
  std::vector<std::int32_t> lattice_index(std::int64_t node) const;

  // Nearest lattice node within spacing/2 per axis (ties to the lower index);
  // nothing if the snapped cell is outside the box or outside the domain.
  std::optional<std::int64_t> snap(const Vec& point) const;

  // CSR adjacency. Forward rows list successors, backward rows predecessors.
  const std::vector<std::int64_t>& fwd_row() const { return fwd_row_; }
  const std::vector<std::int32_t>& fwd_to() const { return fwd_to_; }
  const std::vector<std::uint8_t>& fwd_timelike() const { return fwd_timelike_; }
  const std::vector<std::int64_t>& bwd_row() const { return bwd_row_; }
  const std::vector<std::int32_t>& bwd_to() const { return bwd_to_; }

  bool same_topology(const CausalGraph& other) const;

 private:
  friend CausalGraph build_graph(const SpacetimeStructure&, const GridSpec&, std::int64_t);

  int dim_ = 0;
  GridSpec grid_;
  std::vector<int> shape_;             // nodes per axis
  std::vector<double> node_pos_;       // dim per node
  std::vector<std::int32_t> node_idx_; // dim per node
  std::vector<std::int32_t> cell_to_node_;  // full lattice linear index -> node or -1
  std::vector<std::int64_t> fwd_row_;
  std::vector<std::int32_t> fwd_to_;
  std::vector<std::uint8_t> fwd_timelike_;
  std::vector<std::int64_t> bwd_row_;
  std::vector<std::int32_t> bwd_to_;
};

// Stencil offsets for the given dimension and radius: integer vectors with
// coprime components, Chebyshev norm <= r, lexicographic order.
std::vector<std::vector<int>> stencil_offsets(int dim, int radius);

// max_nodes = 0 means unlimited. Throws on an empty node set or a lattice
// larger than the cap.
CausalGraph build_graph(const SpacetimeStructure& s, const GridSpec& grid,
                        std::int64_t max_nodes = 0);

enum class Direction { Future, Past };

// Transitive closure from `node` (inclusive), ascending node ids.
std::vector<std::int64_t> reach(const CausalGraph& graph, std::int64_t node, Direction dir);

// reach(p, future) intersected with reach(q, past), ascending node ids.
std::vector<std::int64_t> diamond(const CausalGraph& graph, std::int64_t p, std::int64_t q);

// A directed cycle through FutureTimelike-classified edges, if one exists.
// Consecutive entries (and last -> first) are timelike edges.
std::optional<std::vector<std::int64_t>> find_closed_timelike(const CausalGraph& graph);

struct SegmentCheck {
  Vec from;
  Vec to;
  PiecewisePath::Dir declared = PiecewisePath::Dir::Future;
  std::vector<ConeClass> sample_classes;
  bool ok = false;
};

struct PathReport {
  bool pass = false;
  std::vector<SegmentCheck> segments;
};

// Checks that each segment chord classifies consistently with its declared
// direction at `samples_per_segment` interior points.
PathReport validate_path(const SpacetimeStructure& s, const PiecewisePath& path,
                         int samples_per_segment, double tol);

// Adjacency dump for debugging; not a stability contract.
std::string graph_to_json(const CausalGraph& graph);

}  // namespace conecalc::lattice

#endif
