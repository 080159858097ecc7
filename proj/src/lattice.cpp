#include "conecalc/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace conecalc::lattice {

using cone::classify;
using cone::ConeClass;

std::string to_string(PiecewisePath::Dir d) {
  return d == PiecewisePath::Dir::Future ? "future" : "past";
}

namespace {

struct GridShape {
  std::vector<int> shape;
  std::vector<std::int64_t> stride;
  std::int64_t total = 1;
};

GridShape grid_shape(const GridSpec& grid, int dim) {
  require(static_cast<int>(grid.box.size()) == dim, "grid: box rank != structure dimension");
  require(grid.spacing > 0.0, "grid: spacing must be positive");
  require(grid.stencil_radius >= 1, "grid: stencil radius must be >= 1");
  require(grid.periodic.empty() || static_cast<int>(grid.periodic.size()) == dim,
          "grid: periodic rank mismatch");

  GridShape gs;
  gs.shape.resize(static_cast<std::size_t>(dim));
  for (int a = 0; a < dim; ++a) {
    const auto [lo, hi] = grid.box[static_cast<std::size_t>(a)];
    require(hi > lo, "grid: degenerate box axis");
    const double cells = (hi - lo) / grid.spacing;
    const bool per = !grid.periodic.empty() && grid.periodic[static_cast<std::size_t>(a)];
    if (per) {
      const double rounded = std::round(cells);
      require(std::fabs(cells - rounded) < 1e-9 * std::max(1.0, rounded),
              "grid: periodic axis extent must be an integer number of cells");
      const int count = static_cast<int>(rounded);
      require(count > 2 * grid.stencil_radius, "grid: periodic axis too short for the stencil");
      gs.shape[static_cast<std::size_t>(a)] = count;  // hi row identified with lo
    } else {
      gs.shape[static_cast<std::size_t>(a)] = static_cast<int>(std::floor(cells + 1e-9)) + 1;
    }
  }
  gs.stride.resize(static_cast<std::size_t>(dim));
  std::int64_t acc = 1;
  for (int a = dim - 1; a >= 0; --a) {
    gs.stride[static_cast<std::size_t>(a)] = acc;
    acc *= gs.shape[static_cast<std::size_t>(a)];
  }
  gs.total = acc;
  return gs;
}

int gcd_abs(int a, int b) { return std::gcd(std::abs(a), std::abs(b)); }

}  // namespace

std::vector<std::vector<int>> stencil_offsets(int dim, int radius) {
  std::vector<std::vector<int>> out;
  std::vector<int> o(static_cast<std::size_t>(dim), -radius);
  while (true) {
    int g = 0;
    bool zero = true;
    for (int c : o) {
      if (c != 0) zero = false;
      g = gcd_abs(g, c);
    }
    if (!zero && g == 1) out.push_back(o);
    int a = dim - 1;
    for (; a >= 0; --a) {
      if (o[static_cast<std::size_t>(a)] < radius) {
        ++o[static_cast<std::size_t>(a)];
        for (int b = a + 1; b < dim; ++b) o[static_cast<std::size_t>(b)] = -radius;
        break;
      }
    }
    if (a < 0) break;
  }
  return out;
}

CausalGraph build_graph(const SpacetimeStructure& s, const GridSpec& grid,
                        std::int64_t max_nodes) {
  const int dim = s.dim();
  const GridShape gs = grid_shape(grid, dim);
  if (max_nodes > 0 && gs.total > max_nodes)
    throw std::runtime_error("build_graph: lattice has " + std::to_string(gs.total) +
                             " cells, above the cap of " + std::to_string(max_nodes));
  if (max_nodes > 0) {
    // High dimension x radius combinations explode in edge candidates long
    // before the node cap bites; budget the stencil work under the same knob.
    const auto n_offsets = static_cast<std::int64_t>(stencil_offsets(dim, grid.stencil_radius).size());
    if (gs.total * n_offsets > 128 * max_nodes)
      throw std::runtime_error(
          "build_graph: " + std::to_string(gs.total) + " cells x " + std::to_string(n_offsets) +
          " stencil offsets exceeds the work budget; raise the node cap or coarsen the grid");
  }

  CausalGraph g;
  g.dim_ = dim;
  g.grid_ = grid;
  g.shape_ = gs.shape;
  g.cell_to_node_.assign(static_cast<std::size_t>(gs.total), -1);

  // Nodes: lattice points inside the domain, in linear-index order.
  std::vector<int> idx(static_cast<std::size_t>(dim), 0);
  Vec pos(static_cast<std::size_t>(dim), 0.0);
  for (std::int64_t cell = 0; cell < gs.total; ++cell) {
    std::int64_t rem = cell;
    for (int a = 0; a < dim; ++a) {
      idx[static_cast<std::size_t>(a)] = static_cast<int>(rem / gs.stride[static_cast<std::size_t>(a)]);
      rem %= gs.stride[static_cast<std::size_t>(a)];
      pos[static_cast<std::size_t>(a)] = grid.box[static_cast<std::size_t>(a)].first +
                                         idx[static_cast<std::size_t>(a)] * grid.spacing;
    }
    if (!s.in_domain(pos)) continue;
    g.cell_to_node_[static_cast<std::size_t>(cell)] =
        static_cast<std::int32_t>(g.node_pos_.size() / static_cast<std::size_t>(dim));
    g.node_pos_.insert(g.node_pos_.end(), pos.begin(), pos.end());
    g.node_idx_.insert(g.node_idx_.end(), idx.begin(), idx.end());
  }
  const std::int64_t n_nodes = g.node_count();
  if (n_nodes == 0) throw std::runtime_error("build_graph: no lattice point lies in the domain");

  const auto offsets = stencil_offsets(dim, grid.stencil_radius);

  // For constant structures the chord classification is position-independent;
  // classify each offset once.
  std::vector<std::int8_t> const_admit;  // -1 unknown, 0 no, 1 boundary, 2 timelike
  const bool constant = s.constant();
  std::vector<Vec> chords(offsets.size());
  for (std::size_t k = 0; k < offsets.size(); ++k) {
    Vec d(static_cast<std::size_t>(dim));
    for (int a = 0; a < dim; ++a)
      d[static_cast<std::size_t>(a)] = offsets[k][static_cast<std::size_t>(a)] * grid.spacing;
    chords[k] = std::move(d);
  }
  if (constant) {
    const_admit.resize(offsets.size(), 0);
    Vec ref(static_cast<std::size_t>(dim));
    for (int a = 0; a < dim; ++a) ref[static_cast<std::size_t>(a)] = g.node_pos_[static_cast<std::size_t>(a)];
    for (std::size_t k = 0; k < offsets.size(); ++k) {
      // Domain plays no role here; pass the structure without one.
      SpacetimeStructure bare = s;
      bare.domain = nullptr;
      const ConeClass c = classify(bare, ref, chords[k], 0.0);
      const_admit[k] = c == ConeClass::FutureTimelike ? 2 : (c == ConeClass::FutureBoundary ? 1 : 0);
    }
  }

  SpacetimeStructure bare = s;
  bare.domain = nullptr;

  g.fwd_row_.assign(static_cast<std::size_t>(n_nodes) + 1, 0);
  std::vector<int> bidx(static_cast<std::size_t>(dim));
  Vec mid(static_cast<std::size_t>(dim));
  for (std::int64_t a_node = 0; a_node < n_nodes; ++a_node) {
    g.fwd_row_[static_cast<std::size_t>(a_node)] = static_cast<std::int64_t>(g.fwd_to_.size());
    const std::size_t base = static_cast<std::size_t>(a_node) * static_cast<std::size_t>(dim);
    for (std::size_t k = 0; k < offsets.size(); ++k) {
      if (constant && const_admit[k] == 0) continue;
      bool in_range = true;
      std::int64_t cell = 0;
      for (int a = 0; a < dim && in_range; ++a) {
        int i = g.node_idx_[base + static_cast<std::size_t>(a)] + offsets[k][static_cast<std::size_t>(a)];
        const int count = gs.shape[static_cast<std::size_t>(a)];
        const bool per = !grid.periodic.empty() && grid.periodic[static_cast<std::size_t>(a)];
        if (per) {
          i = ((i % count) + count) % count;
        } else if (i < 0 || i >= count) {
          in_range = false;
        }
        cell += static_cast<std::int64_t>(i) * gs.stride[static_cast<std::size_t>(a)];
      }
      if (!in_range) continue;
      const std::int32_t b_node = g.cell_to_node_[static_cast<std::size_t>(cell)];
      if (b_node < 0 || b_node == a_node) continue;

      // Midpoint of the unwrapped chord.
      for (int a = 0; a < dim; ++a)
        mid[static_cast<std::size_t>(a)] =
            g.node_pos_[base + static_cast<std::size_t>(a)] + 0.5 * chords[k][static_cast<std::size_t>(a)];
      if (!s.in_domain(mid)) continue;

      bool timelike;
      if (constant) {
        timelike = const_admit[k] == 2;
      } else {
        const ConeClass c = classify(bare, mid, chords[k], 0.0);
        if (!cone::future_causal(c)) continue;
        timelike = c == ConeClass::FutureTimelike;
      }
      g.fwd_to_.push_back(b_node);
      g.fwd_timelike_.push_back(timelike ? 1 : 0);
    }
  }
  g.fwd_row_[static_cast<std::size_t>(n_nodes)] = static_cast<std::int64_t>(g.fwd_to_.size());

  // Reverse CSR by counting sort; stable, hence deterministic.
  g.bwd_row_.assign(static_cast<std::size_t>(n_nodes) + 1, 0);
  for (std::int32_t to : g.fwd_to_) ++g.bwd_row_[static_cast<std::size_t>(to) + 1];
  for (std::size_t i = 1; i < g.bwd_row_.size(); ++i) g.bwd_row_[i] += g.bwd_row_[i - 1];
  g.bwd_to_.resize(g.fwd_to_.size());
  std::vector<std::int64_t> fill(g.bwd_row_.begin(), g.bwd_row_.end() - 1);
  for (std::int64_t from = 0; from < n_nodes; ++from)
    for (std::int64_t e = g.fwd_row_[static_cast<std::size_t>(from)];
         e < g.fwd_row_[static_cast<std::size_t>(from) + 1]; ++e) {
      const std::int32_t to = g.fwd_to_[static_cast<std::size_t>(e)];
      g.bwd_to_[static_cast<std::size_t>(fill[static_cast<std::size_t>(to)]++)] =
          static_cast<std::int32_t>(from);
    }

  return g;
}

Vec CausalGraph::position(std::int64_t node) const {
  const std::size_t base = static_cast<std::size_t>(node) * static_cast<std::size_t>(dim_);
  return Vec(node_pos_.begin() + static_cast<std::ptrdiff_t>(base),
             node_pos_.begin() + static_cast<std::ptrdiff_t>(base + static_cast<std::size_t>(dim_)));
}

std::vector<std::int32_t> CausalGraph::lattice_index(std::int64_t node) const {
  const std::size_t base = static_cast<std::size_t>(node) * static_cast<std::size_t>(dim_);
  return std::vector<std::int32_t>(
      node_idx_.begin() + static_cast<std::ptrdiff_t>(base),
      node_idx_.begin() + static_cast<std::ptrdiff_t>(base + static_cast<std::size_t>(dim_)));
}

std::optional<std::int64_t> CausalGraph::snap(const Vec& point) const {
  if (point.size() != static_cast<std::size_t>(dim_)) return std::nullopt;
  std::int64_t cell = 0;
  GridShape gs;  // recompute strides from shape
  gs.stride.resize(static_cast<std::size_t>(dim_));
  std::int64_t acc = 1;
  for (int a = dim_ - 1; a >= 0; --a) {
    gs.stride[static_cast<std::size_t>(a)] = acc;
    acc *= shape_[static_cast<std::size_t>(a)];
  }
  for (int a = 0; a < dim_; ++a) {
    const double t = (point[static_cast<std::size_t>(a)] - grid_.box[static_cast<std::size_t>(a)].first) /
                     grid_.spacing;
    // nearest cell, ties to the lower index
    std::int64_t i = static_cast<std::int64_t>(std::ceil(t - 0.5));
    if (std::fabs(t - static_cast<double>(i)) > 0.5 + 1e-9) return std::nullopt;
    const bool per = !grid_.periodic.empty() && grid_.periodic[static_cast<std::size_t>(a)];
    const int count = shape_[static_cast<std::size_t>(a)];
    if (per) {
      i = ((i % count) + count) % count;
    } else if (i < 0 || i >= count) {
      return std::nullopt;
    }
    cell += i * gs.stride[static_cast<std::size_t>(a)];
  }
  const std::int32_t node = cell_to_node_[static_cast<std::size_t>(cell)];
  if (node < 0) return std::nullopt;
  return node;
}

bool CausalGraph::same_topology(const CausalGraph& other) const {
  return dim_ == other.dim_ && shape_ == other.shape_ && node_idx_ == other.node_idx_ &&
         node_pos_ == other.node_pos_ && fwd_row_ == other.fwd_row_ && fwd_to_ == other.fwd_to_ &&
         fwd_timelike_ == other.fwd_timelike_;
}

namespace {

std::vector<std::uint8_t> reach_mask(const CausalGraph& g, std::int64_t start, Direction dir) {
  require(start >= 0 && start < g.node_count(), "reach: unknown node");
  const auto& row = dir == Direction::Future ? g.fwd_row() : g.bwd_row();
  const auto& to = dir == Direction::Future ? g.fwd_to() : g.bwd_to();
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(g.node_count()), 0);
  std::vector<std::int64_t> queue;
  queue.push_back(start);
  seen[static_cast<std::size_t>(start)] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::int64_t u = queue[head];
    for (std::int64_t e = row[static_cast<std::size_t>(u)]; e < row[static_cast<std::size_t>(u) + 1]; ++e) {
      const std::int32_t v = to[static_cast<std::size_t>(e)];
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        queue.push_back(v);
      }
    }
  }
  return seen;
}

std::vector<std::int64_t> mask_to_ids(const std::vector<std::uint8_t>& mask) {
  std::vector<std::int64_t> ids;
  for (std::size_t i = 0; i < mask.size(); ++i)
    if (mask[i]) ids.push_back(static_cast<std::int64_t>(i));
  return ids;
}

}  // namespace

std::vector<std::int64_t> reach(const CausalGraph& graph, std::int64_t node, Direction dir) {
  return mask_to_ids(reach_mask(graph, node, dir));
}

std::vector<std::int64_t> diamond(const CausalGraph& graph, std::int64_t p, std::int64_t q) {
  const auto fwd = reach_mask(graph, p, Direction::Future);
  const auto bwd = reach_mask(graph, q, Direction::Past);
  std::vector<std::int64_t> ids;
  for (std::size_t i = 0; i < fwd.size(); ++i)
    if (fwd[i] && bwd[i]) ids.push_back(static_cast<std::int64_t>(i));
  return ids;
}

std::optional<std::vector<std::int64_t>> find_closed_timelike(const CausalGraph& graph) {
  const std::int64_t n = graph.node_count();
  // 0 = unvisited, 1 = on stack, 2 = done
  std::vector<std::uint8_t> color(static_cast<std::size_t>(n), 0);
  std::vector<std::int64_t> stack, edge_pos;

  for (std::int64_t root = 0; root < n; ++root) {
    if (color[static_cast<std::size_t>(root)] != 0) continue;
    stack.assign(1, root);
    edge_pos.assign(1, graph.fwd_row()[static_cast<std::size_t>(root)]);
    color[static_cast<std::size_t>(root)] = 1;
    while (!stack.empty()) {
      const std::int64_t u = stack.back();
      std::int64_t& e = edge_pos.back();
      bool advanced = false;
      while (e < graph.fwd_row()[static_cast<std::size_t>(u) + 1]) {
        const std::int64_t cur = e++;
        if (!graph.fwd_timelike()[static_cast<std::size_t>(cur)]) continue;
        const std::int32_t v = graph.fwd_to()[static_cast<std::size_t>(cur)];
        if (color[static_cast<std::size_t>(v)] == 1) {
          // Cycle: slice the stack from v's position.
          std::vector<std::int64_t> cycle;
          auto it = std::find(stack.begin(), stack.end(), static_cast<std::int64_t>(v));
          cycle.assign(it, stack.end());
          return cycle;
        }
        if (color[static_cast<std::size_t>(v)] == 0) {
          color[static_cast<std::size_t>(v)] = 1;
          stack.push_back(v);
          edge_pos.push_back(graph.fwd_row()[static_cast<std::size_t>(v)]);
          advanced = true;
          break;
        }
      }
      if (!advanced && !stack.empty() && stack.back() == u &&
          e >= graph.fwd_row()[static_cast<std::size_t>(u) + 1]) {
        color[static_cast<std::size_t>(u)] = 2;
        stack.pop_back();
        edge_pos.pop_back();
      }
    }
  }
  return std::nullopt;
}

PathReport validate_path(const SpacetimeStructure& s, const PiecewisePath& path,
                         int samples_per_segment, double tol) {
  require(samples_per_segment >= 1, "validate_path: need at least one sample per segment");
  require(path.vertices.size() >= 1, "validate_path: empty path");
  require(path.directions.size() + 1 == path.vertices.size(),
          "validate_path: directions must match segments");

  PathReport report;
  report.pass = true;
  for (std::size_t k = 0; k + 1 < path.vertices.size(); ++k) {
    SegmentCheck seg;
    seg.from = path.vertices[k];
    seg.to = path.vertices[k + 1];
    seg.declared = path.directions[k];
    const Vec chord = sub(seg.to, seg.from);
    require(norm(chord) > 0.0, "validate_path: consecutive vertices coincide");
    seg.ok = true;
    for (int i = 0; i < samples_per_segment; ++i) {
      const double t = (i + 0.5) / samples_per_segment;
      Vec x = seg.from;
      axpy(x, t, chord);
      const ConeClass c = classify(s, x, chord, tol);
      seg.sample_classes.push_back(c);
      const bool good = seg.declared == PiecewisePath::Dir::Future ? cone::future_causal(c)
                                                                   : cone::past_causal(c);
      if (!good) seg.ok = false;
    }
    if (!seg.ok) report.pass = false;
    report.segments.push_back(std::move(seg));
  }
  return report;
}

std::string graph_to_json(const CausalGraph& graph) {
  nlohmann::json j;
  j["schema"] = "conecalc/1";
  j["node_count"] = graph.node_count();
  j["edge_count"] = graph.edge_count();
  nlohmann::json nodes = nlohmann::json::array();
  for (std::int64_t i = 0; i < graph.node_count(); ++i) nodes.push_back(graph.position(i));
  j["nodes"] = std::move(nodes);
  nlohmann::json edges = nlohmann::json::array();
  for (std::int64_t u = 0; u < graph.node_count(); ++u)
    for (std::int64_t e = graph.fwd_row()[static_cast<std::size_t>(u)];
         e < graph.fwd_row()[static_cast<std::size_t>(u) + 1]; ++e)
      edges.push_back({u, graph.fwd_to()[static_cast<std::size_t>(e)],
                       graph.fwd_timelike()[static_cast<std::size_t>(e)] ? 1 : 0});
  j["edges"] = std::move(edges);
  return j.dump();
}

}  // namespace conecalc::lattice
