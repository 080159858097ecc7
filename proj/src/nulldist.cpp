#include "conecalc/nulldist.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

#include "conecalc/rng.hpp"
#include "json.hpp"

namespace conecalc::nulldist {

using cone::ConeClass;
using flatspace::time_T;

double TimeFunction::eval(const Vec& p) const {
  switch (kind) {
    case Kind::CanonicalT:
      return time_T(p, nu);
    case Kind::ProductT:
      return p.at(0);
    case Kind::OddPower: {
      const double t = time_T(p, nu);
      double r = t;
      for (int i = 0; i < 2 * k; ++i) r *= t;
      return r;
    }
    case Kind::CompositeSum:
      return fn(Vec(p.begin() + 1, p.end())) + p.at(0);
    case Kind::Custom:
      return fn(p);
  }
  return 0.0;
}

TimeFunction TimeFunction::canonical(int nu) {
  TimeFunction t;
  t.kind = Kind::CanonicalT;
  t.nu = nu;
  t.label = "T";
  return t;
}

TimeFunction TimeFunction::product_coordinate() {
  TimeFunction t;
  t.kind = Kind::ProductT;
  t.label = "t";
  return t;
}

TimeFunction TimeFunction::odd_power(int nu, int k) {
  require(k >= 1, "odd_power: k must be >= 1");
  TimeFunction t;
  t.kind = Kind::OddPower;
  t.nu = nu;
  t.k = k;
  t.label = "T^" + std::to_string(2 * k + 1);
  return t;
}

TimeFunction TimeFunction::composite(std::function<double(const Vec&)> base) {
  TimeFunction t;
  t.kind = Kind::CompositeSum;
  t.fn = std::move(base);
  t.label = "composite";
  return t;
}

TimeFunction TimeFunction::custom(std::string label, std::function<double(const Vec&)> fn) {
  TimeFunction t;
  t.kind = Kind::Custom;
  t.fn = std::move(fn);
  t.label = std::move(label);
  return t;
}

double null_length(const TimeFunction& tau, const PiecewisePath& path) {
  require(!path.vertices.empty(), "null_length: empty path");
  double sum = 0.0;
  for (std::size_t i = 1; i < path.vertices.size(); ++i)
    sum += std::fabs(tau.eval(path.vertices[i]) - tau.eval(path.vertices[i - 1]));
  return sum;
}

namespace {

nlohmann::json grid_json(const GridSpec& grid) {
  nlohmann::json g;
  g["h"] = grid.spacing;
  g["r"] = grid.stencil_radius;
  nlohmann::json box = nlohmann::json::array();
  for (const auto& [lo, hi] : grid.box) box.push_back({lo, hi});
  g["box"] = std::move(box);
  if (!grid.periodic.empty()) g["periodic"] = grid.periodic;
  return g;
}

}  // namespace

std::string DistanceResult::to_json(bool with_schema) const {
  nlohmann::json j;
  if (with_schema) j["schema"] = "conecalc/1";
  if (unreachable)
    j["value"] = nullptr;
  else
    j["value"] = value;
  j["unreachable"] = unreachable;
  j["exact"] = exact;
  j["grid"] = grid_json(grid);
  nlohmann::json w = nlohmann::json::array();
  for (const Vec& v : witness.vertices) w.push_back(v);
  j["witness"] = std::move(w);
  nlohmann::json dirs = nlohmann::json::array();
  for (const auto d : witness.directions) dirs.push_back(lattice::to_string(d));
  j["witness_directions"] = std::move(dirs);
  return j.dump();
}

DistanceResult estimate_on(const CausalGraph& graph, const TimeFunction& tau, const Vec& p,
                           const Vec& q) {
  const auto src = graph.snap(p);
  const auto dst = graph.snap(q);
  if (!src) throw std::runtime_error("estimate: p is not representable on the grid: " + format_point(p));
  if (!dst) throw std::runtime_error("estimate: q is not representable on the grid: " + format_point(q));

  const std::int64_t n = graph.node_count();
  std::vector<double> tau_at(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) tau_at[static_cast<std::size_t>(i)] = tau.eval(graph.position(i));

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(static_cast<std::size_t>(n), kInf);
  std::vector<std::int64_t> pred(static_cast<std::size_t>(n), -1);
  std::vector<std::uint8_t> pred_future(static_cast<std::size_t>(n), 1);
  std::vector<std::uint8_t> done(static_cast<std::size_t>(n), 0);

  using Entry = std::pair<double, std::int64_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
  dist[static_cast<std::size_t>(*src)] = 0.0;
  heap.push({0.0, *src});

  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (done[static_cast<std::size_t>(u)]) continue;
    done[static_cast<std::size_t>(u)] = 1;
    if (u == *dst) break;

    auto relax = [&](std::int64_t v, bool future) {
      const double w = std::fabs(tau_at[static_cast<std::size_t>(v)] - tau_at[static_cast<std::size_t>(u)]);
      const double alt = d + w;
      if (alt < dist[static_cast<std::size_t>(v)]) {
        dist[static_cast<std::size_t>(v)] = alt;
        pred[static_cast<std::size_t>(v)] = u;
        pred_future[static_cast<std::size_t>(v)] = future ? 1 : 0;
        heap.push({alt, v});
      }
    };
    for (std::int64_t e = graph.fwd_row()[static_cast<std::size_t>(u)];
         e < graph.fwd_row()[static_cast<std::size_t>(u) + 1]; ++e)
      relax(graph.fwd_to()[static_cast<std::size_t>(e)], true);
    for (std::int64_t e = graph.bwd_row()[static_cast<std::size_t>(u)];
         e < graph.bwd_row()[static_cast<std::size_t>(u) + 1]; ++e)
      relax(graph.bwd_to()[static_cast<std::size_t>(e)], false);
  }

  DistanceResult result;
  result.grid = graph.grid();
  result.exact = false;
  if (dist[static_cast<std::size_t>(*dst)] == kInf) {
    result.unreachable = true;
    return result;
  }
  result.value = dist[static_cast<std::size_t>(*dst)];

  std::vector<std::int64_t> chain;
  std::vector<std::uint8_t> chain_future;
  for (std::int64_t v = *dst; v != -1; v = pred[static_cast<std::size_t>(v)]) {
    chain.push_back(v);
    chain_future.push_back(pred_future[static_cast<std::size_t>(v)]);
    if (v == *src) break;
  }
  std::reverse(chain.begin(), chain.end());
  std::reverse(chain_future.begin(), chain_future.end());
  for (std::size_t i = 0; i < chain.size(); ++i) {
    result.witness.vertices.push_back(graph.position(chain[i]));
    if (i + 1 < chain.size())
      result.witness.directions.push_back(chain_future[i + 1] ? PiecewisePath::Dir::Future
                                                              : PiecewisePath::Dir::Past);
  }
  return result;
}

DistanceResult estimate(const SpacetimeStructure& s, const TimeFunction& tau,
                        const GridSpec& grid, const Vec& p, const Vec& q,
                        std::int64_t max_nodes) {
  const CausalGraph graph = lattice::build_graph(s, grid, max_nodes);
  return estimate_on(graph, tau, p, q);
}

BaseDistance euclidean_distance() {
  return [](const Vec& a, const Vec& b) { return norm(sub(a, b)); };
}

BaseDistance circle_distance(double circumference) {
  require(circumference > 0.0, "circle_distance: circumference must be positive");
  return [circumference](const Vec& a, const Vec& b) {
    require(a.size() == 1 && b.size() == 1, "circle_distance: 1-D fiber only");
    double d = std::fabs(a[0] - b[0]);
    d = std::fmod(d, circumference);
    return std::min(d, circumference - d);
  };
}

double product_oracle(const BaseDistance& base_dist, const Vec& p, const Vec& q) {
  require(p.size() == q.size() && p.size() >= 2, "product_oracle: need product points");
  const Vec ps(p.begin() + 1, p.end());
  const Vec qs(q.begin() + 1, q.end());
  return std::max(std::fabs(q[0] - p[0]), base_dist(ps, qs));
}

std::string to_string(BoundaryClass c) {
  switch (c) {
    case BoundaryClass::ChronologicalInterior: return "chronological_interior";
    case BoundaryClass::CausalBoundary: return "causal_boundary";
    case BoundaryClass::Exterior: return "exterior";
  }
  return "unknown";
}

BoundaryClass boundary_classify(const BaseDistance& base_dist, const Vec& p, const Vec& q,
                                double tol) {
  require(p.size() == q.size() && p.size() >= 2, "boundary_classify: need product points");
  const double dt = q[0] - p[0];
  require(dt >= 0.0, "boundary_classify: requires t(q) >= t(p)");
  const Vec ps(p.begin() + 1, p.end());
  const Vec qs(q.begin() + 1, q.end());
  const double ds = base_dist(ps, qs);
  if (std::fabs(dt - ds) <= tol) return BoundaryClass::CausalBoundary;
  return dt > ds + tol ? BoundaryClass::ChronologicalInterior : BoundaryClass::Exterior;
}

AntiLipschitzReport anti_lipschitz_probe(const SpacetimeStructure& s, const TimeFunction& tau,
                                         const flatspace::Box& region, int n_pairs,
                                         std::uint64_t seed) {
  require(n_pairs >= 1, "anti_lipschitz_probe: n_pairs must be >= 1");
  require(region.lo.size() == static_cast<std::size_t>(s.dim()),
          "anti_lipschitz_probe: region rank mismatch");
  Rng rng(seed);
  const int n = s.dim();

  double max_extent = 0.0;
  for (std::size_t a = 0; a < region.lo.size(); ++a)
    max_extent = std::max(max_extent, region.hi[a] - region.lo[a]);

  AntiLipschitzReport report;
  report.min_ratio = std::numeric_limits<double>::infinity();
  const long max_attempts = 1000L * n_pairs;
  for (long attempt = 0; attempt < max_attempts && report.pairs < n_pairs; ++attempt) {
    Vec p(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a)
      p[static_cast<std::size_t>(a)] =
          rng.uniform(region.lo[static_cast<std::size_t>(a)], region.hi[static_cast<std::size_t>(a)]);
    if (!s.in_domain(p)) continue;
    const double scale = rng.uniform(1e-6, 0.5) * max_extent;
    const Vec v = rng.uniform_vec(n, -scale, scale);
    const Vec q = add(p, v);
    if (!region.contains(q) || !s.in_domain(q)) continue;
    if (!cone::future_causal(cone::classify(s, p, v, 0.0))) continue;

    const double ratio = (tau.eval(q) - tau.eval(p)) / norm(v);
    if (ratio < report.min_ratio) {
      report.min_ratio = ratio;
      report.worst_p = p;
      report.worst_q = q;
    }
    ++report.pairs;
  }
  if (report.pairs == 0)
    throw std::runtime_error("anti_lipschitz_probe: region contains no causal pairs");
  return report;
}

PiecewisePath null_zigzag_path(int n, int nu, int j) {
  require(nu >= 1 && nu < n, "null_zigzag_path: requires nu < n");
  require(j >= 1, "null_zigzag_path: j must be >= 1");
  const double step = 1.0 / (2.0 * j);
  PiecewisePath path;
  for (int i = 0; i <= 2 * j; ++i) {
    Vec v(static_cast<std::size_t>(n), 0.0);
    v[0] = (i % 2 == 1) ? step : 0.0;
    v[static_cast<std::size_t>(n - 1)] = i * step;
    path.vertices.push_back(std::move(v));
    if (i > 0)
      path.directions.push_back(i % 2 == 1 ? PiecewisePath::Dir::Future
                                           : PiecewisePath::Dir::Past);
  }
  return path;
}

}  // namespace conecalc::nulldist
