#include "conecalc/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <stdexcept>

#include "conecalc/cone.hpp"
#include "conecalc/flatspace.hpp"
#include "conecalc/lattice.hpp"
#include "conecalc/nulldist.hpp"
#include "conecalc/rng.hpp"
#include "conecalc/scenario.hpp"
#include "conecalc/spacetime.hpp"

namespace conecalc::verify {

using cone::ConeClass;
using lattice::build_graph;
using lattice::CausalGraph;
using lattice::Direction;
using lattice::GridSpec;
using lattice::PiecewisePath;
using nulldist::TimeFunction;
using spacetime::flat;
using spacetime::SpacetimeStructure;

bool SuiteReport::pass() const {
  for (const Check& c : checks)
    if (!c.pass) return false;
  return true;
}

nlohmann::json SuiteReport::to_json(bool include_timing) const {
  nlohmann::json j;
  j["schema"] = "conecalc/1";
  j["suite"] = suite;
  j["seed"] = seed;
  j["pass"] = pass();
  nlohmann::json cs = nlohmann::json::array();
  for (const Check& c : checks)
    cs.push_back({{"id", c.id},
                  {"description", c.description},
                  {"expected", c.expected},
                  {"observed", c.observed},
                  {"pass", c.pass}});
  j["checks"] = std::move(cs);
  if (include_timing) j["elapsed_seconds"] = elapsed_seconds;
  return j;
}

namespace {

void add_check(SuiteReport& r, const std::string& id, const std::string& desc,
               nlohmann::json expected, nlohmann::json observed, bool pass) {
  r.checks.push_back({id, desc, std::move(expected), std::move(observed), pass});
}

std::uint64_t resolve_seed(const nlohmann::json& config) {
  if (config.contains("seed")) return config["seed"].get<std::uint64_t>();
  if (const char* env = std::getenv("CONECALC_SEED")) return std::strtoull(env, nullptr, 10);
  return 20260808ull;
}

GridSpec cube_grid(int n, double lo, double hi, double h, int r) {
  GridSpec g;
  g.box.assign(static_cast<std::size_t>(n), {lo, hi});
  g.spacing = h;
  g.stencil_radius = r;
  return g;
}

Vec random_lattice_point(const GridSpec& grid, Rng& rng) {
  Vec p(grid.box.size());
  for (std::size_t a = 0; a < grid.box.size(); ++a) {
    const auto [lo, hi] = grid.box[a];
    const auto cells = static_cast<std::int64_t>(std::floor((hi - lo) / grid.spacing + 1e-9));
    p[a] = lo + static_cast<double>(rng.uniform_int(0, cells)) * grid.spacing;
  }
  return p;
}

Vec random_unit(Rng& rng, int n) {
  while (true) {
    const Vec u = rng.uniform_vec(n, -1.0, 1.0);
    const double r = norm(u);
    if (r > 1e-3 && r <= 1.0) return scaled(u, 1.0 / r);
  }
}

// Constructive future-causal sample in flat(n,nu): nonnegative frame part,
// spatial part inside the chord cone.
Vec sample_flat_causal(int n, int nu, Rng& rng) {
  Vec v(static_cast<std::size_t>(n), 0.0);
  double neg2 = 0.0;
  for (int i = 0; i < nu; ++i) {
    v[static_cast<std::size_t>(i)] = rng.uniform(0.0, 1.0);
    neg2 += v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
  }
  if (nu < n) {
    const Vec dir = random_unit(rng, n - nu);
    const double rho = rng.uniform() * std::sqrt(neg2);
    for (int j = nu; j < n; ++j)
      v[static_cast<std::size_t>(j)] = rho * dir[static_cast<std::size_t>(j - nu)];
  }
  return v;
}

// Euclidean residual of v against the span of the given vectors.
double span_residual(const std::vector<Vec>& span, const Vec& v) {
  const auto es = bilinear::gram_schmidt(span, bilinear::SymForm::identity(static_cast<int>(v.size())));
  Vec r = v;
  for (const Vec& e : es) axpy(r, -dot(r, e) / dot(e, e), e);
  return norm(r);
}

double frame_gram_condition(const std::vector<Vec>& fields) {
  const int m = static_cast<int>(fields.size());
  bilinear::SymForm gram(m);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j)
      gram.set(i, j, dot(fields[static_cast<std::size_t>(i)], fields[static_cast<std::size_t>(j)]));
  const Vec ev = bilinear::sym_eigenvalues(gram);
  if (!(ev.front() > 0.0)) return std::numeric_limits<double>::infinity();
  return std::sqrt(ev.back() / ev.front());
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

void suite_product_max_formula(SuiteReport& r, const nlohmann::json& cfg, Rng& rng) {
  const int pairs = cfg.value("pairs", 50);
  const double h = cfg.value("h", 0.05);
  const int radius = cfg.value("r", 2);
  const double min_sep = cfg.value("min_separation", 1.0);

  const SpacetimeStructure s = flat(2, 1);
  const GridSpec grid = cube_grid(2, -2.0, 2.0, h, radius);
  const CausalGraph graph = build_graph(s, grid);
  const TimeFunction tau = TimeFunction::canonical(1);
  const auto euclid = nulldist::euclidean_distance();

  int within = 0;
  double worst_ratio = 1.0;
  for (int i = 0; i < pairs; ++i) {
    Vec p, q;
    double oracle = 0.0;
    for (int attempt = 0; attempt < 10000; ++attempt) {
      p = random_lattice_point(grid, rng);
      q = random_lattice_point(grid, rng);
      oracle = nulldist::product_oracle(euclid, p, q);
      if (oracle >= min_sep) break;
    }
    const auto est = nulldist::estimate_on(graph, tau, p, q);
    const bool ok = !est.unreachable && est.value >= oracle - 1e-12 &&
                    est.value <= 1.05 * oracle + 1e-12;
    if (ok) ++within;
    if (!est.unreachable && oracle > 0.0) worst_ratio = std::max(worst_ratio, est.value / oracle);
  }
  add_check(r, "band", "estimator within [oracle, 1.05*oracle] on separated lattice pairs",
            pairs, within, within == pairs);
  add_check(r, "worst_ratio", "largest estimator/oracle ratio", "<= 1.05", worst_ratio,
            worst_ratio <= 1.05 + 1e-12);

  const auto pure_time = nulldist::estimate_on(graph, tau, {-0.5, 0.25}, {0.5, 0.25});
  add_check(r, "pure_time_exact", "axis-aligned pure-time pair matches the oracle", 1.0,
            pure_time.value, std::fabs(pure_time.value - 1.0) <= 1e-12);
  const auto pure_space = nulldist::estimate_on(graph, tau, {0.25, -0.5}, {0.25, 0.5});
  add_check(r, "pure_space_exact", "axis-aligned pure-space pair matches the oracle", 1.0,
            pure_space.value, std::fabs(pure_space.value - 1.0) <= 1e-12);
}

void suite_causal_boundary(SuiteReport& r, const nlohmann::json& cfg, Rng& rng) {
  const int samples = cfg.value("samples", 200);
  const auto euclid = nulldist::euclidean_distance();

  int agree = 0;
  const int total = samples * 3;
  for (int i = 0; i < samples; ++i) {
    // Fiber dimension 1 or 2; dyadic data keeps the boundary case exact.
    const bool planar = (i % 2 == 1);
    const double s16 = static_cast<double>(rng.uniform_int(1, 32)) / 16.0;
    Vec p, u;
    if (planar) {
      p = {static_cast<double>(rng.uniform_int(-8, 8)) / 4.0,
           static_cast<double>(rng.uniform_int(-8, 8)) / 4.0,
           static_cast<double>(rng.uniform_int(-8, 8)) / 4.0};
      u = {3.0 * s16, 4.0 * s16};  // Euclidean norm 5*s16, exact
    } else {
      p = {static_cast<double>(rng.uniform_int(-8, 8)) / 4.0,
           static_cast<double>(rng.uniform_int(-8, 8)) / 4.0};
      u = {s16};
    }
    const double d = norm(u);
    const int n = static_cast<int>(p.size());

    auto shifted = [&](double dt) {
      Vec q = p;
      q[0] += dt;
      for (std::size_t a = 0; a < u.size(); ++a) q[a + 1] += u[a];
      return q;
    };
    using nulldist::BoundaryClass;
    const Vec qb = shifted(d);
    const Vec qi = shifted(d + rng.uniform(0.1, 1.0));
    const Vec qe = shifted(d * rng.uniform(0.1, 0.9));

    const bool b_ok =
        nulldist::boundary_classify(euclid, p, qb, 1e-9) == BoundaryClass::CausalBoundary &&
        flatspace::leq({n, 1, p, qb}, flatspace::OrderMode::Causal) &&
        !flatspace::leq({n, 1, p, qb}, flatspace::OrderMode::Chronological);
    const bool i_ok =
        nulldist::boundary_classify(euclid, p, qi, 1e-9) == BoundaryClass::ChronologicalInterior &&
        flatspace::leq({n, 1, p, qi}, flatspace::OrderMode::Chronological);
    const bool e_ok =
        d > 0.0 &&
        nulldist::boundary_classify(euclid, p, qe, 1e-9) == BoundaryClass::Exterior &&
        !flatspace::leq({n, 1, p, qe}, flatspace::OrderMode::Causal);
    agree += b_ok + i_ok + e_ok;
  }
  add_check(r, "boundary_agreement",
            "boundary/interior/exterior classifications agree with the flat causal order", total,
            agree, agree == total);
}

void suite_incomplete_fiber(SuiteReport& r, const nlohmann::json& cfg, Rng&) {
  const double h = cfg.value("h", 0.25);
  const Vec p = {-1.0, -1.0, 0.0};
  const Vec q = {1.0, 1.0, 0.0};

  GridSpec grid;
  grid.box = {{-1.0, 1.0}, {-1.25, 1.25}, {-1.25, 1.25}};
  grid.spacing = h;
  grid.stencil_radius = 2;

  const auto euclid = nulldist::euclidean_distance();
  const double dt = q[0] - p[0];
  const double ds = euclid(Vec(p.begin() + 1, p.end()), Vec(q.begin() + 1, q.end()));
  add_check(r, "oracle_saturated", "max formula value equals the time separation", dt,
            std::max(dt, ds), std::fabs(std::max(dt, ds) - dt) <= 1e-12);

  const SpacetimeStructure full = scenario::product_structure(2);
  const ConeClass chord = cone::classify(full, p, sub(q, p), 0.0);
  add_check(r, "straight_chord_causal", "the straight chord between the pair is null",
            "FutureBoundary", cone::to_string(chord), chord == ConeClass::FutureBoundary);

  const SpacetimeStructure punctured = scenario::punctured_product(2);
  const CausalGraph gp = build_graph(punctured, grid);
  const auto src_p = gp.snap(p);
  const auto dst_p = gp.snap(q);
  bool reach_punctured = false;
  if (src_p && dst_p) {
    const auto fwd = lattice::reach(gp, *src_p, Direction::Future);
    reach_punctured = std::binary_search(fwd.begin(), fwd.end(), *dst_p);
  }
  add_check(r, "punctured_unreachable",
            "no discrete causal path crosses the removed fiber point", false, reach_punctured,
            src_p && dst_p && !reach_punctured);

  const CausalGraph gf = build_graph(full, grid);
  const auto src_f = gf.snap(p);
  const auto dst_f = gf.snap(q);
  bool reach_full = false;
  if (src_f && dst_f) {
    const auto fwd = lattice::reach(gf, *src_f, Direction::Future);
    reach_full = std::binary_search(fwd.begin(), fwd.end(), *dst_f);
  }
  add_check(r, "full_reachable", "the same pair is causally connected on the complete fiber",
            true, reach_full, reach_full);
}

void suite_heine_borel_product(SuiteReport& r, const nlohmann::json& cfg, Rng& rng) {
  const int pairs = cfg.value("pairs", 100);

  const SpacetimeStructure s = scenario::product_structure(2);
  const GridSpec grid = cube_grid(3, -1.0, 1.0, 0.25, 2);
  const CausalGraph graph = build_graph(s, grid);

  int boxed = 0;
  for (int i = 0; i < pairs; ++i) {
    const auto a = rng.uniform_int(0, graph.node_count() - 1);
    const auto b = rng.uniform_int(0, graph.node_count() - 1);
    const Vec p = graph.position(a);
    const Vec q = graph.position(b);
    const auto ids = lattice::diamond(graph, a, b);
    const auto box = flatspace::diamond_box(p, q, 1);
    bool ok = true;
    if (!box) {
      ok = ids.empty();
    } else {
      for (const auto id : ids)
        if (!box->contains(graph.position(id), 1e-12)) ok = false;
    }
    if (ok) ++boxed;
  }
  add_check(r, "diamond_in_box", "discrete diamonds stay inside the analytic bounding box",
            pairs, boxed, boxed == pairs);

  // Punctured fiber: diamond nodes approach the removed point under refinement.
  const SpacetimeStructure punct = scenario::punctured_product(2);
  const Vec p = {-2.0, -1.0, 0.0};
  const Vec q = {2.0, 1.0, 0.0};
  std::vector<double> nearest;
  bool refine_ok = true;
  for (const double h : {0.5, 0.25, 0.125}) {
    GridSpec g;
    g.box = {{-2.0, 2.0}, {-1.5, 1.5}, {-1.5, 1.5}};
    g.spacing = h;
    g.stencil_radius = 2;
    const CausalGraph graph_h = build_graph(punct, g);
    const auto a = graph_h.snap(p);
    const auto b = graph_h.snap(q);
    if (!a || !b) {
      refine_ok = false;
      break;
    }
    double best = std::numeric_limits<double>::infinity();
    for (const auto id : lattice::diamond(graph_h, *a, *b)) {
      const Vec x = graph_h.position(id);
      best = std::min(best, std::hypot(x[1], x[2]));
    }
    if (!(best > 0.0 && best <= 1.5 * h + 1e-12)) refine_ok = false;
    nearest.push_back(best);
  }
  add_check(r, "diamond_approaches_hole",
            "diamond nodes converge in coordinates toward the removed point", "within 1.5h",
            nearest, refine_ok);
  add_check(r, "hole_excluded", "the coordinate limit fails the domain predicate", false,
            punct.in_domain({0.0, 0.0, 0.0}), !punct.in_domain({0.0, 0.0, 0.0}));
}

void suite_flat_gh(SuiteReport& r, const nlohmann::json&, Rng&) {
  const SpacetimeStructure s = flat(2, 1);
  const Vec p = {0.0, 0.0};
  const Vec q = {1.5, 0.25};

  const GridSpec coarse = cube_grid(2, -2.0, 2.0, 0.25, 2);
  const GridSpec fine = cube_grid(2, -2.0, 2.0, 0.125, 2);
  const CausalGraph gc = build_graph(s, coarse);
  const CausalGraph gf = build_graph(s, fine);

  const auto box = flatspace::diamond_box(p, q, 1);
  const auto dc = lattice::diamond(gc, *gc.snap(p), *gc.snap(q));
  const auto df = lattice::diamond(gf, *gf.snap(p), *gf.snap(q));

  bool bounded = box.has_value();
  for (const auto id : dc)
    if (!box->contains(gc.position(id), 1e-12)) bounded = false;
  for (const auto id : df)
    if (!box->contains(gf.position(id), 1e-12)) bounded = false;
  add_check(r, "bounded", "discrete diamonds lie in the analytic box at both resolutions", true,
            bounded, bounded);

  // Dyadic spacings make coarse node coordinates exact fine coordinates.
  std::vector<Vec> fine_pts;
  for (const auto id : df) fine_pts.push_back(gf.position(id));
  std::sort(fine_pts.begin(), fine_pts.end());
  bool monotone = !dc.empty();
  for (const auto id : dc)
    if (!std::binary_search(fine_pts.begin(), fine_pts.end(), gc.position(id))) monotone = false;
  add_check(r, "monotone_refinement", "the coarse diamond is contained in the refined diamond",
            true, monotone, monotone);
}

void suite_degenerate_tau(SuiteReport& r, const nlohmann::json& cfg, Rng&) {
  const int jmax = cfg.value("jmax", 50);
  std::vector<int> ks;
  if (cfg.contains("k"))
    ks.push_back(cfg["k"].get<int>());
  else
    ks = {1, 2};

  double max_rel = 0.0;
  for (const int k : ks) {
    const TimeFunction tau = TimeFunction::odd_power(1, k);
    for (int j = 1; j <= jmax; ++j) {
      const auto path = nulldist::null_zigzag_path(2, 1, j);
      const double got = nulldist::null_length(tau, path);
      const double want = 1.0 / (std::pow(4.0, k) * std::pow(static_cast<double>(j), 2 * k));
      max_rel = std::max(max_rel, std::fabs(got - want) / want);
    }
  }
  add_check(r, "zigzag_null_length", "closed-form null lengths match to relative 1e-12",
            "<= 1e-12", max_rel, max_rel <= 1e-12);

  const TimeFunction tau1 = TimeFunction::odd_power(1, 1);
  const double j10 = nulldist::null_length(tau1, nulldist::null_zigzag_path(2, 1, 10));
  add_check(r, "j10_value", "j=10, k=1 zigzag has null length 1/400", 0.0025, j10,
            std::fabs(j10 - 0.0025) <= 1e-15);

  const auto pr =
      lattice::validate_path(flat(2, 1), nulldist::null_zigzag_path(2, 1, 7), 3, 1e-12);
  add_check(r, "zigzag_piecewise_causal", "the zigzag validates as piecewise causal", true,
            pr.pass, pr.pass);

  // Estimates collapse toward zero under refinement (degenerate pseudometric).
  const SpacetimeStructure s = flat(2, 1);
  std::vector<double> values;
  bool est_ok = true;
  double prev = std::numeric_limits<double>::infinity();
  for (const double h : {0.25, 0.125, 0.0625}) {
    const GridSpec grid = cube_grid(2, -1.0, 1.0, h, 2);
    const auto est = nulldist::estimate(s, tau1, grid, {0.0, 0.0}, {0.0, 1.0});
    values.push_back(est.value);
    if (est.unreachable || std::fabs(est.value - h * h) > 1e-12 || est.value >= prev)
      est_ok = false;
    prev = est.value;
  }
  add_check(r, "estimate_collapses", "estimator values equal h^2 and shrink under refinement",
            "h^2 per level", values, est_ok);
}

void suite_steepness(SuiteReport& r, const nlohmann::json& cfg, Rng& rng) {
  const int samples = cfg.value("samples", 10000);
  int tested = 0, violations = 0;
  double min_ratio = std::numeric_limits<double>::infinity();
  while (tested < samples) {
    for (int n = 1; n <= 5 && tested < samples; ++n)
      for (int nu = 1; nu <= n && tested < samples; ++nu) {
        const Vec v = sample_flat_causal(n, nu, rng);
        if (norm(v) == 0.0) continue;
        const double dT = flatspace::time_T(v, nu);
        if (!(2.0 * dT >= norm(v))) ++violations;
        min_ratio = std::min(min_ratio, 2.0 * dT / norm(v));
        ++tested;
      }
  }
  add_check(r, "steepness", "2 dT(v) >= |v| on future-causal samples", 0, violations,
            violations == 0);
  add_check(r, "min_ratio", "smallest observed 2 dT(v)/|v|", ">= 1", min_ratio,
            min_ratio >= 1.0);
}

void suite_interior_vector(SuiteReport& r, const nlohmann::json& cfg, Rng& rng) {
  const int samples = cfg.value("samples", 1000);
  int ok = 0;
  for (int i = 0; i < samples; ++i) {
    const int n = static_cast<int>(rng.uniform_int(2, 6));
    const int nu = static_cast<int>(rng.uniform_int(1, n));
    std::vector<Vec> fields;
    do {
      fields.clear();
      for (int k = 0; k < nu; ++k) fields.push_back(rng.uniform_vec(n, -1.0, 1.0));
    } while (frame_gram_condition(fields) > 1e6);

    spacetime::MetricField h;
    h.dim = n;
    h.index = 0;
    h.constant = true;
    const auto id = bilinear::SymForm::identity(n);
    h.form_at = [id](const Vec&) { return id; };

    const SpacetimeStructure s =
        spacetime::from_frame(h, spacetime::TimeFrame::constant_fields(fields));
    const Vec p(static_cast<std::size_t>(n), 0.0);
    const Vec v = cone::interior_vector(s, p);
    const bool timelike = cone::classify(s, p, v, 0.0) == ConeClass::FutureTimelike;
    const bool in_span = span_residual(fields, v) <= 1e-9 * norm(v);
    if (timelike && in_span) ++ok;
  }
  add_check(r, "interior_vector", "constructed vectors are timelike and lie in the frame span",
            samples, ok, ok == samples);

  // Direct property of the positive-functional construction on random bases.
  const int basis_runs = cfg.value("bases", 1000);
  int basis_ok = 0;
  for (int i = 0; i < basis_runs; ++i) {
    const int m = static_cast<int>(rng.uniform_int(1, 5));
    std::vector<Vec> basis;
    do {
      basis.clear();
      for (int k = 0; k < m; ++k) basis.push_back(rng.uniform_vec(m, -1.0, 1.0));
    } while (frame_gram_condition(basis) > 1e6);
    const auto inner = bilinear::SymForm::identity(m);
    const Vec v = bilinear::positive_functional_vector(basis, inner);
    bool strict = true;
    for (const Vec& b : basis)
      if (!(bilinear::evaluate(inner, v, b) > 0.0)) strict = false;
    if (strict) ++basis_ok;
  }
  add_check(r, "positive_functional", "strict positivity against every basis vector", basis_runs,
            basis_ok, basis_ok == basis_runs);
}

void suite_strict_witness(SuiteReport& r, const nlohmann::json& cfg, Rng& rng) {
  const int samples = cfg.value("samples", 10000);
  int tested = 0, failures = 0;
  while (tested < samples) {
    for (int n = 1; n <= 5 && tested < samples; ++n)
      for (int nu = 1; nu <= n && tested < samples; ++nu) {
        const SpacetimeStructure s = flat(n, nu);
        const Vec v = sample_flat_causal(n, nu, rng);
        if (norm(v) == 0.0) continue;
        const Vec p(static_cast<std::size_t>(n), 0.0);
        try {
          const int j = cone::strict_witness(s, p, v);
          const auto d = cone::classify_detail(s, p, v, 0.0);
          if (!(d.frame_products[static_cast<std::size_t>(j - 1)] < 0.0)) ++failures;
        } catch (const std::exception&) {
          ++failures;
        }
        ++tested;
      }
  }
  add_check(r, "strict_witness_total", "a strict frame inequality exists for every causal sample",
            0, failures, failures == 0);
}

void suite_conformal(SuiteReport& r, const nlohmann::json& cfg, Rng& rng) {
  const int pairs = cfg.value("pairs", 10);
  const double h = cfg.value("h", 0.05);

  const SpacetimeStructure s = flat(2, 1);
  const SpacetimeStructure scaled =
      spacetime::conformal_scale(s, [](const Vec& p) { return 1.0 + 0.5 * std::sin(p[0]); });
  const GridSpec grid = cube_grid(2, -2.0, 2.0, h, 2);
  const CausalGraph g1 = build_graph(s, grid);
  const CausalGraph g2 = build_graph(scaled, grid);
  add_check(r, "graph_identical", "scaled and unscaled metrics induce identical causal graphs",
            true, g1.same_topology(g2), g1.same_topology(g2));

  const TimeFunction tau = TimeFunction::canonical(1);
  int identical = 0;
  for (int i = 0; i < pairs; ++i) {
    Vec p, q;
    for (int attempt = 0; attempt < 10000; ++attempt) {
      p = random_lattice_point(grid, rng);
      q = random_lattice_point(grid, rng);
      if (nulldist::product_oracle(nulldist::euclidean_distance(), p, q) >= 1.0) break;
    }
    const auto r1 = nulldist::estimate_on(g1, tau, p, q);
    const auto r2 = nulldist::estimate_on(g2, tau, p, q);
    if (r1.to_json() == r2.to_json()) ++identical;
  }
  add_check(r, "results_bit_identical", "distance results serialize identically under scaling",
            pairs, identical, identical == pairs);
}

void suite_perturbed_temporal(SuiteReport& r, const nlohmann::json& cfg, Rng& rng) {
  const int samples = cfg.value("samples", 10000);
  std::vector<double> epsilons = {0.1, 1.0};
  if (cfg.contains("eps")) epsilons = {cfg["eps"].get<double>()};

  for (const double eps : epsilons) {
    const SpacetimeStructure s = spacetime::extend_negative(flat(2, 1), eps);
    int positive = 0;
    double min_dt = std::numeric_limits<double>::infinity();
    int accepted = 0;
    while (accepted < samples) {
      const Vec p = rng.uniform_vec(3, -1.0, 1.0);
      const Vec v = rng.uniform_vec(3, -1.0, 1.0);
      if (!cone::future_causal(cone::classify(s, p, v, 0.0))) continue;
      ++accepted;
      if (v[0] > 0.0) ++positive;
      min_dt = std::min(min_dt, v[0]);
    }
    add_check(r, "dt_positive_eps_" + std::to_string(eps),
              "dt(v) > 0 on sampled future-causal vectors", samples, positive,
              positive == samples && min_dt > 0.0);
  }
}

void suite_composite_time(SuiteReport& r, const nlohmann::json& cfg, Rng& rng) {
  const int chains = cfg.value("chains", 1000);
  const SpacetimeStructure base = flat(2, 2);
  const SpacetimeStructure m1 = spacetime::extend_negative(base, 0.0);
  const GridSpec grid = cube_grid(3, -1.0, 1.0, 0.5, 2);
  const CausalGraph graph = build_graph(m1, grid);
  const TimeFunction tau =
      TimeFunction::composite([](const Vec& p) { return flatspace::time_T(p, 2); });

  int good_chains = 0;
  int total_steps = 0;
  for (int c = 0; c < chains; ++c) {
    std::int64_t u = rng.uniform_int(0, graph.node_count() - 1);
    double cur = tau.eval(graph.position(u));
    bool ok = true;
    for (int step = 0; step < 12; ++step) {
      const auto lo = graph.fwd_row()[static_cast<std::size_t>(u)];
      const auto hi = graph.fwd_row()[static_cast<std::size_t>(u) + 1];
      if (lo == hi) break;
      u = graph.fwd_to()[static_cast<std::size_t>(rng.uniform_int(lo, hi - 1))];
      const double next = tau.eval(graph.position(u));
      if (!(next > cur)) ok = false;
      cur = next;
      ++total_steps;
    }
    if (ok) ++good_chains;
  }
  add_check(r, "tau_increases", "the composite time strictly increases along causal chains",
            chains, good_chains, good_chains == chains && total_steps > 0);
}

void suite_notgh(SuiteReport& r, const nlohmann::json& cfg, Rng&) {
  const int jmax = cfg.value("jmax", 100);
  const double h = cfg.value("h", 0.05);

  const SpacetimeStructure m1 = scenario::notgh(0.0);
  const Vec probe = {-2.0, -1.0, 1.0};
  const auto g = m1.form(probe);
  const Vec x1 = m1.frame_vec(0, probe);
  const Vec x2 = m1.frame_vec(1, probe);

  auto alpha_dot = [](int j) {
    return Vec{2.0, 1.0 - 1.0 / j, -1.0 - 1.0 / j};
  };
  auto beta_dot = [](int j) {
    return Vec{-2.0, -1.0 - 1.0 / j, 2.0 + 2.0 / j};
  };

  double max_err = 0.0;
  for (int j = 2; j <= jmax; ++j) {
    const Vec a = alpha_dot(j);
    const Vec b = beta_dot(j);
    const double jd = static_cast<double>(j);
    max_err = std::max(max_err, std::fabs(bilinear::evaluate(g, a, a) - (-4.0 + 4.0 / jd)));
    max_err = std::max(max_err, std::fabs(bilinear::evaluate(g, a, x1) - (-1.0 + 1.0 / jd)));
    max_err = std::max(max_err, std::fabs(bilinear::evaluate(g, a, x2) - (-2.0)));
    max_err = std::max(max_err,
                       std::fabs(bilinear::evaluate(g, b, b) - (-1.0 + 6.0 / jd + 3.0 / (jd * jd))));
    max_err = std::max(max_err, std::fabs(bilinear::evaluate(g, b, x1) - (1.0 + 1.0 / jd)));
    max_err = std::max(max_err, std::fabs(bilinear::evaluate(g, b, x2) - 2.0));
  }
  add_check(r, "chord_inner_products", "chord inner products match their closed forms",
            "<= 1e-12", max_err, max_err <= 1e-12);

  if (cfg.contains("j")) {
    const int j = cfg["j"].get<int>();
    const Vec a = alpha_dot(j);
    add_check(r, "alpha_quad_j" + std::to_string(j), "g'(alpha_dot, alpha_dot) at requested j",
              -4.0 + 4.0 / j, bilinear::evaluate(g, a, a),
              std::fabs(bilinear::evaluate(g, a, a) - (-4.0 + 4.0 / j)) <= 1e-12);
  }

  const ConeClass a2 = cone::classify(m1, probe, alpha_dot(2), 0.0);
  add_check(r, "alpha2_future_timelike", "the j=2 in-chord is future timelike", "FutureTimelike",
            cone::to_string(a2), a2 == ConeClass::FutureTimelike);
  const ConeClass b10 = cone::classify(m1, probe, beta_dot(10), 0.0);
  add_check(r, "beta10_past_timelike", "the j=10 out-chord is past timelike", "PastTimelike",
            cone::to_string(b10), b10 == ConeClass::PastTimelike);

  // Discrete diamond membership of the x_j sequence.
  GridSpec grid;
  grid.box = {{-2.0, 2.0}, {-1.0, 1.0}, {-2.0, 1.0}};
  grid.spacing = h;
  grid.stencil_radius = cfg.value("r", 1);
  const CausalGraph graph = build_graph(m1, grid);
  const Vec p = {-2.0, -1.0, 1.0};
  const Vec q = {2.0, 1.0, -2.0};
  const auto pid = graph.snap(p);
  const auto qid = graph.snap(q);

  const int per = static_cast<int>(std::llround(1.0 / h));
  std::vector<int> js;
  for (int j = 2; j <= std::min(jmax, per); ++j)
    if (per % j == 0) js.push_back(j);

  bool members_ok = pid && qid && !js.empty();
  std::vector<int> in_diamond;
  if (pid && qid) {
    const auto ids = lattice::diamond(graph, *pid, *qid);
    for (const int j : js) {
      const Vec xj = {0.0, -1.0 / j, -1.0 / j};
      const auto nid = graph.snap(xj);
      const bool inside = nid && std::binary_search(ids.begin(), ids.end(), *nid);
      if (inside)
        in_diamond.push_back(j);
      else
        members_ok = false;
    }
  }
  add_check(r, "xj_in_discrete_diamond",
            "every on-lattice x_j lies in the discrete causal diamond", js, in_diamond,
            members_ok);
  add_check(r, "limit_excluded", "the coordinate limit (0,0,0) fails the domain predicate",
            false, m1.in_domain({0.0, 0.0, 0.0}), !m1.in_domain({0.0, 0.0, 0.0}));
}

void suite_cone_continuity(SuiteReport& r, const nlohmann::json& cfg, Rng& rng) {
  const int base_points = cfg.value("base_points", 40);
  const int angles = cfg.value("angles", 720);

  spacetime::MetricField h;
  h.dim = 2;
  h.index = 0;
  h.constant = true;
  const auto id = bilinear::SymForm::identity(2);
  h.form_at = [id](const Vec&) { return id; };

  spacetime::TimeFrame frame;
  frame.constant = false;
  frame.fields.push_back([](const Vec& p) {
    const double theta = 0.3 * std::sin(p[0] + p[1]);
    return Vec{std::cos(theta), std::sin(theta)};
  });
  const SpacetimeStructure s = spacetime::from_frame(h, frame);

  auto slice = [&](const Vec& p) {
    std::vector<int> arc;
    for (int k = 0; k < angles; ++k) {
      const double phi = 2.0 * M_PI * k / angles;
      const Vec v = {std::cos(phi), std::sin(phi)};
      if (cone::future_causal(cone::classify(s, p, v, 0.0))) arc.push_back(k);
    }
    return arc;
  };
  auto hausdorff = [&](const std::vector<int>& a, const std::vector<int>& b) {
    auto directed = [&](const std::vector<int>& from, const std::vector<int>& to) {
      double worst = 0.0;
      for (const int i : from) {
        double best = 2.0 * M_PI;
        for (const int j : to) {
          const double d = std::fabs(i - j) * 2.0 * M_PI / angles;
          best = std::min(best, std::min(d, 2.0 * M_PI - d));
        }
        worst = std::max(worst, best);
      }
      return worst;
    };
    return std::max(directed(a, b), directed(b, a));
  };

  const std::vector<double> deltas = {0.4, 0.2, 0.1};
  std::vector<double> worst(deltas.size(), 0.0);
  for (int i = 0; i < base_points; ++i) {
    const Vec p = rng.uniform_vec(2, -2.0, 2.0);
    const Vec u = random_unit(rng, 2);
    const auto arc_p = slice(p);
    for (std::size_t d = 0; d < deltas.size(); ++d) {
      Vec pp = p;
      axpy(pp, deltas[d], u);
      worst[d] = std::max(worst[d], hausdorff(arc_p, slice(pp)));
    }
  }

  bool bounded = true;
  for (std::size_t d = 0; d < deltas.size(); ++d)
    if (worst[d] > 0.45 * deltas[d] + 0.02) bounded = false;
  bool shrinking = worst.back() <= worst.front() + 1e-12 && worst.back() <= 0.08;
  add_check(r, "hausdorff_scales", "cone slice Hausdorff distance scales with point separation",
            "<= 0.45*delta + 0.02", worst, bounded);
  add_check(r, "hausdorff_shrinks", "slice distance shrinks with the separation", true, shrinking,
            shrinking);
}

void suite_torus_ctc(SuiteReport& r, const nlohmann::json&, Rng&) {
  const std::vector<std::pair<int, int>> cases = {{2, 1}, {2, 2}, {3, 2}};
  for (const auto& [n, nu] : cases) {
    const SpacetimeStructure s = flat(n, nu);
    GridSpec per = cube_grid(n, 0.0, 4.0, 1.0, 1);
    per.periodic.assign(static_cast<std::size_t>(n), true);
    const auto cyc = lattice::find_closed_timelike(build_graph(s, per));
    add_check(r, "torus_" + std::to_string(n) + "_" + std::to_string(nu),
              "closed timelike cycle exists on the periodic structure", true, cyc.has_value(),
              cyc.has_value());

    const GridSpec open_grid = cube_grid(n, 0.0, 4.0, 1.0, 1);
    const auto none = lattice::find_closed_timelike(build_graph(s, open_grid));
    add_check(r, "box_" + std::to_string(n) + "_" + std::to_string(nu),
              "no timelike cycle on the non-periodic box", false, none.has_value(),
              !none.has_value());
  }
}

using SuiteFn = std::function<void(SuiteReport&, const nlohmann::json&, Rng&)>;

const std::map<std::string, SuiteFn>& registry() {
  static const std::map<std::string, SuiteFn> reg = {
      {"product_max_formula", suite_product_max_formula},
      {"causal_boundary", suite_causal_boundary},
      {"incomplete_fiber", suite_incomplete_fiber},
      {"heine_borel_product", suite_heine_borel_product},
      {"flat_gh", suite_flat_gh},
      {"degenerate_tau", suite_degenerate_tau},
      {"steepness", suite_steepness},
      {"interior_vector", suite_interior_vector},
      {"strict_witness", suite_strict_witness},
      {"conformal", suite_conformal},
      {"perturbed_temporal", suite_perturbed_temporal},
      {"composite_time", suite_composite_time},
      {"notgh", suite_notgh},
      {"cone_continuity", suite_cone_continuity},
      {"torus_ctc", suite_torus_ctc},
  };
  return reg;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : registry()) names.push_back(name);
  return names;
}

SuiteReport run_suite(const std::string& name, const nlohmann::json& config) {
  const auto it = registry().find(name);
  if (it == registry().end())
    throw std::invalid_argument("run_suite: unknown suite '" + name + "'");

  SuiteReport report;
  report.suite = name;
  report.seed = resolve_seed(config);
  Rng rng(report.seed ^ fnv1a(name));

  const auto start = std::chrono::steady_clock::now();
  it->second(report, config, rng);
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace conecalc::verify
