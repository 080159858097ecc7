#include "conecalc/spacetime.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "conecalc/rng.hpp"

namespace conecalc::spacetime {

using bilinear::evaluate;
using bilinear::SymForm;

std::string to_string(MetricKind k) {
  switch (k) {
    case MetricKind::Flat: return "flat";
    case MetricKind::FrameDerived: return "frame_derived";
    case MetricKind::ProductNeg: return "product_neg";
    case MetricKind::ProductPos: return "product_pos";
    case MetricKind::Warped: return "warped";
    case MetricKind::ConformalScaled: return "conformal_scaled";
  }
  return "unknown";
}

TimeFrame TimeFrame::constant_fields(const std::vector<Vec>& vecs) {
  TimeFrame f;
  f.constant = true;
  for (const Vec& v : vecs)
    f.fields.push_back([v](const Vec&) { return v; });
  return f;
}

namespace {

Vec tail(const Vec& p) { return Vec(p.begin() + 1, p.end()); }

Vec head(const Vec& p, int n) { return Vec(p.begin(), p.begin() + n); }

Vec prepend(double x0, const Vec& v) {
  Vec r;
  r.reserve(v.size() + 1);
  r.push_back(x0);
  r.insert(r.end(), v.begin(), v.end());
  return r;
}

Vec append_zeros(const Vec& v, int m) {
  Vec r = v;
  r.insert(r.end(), static_cast<std::size_t>(m), 0.0);
  return r;
}

// Cholesky solve of M X = B for small SPD M (nu x nu), B is nu x n row-major.
// Returns false if M is not positive definite within roundoff.
bool cholesky_solve(std::vector<double>& m, int nu, std::vector<double>& b, int ncols) {
  auto at = [nu](std::vector<double>& a, int i, int j) -> double& {
    return a[static_cast<std::size_t>(i) * nu + j];
  };
  for (int k = 0; k < nu; ++k) {
    double d = at(m, k, k);
    for (int s = 0; s < k; ++s) d -= at(m, k, s) * at(m, k, s);
    if (!(d > 0.0)) return false;
    const double l = std::sqrt(d);
    at(m, k, k) = l;
    for (int i = k + 1; i < nu; ++i) {
      double v = at(m, i, k);
      for (int s = 0; s < k; ++s) v -= at(m, i, s) * at(m, k, s);
      at(m, i, k) = v / l;
    }
  }
  auto bat = [ncols](std::vector<double>& a, int i, int j) -> double& {
    return a[static_cast<std::size_t>(i) * ncols + j];
  };
  for (int c = 0; c < ncols; ++c) {
    for (int i = 0; i < nu; ++i) {
      double v = bat(b, i, c);
      for (int s = 0; s < i; ++s) v -= at(m, i, s) * bat(b, s, c);
      bat(b, i, c) = v / at(m, i, i);
    }
    for (int i = nu - 1; i >= 0; --i) {
      double v = bat(b, i, c);
      for (int s = i + 1; s < nu; ++s) v -= at(m, s, i) * bat(b, s, c);
      bat(b, i, c) = v / at(m, i, i);
    }
  }
  return true;
}

SymForm frame_metric_at(const SymForm& H, const std::vector<Vec>& frame, const Vec& p) {
  const int n = H.size();
  const int nu = static_cast<int>(frame.size());

  // M = B^T H B and HB, with B the n x nu matrix of frame columns.
  std::vector<double> hb(static_cast<std::size_t>(n) * nu, 0.0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < nu; ++k) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += H.at(i, j) * frame[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
      hb[static_cast<std::size_t>(i) * nu + k] = s;
    }
  std::vector<double> m(static_cast<std::size_t>(nu) * nu, 0.0);
  for (int k = 0; k < nu; ++k)
    for (int l = 0; l < nu; ++l) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        s += frame[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] *
             hb[static_cast<std::size_t>(i) * nu + l];
      m[static_cast<std::size_t>(k) * nu + l] = s;
    }

  // X = M^{-1} (HB)^T, nu x n
  std::vector<double> x(static_cast<std::size_t>(nu) * n, 0.0);
  for (int k = 0; k < nu; ++k)
    for (int i = 0; i < n; ++i)
      x[static_cast<std::size_t>(k) * n + i] = hb[static_cast<std::size_t>(i) * nu + k];
  if (!cholesky_solve(m, nu, x, n))
    throw std::runtime_error("metric_from_frame: frame linearly dependent at point " +
                             format_point(p));

  // G = H - 2 (HB) X, symmetrized by construction (upper triangle mirrored).
  SymForm G(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      double s = 0.0;
      for (int k = 0; k < nu; ++k)
        s += hb[static_cast<std::size_t>(i) * nu + k] * x[static_cast<std::size_t>(k) * n + j];
      G.set(i, j, H.at(i, j) - 2.0 * s);
    }
  return G;
}

}  // namespace

SpacetimeStructure flat(int n, int nu) {
  require(nu > 0 && nu <= n && n <= kMaxDim, "flat: need 0 < nu <= n <= 16");
  Vec d(static_cast<std::size_t>(n), 1.0);
  for (int i = 0; i < nu; ++i) d[static_cast<std::size_t>(i)] = -1.0;
  const SymForm g = SymForm::diag(d);

  std::vector<Vec> fields;
  for (int i = 0; i < nu; ++i) {
    Vec e(static_cast<std::size_t>(n), 0.0);
    e[static_cast<std::size_t>(i)] = 1.0;
    fields.push_back(std::move(e));
  }

  SpacetimeStructure s;
  s.metric = {n, nu, MetricKind::Flat, true, [g](const Vec&) { return g; }};
  s.frame = TimeFrame::constant_fields(fields);
  s.domain = nullptr;
  return s;
}

SpacetimeStructure with_domain(SpacetimeStructure s, std::function<bool(const Vec&)> pred) {
  s.domain = std::move(pred);
  return s;
}

MetricField metric_from_frame(const MetricField& h, const TimeFrame& frame) {
  require(h.dim >= 1 && frame.size() >= 1 && frame.size() <= h.dim,
          "metric_from_frame: bad dimensions");
  const int nu = frame.size();
  MetricField g;
  g.dim = h.dim;
  g.index = nu;
  g.kind = MetricKind::FrameDerived;
  g.constant = h.constant && frame.constant;
  if (g.constant) {
    const Vec origin(static_cast<std::size_t>(h.dim), 0.0);
    std::vector<Vec> fr;
    for (int i = 0; i < nu; ++i) fr.push_back(frame.at(i, origin));
    const SymForm G = frame_metric_at(h.form_at(origin), fr, origin);
    g.form_at = [G](const Vec&) { return G; };
  } else {
    g.form_at = [h, frame, nu](const Vec& p) {
      std::vector<Vec> fr;
      for (int i = 0; i < nu; ++i) fr.push_back(frame.at(i, p));
      return frame_metric_at(h.form_at(p), fr, p);
    };
  }
  return g;
}

SpacetimeStructure from_frame(const MetricField& h, const TimeFrame& frame) {
  SpacetimeStructure s;
  s.metric = metric_from_frame(h, frame);
  s.frame = frame;
  s.domain = nullptr;
  return s;
}

SpacetimeStructure extend_negative(const SpacetimeStructure& s, double eps) {
  require(eps >= 0.0, "extend_negative: eps must be >= 0");
  const int n = s.dim();
  const int nu = s.index();
  SpacetimeStructure r;
  r.metric.dim = n + 1;
  r.metric.index = nu + 1;
  r.metric.kind = MetricKind::ProductNeg;
  r.metric.constant = s.metric.constant;
  const auto base_form = s.metric.form_at;
  r.metric.form_at = [base_form](const Vec& p) {
    return SymForm::block_diag(SymForm::diag({-1.0}), base_form(tail(p)));
  };

  r.frame.constant = s.frame.constant;
  for (int i = 0; i < nu; ++i) {
    const auto f = s.frame.fields[static_cast<std::size_t>(i)];
    r.frame.fields.push_back([f](const Vec& p) { return prepend(0.0, f(tail(p))); });
  }
  const TimeFrame base_frame = s.frame;
  r.frame.fields.push_back([base_frame, eps, n](const Vec& p) {
    Vec sum(static_cast<std::size_t>(n), 0.0);
    const Vec q = tail(p);
    for (int i = 0; i < base_frame.size(); ++i) axpy(sum, 1.0, base_frame.at(i, q));
    Vec v = prepend(1.0, scaled(sum, -eps));
    return v;
  });

  const auto base_domain = s.domain;
  r.domain = base_domain ? std::function<bool(const Vec&)>(
                               [base_domain](const Vec& p) { return base_domain(tail(p)); })
                         : nullptr;
  return r;
}

SpacetimeStructure extend_positive(const SpacetimeStructure& s) {
  const int nu = s.index();
  SpacetimeStructure r;
  r.metric.dim = s.dim() + 1;
  r.metric.index = nu;
  r.metric.kind = MetricKind::ProductPos;
  r.metric.constant = s.metric.constant;
  const auto base_form = s.metric.form_at;
  r.metric.form_at = [base_form](const Vec& p) {
    return SymForm::block_diag(SymForm::diag({1.0}), base_form(tail(p)));
  };

  r.frame.constant = s.frame.constant;
  for (int i = 0; i < nu; ++i) {
    const auto f = s.frame.fields[static_cast<std::size_t>(i)];
    r.frame.fields.push_back([f](const Vec& p) { return prepend(0.0, f(tail(p))); });
  }

  const auto base_domain = s.domain;
  r.domain = base_domain ? std::function<bool(const Vec&)>(
                               [base_domain](const Vec& p) { return base_domain(tail(p)); })
                         : nullptr;
  return r;
}

namespace {

SpacetimeStructure warped_impl(const SpacetimeStructure& s, const MetricField& sigma,
                               std::function<double(const Vec&)> warp, bool constant_warp) {
  require(sigma.index == 0, "warped_product: fiber metric must be positive definite");
  const int n = s.dim();
  const int m = sigma.dim;
  SpacetimeStructure r;
  r.metric.dim = n + m;
  r.metric.index = s.index();
  r.metric.kind = MetricKind::Warped;
  r.metric.constant = constant_warp && s.metric.constant && sigma.constant;
  const auto base_form = s.metric.form_at;
  const auto fiber_form = sigma.form_at;
  r.metric.form_at = [base_form, fiber_form, warp, n](const Vec& p) {
    const Vec pm = head(p, n);
    const Vec ps = Vec(p.begin() + n, p.end());
    const double f = warp(pm);
    if (!(f > 0.0))
      throw std::runtime_error("warped_product: warp not positive at point " + format_point(pm));
    return SymForm::block_diag(base_form(pm), fiber_form(ps).scaled(f * f));
  };

  r.frame.constant = s.frame.constant;
  for (int i = 0; i < s.index(); ++i) {
    const auto f = s.frame.fields[static_cast<std::size_t>(i)];
    r.frame.fields.push_back([f, n, m](const Vec& p) { return append_zeros(f(head(p, n)), m); });
  }

  const auto base_domain = s.domain;
  r.domain = base_domain ? std::function<bool(const Vec&)>([base_domain, n](const Vec& p) {
    return base_domain(head(p, n));
  })
                         : nullptr;
  return r;
}

}  // namespace

SpacetimeStructure warped_product(const SpacetimeStructure& s, const MetricField& sigma,
                                  std::function<double(const Vec&)> warp) {
  return warped_impl(s, sigma, std::move(warp), false);
}

SpacetimeStructure warped_product(const SpacetimeStructure& s, const MetricField& sigma,
                                  double warp) {
  return warped_impl(s, sigma, [warp](const Vec&) { return warp; }, true);
}

SpacetimeStructure conformal_scale(const SpacetimeStructure& s,
                                   std::function<double(const Vec&)> omega) {
  SpacetimeStructure r = s;
  r.metric.kind = MetricKind::ConformalScaled;
  r.metric.constant = false;
  const auto base_form = s.metric.form_at;
  r.metric.form_at = [base_form, omega](const Vec& p) {
    const double w = omega(p);
    if (!(w > 0.0))
      throw std::runtime_error("conformal_scale: omega not positive at point " + format_point(p));
    return base_form(p).scaled(w * w);
  };
  return r;
}

std::vector<Vec> sample_probes(const SpacetimeStructure& s, const Vec& lo, const Vec& hi,
                               int count, std::uint64_t seed) {
  require(lo.size() == hi.size() && lo.size() == static_cast<std::size_t>(s.dim()),
          "sample_probes: box rank mismatch");
  require(count >= 1, "sample_probes: count must be >= 1");
  Rng rng(seed);
  std::vector<Vec> probes;
  long attempts = 0;
  while (static_cast<int>(probes.size()) < count) {
    if (++attempts > 1000L * count)
      throw std::runtime_error("sample_probes: box has negligible overlap with the domain");
    Vec p(lo.size());
    for (std::size_t a = 0; a < lo.size(); ++a) p[a] = rng.uniform(lo[a], hi[a]);
    if (s.in_domain(p)) probes.push_back(std::move(p));
  }
  return probes;
}

ValidationReport validate(const SpacetimeStructure& s, const std::vector<Vec>& probes,
                          double tol) {
  require(!probes.empty(), "validate: no probe points");
  require(tol > 0.0, "validate: tol must be positive");
  const int n = s.dim();
  const int nu = s.index();

  ValidationReport report;
  report.pass = true;
  for (const Vec& p : probes) {
    ProbeResult r;
    r.point = p;
    r.in_domain = s.in_domain(p);
    if (r.in_domain) {
      const SymForm g = s.form(p);
      r.sig = bilinear::signature(g, tol);
      r.signature_ok = (r.sig == bilinear::Signature{n - nu, nu, 0});

      std::vector<Vec> fr;
      for (int i = 0; i < nu; ++i) fr.push_back(s.frame_vec(i, p));
      r.frame_negative_ok = true;
      for (const Vec& x : fr) {
        const double q = evaluate(g, x, x);
        r.frame_norms2.push_back(q);
        if (!(q < -tol)) r.frame_negative_ok = false;
      }

      // Independence via the Euclidean Gram spectrum of the frame vectors.
      SymForm gram(nu);
      for (int i = 0; i < nu; ++i)
        for (int j = i; j < nu; ++j)
          gram.set(i, j, dot(fr[static_cast<std::size_t>(i)], fr[static_cast<std::size_t>(j)]));
      const Vec ev = bilinear::sym_eigenvalues(gram);
      r.gram_min = ev.front();
      r.gram_max = ev.back();
      r.independent_ok =
          r.gram_min > bilinear::kDependenceTol * bilinear::kDependenceTol * r.gram_max &&
          r.gram_max > 0.0;
    }
    if (!r.ok()) report.pass = false;
    report.probes.push_back(std::move(r));
  }
  return report;
}

}  // namespace conecalc::spacetime
