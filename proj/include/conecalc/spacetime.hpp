#ifndef CONECALC_SPACETIME_HPP
#define CONECALC_SPACETIME_HPP

#include <functional>
#include <string>
#include <vector>

#include "conecalc/bilinear.hpp"
#include "conecalc/types.hpp"

namespace conecalc::spacetime {

using bilinear::SymForm;

enum class MetricKind {
  Flat,
  FrameDerived,
  ProductNeg,
  ProductPos,
  Warped,
  ConformalScaled,
};

std::string to_string(MetricKind k);

// Metric tensor as a pointwise evaluator. Derived metrics (products,
// conformal scalings) compose lazily; `constant` marks fields whose value does
// not depend on the point, which downstream discretization exploits.
struct MetricField {
  int dim = 0;
  int index = 0;
  MetricKind kind = MetricKind::Flat;
  bool constant = false;
  std::function<SymForm(const Vec&)> form_at;
};

struct TimeFrame {
  bool constant = false;
  std::vector<std::function<Vec(const Vec&)>> fields;

  static TimeFrame constant_fields(const std::vector<Vec>& vecs);

  int size() const { return static_cast<int>(fields.size()); }
  Vec at(int i, const Vec& p) const { return fields[static_cast<std::size_t>(i)](p); }
};

struct SpacetimeStructure {
  MetricField metric;
  TimeFrame frame;
  std::function<bool(const Vec&)> domain;  // true = point belongs to the manifold

  int dim() const { return metric.dim; }
  int index() const { return metric.index; }
  bool constant() const { return metric.constant && frame.constant; }
  SymForm form(const Vec& p) const { return metric.form_at(p); }
  Vec frame_vec(int i, const Vec& p) const { return frame.at(i, p); }
  bool in_domain(const Vec& p) const { return !domain || domain(p); }
};

// Flat structure of dimension n and index nu: metric diag(-1 x nu, +1 x (n-nu))
// with the first nu coordinate fields as time frame; full domain.
SpacetimeStructure flat(int n, int nu);

// Copy of s with the domain predicate replaced.
SpacetimeStructure with_domain(SpacetimeStructure s, std::function<bool(const Vec&)> pred);

// g(v,w) = h(v,w) - 2 h(Pv,Pw), with P the h-orthogonal projection onto the
// frame span. The result has index nu = frame.size() and g(X_i,X_i) =
// -h(X_i,X_i) < 0. Frame dependence at an evaluation point is reported with
// the point.
MetricField metric_from_frame(const MetricField& h, const TimeFrame& frame);

// Convenience: structure over metric_from_frame(h, frame) with full domain.
SpacetimeStructure from_frame(const MetricField& h, const TimeFrame& frame);

// R x M with metric -dt^2 (+) g, the new coordinate prepended and counted in
// the negative block. Frame: lifted X_1..X_nu then X_{nu+1} = d_t - eps*(X_1+..+X_nu).
SpacetimeStructure extend_negative(const SpacetimeStructure& s, double eps);

// R x M with metric dt^2 (+) g; frame lifted unchanged; index preserved.
SpacetimeStructure extend_positive(const SpacetimeStructure& s);

// M x Sigma with metric g (+) f^2 sigma; frame lifted. Throws if the warp
// value is not strictly positive at an evaluation point.
SpacetimeStructure warped_product(const SpacetimeStructure& s, const MetricField& sigma,
                                  std::function<double(const Vec&)> warp);
// Constant-warp overload (keeps the constant-metric flag when possible).
SpacetimeStructure warped_product(const SpacetimeStructure& s, const MetricField& sigma,
                                  double warp);

// Metric scaled by omega(p)^2 > 0; all cone/sign structure is unchanged.
SpacetimeStructure conformal_scale(const SpacetimeStructure& s,
                                   std::function<double(const Vec&)> omega);

struct ProbeResult {
  Vec point;
  bool in_domain = false;
  bilinear::Signature sig;
  bool signature_ok = false;
  std::vector<double> frame_norms2;  // g(X_i, X_i) per frame field
  bool frame_negative_ok = false;
  double gram_min = 0.0;
  double gram_max = 0.0;
  bool independent_ok = false;

  bool ok() const {
    return in_domain && signature_ok && frame_negative_ok && independent_ok;
  }
};

struct ValidationReport {
  bool pass = false;
  std::vector<ProbeResult> probes;
};

// Samples the defining inequalities: signature (n-nu, nu, 0), frame negativity
// g(X_i,X_i) < 0, frame linear independence. Failures are report content.
ValidationReport validate(const SpacetimeStructure& s, const std::vector<Vec>& probes,
                          double tol);

// Uniform probe points in a box, restricted to the domain of s (default count
// used by callers that do not care about the distribution).
std::vector<Vec> sample_probes(const SpacetimeStructure& s, const Vec& lo, const Vec& hi,
                               int count = 100, std::uint64_t seed = 1);

}  // namespace conecalc::spacetime

#endif
