#include "conecalc/cone.hpp"

#include <stdexcept>

namespace conecalc::cone {

using bilinear::evaluate;
using bilinear::SymForm;

std::string to_string(ConeClass c) {
  switch (c) {
    case ConeClass::FutureTimelike: return "FutureTimelike";
    case ConeClass::FutureBoundary: return "FutureBoundary";
    case ConeClass::PastTimelike: return "PastTimelike";
    case ConeClass::PastBoundary: return "PastBoundary";
    case ConeClass::UndirectedCausal: return "UndirectedCausal";
    case ConeClass::Spacelike: return "Spacelike";
    case ConeClass::Zero: return "Zero";
  }
  return "unknown";
}

double default_tol(const SpacetimeStructure& s) { return s.constant() ? 1e-12 : 1e-9; }

ConeDiagnostics classify_detail(const SpacetimeStructure& s, const Vec& p, const Vec& v,
                                double tol) {
  require(tol >= 0.0, "classify: tol must be >= 0");
  require(v.size() == static_cast<std::size_t>(s.dim()), "classify: vector dimension mismatch");
  if (!s.in_domain(p)) throw std::domain_error("classify: point outside domain " + format_point(p));

  ConeDiagnostics d;
  const SymForm g = s.form(p);
  d.quad = evaluate(g, v, v);
  const int nu = s.index();
  d.frame_products.resize(static_cast<std::size_t>(nu));
  for (int i = 0; i < nu; ++i)
    d.frame_products[static_cast<std::size_t>(i)] = evaluate(g, v, s.frame_vec(i, p));

  if (norm(v) <= tol) {
    d.cls = ConeClass::Zero;
    return d;
  }
  if (d.quad > tol) {
    d.cls = ConeClass::Spacelike;
    return d;
  }

  bool all_nonpos = true, all_strict_neg = true, all_nonneg = true, all_strict_pos = true;
  for (double q : d.frame_products) {
    if (!(q <= tol)) all_nonpos = false;
    if (!(q < -tol)) all_strict_neg = false;
    if (!(q >= -tol)) all_nonneg = false;
    if (!(q > tol)) all_strict_pos = false;
  }

  if (d.quad < -tol && all_strict_neg)
    d.cls = ConeClass::FutureTimelike;
  else if (d.quad < -tol && all_strict_pos)
    d.cls = ConeClass::PastTimelike;
  else if (all_nonpos)
    d.cls = ConeClass::FutureBoundary;
  else if (all_nonneg)
    d.cls = ConeClass::PastBoundary;
  else
    d.cls = ConeClass::UndirectedCausal;
  return d;
}

ConeClass classify(const SpacetimeStructure& s, const Vec& p, const Vec& v, double tol) {
  return classify_detail(s, p, v, tol).cls;
}

Vec interior_vector(const SpacetimeStructure& s, const Vec& p) {
  if (!s.in_domain(p))
    throw std::domain_error("interior_vector: point outside domain " + format_point(p));
  const int nu = s.index();
  const SymForm g = s.form(p);
  std::vector<Vec> fr;
  for (int i = 0; i < nu; ++i) fr.push_back(s.frame_vec(i, p));

  // Gram matrix of the frame under <u,w> = -g_p(u,w); positive definite iff
  // the frame is independent and timelike.
  SymForm gram(nu);
  for (int i = 0; i < nu; ++i)
    for (int j = i; j < nu; ++j)
      gram.set(i, j, -evaluate(g, fr[static_cast<std::size_t>(i)], fr[static_cast<std::size_t>(j)]));

  std::vector<Vec> coeff_basis;
  for (int i = 0; i < nu; ++i) {
    Vec e(static_cast<std::size_t>(nu), 0.0);
    e[static_cast<std::size_t>(i)] = 1.0;
    coeff_basis.push_back(std::move(e));
  }

  Vec coeffs;
  try {
    coeffs = bilinear::positive_functional_vector(coeff_basis, gram);
  } catch (const std::runtime_error&) {
    throw std::runtime_error("interior_vector: frame degenerate at point " + format_point(p));
  }

  Vec v(static_cast<std::size_t>(s.dim()), 0.0);
  for (int i = 0; i < nu; ++i) axpy(v, coeffs[static_cast<std::size_t>(i)], fr[static_cast<std::size_t>(i)]);
  return v;
}

int strict_witness(const SpacetimeStructure& s, const Vec& p, const Vec& v, double tol) {
  const ConeDiagnostics d = classify_detail(s, p, v, tol);
  require(future_causal(d.cls), "strict_witness: vector is not future causal");
  for (std::size_t j = 0; j < d.frame_products.size(); ++j)
    if (d.frame_products[j] < -tol) return static_cast<int>(j) + 1;
  throw std::runtime_error("strict_witness: no strictly negative frame product within tolerance");
}

}  // namespace conecalc::cone
