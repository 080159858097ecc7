#ifndef CONECALC_CONE_HPP
#define CONECALC_CONE_HPP

#include <string>

#include "conecalc/spacetime.hpp"
#include "conecalc/types.hpp"

namespace conecalc::cone {

using spacetime::SpacetimeStructure;

enum class ConeClass {
  FutureTimelike,
  FutureBoundary,
  PastTimelike,
  PastBoundary,
  UndirectedCausal,
  Spacelike,
  Zero,
};

std::string to_string(ConeClass c);

// Raw inequality values behind a classification, for callers that need the
// lightlike subcases the enum intentionally merges.
struct ConeDiagnostics {
  double quad = 0.0;           // g_p(v, v)
  Vec frame_products;          // g_p(v, X_i(p)), i = 1..nu
  ConeClass cls = ConeClass::Zero;
};

// Default sign-test tolerance: closed-form (constant) metrics vs composed
// pointwise evaluations.
double default_tol(const SpacetimeStructure& s);

ConeDiagnostics classify_detail(const SpacetimeStructure& s, const Vec& p, const Vec& v,
                                double tol);

ConeClass classify(const SpacetimeStructure& s, const Vec& p, const Vec& v, double tol);

inline bool future_causal(ConeClass c) {
  return c == ConeClass::FutureTimelike || c == ConeClass::FutureBoundary;
}
inline bool past_causal(ConeClass c) {
  return c == ConeClass::PastTimelike || c == ConeClass::PastBoundary;
}

// A vector in the frame span with classify(s,p,v,0) = FutureTimelike,
// constructed by positive_functional_vector over the inner product -g_p
// restricted to the span.
Vec interior_vector(const SpacetimeStructure& s, const Vec& p);

// Smallest index j (1-based) with g_p(v, X_j(p)) < -tol, for future-causal v.
// Throws if none exists within tolerance.
int strict_witness(const SpacetimeStructure& s, const Vec& p, const Vec& v, double tol = 0.0);

}  // namespace conecalc::cone

#endif
