#ifndef CONECALC_FLATSPACE_HPP
#define CONECALC_FLATSPACE_HPP

#include <optional>

#include "conecalc/types.hpp"

namespace conecalc::flatspace {

struct FlatOrderQuery {
  int n = 0;
  int nu = 0;
  Vec p;
  Vec q;
};

enum class OrderMode { Causal, Chronological };

// Straight-chord order on the flat structure of index nu:
//   causal:        q^i >= p^i for i <= nu  and  sum_{i<=nu} d_i^2 >= sum_{j>nu} d_j^2,
//                  or p = q;
//   chronological: all inequalities strict.
// nu = n uses the empty-sum convention (right side 0).
bool leq(const FlatOrderQuery& query, OrderMode mode);

// Order generated by concatenating causal chords (the relation realized by
// piecewise causal paths): q^i >= p^i for i <= nu and
// ||d_spatial||_2 <= sum_{i<=nu} d_i. Coincides with leq for nu = 1 and
// nu = n; strictly larger in between.
bool path_leq(const FlatOrderQuery& query);

// Canonical time value: sum of the first nu coordinates.
double time_T(const Vec& p, int nu);

struct Box {
  Vec lo;
  Vec hi;

  bool contains(const Vec& x, double slack = 0.0) const {
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (x[i] < lo[i] - slack || x[i] > hi[i] + slack) return false;
    return true;
  }
};

// Loose analytic bound on the causal diamond between p and q: the first nu
// coordinates range over [p^i, q^i]; the remaining ones over
// p^j +- sqrt(R) with R = 2 nu max_{i<=nu} (q^i-p^i)^2. Returns nothing when
// q^i < p^i for some i <= nu (the only emptiness that the linear conditions
// decide); a box may be returned even when the true diamond is empty.
std::optional<Box> diamond_box(const Vec& p, const Vec& q, int nu);

}  // namespace conecalc::flatspace

#endif
