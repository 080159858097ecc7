#include "conecalc/flatspace.hpp"

#include <algorithm>
#include <cmath>

namespace conecalc::flatspace {

namespace {

void check(const FlatOrderQuery& q) {
  require(q.nu > 0 && q.nu <= q.n, "flat order: need 0 < nu <= n");
  require(q.p.size() == static_cast<std::size_t>(q.n) &&
              q.q.size() == static_cast<std::size_t>(q.n),
          "flat order: point dimension mismatch");
}

}  // namespace

bool leq(const FlatOrderQuery& query, OrderMode mode) {
  check(query);
  const auto& p = query.p;
  const auto& q = query.q;
  if (mode == OrderMode::Causal && p == q) return true;

  double sum_neg = 0.0, sum_pos = 0.0;
  for (int i = 0; i < query.n; ++i) {
    const double d = q[static_cast<std::size_t>(i)] - p[static_cast<std::size_t>(i)];
    if (i < query.nu) {
      if (mode == OrderMode::Causal ? !(d >= 0.0) : !(d > 0.0)) return false;
      sum_neg += d * d;
    } else {
      sum_pos += d * d;
    }
  }
  return mode == OrderMode::Causal ? sum_neg >= sum_pos : sum_neg > sum_pos;
}

bool path_leq(const FlatOrderQuery& query) {
  check(query);
  double t = 0.0, sp2 = 0.0;
  for (int i = 0; i < query.n; ++i) {
    const double d = query.q[static_cast<std::size_t>(i)] - query.p[static_cast<std::size_t>(i)];
    if (i < query.nu) {
      if (!(d >= 0.0)) return false;
      t += d;
    } else {
      sp2 += d * d;
    }
  }
  return std::sqrt(sp2) <= t || query.p == query.q;
}

double time_T(const Vec& p, int nu) {
  require(nu >= 0 && static_cast<std::size_t>(nu) <= p.size(), "time_T: nu out of range");
  double s = 0.0;
  for (int i = 0; i < nu; ++i) s += p[static_cast<std::size_t>(i)];
  return s;
}

std::optional<Box> diamond_box(const Vec& p, const Vec& q, int nu) {
  require(p.size() == q.size(), "diamond_box: dimension mismatch");
  require(nu > 0 && static_cast<std::size_t>(nu) <= p.size(), "diamond_box: nu out of range");
  const int n = static_cast<int>(p.size());

  double max_sq = 0.0;
  for (int i = 0; i < nu; ++i) {
    const double d = q[static_cast<std::size_t>(i)] - p[static_cast<std::size_t>(i)];
    if (d < 0.0) return std::nullopt;
    max_sq = std::max(max_sq, d * d);
  }
  const double radius = std::sqrt(2.0 * nu * max_sq);

  Box box;
  box.lo.resize(p.size());
  box.hi.resize(p.size());
  for (int i = 0; i < n; ++i) {
    const std::size_t k = static_cast<std::size_t>(i);
    if (i < nu) {
      box.lo[k] = p[k];
      box.hi[k] = q[k];
    } else {
      box.lo[k] = p[k] - radius;
      box.hi[k] = p[k] + radius;
    }
  }
  return box;
}

}  // namespace conecalc::flatspace
