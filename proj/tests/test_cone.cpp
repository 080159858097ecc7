#include <cmath>

#include "conecalc/cone.hpp"
#include "conecalc/rng.hpp"
#include "conecalc/scenario.hpp"
#include "doctest.h"

using namespace conecalc;
using cone::ConeClass;
using spacetime::flat;
using spacetime::SpacetimeStructure;

namespace {

// Constructive future-causal sample (chord cone) in flat(n,nu).
Vec causal_sample(int n, int nu, Rng& rng) {
  Vec v(n, 0.0);
  double neg2 = 0.0;
  for (int i = 0; i < nu; ++i) {
    v[i] = rng.uniform(0.0, 1.0);
    neg2 += v[i] * v[i];
  }
  if (nu < n) {
    Vec u;
    double r = 0.0;
    do {
      u = rng.uniform_vec(n - nu, -1.0, 1.0);
      r = norm(u);
    } while (r < 1e-3 || r > 1.0);
    const double rho = rng.uniform() * std::sqrt(neg2) / r;
    for (int j = nu; j < n; ++j) v[j] = rho * u[j - nu];
  }
  return v;
}

}  // namespace

TEST_SUITE("cone") {

TEST_CASE("classification pinned examples") {
  const auto s21 = flat(2, 1);
  const Vec o2 = {0.0, 0.0};
  CHECK(cone::classify(s21, o2, {1.0, 0.0}, 0.0) == ConeClass::FutureTimelike);
  CHECK(cone::classify(s21, o2, {1.0, 1.0}, 0.0) == ConeClass::FutureBoundary);
  CHECK(cone::classify(s21, o2, {0.0, 1.0}, 0.0) == ConeClass::Spacelike);
  CHECK(cone::classify(s21, o2, {-1.0, 0.0}, 0.0) == ConeClass::PastTimelike);
  CHECK(cone::classify(s21, o2, {0.0, 0.0}, 0.0) == ConeClass::Zero);

  // Frame fields are causal but not timelike once nu >= 2.
  const auto s32 = flat(3, 2);
  const Vec o3 = {0.0, 0.0, 0.0};
  CHECK(cone::classify(s32, o3, {1.0, 0.0, 0.0}, 0.0) == ConeClass::FutureBoundary);

  // Quadratically timelike but with mixed frame signs: undirected.
  const auto s22 = flat(2, 2);
  CHECK(cone::classify(s22, o2, {1.0, -1.0}, 0.0) == ConeClass::UndirectedCausal);
}

TEST_CASE("tolerance widens the boundary symmetrically") {
  const auto s = flat(2, 1);
  const Vec o = {0.0, 0.0};
  const Vec near_null = {1.0, 1.0 + 1e-13};  // quad = +2e-13
  CHECK(cone::classify(s, o, near_null, 0.0) == ConeClass::Spacelike);
  CHECK(cone::classify(s, o, near_null, 1e-12) == ConeClass::FutureBoundary);

  const Vec near_timelike = {1.0, 1.0 - 1e-13};  // quad = -2e-13, within tol of null
  CHECK(cone::classify(s, o, near_timelike, 0.0) == ConeClass::FutureTimelike);
  CHECK(cone::classify(s, o, near_timelike, 1e-12) == ConeClass::FutureBoundary);

  CHECK(cone::classify(s, o, {1e-13, 0.0}, 1e-12) == ConeClass::Zero);
  CHECK_THROWS_AS(cone::classify(s, o, {1.0, 0.0}, -1.0), std::invalid_argument);
}

TEST_CASE("classify diagnostics expose the raw inequalities") {
  const auto s32 = flat(3, 2);
  const auto d = cone::classify_detail(s32, {0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, 0.0);
  CHECK(d.quad == -1.0);
  CHECK(d.frame_products == Vec{-1.0, 0.0});
}

TEST_CASE("classify requires the point to be in the domain") {
  const auto s = scenario::notgh_base();
  CHECK_THROWS_AS(cone::classify(s, {1.0, 0.0}, {1.0, 0.0}, 0.0), std::domain_error);
}

TEST_CASE("interior_vector pinned examples") {
  CHECK(cone::interior_vector(flat(3, 2), {0.0, 0.0, 0.0}) == Vec{1.0, 1.0, 0.0});
  CHECK(cone::interior_vector(flat(2, 1), {0.5, -0.5}) == Vec{1.0, 0.0});

  spacetime::MetricField h;
  h.dim = 2;
  h.index = 0;
  h.constant = true;
  const auto id = bilinear::SymForm::identity(2);
  h.form_at = [id](const Vec&) { return id; };
  const auto s = spacetime::from_frame(h, spacetime::TimeFrame::constant_fields({{1.0, 1.0}}));
  const Vec v = cone::interior_vector(s, {0.0, 0.0});
  CHECK(v == Vec{1.0, 1.0});
  CHECK(bilinear::evaluate(s.form({0.0, 0.0}), v, v) == doctest::Approx(-2.0));
}

TEST_CASE("interior_vector rejects a degenerate frame") {
  auto dup = flat(3, 2);
  dup.frame = spacetime::TimeFrame::constant_fields({{1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}});
  CHECK_THROWS_AS(cone::interior_vector(dup, {0.0, 0.0, 0.0}), std::runtime_error);
}

TEST_CASE("strict_witness pinned examples") {
  CHECK(cone::strict_witness(flat(2, 1), {0.0, 0.0}, {1.0, 1.0}) == 1);
  CHECK(cone::strict_witness(flat(3, 2), {0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}) == 1);
  CHECK(cone::strict_witness(flat(3, 2), {0.0, 0.0, 0.0}, {0.0, 1.0, 0.0}) == 2);
  CHECK_THROWS_AS(cone::strict_witness(flat(2, 1), {0.0, 0.0}, {0.0, 1.0}),
                  std::invalid_argument);
  // A tolerance wide enough that the vector counts as causal while no frame
  // product is strictly below it: the witness search reports the violation.
  CHECK_THROWS_AS(
      cone::strict_witness(flat(3, 2), {0.0, 0.0, 0.0}, {0.1, 0.1, 0.6}, 0.5),
      std::runtime_error);
}

TEST_CASE("antipodal symmetry and positive scaling") {
  Rng rng(41);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = static_cast<int>(rng.uniform_int(1, 5));
    const int nu = static_cast<int>(rng.uniform_int(1, n));
    const auto s = flat(n, nu);
    const Vec p = rng.uniform_vec(n, -2.0, 2.0);
    const Vec v = rng.uniform_vec(n, -2.0, 2.0);
    const auto c = cone::classify(s, p, v, 0.0);
    const auto c_neg = cone::classify(s, p, scaled(v, -1.0), 0.0);
    switch (c) {
      case ConeClass::FutureTimelike: CHECK(c_neg == ConeClass::PastTimelike); break;
      case ConeClass::FutureBoundary: CHECK(c_neg == ConeClass::PastBoundary); break;
      case ConeClass::PastTimelike: CHECK(c_neg == ConeClass::FutureTimelike); break;
      case ConeClass::PastBoundary: CHECK(c_neg == ConeClass::FutureBoundary); break;
      default: CHECK(c_neg == c); break;
    }
    const double lambda = rng.uniform(1e-3, 10.0);
    CHECK(cone::classify(s, p, scaled(v, lambda), 0.0) == c);
  }
}

TEST_CASE("conformal invariance of classification") {
  Rng rng(43);
  const auto s = flat(3, 2);
  const auto scaled_s =
      spacetime::conformal_scale(s, [](const Vec& p) { return 1.0 + 0.5 * std::sin(p[0]); });
  for (int trial = 0; trial < 2000; ++trial) {
    const Vec p = rng.uniform_vec(3, -2.0, 2.0);
    const Vec v = rng.uniform_vec(3, -2.0, 2.0);
    CHECK(cone::classify(s, p, v, 0.0) == cone::classify(scaled_s, p, v, 0.0));
  }
}

TEST_CASE("timelike convexity holds for nu = 1 and nu = n") {
  Rng rng(47);
  const std::vector<std::pair<int, int>> cases = {{2, 1}, {3, 1}, {4, 1}, {2, 2}, {3, 3}};
  int checked = 0;
  while (checked < 10000) {
    for (const auto& [n, nu] : cases) {
      const auto s = flat(n, nu);
      const Vec p(n, 0.0);
      const Vec v = rng.uniform_vec(n, -1.0, 1.0);
      const Vec w = rng.uniform_vec(n, -1.0, 1.0);
      if (cone::classify(s, p, v, 0.0) != ConeClass::FutureTimelike) continue;
      if (cone::classify(s, p, w, 0.0) != ConeClass::FutureTimelike) continue;
      CHECK(cone::classify(s, p, add(v, w), 0.0) == ConeClass::FutureTimelike);
      ++checked;
    }
  }
}

TEST_CASE("timelike sums can leave the cone when 1 < nu < n") {
  // Characterization, not a defect: the defining inequalities do not carve a
  // convex set between the Lorentzian and negative definite extremes.
  const auto s = flat(3, 2);
  const Vec p = {0.0, 0.0, 0.0};
  const Vec v = {1.0, 0.01, 0.99};
  const Vec w = {0.01, 1.0, 0.99};
  CHECK(cone::classify(s, p, v, 0.0) == ConeClass::FutureTimelike);
  CHECK(cone::classify(s, p, w, 0.0) == ConeClass::FutureTimelike);
  CHECK(cone::classify(s, p, add(v, w), 0.0) == ConeClass::Spacelike);
}

TEST_CASE("strict witness never fails on random causal samples") {
  Rng rng(53);
  int tested = 0;
  while (tested < 10000) {
    for (int n = 1; n <= 5 && tested < 10000; ++n)
      for (int nu = 1; nu <= n && tested < 10000; ++nu) {
        const Vec v = causal_sample(n, nu, rng);
        if (norm(v) == 0.0) continue;
        const auto s = flat(n, nu);
        const int j = cone::strict_witness(s, Vec(n, 0.0), v);
        CHECK(j >= 1);
        CHECK(j <= nu);
        ++tested;
      }
  }
}

TEST_CASE("interior_vector on random frame-derived structures") {
  Rng rng(59);
  int done = 0;
  while (done < 1000) {
    const int n = static_cast<int>(rng.uniform_int(2, 5));
    const int nu = static_cast<int>(rng.uniform_int(1, n));
    std::vector<Vec> fields;
    for (int k = 0; k < nu; ++k) fields.push_back(rng.uniform_vec(n, -1.0, 1.0));

    bilinear::SymForm gram(nu);
    for (int i = 0; i < nu; ++i)
      for (int j = i; j < nu; ++j) gram.set(i, j, dot(fields[i], fields[j]));
    if (bilinear::sym_eigenvalues(gram).front() < 1e-4) continue;

    spacetime::MetricField h;
    h.dim = n;
    h.index = 0;
    h.constant = true;
    const auto id = bilinear::SymForm::identity(n);
    h.form_at = [id](const Vec&) { return id; };
    const auto s = spacetime::from_frame(h, spacetime::TimeFrame::constant_fields(fields));
    const Vec v = cone::interior_vector(s, Vec(n, 0.0));
    CHECK(cone::classify(s, Vec(n, 0.0), v, 0.0) == ConeClass::FutureTimelike);
    ++done;
  }
}

}  // TEST_SUITE
