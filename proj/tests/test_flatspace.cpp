#include <cmath>

#include "conecalc/cone.hpp"
#include "conecalc/flatspace.hpp"
#include "conecalc/rng.hpp"
#include "doctest.h"

using namespace conecalc;
using flatspace::FlatOrderQuery;
using flatspace::OrderMode;

TEST_SUITE("flatspace") {

TEST_CASE("leq pinned examples") {
  CHECK(flatspace::leq({3, 2, {0, 0, 0}, {1, 1, 1}}, OrderMode::Causal));
  CHECK(!flatspace::leq({3, 2, {0, 0, 0}, {1, 0, 2}}, OrderMode::Causal));
  CHECK(flatspace::leq({2, 1, {0, 0}, {1, 1}}, OrderMode::Causal));
  CHECK(!flatspace::leq({2, 1, {0, 0}, {1, 1}}, OrderMode::Chronological));
  CHECK(flatspace::leq({2, 1, {0, 0}, {0, 0}}, OrderMode::Causal));   // reflexive
  CHECK(!flatspace::leq({2, 1, {0, 0}, {0, 0}}, OrderMode::Chronological));
  CHECK(flatspace::leq({2, 2, {0, 0}, {1, 2}}, OrderMode::Causal));   // nu = n, empty sum
}

TEST_CASE("time_T") {
  CHECK(flatspace::time_T({1.0, 2.0, 3.0}, 2) == 3.0);
  CHECK(flatspace::time_T({5.0, -7.0}, 1) == 5.0);
  CHECK(flatspace::time_T({0.0, 0.0, 0.0}, 3) == 0.0);
}

TEST_CASE("diamond_box pinned examples") {
  const auto b1 = flatspace::diamond_box({0.0, 0.0}, {2.0, 0.0}, 1);
  REQUIRE(b1.has_value());
  CHECK(b1->lo[0] == 0.0);
  CHECK(b1->hi[0] == 2.0);
  CHECK(b1->lo[1] == doctest::Approx(-2.0 * std::sqrt(2.0)));
  CHECK(b1->hi[1] == doctest::Approx(2.0 * std::sqrt(2.0)));

  const auto b2 = flatspace::diamond_box({0.0, 0.0}, {1.0, 1.0}, 2);
  REQUIRE(b2.has_value());
  CHECK(b2->lo == Vec{0.0, 0.0});
  CHECK(b2->hi == Vec{1.0, 1.0});

  CHECK(!flatspace::diamond_box({0.0, 0.0}, {-1.0, 0.0}, 1).has_value());
}

TEST_CASE("sandwiched points stay inside the box") {
  Rng rng(61);
  int done = 0;
  while (done < 10000) {
    const int n = static_cast<int>(rng.uniform_int(2, 4));
    const int nu = static_cast<int>(rng.uniform_int(1, n));
    const Vec p = rng.uniform_vec(n, -2.0, 2.0);
    const Vec x = add(p, rng.uniform_vec(n, 0.0, 2.0));
    const Vec q = add(x, rng.uniform_vec(n, 0.0, 2.0));
    if (!flatspace::leq({n, nu, p, x}, OrderMode::Causal)) continue;
    if (!flatspace::leq({n, nu, x, q}, OrderMode::Causal)) continue;
    const auto box = flatspace::diamond_box(p, q, nu);
    REQUIRE(box.has_value());
    CHECK(box->contains(x, 1e-12));
    ++done;
  }
}

TEST_CASE("canonical time is monotone along the order") {
  Rng rng(67);
  int done = 0;
  while (done < 10000) {
    const int n = static_cast<int>(rng.uniform_int(1, 5));
    const int nu = static_cast<int>(rng.uniform_int(1, n));
    const Vec p = rng.uniform_vec(n, -2.0, 2.0);
    const Vec q = add(p, rng.uniform_vec(n, -1.0, 1.0));
    if (p == q || !flatspace::leq({n, nu, p, q}, OrderMode::Causal)) continue;
    CHECK(flatspace::time_T(q, nu) > flatspace::time_T(p, nu));
    ++done;
  }
}

TEST_CASE("order axioms hold where the chord cone is convex") {
  Rng rng(71);
  const std::vector<std::pair<int, int>> cases = {{2, 1}, {3, 1}, {2, 2}, {3, 3}};
  int triples = 0;
  while (triples < 10000) {
    for (const auto& [n, nu] : cases) {
      const Vec p = rng.uniform_vec(n, -2.0, 2.0);
      const Vec x = add(p, rng.uniform_vec(n, 0.0, 1.0));
      const Vec q = add(x, rng.uniform_vec(n, 0.0, 1.0));
      if (!flatspace::leq({n, nu, p, x}, OrderMode::Causal)) continue;
      if (!flatspace::leq({n, nu, x, q}, OrderMode::Causal)) continue;
      CHECK(flatspace::leq({n, nu, p, q}, OrderMode::Causal));
      ++triples;
    }
  }

  // Antisymmetry holds for every index.
  Rng rng2(73);
  for (int i = 0; i < 2000; ++i) {
    const int n = static_cast<int>(rng2.uniform_int(1, 5));
    const int nu = static_cast<int>(rng2.uniform_int(1, n));
    const Vec p = rng2.uniform_vec(n, -2.0, 2.0);
    const Vec q = rng2.uniform_vec(n, -2.0, 2.0);
    if (flatspace::leq({n, nu, p, q}, OrderMode::Causal) &&
        flatspace::leq({n, nu, q, p}, OrderMode::Causal))
      CHECK(p == q);
  }
}

TEST_CASE("chord transitivity fails between the extremes") {
  // Two causal chords whose sum is spacelike: the chord relation is not
  // transitive once 1 < nu < n. The path order repairs it.
  const Vec p = {0.0, 0.0, 0.0};
  const Vec x = {1.0, 0.0, 1.0};          // chord (1,0,1), null
  const Vec q = add(x, {0.0, 1.0, 1.0});  // chord (0,1,1), null
  CHECK(flatspace::leq({3, 2, p, x}, OrderMode::Causal));
  CHECK(flatspace::leq({3, 2, x, q}, OrderMode::Causal));
  CHECK(!flatspace::leq({3, 2, p, q}, OrderMode::Causal));
  CHECK(flatspace::path_leq({3, 2, p, q}));
}

TEST_CASE("path order contains the chord order") {
  Rng rng(79);
  for (int i = 0; i < 5000; ++i) {
    const int n = static_cast<int>(rng.uniform_int(1, 5));
    const int nu = static_cast<int>(rng.uniform_int(1, n));
    const Vec p = rng.uniform_vec(n, -2.0, 2.0);
    const Vec q = rng.uniform_vec(n, -2.0, 2.0);
    if (flatspace::leq({n, nu, p, q}, OrderMode::Causal))
      CHECK(flatspace::path_leq({n, nu, p, q}));
  }
}

TEST_CASE("chord order matches cone classification") {
  Rng rng(83);
  int done = 0;
  while (done < 5000) {
    const int n = static_cast<int>(rng.uniform_int(1, 5));
    const int nu = static_cast<int>(rng.uniform_int(1, n));
    const auto s = spacetime::flat(n, nu);
    const Vec p = rng.uniform_vec(n, -2.0, 2.0);
    const Vec q = rng.uniform_vec(n, -2.0, 2.0);
    if (p == q) continue;
    const auto cls = cone::classify(s, p, sub(q, p), 0.0);
    CHECK(flatspace::leq({n, nu, p, q}, OrderMode::Causal) == cone::future_causal(cls));
    CHECK(flatspace::leq({n, nu, p, q}, OrderMode::Chronological) ==
          (cls == cone::ConeClass::FutureTimelike));
    ++done;
  }
}

TEST_CASE("steepness of the canonical time") {
  Rng rng(89);
  int done = 0;
  while (done < 10000) {
    const int n = static_cast<int>(rng.uniform_int(1, 5));
    const int nu = static_cast<int>(rng.uniform_int(1, n));
    Vec v(n, 0.0);
    double neg2 = 0.0;
    for (int i = 0; i < nu; ++i) {
      v[i] = rng.uniform(0.0, 1.0);
      neg2 += v[i] * v[i];
    }
    for (int j = nu; j < n; ++j) v[j] = rng.uniform(-1.0, 1.0);
    double pos2 = 0.0;
    for (int j = nu; j < n; ++j) pos2 += v[j] * v[j];
    if (pos2 > neg2 || norm(v) == 0.0) continue;
    CHECK(2.0 * flatspace::time_T(v, nu) >= norm(v));
    ++done;
  }
}

}  // TEST_SUITE
