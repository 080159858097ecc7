#include <cmath>

#include "conecalc/rng.hpp"
#include "conecalc/spacetime.hpp"
#include "doctest.h"

using namespace conecalc;
using bilinear::evaluate;
using bilinear::SymForm;
using namespace spacetime;

namespace {

bool form_approx(const SymForm& a, const SymForm& b, double tol = 1e-12) {
  if (a.size() != b.size()) return false;
  for (int i = 0; i < a.size(); ++i)
    for (int j = 0; j < a.size(); ++j)
      if (std::fabs(a.at(i, j) - b.at(i, j)) > tol) return false;
  return true;
}

MetricField identity_metric(int n) {
  MetricField h;
  h.dim = n;
  h.index = 0;
  h.constant = true;
  const auto id = SymForm::identity(n);
  h.form_at = [id](const Vec&) { return id; };
  return h;
}

}  // namespace

TEST_SUITE("spacetime") {

TEST_CASE("flat structures") {
  const auto s21 = flat(2, 1);
  CHECK(form_approx(s21.form({0.0, 0.0}), SymForm::diag({-1.0, 1.0})));
  CHECK(s21.frame_vec(0, {0.0, 0.0}) == Vec{1.0, 0.0});
  CHECK(s21.in_domain({5.0, -3.0}));

  const auto s32 = flat(3, 2);
  CHECK(form_approx(s32.form({1.0, 2.0, 3.0}), SymForm::diag({-1.0, -1.0, 1.0})));
  CHECK(s32.frame.size() == 2);

  const auto s22 = flat(2, 2);
  CHECK(form_approx(s22.form({0.0, 0.0}), SymForm::diag({-1.0, -1.0})));

  CHECK_THROWS_AS(flat(3, 0), std::invalid_argument);
  CHECK_THROWS_AS(flat(3, 4), std::invalid_argument);
}

TEST_CASE("metric_from_frame pinned examples") {
  const auto h2 = identity_metric(2);

  const auto g1 = metric_from_frame(h2, TimeFrame::constant_fields({{1.0, 0.0}}));
  CHECK(form_approx(g1.form_at({0.0, 0.0}), SymForm::diag({-1.0, 1.0})));

  const auto g2 = metric_from_frame(h2, TimeFrame::constant_fields({{1.0, 1.0}}));
  CHECK(form_approx(g2.form_at({0.0, 0.0}),
                    SymForm::from_entries(2, {0.0, -1.0, -1.0, 0.0}), 1e-12));
  CHECK(evaluate(g2.form_at({0.0, 0.0}), {1.0, 1.0}, {1.0, 1.0}) == doctest::Approx(-2.0));

  const auto h3 = identity_metric(3);
  const auto g3 = metric_from_frame(h3, TimeFrame::constant_fields({{1.0, 0.0, 0.0},
                                                                    {0.0, 1.0, 0.0}}));
  CHECK(form_approx(g3.form_at({0.0, 0.0, 0.0}), SymForm::diag({-1.0, -1.0, 1.0})));
  CHECK(g3.index == 2);
}

TEST_CASE("metric_from_frame identities against the input metric") {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = static_cast<int>(rng.uniform_int(2, 5));
    const int nu = static_cast<int>(rng.uniform_int(1, n));
    std::vector<Vec> fields;
    for (int k = 0; k < nu; ++k) fields.push_back(rng.uniform_vec(n, -1.0, 1.0));

    SymForm gram(nu);
    for (int i = 0; i < nu; ++i)
      for (int j = i; j < nu; ++j) gram.set(i, j, dot(fields[i], fields[j]));
    if (bilinear::sym_eigenvalues(gram).front() < 1e-3) continue;

    const auto h = identity_metric(n);
    const auto frame = TimeFrame::constant_fields(fields);
    const auto g = metric_from_frame(h, frame);
    const SymForm G = g.form_at(Vec(n, 0.0));
    const SymForm H = h.form_at(Vec(n, 0.0));

    // g(X_i,X_j) = -h(X_i,X_j) on the frame span.
    for (int i = 0; i < nu; ++i)
      for (int j = 0; j < nu; ++j)
        CHECK(evaluate(G, fields[i], fields[j]) ==
              doctest::Approx(-evaluate(H, fields[i], fields[j])).epsilon(1e-9));

    // g = h on the h-orthogonal complement of the span.
    std::vector<Vec> all = fields;
    for (int k = 0; k < n - nu; ++k) {
      Vec e(n, 0.0);
      e[k + nu] = 1.0;  // coordinate fill-in; orthogonalized below
      all.push_back(e);
    }
    const auto es = bilinear::gram_schmidt(all, SymForm::identity(n));
    for (std::size_t a = nu; a < es.size(); ++a)
      for (std::size_t b = nu; b < es.size(); ++b)
        CHECK(evaluate(G, es[a], es[b]) ==
              doctest::Approx(evaluate(H, es[a], es[b])).epsilon(1e-9));

    const auto report = validate(from_frame(h, frame), {Vec(n, 0.0)}, 1e-9);
    CHECK(report.pass);
  }
}

TEST_CASE("metric_from_frame reports the failing point") {
  const auto h = identity_metric(2);
  // Constant fields are resolved eagerly, so dependence surfaces immediately.
  CHECK_THROWS_WITH_AS(
      static_cast<void>(metric_from_frame(h, TimeFrame::constant_fields({{1.0, 0.0}, {2.0, 0.0}}))),
      doctest::Contains("at point"), std::runtime_error);

  // Pointwise fields report the offending evaluation point.
  TimeFrame varying;
  varying.constant = false;
  varying.fields.push_back([](const Vec&) { return Vec{1.0, 0.0}; });
  varying.fields.push_back([](const Vec& p) { return Vec{1.0, p[0]}; });
  const auto g = metric_from_frame(h, varying);
  CHECK_THROWS_WITH_AS(static_cast<void>(g.form_at({0.0, 5.0})),
                       doctest::Contains("at point (0.000000,5.000000)"), std::runtime_error);
  CHECK(bilinear::signature(g.form_at({1.0, 0.0}), 1e-9) == bilinear::Signature{0, 2, 0});
}

TEST_CASE("extend_negative") {
  const auto base = flat(1, 1);
  const auto m1 = extend_negative(base, 0.0);
  CHECK(m1.dim() == 2);
  CHECK(m1.index() == 2);
  CHECK(form_approx(m1.form({0.0, 0.0}), SymForm::diag({-1.0, -1.0})));
  CHECK(m1.frame_vec(0, {0.0, 0.0}) == Vec{0.0, 1.0});
  CHECK(m1.frame_vec(1, {0.0, 0.0}) == Vec{1.0, 0.0});

  const auto m2 = extend_negative(flat(2, 1), 0.5);
  CHECK(form_approx(m2.form({0.0, 0.0, 0.0}), SymForm::diag({-1.0, -1.0, 1.0})));
  CHECK(m2.frame_vec(1, {0.0, 0.0, 0.0}) == Vec{1.0, -0.5, 0.0});

  // The added field stays timelike for every eps >= 0.
  for (const double eps : {0.0, 0.5, 2.0}) {
    const auto m = extend_negative(flat(2, 1), eps);
    const Vec x = m.frame_vec(1, {0.0, 0.0, 0.0});
    CHECK(evaluate(m.form({0.0, 0.0, 0.0}), x, x) <= -1.0);
    const auto report = validate(m, {{0.0, 0.0, 0.0}, {1.0, -1.0, 2.0}}, 1e-9);
    CHECK(report.pass);
  }
}

TEST_CASE("extend_positive") {
  const auto m = extend_positive(flat(1, 1));
  CHECK(m.dim() == 2);
  CHECK(m.index() == 1);
  CHECK(form_approx(m.form({0.0, 0.0}), SymForm::diag({1.0, -1.0})));

  const auto m22 = extend_positive(flat(2, 2));
  CHECK(form_approx(m22.form({0.0, 0.0, 0.0}), SymForm::diag({1.0, -1.0, -1.0})));
  CHECK(m22.index() == 2);
}

TEST_CASE("warped products") {
  const auto fiber = identity_metric(1);
  const auto w1 = warped_product(flat(1, 1), fiber, 1.0);
  CHECK(form_approx(w1.form({0.0, 0.0}), SymForm::diag({-1.0, 1.0})));

  const auto w2 = warped_product(flat(1, 1), fiber, 2.0);
  CHECK(form_approx(w2.form({0.0, 0.0}), SymForm::diag({-1.0, 4.0})));

  const auto fiber2 = identity_metric(2);
  const auto w3 = warped_product(flat(2, 2), fiber2, 1.0);
  CHECK(w3.dim() == 4);
  CHECK(w3.index() == 2);
  CHECK(validate(w3, {{0.0, 0.0, 0.0, 0.0}}, 1e-9).pass);

  const auto bad = warped_product(flat(1, 1), fiber,
                                  [](const Vec& p) { return p[0]; });
  CHECK_THROWS_AS(static_cast<void>(bad.form({-1.0, 0.0})), std::runtime_error);

  // Extension after warping keeps index and bumps the dimension.
  const auto ext = extend_positive(w2);
  CHECK(ext.dim() == 3);
  CHECK(ext.index() == 1);
  CHECK(bilinear::signature(ext.form({0.0, 0.0, 0.0}), 1e-9) == bilinear::Signature{2, 1, 0});
}

TEST_CASE("validate verdicts") {
  Rng rng(7);
  std::vector<Vec> probes;
  for (int i = 0; i < 100; ++i) probes.push_back(rng.uniform_vec(3, -2.0, 2.0));
  CHECK(validate(flat(3, 2), probes, 1e-9).pass);

  // Spacelike frame field: fails the negativity check.
  auto bad = flat(2, 1);
  bad.frame = TimeFrame::constant_fields({{0.0, 1.0}});
  const auto rep = validate(bad, {{0.0, 0.0}}, 1e-9);
  CHECK(!rep.pass);
  CHECK(rep.probes[0].frame_norms2[0] == doctest::Approx(1.0));

  // Duplicated frame field: fails independence.
  auto dup = flat(3, 2);
  dup.frame = TimeFrame::constant_fields({{1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}});
  CHECK(!validate(dup, {{0.0, 0.0, 0.0}}, 1e-9).pass);
}

TEST_CASE("conformal scaling preserves validation verdicts") {
  Rng rng(9);
  std::vector<Vec> probes;
  for (int i = 0; i < 50; ++i) probes.push_back(rng.uniform_vec(3, -2.0, 2.0));
  const auto s = flat(3, 2);
  const auto scaled = conformal_scale(s, [](const Vec& p) { return 1.0 + 0.5 * std::sin(p[0]); });
  CHECK(validate(s, probes, 1e-9).pass == validate(scaled, probes, 1e-9).pass);

  auto bad = flat(2, 1);
  bad.frame = TimeFrame::constant_fields({{0.0, 1.0}});
  const auto bad_scaled = conformal_scale(bad, [](const Vec&) { return 2.0; });
  CHECK(!validate(bad_scaled, {{0.0, 0.0}}, 1e-9).pass);
}

TEST_CASE("random structures keep their signature at probes") {
  Rng rng(13);
  const auto w = warped_product(flat(2, 2), identity_metric(1), 1.5);
  for (int i = 0; i < 100; ++i) {
    const Vec p = rng.uniform_vec(3, -2.0, 2.0);
    CHECK(bilinear::signature(w.form(p), 1e-9) == bilinear::Signature{1, 2, 0});
  }
}

}  // TEST_SUITE
