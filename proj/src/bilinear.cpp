#include "conecalc/bilinear.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace conecalc::bilinear {

SymForm::SymForm(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, 0.0) {
  require(n >= 1 && n <= kMaxDim, "SymForm: dimension out of range");
}

SymForm SymForm::identity(int n) {
  SymForm f(n);
  for (int i = 0; i < n; ++i) f.set(i, i, 1.0);
  return f;
}

SymForm SymForm::diag(const Vec& d) {
  SymForm f(static_cast<int>(d.size()));
  for (int i = 0; i < f.size(); ++i) f.set(i, i, d[static_cast<std::size_t>(i)]);
  return f;
}

SymForm SymForm::from_entries(int n, const std::vector<double>& rowmajor) {
  require(rowmajor.size() == static_cast<std::size_t>(n) * n,
          "SymForm::from_entries: wrong entry count");
  SymForm f(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double aij = rowmajor[static_cast<std::size_t>(i) * n + j];
      const double aji = rowmajor[static_cast<std::size_t>(j) * n + i];
      if (!(aij == aji)) throw std::invalid_argument("SymForm: entries not symmetric as stored");
      if (!std::isfinite(aij)) throw std::invalid_argument("SymForm: nonfinite entry");
    }
  f.a_ = rowmajor;
  return f;
}

SymForm SymForm::block_diag(const SymForm& a, const SymForm& b) {
  SymForm f(a.size() + b.size());
  for (int i = 0; i < a.size(); ++i)
    for (int j = i; j < a.size(); ++j) f.set(i, j, a.at(i, j));
  for (int i = 0; i < b.size(); ++i)
    for (int j = i; j < b.size(); ++j) f.set(a.size() + i, a.size() + j, b.at(i, j));
  return f;
}

SymForm SymForm::scaled(double c) const {
  SymForm f = *this;
  for (auto& x : f.a_) x *= c;
  return f;
}

double evaluate(const SymForm& form, const Vec& v, const Vec& w) {
  const int n = form.size();
  require(v.size() == static_cast<std::size_t>(n) && w.size() == static_cast<std::size_t>(n),
          "evaluate: dimension mismatch");
  double s = 0.0;
  for (int i = 0; i < n; ++i) {
    s += form.at(i, i) * (v[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(i)]);
    for (int j = i + 1; j < n; ++j) {
      // v[i]w[j] + v[j]w[i] is invariant under v<->w (IEEE add commutes),
      // which makes the whole accumulation symmetric bit-for-bit.
      s += form.at(i, j) * (v[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(j)] +
                            v[static_cast<std::size_t>(j)] * w[static_cast<std::size_t>(i)]);
    }
  }
  return s;
}

Vec sym_eigenvalues(const SymForm& form) {
  const int n = form.size();
  std::vector<double> a = form.entries();
  auto idx = [n](int i, int j) { return static_cast<std::size_t>(i) * n + j; };

  double frob2 = 0.0;
  for (double x : a) frob2 += x * x;
  const double stop = 1e-28 * std::max(frob2, 1e-300);

  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += 2.0 * a[idx(i, j)] * a[idx(i, j)];
    if (off <= stop) break;

    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a[idx(p, q)];
        if (apq == 0.0) continue;
        const double theta = (a[idx(q, q)] - a[idx(p, p)]) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a[idx(k, p)];
          const double akq = a[idx(k, q)];
          a[idx(k, p)] = c * akp - s * akq;
          a[idx(k, q)] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a[idx(p, k)];
          const double aqk = a[idx(q, k)];
          a[idx(p, k)] = c * apk - s * aqk;
          a[idx(q, k)] = s * apk + c * aqk;
        }
      }
    }
  }

  Vec eig(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) eig[static_cast<std::size_t>(i)] = a[idx(i, i)];
  std::sort(eig.begin(), eig.end());
  return eig;
}

Signature signature(const SymForm& form, double tol) {
  require(tol > 0.0, "signature: tol must be positive");
  Signature s;
  for (double ev : sym_eigenvalues(form)) {
    if (ev > tol)
      ++s.n_pos;
    else if (ev < -tol)
      ++s.n_neg;
    else
      ++s.n_zero;
  }
  return s;
}

namespace {

// Modified Gram-Schmidt step shared by both public operations.
std::vector<Vec> orthogonalize(const std::vector<Vec>& basis, const SymForm& inner,
                               double rel_tol) {
  require(!basis.empty(), "gram_schmidt: empty basis");
  const std::size_t n = basis[0].size();
  require(n == static_cast<std::size_t>(inner.size()), "gram_schmidt: dimension mismatch");
  std::vector<Vec> es;
  es.reserve(basis.size());
  for (const Vec& b : basis) {
    require(b.size() == n, "gram_schmidt: ragged basis");
    const double bnorm2 = evaluate(inner, b, b);
    if (!(bnorm2 > 0.0)) throw std::runtime_error("gram_schmidt: inner form not positive on input");
    Vec e = b;
    for (const Vec& prev : es) {
      const double coef = evaluate(inner, e, prev) / evaluate(inner, prev, prev);
      axpy(e, -coef, prev);
    }
    const double enorm2 = evaluate(inner, e, e);
    if (!(enorm2 > rel_tol * rel_tol * bnorm2))
      throw std::runtime_error("gram_schmidt: basis linearly dependent within tolerance");
    es.push_back(std::move(e));
  }
  return es;
}

}  // namespace

std::vector<Vec> gram_schmidt(const std::vector<Vec>& basis, const SymForm& inner,
                              double rel_tol) {
  return orthogonalize(basis, inner, rel_tol);
}

Vec positive_functional_vector(const std::vector<Vec>& basis, const SymForm& inner,
                               double rel_tol) {
  const std::vector<Vec> es = orthogonalize(basis, inner, rel_tol);
  Vec v = basis[0];
  for (std::size_t m = 1; m < basis.size(); ++m) {
    const Vec& bm = basis[m];
    const Vec& em = es[m];
    const double c = evaluate(inner, bm, em);  // equals <e_m,e_m> > 0
    const double s = evaluate(inner, v, bm);
    const double a = (-s + std::max(1.0, std::fabs(s))) / c;
    axpy(v, a, em);
  }
  return v;
}

}  // namespace conecalc::bilinear
