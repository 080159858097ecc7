#ifndef CONECALC_BILINEAR_HPP
#define CONECALC_BILINEAR_HPP

#include <vector>

#include "conecalc/types.hpp"

namespace conecalc::bilinear {

// Dense symmetric bilinear form of arbitrary signature. Stored row-major with
// both triangles; set() writes both mirror entries so symmetry holds
// bit-for-bit as stored.
class SymForm {
 public:
  SymForm() = default;
  explicit SymForm(int n);

  static SymForm identity(int n);
  static SymForm diag(const Vec& d);
  // Validates exact (bitwise) symmetry of the given row-major entries.
  static SymForm from_entries(int n, const std::vector<double>& rowmajor);
  static SymForm block_diag(const SymForm& a, const SymForm& b);

  int size() const { return n_; }
  double at(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  void set(int i, int j, double v) {
    a_[static_cast<std::size_t>(i) * n_ + j] = v;
    a_[static_cast<std::size_t>(j) * n_ + i] = v;
  }
  SymForm scaled(double c) const;

  const std::vector<double>& entries() const { return a_; }

 private:
  int n_ = 0;
  std::vector<double> a_;
};

// v^T form w, accumulated in a fixed row-major order over the upper triangle
// so that evaluate(f,v,w) and evaluate(f,w,v) agree bit-for-bit.
double evaluate(const SymForm& form, const Vec& v, const Vec& w);

// Eigenvalues of a symmetric form, ascending (cyclic Jacobi).
Vec sym_eigenvalues(const SymForm& form);

struct Signature {
  int n_pos = 0;
  int n_neg = 0;
  int n_zero = 0;
  bool operator==(const Signature&) const = default;
};

// Counts eigenvalues > tol, < -tol and in [-tol, tol]. n_zero > 0 signals
// degeneracy to callers; not an error here.
Signature signature(const SymForm& form, double tol);

// Relative residual threshold below which a vector counts as linearly
// dependent on its predecessors.
inline constexpr double kDependenceTol = 1e-10;

// Orthogonalizes `basis` with respect to the positive definite form `inner`
// (no normalization): span(e_1..e_k) = span(b_1..b_k) for every k.
// Throws std::runtime_error on linear dependence.
std::vector<Vec> gram_schmidt(const std::vector<Vec>& basis, const SymForm& inner,
                              double rel_tol = kDependenceTol);

// Returns v != 0 with inner(v, b_i) > 0 for every basis vector b_i, by the
// inductive construction v = v~ + a e_m. The free parameter is pinned to
// a = (-<v~,b_m> + max(1, |<v~,b_m>|)) / <b_m,e_m>, which keeps the product
// <v,b_m> = max(1, |<v~,b_m>|) safely positive.
Vec positive_functional_vector(const std::vector<Vec>& basis, const SymForm& inner,
                               double rel_tol = kDependenceTol);

}  // namespace conecalc::bilinear

#endif
