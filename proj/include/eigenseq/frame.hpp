#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "eigenseq/complex_matrix.hpp"
#include "eigenseq/errors.hpp"
#include "eigenseq/spectral.hpp"

namespace eigenseq {

enum class Ordering { Less, Equal, Greater };

namespace detail {

// arg in (-pi, pi], with negative zeros squashed so that e.g. -1 - 0i
// compares as arg +pi rather than -pi.
inline double canonical_arg(const Complex& z) {
  const double re = z.real() == 0.0 ? 0.0 : z.real();
  const double im = z.imag() == 0.0 ? 0.0 : z.imag();
  return std::atan2(im, re);
}

}  // namespace detail

// Lexicographic vector ordering: at the first component where x and y differ
// (beyond eps_cmp), the larger magnitude wins; magnitude ties break toward
// the smaller argument, taken in (-pi, pi].
inline Ordering compare_lex(const Vector& x, const Vector& y, const ToleranceConfig& cfg = {}) {
  if (x.size() != y.size()) throw Error("compare_lex: length mismatch");
  for (std::size_t u = 0; u < x.size(); ++u) {
    if (std::abs(x[u] - y[u]) <= cfg.eps_cmp) continue;
    const double ax = std::abs(x[u]);
    const double ay = std::abs(y[u]);
    if (ax > ay + cfg.eps_cmp) return Ordering::Less;
    if (ay > ax + cfg.eps_cmp) return Ordering::Greater;
    return detail::canonical_arg(x[u]) < detail::canonical_arg(y[u]) ? Ordering::Less
                                                                     : Ordering::Greater;
  }
  return Ordering::Equal;
}

// Multiplies x by the unit scalar that makes its first non-negligible
// component real and positive. Idempotent; removes the global phase.
inline Vector phase_fix(const Vector& x, const ToleranceConfig& cfg = {}) {
  for (const Complex& z : x) {
    if (std::abs(z) > cfg.eps_zero) {
      const Complex scale = std::abs(z) / z;
      Vector y = x;
      for (Complex& w : y) w *= scale;
      return y;
    }
  }
  throw Error("phase_fix: vector has no component above eps_zero");
}

// The output of the eigenframe map F_n: phase-fixed eigenvector columns in
// increasing lexicographic order, with the aligned eigenphases (eigenvalues
// for hermitian sources) and the sorting permutation.
struct Eigenframe {
  Matrix columns;
  std::vector<double> phases;       // theta_j in [0, 2pi); real eigenvalues if hermitian
  std::vector<int> permutation;     // sorted position j -> pre-sort index
  bool unitary_source = true;

  int dim() const { return columns.dim(); }
};

// F_n(U): eigendecompose, cluster into eigenspace projectors, Gram-Schmidt
// the projected standard basis per cluster, phase-fix, then sort all columns
// by the lexicographic ordering. Admits hermitian input as well (then the
// recorded values are the real eigenvalues).
inline Eigenframe build_frame(const Matrix& u, const ToleranceConfig& cfg = {}) {
  const int n = u.dim();
  Eigenframe frame;
  if (is_unitary(u, cfg.eps_unitary)) {
    frame.unitary_source = true;
  } else if (is_hermitian(u, cfg.eps_unitary)) {
    frame.unitary_source = false;
  } else {
    throw Error("build_frame: input is neither unitary (residual " +
                std::to_string(unitarity_residual(u)) + ") nor hermitian (residual " +
                std::to_string(hs_norm(u - adjoint(u))) + ")");
  }

  const std::vector<EigenPair> pairs = eig_normal(u);
  const std::vector<EigenCluster> clusters = cluster_eigenvalues(pairs, frame.unitary_source, cfg);

  struct Column {
    Vector v;
    double value;
    int pre_sort_index;
  };
  std::vector<Column> cols;
  cols.reserve(n);
  for (const EigenCluster& c : clusters) {
    for (const Vector& g : gram_schmidt_projected(c, cfg)) {
      cols.push_back({phase_fix(g, cfg), c.value, static_cast<int>(cols.size())});
    }
  }
  if (static_cast<int>(cols.size()) != n) {
    throw Error("build_frame: eigenspace bases yielded " + std::to_string(cols.size()) +
                " columns for dimension " + std::to_string(n));
  }

  // Insertion sort: the tolerance-based comparator is not a strict weak
  // ordering in general, so keep the sort self-contained and verify below.
  for (std::size_t i = 1; i < cols.size(); ++i) {
    Column c = std::move(cols[i]);
    std::size_t j = i;
    while (j > 0 && compare_lex(c.v, cols[j - 1].v, cfg) == Ordering::Less) {
      cols[j] = std::move(cols[j - 1]);
      --j;
    }
    cols[j] = std::move(c);
  }
  for (std::size_t i = 0; i + 1 < cols.size(); ++i) {
    if (compare_lex(cols[i].v, cols[i + 1].v, cfg) != Ordering::Less) {
      throw Error("build_frame: columns are not strictly ordered (tolerance failure)");
    }
  }

  frame.columns = Matrix(n);
  frame.phases.resize(n);
  frame.permutation.resize(n);
  for (int j = 0; j < n; ++j) {
    frame.columns.set_col(j, cols[j].v);
    frame.phases[j] = cols[j].value;
    frame.permutation[j] = cols[j].pre_sort_index;
  }
  return frame;
}

}  // namespace eigenseq
