#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "eigenseq/errors.hpp"

namespace eigenseq {

using Complex = std::complex<double>;
using Vector = std::vector<Complex>;

// Comparison / convergence tolerances used throughout the pipeline.
// All values are strictly positive and < 1e-2.
struct ToleranceConfig {
  double eps_unitary = 1e-10;  // unitarity / hermiticity gate for inputs
  double eps_zero = 1e-10;     // "numerically zero" vector entries and norms
  double eps_cluster = 1e-8;   // eigenvalue clustering radius (angular for unitary sources)
  double eps_cmp = 1e-9;       // component comparisons in the lexicographic ordering
  double eps_conv = 1e-8;      // sequence convergence threshold (Hilbert-Schmidt)

  void validate() const {
    for (double e : {eps_unitary, eps_zero, eps_cluster, eps_cmp, eps_conv}) {
      if (!(e > 0.0) || !(e < 1e-2)) {
        throw Error("tolerance out of range (must be in (0, 1e-2)): " + std::to_string(e));
      }
    }
  }
};

// Dense square complex matrix, row-major storage. The universal carrier for
// gates, Hamilton operators and Cayley transforms.
class Matrix {
 public:
  Matrix() : n_(0) {}
  explicit Matrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, Complex{0.0, 0.0}) {
    if (n <= 0) throw Error("matrix dimension must be positive");
  }

  static Matrix identity(int n) {
    Matrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix zero(int n) { return Matrix(n); }

  static Matrix from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
    const int n = static_cast<int>(rows.size());
    Matrix m(n);
    int i = 0;
    for (const auto& row : rows) {
      if (static_cast<int>(row.size()) != n) throw Error("from_rows: ragged row");
      int j = 0;
      for (const Complex& v : row) m(i, j++) = v;
      ++i;
    }
    return m;
  }

  int dim() const { return n_; }

  Complex& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  const Complex& operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * n_ + j];
  }

  const std::vector<Complex>& entries() const { return a_; }
  std::vector<Complex>& entries() { return a_; }

  Vector col(int j) const {
    Vector v(n_);
    for (int i = 0; i < n_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  void set_col(int j, const Vector& v) {
    for (int i = 0; i < n_; ++i) (*this)(i, j) = v[i];
  }

  bool all_finite() const {
    for (const Complex& z : a_) {
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
  }

 private:
  int n_;
  std::vector<Complex> a_;
};

inline void require_same_dim(const Matrix& a, const Matrix& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw Error(std::string(op) + ": dimension mismatch (" + std::to_string(a.dim()) + " vs " +
                std::to_string(b.dim()) + ")");
  }
}

inline Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "add");
  Matrix c = a;
  for (std::size_t i = 0; i < c.entries().size(); ++i) c.entries()[i] += b.entries()[i];
  return c;
}

inline Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "subtract");
  Matrix c = a;
  for (std::size_t i = 0; i < c.entries().size(); ++i) c.entries()[i] -= b.entries()[i];
  return c;
}

inline Matrix operator*(const Complex& s, const Matrix& a) {
  Matrix c = a;
  for (Complex& z : c.entries()) z *= s;
  return c;
}

inline Matrix operator*(const Matrix& a, const Complex& s) { return s * a; }

inline Matrix operator*(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "matmul");
  const int n = a.dim();
  Matrix c(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{0.0, 0.0}) continue;
      for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

inline Matrix adjoint(const Matrix& a) {
  const int n = a.dim();
  Matrix c(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c(i, j) = std::conj(a(j, i));
  return c;
}

inline Complex trace(const Matrix& a) {
  Complex t{0.0, 0.0};
  for (int i = 0; i < a.dim(); ++i) t += a(i, i);
  return t;
}

inline Vector operator*(const Matrix& a, const Vector& x) {
  const int n = a.dim();
  if (static_cast<int>(x.size()) != n) throw Error("matvec: dimension mismatch");
  Vector y(n, Complex{0.0, 0.0});
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) y[i] += a(i, j) * x[j];
  return y;
}

// <x, y> with the convention conjugate-linear in the first argument.
inline Complex vec_dot(const Vector& x, const Vector& y) {
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
  return s;
}

inline double vec_norm(const Vector& x) {
  double s = 0.0;
  for (const Complex& z : x) s += std::norm(z);
  return std::sqrt(s);
}

// --- Hilbert-Schmidt geometry ---------------------------------------------

// tr(a b*). Conjugate-symmetric: hs_inner(a,b) = conj(hs_inner(b,a)).
inline Complex hs_inner(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "hs_inner");
  Complex s{0.0, 0.0};
  const auto& ae = a.entries();
  const auto& be = b.entries();
  for (std::size_t i = 0; i < ae.size(); ++i) s += ae[i] * std::conj(be[i]);
  return s;
}

// sqrt(tr(a a*)); the Frobenius norm of the entries.
inline double hs_norm(const Matrix& a) {
  double s = 0.0;
  for (const Complex& z : a.entries()) s += std::norm(z);
  return std::sqrt(s);
}

inline double hs_distance(const Matrix& a, const Matrix& b) {
  require_same_dim(a, b, "hs_distance");
  return hs_norm(a - b);
}

inline bool is_unitary(const Matrix& a, double eps) {
  return hs_norm(a * adjoint(a) - Matrix::identity(a.dim())) <= eps;
}

inline double unitarity_residual(const Matrix& a) {
  return hs_norm(a * adjoint(a) - Matrix::identity(a.dim()));
}

inline bool is_hermitian(const Matrix& a, double eps) { return hs_norm(a - adjoint(a)) <= eps; }

// Distance between global-phase equivalence classes:
//   d(U,V) = min over phi of ||e^{i phi}U - V|| / sqrt(2n)
// minimized in closed form at phi* = -arg(tr(U V*)), which makes the value
// equal sqrt(2n - 2|tr(U V*)|) / sqrt(2n). The norm is evaluated entrywise at
// phi* rather than through that radical: the two agree to rounding, but the
// entrywise form has no cancellation floor near zero. Result in [0, 1].
inline double phase_min_distance(const Matrix& u, const Matrix& v,
                                 const ToleranceConfig& cfg = {}) {
  require_same_dim(u, v, "phase_min_distance");
  if (!is_unitary(u, cfg.eps_unitary)) {
    throw Error("phase_min_distance: first argument is not unitary (residual " +
                std::to_string(unitarity_residual(u)) + ")");
  }
  if (!is_unitary(v, cfg.eps_unitary)) {
    throw Error("phase_min_distance: second argument is not unitary (residual " +
                std::to_string(unitarity_residual(v)) + ")");
  }
  const Complex t = hs_inner(u, v);
  const Complex best_phase = t == Complex{0.0, 0.0} ? Complex{1.0, 0.0}
                                                    : std::polar(1.0, -std::arg(t));
  return hs_norm(best_phase * u - v) / std::sqrt(2.0 * u.dim());
}

}  // namespace eigenseq
