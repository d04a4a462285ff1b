#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "eigenseq/complex_matrix.hpp"
#include "eigenseq/errors.hpp"
#include "eigenseq/frame.hpp"
#include "eigenseq/spectral.hpp"

namespace eigenseq {

// Hermitian H with U = exp(-iH); eigenvalues lie in (-2pi, 0] since the
// eigenphases are taken in [0, 2pi).
struct HamiltonOperator {
  Matrix h;
};

namespace detail {

// Solves a x = b columnwise by Gaussian elimination with partial pivoting.
inline Matrix solve_columns(Matrix a, Matrix b) {
  const int n = a.dim();
  for (int k = 0; k < n; ++k) {
    int pivot = k;
    double best = std::abs(a(k, k));
    for (int i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > best) {
        best = std::abs(a(i, k));
        pivot = i;
      }
    }
    if (best == 0.0) throw Error("solve_columns: singular matrix");
    if (pivot != k) {
      for (int j = 0; j < n; ++j) {
        std::swap(a(k, j), a(pivot, j));
        std::swap(b(k, j), b(pivot, j));
      }
    }
    for (int i = k + 1; i < n; ++i) {
      const Complex f = a(i, k) / a(k, k);
      if (f == Complex{0.0, 0.0}) continue;
      for (int j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      for (int j = 0; j < n; ++j) b(i, j) -= f * b(k, j);
    }
  }
  Matrix x(n);
  for (int j = 0; j < n; ++j) {
    for (int i = n - 1; i >= 0; --i) {
      Complex s = b(i, j);
      for (int k = i + 1; k < n; ++k) s -= a(i, k) * x(k, j);
      x(i, j) = s / a(i, i);
    }
  }
  return x;
}

inline Matrix from_spectrum(const Eigenframe& frame, const std::vector<Complex>& diag) {
  const int n = frame.dim();
  Matrix scaled = frame.columns;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) scaled(i, j) *= diag[j];
  return scaled * adjoint(frame.columns);
}

}  // namespace detail

// H = F diag(-theta_1, ..., -theta_n) F*.
inline HamiltonOperator hamiltonian_from_frame(const Eigenframe& frame) {
  if (!frame.unitary_source) {
    throw Error("hamiltonian_from_frame: frame comes from a hermitian source; "
                "Hamilton operators are defined for unitary sources only");
  }
  std::vector<Complex> diag(frame.phases.size());
  for (std::size_t j = 0; j < diag.size(); ++j) diag[j] = -frame.phases[j];
  return {detail::from_spectrum(frame, diag)};
}

// exp(-iH), computed spectrally: eigendecompose H, exponentiate the phases,
// reassemble. The result is unitary.
inline Matrix unitary_from_hamiltonian(const HamiltonOperator& ham) {
  if (!is_hermitian(ham.h, 1e-9)) {
    throw Error("unitary_from_hamiltonian: matrix is not hermitian (residual " +
                std::to_string(hs_norm(ham.h - adjoint(ham.h))) + ")");
  }
  const int n = ham.h.dim();
  Matrix u(n);
  for (const EigenPair& p : eig_normal(ham.h)) {
    const Complex phase = std::polar(1.0, -p.value.real());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) u(i, j) += phase * p.vector[i] * std::conj(p.vector[j]);
  }
  return u;
}

// V = (H - iI)(H + iI)^{-1}, evaluated by solving (H + iI) X = (H - iI)
// columnwise (the factors commute). +1 is never an eigenvalue of V.
inline Matrix cayley_rational(const Matrix& h) {
  if (!is_hermitian(h, 1e-9)) {
    throw Error("cayley_rational: matrix is not hermitian (residual " +
                std::to_string(hs_norm(h - adjoint(h))) + ")");
  }
  const int n = h.dim();
  const Complex i_unit{0.0, 1.0};
  Matrix plus = h;
  Matrix minus = h;
  for (int k = 0; k < n; ++k) {
    plus(k, k) += i_unit;
    minus(k, k) -= i_unit;
  }
  return detail::solve_columns(plus, minus);
}

// V = -F diag((i + theta_j)/(i - theta_j)) F*; agrees with the rational form
// applied to the frame's Hamilton operator.
inline Matrix cayley_spectral(const Eigenframe& frame) {
  if (!frame.unitary_source) {
    throw Error("cayley_spectral: frame comes from a hermitian source");
  }
  const Complex i_unit{0.0, 1.0};
  std::vector<Complex> diag(frame.phases.size());
  for (std::size_t j = 0; j < diag.size(); ++j) {
    diag[j] = -(i_unit + frame.phases[j]) / (i_unit - frame.phases[j]);
  }
  return detail::from_spectrum(frame, diag);
}

}  // namespace eigenseq
