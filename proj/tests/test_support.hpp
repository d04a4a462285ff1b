#pragma once

// Shared helpers and test-only oracles. Everything here is deliberately
// independent of the library's own spectral pipeline so it can serve as a
// cross-check (grid minimization, series exponential, LU determinant).

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <utility>
#include <vector>

#include "eigenseq/complex_matrix.hpp"

namespace testsupport {

using eigenseq::Complex;
using eigenseq::Matrix;
using eigenseq::Vector;

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  double worst = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j) worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  return worst;
}

// Haar-ish random unitary: Gram-Schmidt a complex Gaussian matrix (with one
// reorthogonalization pass), then randomize column phases. Unitary to
// machine precision by construction.
inline Matrix random_unitary(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  Matrix q(n);
  std::vector<Vector> cols;
  for (int j = 0; j < n; ++j) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v[i] = Complex{gauss(rng), gauss(rng)};
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vector& b : cols) {
        const Complex c = eigenseq::vec_dot(b, v);
        for (int i = 0; i < n; ++i) v[i] -= c * b[i];
      }
    }
    const double nv = eigenseq::vec_norm(v);
    for (Complex& z : v) z /= nv;
    cols.push_back(v);
  }
  for (int j = 0; j < n; ++j) {
    const Complex phase = std::polar(1.0, angle(rng));
    for (int i = 0; i < n; ++i) q(i, j) = phase * cols[j][i];
  }
  return q;
}

inline Matrix random_diagonal_unitary(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  Matrix d(n);
  for (int i = 0; i < n; ++i) d(i, i) = std::polar(1.0, angle(rng));
  return d;
}

// Grid oracle for the phase-minimized distance: minimum over `points`
// uniformly spaced phases of ||e^{i phi} u - v|| / sqrt(2n).
inline double grid_min_distance(const Matrix& u, const Matrix& v, int points = 4096) {
  const double two_pi = 2.0 * std::numbers::pi;
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < points; ++k) {
    const double phi = two_pi * k / points;
    const double val = eigenseq::hs_norm(std::polar(1.0, phi) * u - v);
    best = std::min(best, val);
  }
  return best / std::sqrt(2.0 * u.dim());
}

// Scaling-and-squaring truncated-series exponential; independent of any
// eigendecomposition. Accurate to ~1e-12 for the norms used in tests.
inline Matrix expm_series(const Matrix& a) {
  const int n = a.dim();
  int squarings = 0;
  double norm = eigenseq::hs_norm(a);
  while (norm > 0.5 && squarings < 60) {
    norm /= 2.0;
    ++squarings;
  }
  const Complex scale{std::ldexp(1.0, -squarings), 0.0};
  const Matrix s = scale * a;
  Matrix result = Matrix::identity(n);
  Matrix term = Matrix::identity(n);
  for (int k = 1; k <= 30; ++k) {
    term = term * s;
    term = Complex{1.0 / k, 0.0} * term;
    result = result + term;
  }
  for (int k = 0; k < squarings; ++k) result = result * result;
  return result;
}

// Determinant via Gaussian elimination with partial pivoting (test-only).
inline Complex det_lu(Matrix a) {
  const int n = a.dim();
  Complex det{1.0, 0.0};
  for (int k = 0; k < n; ++k) {
    int pivot = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(pivot, k))) pivot = i;
    if (std::abs(a(pivot, k)) == 0.0) return Complex{0.0, 0.0};
    if (pivot != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(pivot, j));
      det = -det;
    }
    det *= a(k, k);
    for (int i = k + 1; i < n; ++i) {
      const Complex f = a(i, k) / a(k, k);
      for (int j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

}  // namespace testsupport
