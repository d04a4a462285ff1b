#pragma once

#include <string>

#include "eigenseq/complex_matrix.hpp"
#include "eigenseq/errors.hpp"
#include "eigenseq/frame.hpp"

namespace eigenseq {

// Kronecker product: block (i, j) of the result is a_ij * b.
inline Matrix kronecker(const Matrix& a, const Matrix& b) {
  const int m = a.dim();
  const int n = b.dim();
  Matrix c(m * n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{0.0, 0.0}) continue;
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) c(i * n + p, j * n + q) = aij * b(p, q);
    }
  return c;
}

// Direct sum: block-diagonal stacking diag(a, b).
inline Matrix direct_sum(const Matrix& a, const Matrix& b) {
  const int m = a.dim();
  const int n = b.dim();
  Matrix c(m + n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) c(i, j) = a(i, j);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c(m + i, m + j) = b(i, j);
  return c;
}

// Star product of a 2x2 matrix with an nxn matrix: a's entries on the four
// corners, b in the central block, zeros elsewhere.
inline Matrix star(const Matrix& a, const Matrix& b) {
  if (a.dim() != 2) {
    throw Error("star: left factor must be 2x2 (general star products are not defined)");
  }
  const int n = b.dim();
  Matrix c(n + 2);
  c(0, 0) = a(0, 0);
  c(0, n + 1) = a(0, 1);
  c(n + 1, 0) = a(1, 0);
  c(n + 1, n + 1) = a(1, 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) c(1 + i, 1 + j) = b(i, j);
  return c;
}

enum class CompositionKind { Kronecker, DirectSum, Star };

inline const char* to_string(CompositionKind k) {
  switch (k) {
    case CompositionKind::Kronecker: return "kronecker";
    case CompositionKind::DirectSum: return "direct_sum";
    case CompositionKind::Star: return "star";
  }
  return "unknown";
}

inline Matrix apply_composition(CompositionKind kind, const Matrix& a, const Matrix& b) {
  switch (kind) {
    case CompositionKind::Kronecker: return kronecker(a, b);
    case CompositionKind::DirectSum: return direct_sum(a, b);
    case CompositionKind::Star: return star(a, b);
  }
  throw Error("apply_composition: unknown kind");
}

// Evidence for/against F distributing over a composition. The construction
// guarantees nothing here; the report carries both sides and the residual.
struct DistributivityReport {
  CompositionKind kind = CompositionKind::DirectSum;
  Matrix lhs;        // F(a op b)
  Matrix rhs;        // F(a) op F(b)
  double residual = 0.0;
  bool holds = false;
};

inline DistributivityReport check_distributivity(CompositionKind kind, const Matrix& ua,
                                                 const Matrix& ub, double tol,
                                                 const ToleranceConfig& cfg = {}) {
  DistributivityReport report;
  report.kind = kind;
  report.lhs = build_frame(apply_composition(kind, ua, ub), cfg).columns;
  report.rhs = apply_composition(kind, build_frame(ua, cfg).columns, build_frame(ub, cfg).columns);
  report.residual = hs_distance(report.lhs, report.rhs);
  report.holds = report.residual <= tol;
  return report;
}

}  // namespace eigenseq
