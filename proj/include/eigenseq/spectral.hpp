#pragma once

#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "eigenseq/complex_matrix.hpp"
#include "eigenseq/errors.hpp"

namespace eigenseq {

struct EigenPair {
  Complex value;
  Vector vector;  // unit norm
};

// One eigenvalue group of a normal matrix. `value` is the eigenphase in
// [0, 2pi) for unitary sources and the (real) eigenvalue for hermitian ones.
struct EigenCluster {
  double value = 0.0;
  int multiplicity = 0;
  std::vector<Vector> basis;  // orthonormal, multiplicity many
  Matrix projector;           // sum of v v* over the basis
};

namespace detail {

inline Eigen::MatrixXcd to_eigen(const Matrix& a) {
  const int n = a.dim();
  Eigen::MatrixXcd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = a(i, j);
  return m;
}

// Modified Gram-Schmidt with one reorthogonalization pass. Vectors whose
// residual norm falls at or below `eps_zero` are dropped.
inline std::vector<Vector> orthonormalize(const std::vector<Vector>& input, double eps_zero) {
  std::vector<Vector> basis;
  for (const Vector& x : input) {
    Vector v = x;
    for (int pass = 0; pass < 2; ++pass) {
      for (const Vector& b : basis) {
        const Complex c = vec_dot(b, v);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * b[i];
      }
    }
    const double nv = vec_norm(v);
    if (nv > eps_zero) {
      for (Complex& z : v) z /= nv;
      basis.push_back(std::move(v));
    }
  }
  return basis;
}

inline double wrap_to_two_pi(double theta) {
  const double two_pi = 2.0 * std::numbers::pi;
  double t = std::fmod(theta, two_pi);
  if (t < 0.0) t += two_pi;
  if (t >= two_pi) t = 0.0;
  return t;
}

}  // namespace detail

// Eigendecomposition of a normal matrix via a complex Schur reduction: for
// normal input the Schur factor is numerically diagonal, so the (exactly
// orthonormal) Schur basis is an eigenbasis with O(n*eps*||a||) residuals.
inline std::vector<EigenPair> eig_normal(const Matrix& a) {
  const int n = a.dim();
  const double scale = std::max(1.0, hs_norm(a) * hs_norm(a));
  const double residual = hs_norm(a * adjoint(a) - adjoint(a) * a);
  if (residual > 1e-9 * scale) {
    throw Error("eig_normal: input is not normal (commutator residual " +
                std::to_string(residual) + ")");
  }
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(detail::to_eigen(a), /*computeU=*/true);
  if (schur.info() != Eigen::Success) {
    throw Error("eig_normal: Schur iteration failed to converge");
  }
  std::vector<EigenPair> pairs(n);
  for (int j = 0; j < n; ++j) {
    pairs[j].value = schur.matrixT()(j, j);
    pairs[j].vector.resize(n);
    for (int i = 0; i < n; ++i) pairs[j].vector[i] = schur.matrixU()(i, j);
  }
  return pairs;
}

// Groups eigenvalues by single-linkage chaining with radius eps_cluster:
// circular angular distance on eigenphases for unitary sources, plain real
// distance for hermitian ones. Cluster bases are re-orthonormalized before
// the projector is assembled, so downstream results depend on the projector
// only, never on the eigensolver's ordering or phase choices.
inline std::vector<EigenCluster> cluster_eigenvalues(const std::vector<EigenPair>& pairs,
                                                     bool unitary_source,
                                                     const ToleranceConfig& cfg = {}) {
  const int m = static_cast<int>(pairs.size());
  if (m == 0) throw Error("cluster_eigenvalues: no eigenpairs");
  const int n = static_cast<int>(pairs[0].vector.size());
  const double two_pi = 2.0 * std::numbers::pi;

  std::vector<double> key(m);
  for (int i = 0; i < m; ++i) {
    key[i] = unitary_source ? detail::wrap_to_two_pi(std::arg(pairs[i].value))
                            : pairs[i].value.real();
  }
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return key[i] < key[j]; });

  // Runs of consecutive (circularly, for unitary sources) close keys.
  std::vector<std::vector<int>> groups;
  std::vector<double> spans;
  if (unitary_source) {
    std::vector<double> gap(m);  // gap[i] = distance from order[i] to its successor
    for (int i = 0; i + 1 < m; ++i) gap[i] = key[order[i + 1]] - key[order[i]];
    gap[m - 1] = key[order[0]] + two_pi - key[order[m - 1]];
    std::vector<int> breaks;
    for (int i = 0; i < m; ++i)
      if (gap[i] > cfg.eps_cluster) breaks.push_back(i);
    if (breaks.empty()) {
      // Everything chains around the full circle.
      groups.emplace_back(order);
      double g = 0.0;
      for (int i = 0; i < m; ++i) g += gap[i];
      spans.push_back(m == 1 ? 0.0 : g - *std::max_element(gap.begin(), gap.end()));
    } else {
      for (std::size_t b = 0; b < breaks.size(); ++b) {
        const int start = (breaks[(b + breaks.size() - 1) % breaks.size()] + 1) % m;
        std::vector<int> run;
        double span = 0.0;
        int j = start;
        while (true) {
          run.push_back(order[j]);
          if (j == breaks[b]) break;
          span += gap[j];
          j = (j + 1) % m;
        }
        groups.push_back(std::move(run));
        spans.push_back(span);
      }
    }
  } else {
    std::vector<int> run{order[0]};
    for (int i = 1; i < m; ++i) {
      if (key[order[i]] - key[order[i - 1]] > cfg.eps_cluster) {
        groups.push_back(run);
        spans.push_back(key[run.back()] - key[run.front()]);
        run.clear();
      }
      run.push_back(order[i]);
    }
    groups.push_back(run);
    spans.push_back(key[run.back()] - key[run.front()]);
  }

  std::vector<EigenCluster> clusters;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (spans[g] > 10.0 * cfg.eps_cluster) {
      throw Error("cluster_eigenvalues: ill-conditioned clustering, eigenvalue chain spans " +
                  std::to_string(spans[g]) + " (> 10*eps_cluster)");
    }
    EigenCluster c;
    if (unitary_source) {
      Complex mean{0.0, 0.0};
      for (int idx : groups[g]) mean += std::polar(1.0, key[idx]);
      c.value = detail::wrap_to_two_pi(std::arg(mean));
    } else {
      double s = 0.0;
      for (int idx : groups[g]) s += key[idx];
      c.value = s / static_cast<double>(groups[g].size());
    }
    std::vector<Vector> members;
    for (int idx : groups[g]) members.push_back(pairs[idx].vector);
    c.basis = detail::orthonormalize(members, cfg.eps_zero);
    if (c.basis.size() != members.size()) {
      throw Error("cluster_eigenvalues: cluster basis is numerically rank deficient");
    }
    c.multiplicity = static_cast<int>(c.basis.size());
    c.projector = Matrix(n);
    for (const Vector& b : c.basis) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) c.projector(i, j) += b[i] * std::conj(b[j]);
    }
    clusters.push_back(std::move(c));
  }
  std::stable_sort(clusters.begin(), clusters.end(),
                   [](const EigenCluster& a, const EigenCluster& b) { return a.value < b.value; });
  return clusters;
}

// Modified Gram-Schmidt applied to the projected standard basis
// {P e_1, ..., P e_n} in index order, discarding numerically zero vectors.
// Depends on the cluster only through its projector.
inline std::vector<Vector> gram_schmidt_projected(const EigenCluster& cluster,
                                                  const ToleranceConfig& cfg = {}) {
  const int n = cluster.projector.dim();
  std::vector<Vector> projected;
  projected.reserve(n);
  for (int j = 0; j < n; ++j) projected.push_back(cluster.projector.col(j));
  std::vector<Vector> basis = detail::orthonormalize(projected, cfg.eps_zero);
  if (static_cast<int>(basis.size()) != cluster.multiplicity) {
    throw Error("gram_schmidt_projected: produced " + std::to_string(basis.size()) +
                " vectors for a cluster of multiplicity " +
                std::to_string(cluster.multiplicity));
  }
  return basis;
}

}  // namespace eigenseq
