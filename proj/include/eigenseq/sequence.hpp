#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eigenseq/complex_matrix.hpp"
#include "eigenseq/errors.hpp"
#include "eigenseq/frame.hpp"

namespace eigenseq {

// One step of the iteration U_{k+1} = F_n(U_k). Distances refer to the
// previous iterate and are absent at k = 0. The frame is absent only for a
// final state whose decomposition was not needed (or failed to build).
struct SequenceState {
  int k = 0;
  Matrix u;
  std::optional<Eigenframe> frame;
  std::optional<double> hs_dist_prev;
  std::optional<double> d_prev;
};

enum class StopReason { DistanceBelowTol, FixedPoint, MaxIterations };

inline const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::DistanceBelowTol: return "distance-below-tol";
    case StopReason::FixedPoint: return "fixed-point";
    case StopReason::MaxIterations: return "max-iterations";
  }
  return "unknown";
}

struct ConvergenceReport {
  bool converged = false;
  int steps = 0;
  double final_distance = 0.0;
  Matrix limit;
  StopReason reason = StopReason::MaxIterations;
};

// Runs U_{k+1} := F_n(U_k) from u0, recording every state with both distance
// measures, until successive iterates are within eps_conv (Hilbert-Schmidt),
// an exact fixed point is reached, or max_k steps have been taken.
inline std::pair<std::vector<SequenceState>, ConvergenceReport> iterate_sequence(
    const Matrix& u0, int max_k, const ToleranceConfig& cfg = {}) {
  if (max_k < 1) throw Error("iterate_sequence: max_k must be >= 1");
  if (!is_unitary(u0, cfg.eps_unitary)) {
    throw Error("iterate_sequence: initial matrix is not unitary (residual " +
                std::to_string(unitarity_residual(u0)) + ")");
  }
  if (phase_min_distance(u0, Matrix::identity(u0.dim()), cfg) <= cfg.eps_conv) {
    throw Error(
        "iterate_sequence: initial matrix is a global phase of identity, "
        "F_n degenerates to identity");
  }

  // Machine-exact equality threshold for the fixed-point verdict.
  const double fixed_point_tol = std::min(1e-14 * u0.dim(), cfg.eps_conv);

  std::vector<SequenceState> states;
  states.push_back({0, u0, std::nullopt, std::nullopt, std::nullopt});

  ConvergenceReport report;
  report.limit = u0;
  for (int k = 0; k < max_k; ++k) {
    states.back().frame = build_frame(states.back().u, cfg);
    Matrix next = states.back().frame->columns;
    const double hs_d = hs_distance(next, states.back().u);
    const double d = phase_min_distance(next, states.back().u, cfg);
    states.push_back({k + 1, next, std::nullopt, hs_d, d});
    report.steps = k + 1;
    report.final_distance = hs_d;
    report.limit = std::move(next);
    if (hs_d <= fixed_point_tol) {
      report.converged = true;
      report.reason = StopReason::FixedPoint;
      break;
    }
    if (hs_d <= cfg.eps_conv) {
      report.converged = true;
      report.reason = StopReason::DistanceBelowTol;
      break;
    }
    if (k + 1 == max_k) report.reason = StopReason::MaxIterations;
  }

  // Best effort decomposition of the final iterate, for inspection only.
  try {
    states.back().frame = build_frame(states.back().u, cfg);
  } catch (const Error&) {
    states.back().frame = std::nullopt;
  }
  return {std::move(states), std::move(report)};
}

// Closed-form first step for U_0 = [[a, b], [b, -a]] with a^2 + b^2 = 1 and
// b != 0; an independent check of build_frame on this family.
inline Matrix closed_form_step_2x2(double a, double b) {
  if (std::abs(a * a + b * b - 1.0) > 1e-12) {
    throw Error("closed_form_step_2x2: a^2 + b^2 must equal 1");
  }
  if (b == 0.0) {
    throw Error("closed_form_step_2x2: b must be nonzero (input already diagonal)");
  }
  const double sgn = b > 0.0 ? 1.0 : -1.0;
  Matrix u(2);
  if (a > 0.0) {
    const double ap = std::sqrt((1.0 + a) / 2.0);
    const double bp = std::sqrt((1.0 - a) / 2.0);
    u(0, 0) = ap;
    u(0, 1) = bp;
    u(1, 0) = sgn * bp;
    u(1, 1) = -sgn * ap;
  } else if (a < 0.0) {
    const double ap = std::sqrt((1.0 - a) / 2.0);
    const double bp = std::sqrt((1.0 + a) / 2.0);
    u(0, 0) = ap;
    u(0, 1) = bp;
    u(1, 0) = -sgn * bp;
    u(1, 1) = sgn * ap;
  } else {
    const double r = 1.0 / std::sqrt(2.0);
    u(0, 0) = r;
    u(0, 1) = r;
    u(1, 0) = r;
    u(1, 1) = -r;
  }
  return u;
}

}  // namespace eigenseq
