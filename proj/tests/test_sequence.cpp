#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "eigenseq/gates.hpp"
#include "eigenseq/sequence.hpp"
#include "test_support.hpp"

using namespace eigenseq;
using testsupport::max_abs_diff;

namespace {
const double kSqrt2 = std::numbers::sqrt2;

Matrix sigma_x_chain_u2() {
  const double ra = std::sqrt(4.0 + 2.0 * kSqrt2) / std::sqrt(8.0);
  const double rb = std::sqrt(4.0 - 2.0 * kSqrt2) / std::sqrt(8.0);
  return Matrix::from_rows({{ra, rb}, {rb, -ra}});
}
}  // namespace

TEST_CASE("iterating from sigma_x walks the Hadamard chain toward sigma_z") {
  const auto [states, report] = iterate_sequence(gates::sigma_x(), 60);
  REQUIRE(states.size() >= 3);
  CHECK(max_abs_diff(states[1].u, gates::hadamard()) < 1e-12);
  CHECK(max_abs_diff(states[2].u, sigma_x_chain_u2()) < 1e-12);

  CHECK(*states[1].hs_dist_prev ==
        Catch::Approx(std::sqrt(4.0 - 2.0 * kSqrt2)).margin(1e-12));
  const double ra = std::sqrt(4.0 + 2.0 * kSqrt2);
  const double rb = std::sqrt(4.0 - 2.0 * kSqrt2);
  CHECK(*states[2].hs_dist_prev == Catch::Approx(std::sqrt(4.0 - ra - rb)).margin(1e-12));

  CHECK(report.converged);
  CHECK(report.reason == StopReason::DistanceBelowTol);
  CHECK(max_abs_diff(report.limit, gates::sigma_z()) < 1e-7);
}

TEST_CASE("iterating from the Hadamard gate gives the same chain shifted by one") {
  const auto [states, report] = iterate_sequence(gates::hadamard(), 60);
  REQUIRE(states.size() >= 2);
  CHECK(max_abs_diff(states[1].u, sigma_x_chain_u2()) < 1e-12);
  const double ra = std::sqrt(4.0 + 2.0 * kSqrt2);
  const double rb = std::sqrt(4.0 - 2.0 * kSqrt2);
  CHECK(*states[1].hs_dist_prev == Catch::Approx(std::sqrt(4.0 - ra - rb)).margin(1e-12));
  CHECK(report.converged);
}

TEST_CASE("the [[a,b],[b,-a]] family with a >= 0, b > 0 converges to sigma_z") {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  ToleranceConfig cfg;
  cfg.eps_conv = 1e-9;
  for (int trial = 0; trial < 25; ++trial) {
    const double a = uniform(rng);
    const double b = std::sqrt(1.0 - a * a);
    if (b == 0.0) continue;
    const Matrix u0 = Matrix::from_rows({{a, b}, {b, -a}});
    const auto [states, report] = iterate_sequence(u0, 60, cfg);
    CHECK(report.converged);
    CHECK(report.steps <= 60);
    CHECK(hs_distance(report.limit, gates::sigma_z()) <= 1e-8);
  }
}

TEST_CASE("top-left entries follow the scalar recurrence a' = sqrt((1+a)/2)") {
  const Matrix u0 = Matrix::from_rows({{0.28, 0.96}, {0.96, -0.28}});
  const auto [states, report] = iterate_sequence(u0, 40);
  REQUIRE(states.size() >= 5);
  for (std::size_t k = 0; k + 1 < states.size(); ++k) {
    const double a_k = states[k].u(0, 0).real();
    const double a_next = states[k + 1].u(0, 0).real();
    REQUIRE(a_k >= 0.0);
    CHECK(std::abs(a_next - std::sqrt((1.0 + a_k) / 2.0)) < 1e-10);
    // Stays in the family while b > 0.
    CHECK(std::abs(states[k].u(0, 1) - states[k].u(1, 0)) < 1e-12);
    CHECK(std::abs(states[k].u(0, 0) + states[k].u(1, 1)) < 1e-12);
  }
}

TEST_CASE("sequences store both distance measures at every step") {
  const auto [states, report] = iterate_sequence(gates::sigma_y(), 50);
  CHECK_FALSE(states[0].hs_dist_prev.has_value());
  CHECK_FALSE(states[0].d_prev.has_value());
  for (std::size_t k = 1; k < states.size(); ++k) {
    REQUIRE(states[k].hs_dist_prev.has_value());
    REQUIRE(states[k].d_prev.has_value());
    CHECK(*states[k].hs_dist_prev >= 0.0);
    CHECK(*states[k].d_prev >= 0.0);
    CHECK(*states[k].d_prev <= 1.0 + 1e-12);
  }
  // Every recorded state carries its frame (the final one best effort).
  for (const auto& s : states) CHECK(s.frame.has_value());
}

TEST_CASE("global phases of the identity are rejected") {
  CHECK_THROWS_WITH(iterate_sequence(Matrix::identity(3), 10),
                    Catch::Matchers::ContainsSubstring("global phase of identity"));
  const Complex phase = std::polar(1.0, 1.234);
  CHECK_THROWS_AS(iterate_sequence(phase * Matrix::identity(4), 10), Error);
  CHECK_THROWS_AS(iterate_sequence(gates::sigma_x(), 0), Error);
  Matrix notunitary(2);
  notunitary(0, 0) = 2.0;
  CHECK_THROWS_AS(iterate_sequence(notunitary, 10), Error);
}

TEST_CASE("a diagonal start hits the identity fixed point") {
  Matrix d(2);
  d(0, 0) = std::polar(1.0, 0.4);
  d(1, 1) = std::polar(1.0, 2.5);
  const auto [states, report] = iterate_sequence(d, 10);
  // F(diag) = I, then F(I) = I exactly.
  REQUIRE(states.size() == 3);
  CHECK(max_abs_diff(states[1].u, Matrix::identity(2)) < 1e-14);
  CHECK(report.converged);
  CHECK(report.reason == StopReason::FixedPoint);
  CHECK(report.final_distance == 0.0);
}

TEST_CASE("max-iterations is reported when the budget runs out") {
  const auto [states, report] = iterate_sequence(gates::sigma_x(), 3);
  CHECK_FALSE(report.converged);
  CHECK(report.reason == StopReason::MaxIterations);
  CHECK(report.steps == 3);
  CHECK(states.size() == 4);
}
