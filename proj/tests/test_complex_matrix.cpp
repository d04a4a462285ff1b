#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "eigenseq/complex_matrix.hpp"
#include "eigenseq/gates.hpp"
#include "test_support.hpp"

using namespace eigenseq;
using testsupport::grid_min_distance;
using testsupport::max_abs_diff;
using testsupport::random_unitary;

namespace {
const double kSqrt2 = std::numbers::sqrt2;
const Complex kI{0.0, 1.0};
}  // namespace

TEST_CASE("hs_inner examples") {
  CHECK(std::abs(hs_inner(Matrix::identity(2), Matrix::identity(2)) - Complex{2.0, 0.0}) < 1e-15);
  CHECK(std::abs(hs_inner(gates::sigma_x(), gates::hadamard()) - Complex{kSqrt2, 0.0}) < 1e-15);
  CHECK(std::abs(hs_inner(gates::sigma_x(), gates::sigma_z())) < 1e-15);
  CHECK_THROWS_AS(hs_inner(Matrix::identity(2), Matrix::identity(3)), Error);
}

TEST_CASE("hs_inner conjugate symmetry on random matrices") {
  std::mt19937_64 rng(101);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);
    Matrix a(n), b(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        a(i, j) = Complex{gauss(rng), gauss(rng)};
        b(i, j) = Complex{gauss(rng), gauss(rng)};
      }
    const Complex ab = hs_inner(a, b);
    const Complex ba = hs_inner(b, a);
    CHECK(std::abs(ab - std::conj(ba)) <= 1e-14 * std::max(1.0, std::abs(ab)));
  }
}

TEST_CASE("hs_norm examples") {
  for (int n : {1, 2, 5, 16}) {
    CHECK(hs_norm(Matrix::identity(n)) == Catch::Approx(std::sqrt(double(n))).epsilon(1e-14));
  }
  CHECK(hs_norm(gates::sigma_x() - gates::hadamard()) ==
        Catch::Approx(std::sqrt(4.0 - 2.0 * kSqrt2)).margin(1e-14));
  CHECK(hs_norm(Matrix::zero(3)) == 0.0);
}

TEST_CASE("hs_distance examples") {
  const Matrix h = gates::hadamard();
  CHECK(hs_distance(h, h) == 0.0);

  // Second-step distance of the sigma_x chain.
  const double ra = std::sqrt(4.0 + 2.0 * kSqrt2);
  const double rb = std::sqrt(4.0 - 2.0 * kSqrt2);
  Matrix u2(2);
  u2(0, 0) = ra / std::sqrt(8.0);
  u2(0, 1) = rb / std::sqrt(8.0);
  u2(1, 0) = rb / std::sqrt(8.0);
  u2(1, 1) = -ra / std::sqrt(8.0);
  CHECK(hs_distance(h, u2) == Catch::Approx(std::sqrt(4.0 - ra - rb)).margin(1e-14));

  // Brute-force entrywise oracle for ||sigma_x - sigma_z||.
  const Matrix diff = gates::sigma_x() - gates::sigma_z();
  double sum = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) sum += std::norm(diff(i, j));
  CHECK(std::sqrt(sum) == Catch::Approx(2.0).margin(1e-15));
  CHECK(hs_distance(gates::sigma_x(), gates::sigma_z()) == Catch::Approx(2.0).margin(1e-14));

  CHECK_THROWS_AS(hs_distance(Matrix::identity(2), Matrix::identity(4)), Error);
}

TEST_CASE("phase_min_distance examples") {
  const Matrix h = gates::hadamard();
  for (double phi : {0.1, 1.0, 3.0, 6.0}) {
    CHECK(phase_min_distance(std::polar(1.0, phi) * h, h) < 1e-12);
  }
  CHECK(phase_min_distance(gates::sigma_x(), gates::sigma_z()) == Catch::Approx(1.0).margin(1e-14));
  CHECK(phase_min_distance(gates::sigma_y(), kI * gates::sigma_y()) < 1e-12);

  // Non-unitary input names the offending argument.
  Matrix d(2);
  d(0, 0) = 1.0;
  d(1, 1) = 2.0;
  CHECK_THROWS_WITH(phase_min_distance(d, h), Catch::Matchers::ContainsSubstring("first"));
  CHECK_THROWS_WITH(phase_min_distance(h, d), Catch::Matchers::ContainsSubstring("second"));
}

TEST_CASE("phase_min_distance matches the 4096-point grid oracle") {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const Matrix u = random_unitary(rng, n);
    const Matrix v = random_unitary(rng, n);
    CHECK(std::abs(phase_min_distance(u, v) - grid_min_distance(u, v)) < 1e-3);
  }
}

TEST_CASE("norm of U - e^{i phi} U follows the 2n(1 - cos phi) identity") {
  std::mt19937_64 rng(303);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  for (int trial = 0; trial < 25; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);
    const Matrix u = random_unitary(rng, n);
    const double phi = angle(rng);
    const double lhs = std::pow(hs_norm(u - std::polar(1.0, phi) * u), 2);
    const double rhs = 2.0 * n - 2.0 * n * std::cos(phi);
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("unitarity predicates") {
  CHECK(is_unitary(gates::hadamard(), 1e-10));
  Matrix d(2);
  d(0, 0) = 1.0;
  d(1, 1) = 2.0;
  CHECK_FALSE(is_unitary(d, 1e-10));
  CHECK_FALSE(is_unitary(gates::so11_boost(1.0), 1e-10));
}

TEST_CASE("product of unitaries stays unitary") {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 15);
    const Matrix u = random_unitary(rng, n);
    const Matrix v = random_unitary(rng, n);
    REQUIRE(unitarity_residual(u) <= 1e-13);
    REQUIRE(unitarity_residual(v) <= 1e-13);
    CHECK(unitarity_residual(u * v) <= 1e-12);
  }
}

TEST_CASE("hermiticity predicates") {
  CHECK(is_hermitian(gates::sigma_y(), 1e-12));
  const double pi = std::numbers::pi;
  Matrix h0(2);  // Hamilton operator of sigma_x
  h0(0, 0) = -pi / 2;
  h0(0, 1) = pi / 2;
  h0(1, 0) = pi / 2;
  h0(1, 1) = -pi / 2;
  CHECK(is_hermitian(h0, 1e-12));
  CHECK_FALSE(is_hermitian(gates::phase(std::numbers::pi / 3.0), 1e-12));
}

TEST_CASE("tolerance config validation") {
  ToleranceConfig good;
  CHECK_NOTHROW(good.validate());
  ToleranceConfig bad = good;
  bad.eps_conv = 0.0;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = good;
  bad.eps_cluster = 0.5;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_CASE("matrix arithmetic basics") {
  const Matrix x = gates::sigma_x();
  const Matrix z = gates::sigma_z();
  CHECK(max_abs_diff(x * x, Matrix::identity(2)) < 1e-15);
  // sigma_x sigma_z = -i sigma_y
  CHECK(max_abs_diff(x * z, Complex{0.0, -1.0} * gates::sigma_y()) < 1e-15);
  CHECK(max_abs_diff(adjoint(gates::sigma_y()), gates::sigma_y()) < 1e-15);
  CHECK(std::abs(trace(z)) < 1e-15);
  CHECK_THROWS_AS(x * Matrix::identity(3), Error);
  CHECK_THROWS_AS(Matrix(0), Error);
}
