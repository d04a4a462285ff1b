#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "eigenseq/complex_matrix.hpp"
#include "eigenseq/compose.hpp"
#include "eigenseq/errors.hpp"

namespace eigenseq::gates {

inline Matrix sigma_x() { return Matrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}); }

inline Matrix sigma_y() {
  return Matrix::from_rows({{0.0, Complex{0.0, -1.0}}, {Complex{0.0, 1.0}, 0.0}});
}

inline Matrix sigma_z() { return Matrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}); }

inline Matrix not_gate() { return sigma_x(); }

inline Matrix hadamard() {
  const double r = 1.0 / std::sqrt(2.0);
  return Matrix::from_rows({{r, r}, {r, -r}});
}

inline Matrix phase(double phi) {
  if (!std::isfinite(phi)) throw Error("phase gate: angle must be finite");
  return Matrix::from_rows({{1.0, 0.0}, {0.0, std::polar(1.0, phi)}});
}

inline Matrix cnot() { return direct_sum(Matrix::identity(2), sigma_x()); }

inline Matrix toffoli() { return direct_sum(Matrix::identity(6), sigma_x()); }

inline Matrix fredkin() {
  return direct_sum(Matrix::identity(1), direct_sum(sigma_x(), Matrix::identity(5)));
}

// Hermitian SO(1,1) boost [[cosh a, sinh a], [sinh a, cosh a]]; determinant 1.
inline Matrix so11_boost(double alpha) {
  if (!std::isfinite(alpha)) throw Error("so11_boost: alpha must be finite");
  if (std::abs(alpha) > 300.0) {
    throw Error("so11_boost: |alpha| > 300 overflows double precision");
  }
  const double c = std::cosh(alpha);
  const double s = std::sinh(alpha);
  return Matrix::from_rows({{c, s}, {s, c}});
}

// The 8x8 teleportation circuit, accumulated left to right over the factor
// list U_8 U_7 U_6 U_5 U_4 U_3 U_2 U_1.
inline Matrix teleport() {
  const Matrix i2 = Matrix::identity(2);
  const Matrix i4 = Matrix::identity(4);
  const Matrix h = hadamard();
  const Matrix u1 = kronecker(i2, kronecker(h, i2));
  const Matrix u2 = kronecker(i2, cnot());
  const Matrix u3 = kronecker(cnot(), i2);
  const Matrix u4 = kronecker(h, kronecker(i2, i2));
  const Matrix u5 = kronecker(i2, cnot());
  const Matrix u6 = kronecker(i2, kronecker(i2, h));
  const Matrix u7 = direct_sum(i4, direct_sum(not_gate(), not_gate()));
  const Matrix u8 = kronecker(i2, kronecker(i2, h));
  return u8 * u7 * u6 * u5 * u4 * u3 * u2 * u1;
}

// Resolves a CLI gate name: phase:<phi>, not, hadamard, sigmax, sigmay,
// sigmaz, cnot, toffoli, fredkin, teleport, boost:<alpha>. Returns nullopt
// for anything else.
inline std::optional<Matrix> by_name(std::string_view name) {
  const auto parse_param = [&](std::string_view prefix) -> std::optional<double> {
    if (name.size() <= prefix.size() || name.substr(0, prefix.size()) != prefix) {
      return std::nullopt;
    }
    const std::string arg(name.substr(prefix.size()));
    try {
      std::size_t used = 0;
      const double v = std::stod(arg, &used);
      if (used != arg.size() || !std::isfinite(v)) return std::nullopt;
      return v;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  };
  if (auto phi = parse_param("phase:")) return phase(*phi);
  if (auto alpha = parse_param("boost:")) return so11_boost(*alpha);
  if (name == "not") return not_gate();
  if (name == "hadamard") return hadamard();
  if (name == "sigmax") return sigma_x();
  if (name == "sigmay") return sigma_y();
  if (name == "sigmaz") return sigma_z();
  if (name == "cnot") return cnot();
  if (name == "toffoli") return toffoli();
  if (name == "fredkin") return fredkin();
  if (name == "teleport") return teleport();
  return std::nullopt;
}

}  // namespace eigenseq::gates
