#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "eigenseq/complex_matrix.hpp"
#include "eigenseq/errors.hpp"
#include "eigenseq/frame.hpp"
#include "eigenseq/hamiltonian.hpp"
#include "eigenseq/sequence.hpp"
#include "eigenseq/spectral.hpp"

namespace eigenseq {

// 17 significant decimal digits: enough for a bit-exact double round trip,
// and byte-deterministic across runs.
inline std::string fmt_double(double v) {
  if (!std::isfinite(v)) throw Error("serialization: refusing to emit a non-finite number");
  if (v == 0.0 && std::signbit(v)) return "-0.0";  // "-0" would re-parse as integer zero
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string json_complex(const Complex& z) {
  return "[" + fmt_double(z.real()) + "," + fmt_double(z.imag()) + "]";
}

// {"n":N,"entries":[[[re,im],...],...]} with row-major rows.
inline std::string matrix_to_json(const Matrix& m) {
  std::string out = "{\"n\":" + std::to_string(m.dim()) + ",\"entries\":[";
  for (int i = 0; i < m.dim(); ++i) {
    if (i) out += ',';
    out += '[';
    for (int j = 0; j < m.dim(); ++j) {
      if (j) out += ',';
      out += json_complex(m(i, j));
    }
    out += ']';
  }
  out += "]}";
  return out;
}

inline Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("matrix: expected a JSON object");
  if (!j.contains("n") || !j["n"].is_number_integer()) {
    throw ParseError("matrix: missing integer field \"n\"");
  }
  const long long n = j["n"].get<long long>();
  if (n < 1 || n > 4096) throw ParseError("matrix: \"n\" out of range");
  if (!j.contains("entries") || !j["entries"].is_array() ||
      j["entries"].size() != static_cast<std::size_t>(n)) {
    throw ParseError("matrix: \"entries\" must be an array of n rows");
  }
  Matrix m(static_cast<int>(n));
  for (int i = 0; i < n; ++i) {
    const auto& row = j["entries"][i];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(n)) {
      throw ParseError("matrix: row " + std::to_string(i) + " must have n entries");
    }
    for (int jj = 0; jj < n; ++jj) {
      const auto& e = row[jj];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw ParseError("matrix: entry (" + std::to_string(i) + "," + std::to_string(jj) +
                         ") must be a [re, im] pair");
      }
      m(i, jj) = Complex{e[0].get<double>(), e[1].get<double>()};
    }
  }
  if (!m.all_finite()) throw ParseError("matrix: entries must be finite");
  return m;
}

inline Matrix matrix_from_json_text(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw ParseError("matrix: malformed JSON");
  return matrix_from_json(j);
}

inline std::string json_vector_list(const std::vector<Vector>& vs) {
  std::string out = "[";
  for (std::size_t k = 0; k < vs.size(); ++k) {
    if (k) out += ',';
    out += '[';
    for (std::size_t i = 0; i < vs[k].size(); ++i) {
      if (i) out += ',';
      out += json_complex(vs[k][i]);
    }
    out += ']';
  }
  out += ']';
  return out;
}

inline std::string frame_to_json(const Eigenframe& f) {
  std::string out = "{\"columns\":" + matrix_to_json(f.columns) + ",\"phases\":[";
  for (std::size_t j = 0; j < f.phases.size(); ++j) {
    if (j) out += ',';
    out += fmt_double(f.phases[j]);
  }
  out += "],\"permutation\":[";
  for (std::size_t j = 0; j < f.permutation.size(); ++j) {
    if (j) out += ',';
    out += std::to_string(f.permutation[j]);
  }
  out += "],\"source\":\"";
  out += f.unitary_source ? "unitary" : "hermitian";
  out += "\"}";
  return out;
}

inline std::string clusters_to_json(const std::vector<EigenCluster>& clusters) {
  std::string out = "[";
  for (std::size_t c = 0; c < clusters.size(); ++c) {
    if (c) out += ',';
    out += "{\"phase\":" + fmt_double(clusters[c].value) +
           ",\"multiplicity\":" + std::to_string(clusters[c].multiplicity) +
           ",\"basis\":" + json_vector_list(clusters[c].basis) + "}";
  }
  out += ']';
  return out;
}

struct EmitFlags {
  bool frames = false;
  bool hamiltonians = false;
  bool cayleys = false;
  bool spectra = false;
};

inline std::string state_to_json(const SequenceState& s, const EmitFlags& emit,
                                 const ToleranceConfig& cfg) {
  std::string out = "{\"k\":" + std::to_string(s.k) + ",\"u\":" + matrix_to_json(s.u);
  if (s.hs_dist_prev) out += ",\"hs_dist_prev\":" + fmt_double(*s.hs_dist_prev);
  if (s.d_prev) out += ",\"d_prev\":" + fmt_double(*s.d_prev);
  if (emit.frames && s.frame) out += ",\"frame\":" + frame_to_json(*s.frame);
  if (emit.hamiltonians && s.frame && s.frame->unitary_source) {
    out += ",\"hamiltonian\":" + matrix_to_json(hamiltonian_from_frame(*s.frame).h);
  }
  if (emit.cayleys && s.frame && s.frame->unitary_source) {
    out += ",\"cayley\":" + matrix_to_json(cayley_spectral(*s.frame));
  }
  if (emit.spectra) {
    const bool unitary_src = is_unitary(s.u, cfg.eps_unitary);
    out += ",\"spectrum\":" + clusters_to_json(cluster_eigenvalues(eig_normal(s.u), unitary_src, cfg));
  }
  out += '}';
  return out;
}

inline std::string report_to_json(const ConvergenceReport& r) {
  std::string out = "{\"converged\":";
  out += r.converged ? "true" : "false";
  out += ",\"steps\":" + std::to_string(r.steps) +
         ",\"final_distance\":" + fmt_double(r.final_distance) + ",\"reason\":\"" +
         to_string(r.reason) + "\",\"limit\":" + matrix_to_json(r.limit) + "}";
  return out;
}

inline std::string trace_to_json(const std::vector<SequenceState>& states,
                                 const ConvergenceReport& report, const EmitFlags& emit,
                                 const ToleranceConfig& cfg) {
  std::string out = "{\"states\":[";
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (i) out += ',';
    out += state_to_json(states[i], emit, cfg);
  }
  out += "],\"report\":" + report_to_json(report) + "}";
  return out;
}

// CSV trace: k, hs_dist_prev, d_prev, then 2n^2 entry columns row-major.
// Distances are blank at k = 0.
inline std::string trace_to_csv(const std::vector<SequenceState>& states) {
  if (states.empty()) return "";
  const int n = states.front().u.dim();
  std::string out = "k,hs_dist_prev,d_prev";
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      out += ",re(u_" + std::to_string(i) + "_" + std::to_string(j) + ")";
      out += ",im(u_" + std::to_string(i) + "_" + std::to_string(j) + ")";
    }
  out += '\n';
  for (const SequenceState& s : states) {
    out += std::to_string(s.k);
    out += ',';
    if (s.hs_dist_prev) out += fmt_double(*s.hs_dist_prev);
    out += ',';
    if (s.d_prev) out += fmt_double(*s.d_prev);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        out += ',' + fmt_double(s.u(i, j).real());
        out += ',' + fmt_double(s.u(i, j).imag());
      }
    out += '\n';
  }
  return out;
}

}  // namespace eigenseq
