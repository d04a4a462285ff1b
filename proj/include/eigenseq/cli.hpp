#pragma once

#include <cmath>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eigenseq/compose.hpp"
#include "eigenseq/errors.hpp"
#include "eigenseq/gates.hpp"
#include "eigenseq/hamiltonian.hpp"
#include "eigenseq/sequence.hpp"
#include "eigenseq/serialization.hpp"

namespace eigenseq {

enum class Command {
  Iterate,
  Frame,
  Hamiltonian,
  Cayley,
  Distance,
  Compose,
  Distributivity,
  Sweep,
};

enum class OutputFormat { Json, Csv, Pretty };

struct RunConfig {
  Command command = Command::Iterate;
  std::string gate;       // gate name input (single-input commands)
  std::string in_path;    // file input (single-input commands)
  std::string input_a;    // path or gate name (two-input commands)
  std::string input_b;
  std::string kind;       // composition kind for compose/distributivity
  int max_iter = 1000;
  int sweep_steps = 32;
  int sweep_b_sign = +1;
  double distributivity_tol = 1e-9;
  ToleranceConfig tolerances;
  OutputFormat format = OutputFormat::Json;
  EmitFlags emit;
  std::string out_path = "stdout";
};

namespace detail {

inline std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

inline Matrix resolve_matrix(const std::string& name_or_path) {
  if (auto g = gates::by_name(name_or_path)) return *g;
  std::ifstream f(name_or_path);
  if (!f) {
    throw ParseError("'" + name_or_path + "' is neither a known gate name nor a readable file");
  }
  std::ostringstream ss;
  ss << f.rdbuf();
  return matrix_from_json_text(ss.str());
}

inline std::string pretty_matrix(const Matrix& m) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6);
  for (int i = 0; i < m.dim(); ++i) {
    for (int j = 0; j < m.dim(); ++j) {
      const Complex& z = m(i, j);
      os << std::setw(10) << z.real() << (z.imag() < 0 ? " - " : " + ") << std::setw(8)
         << std::abs(z.imag()) << "i" << (j + 1 < m.dim() ? "   " : "");
    }
    os << '\n';
  }
  return os.str();
}

inline CompositionKind parse_kind(const std::string& kind) {
  if (kind == "kronecker") return CompositionKind::Kronecker;
  if (kind == "direct_sum") return CompositionKind::DirectSum;
  if (kind == "star") return CompositionKind::Star;
  throw ParseError("unknown composition kind '" + kind + "'");
}

inline void write_output(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.out_path == "stdout" || cfg.out_path == "-") {
    out << text;
    if (!text.empty() && text.back() != '\n') out << '\n';
    return;
  }
  std::ofstream f(cfg.out_path, std::ios::binary);
  if (!f) throw ParseError("cannot open output file '" + cfg.out_path + "'");
  f << text;
}

inline Matrix single_input(const RunConfig& cfg) {
  if (cfg.gate.empty() == cfg.in_path.empty()) {
    throw ParseError("provide exactly one of --gate or --in");
  }
  if (!cfg.gate.empty()) {
    auto g = gates::by_name(cfg.gate);
    if (!g) throw ParseError("unknown gate name '" + cfg.gate + "'");
    return *g;
  }
  return resolve_matrix(cfg.in_path);
}

inline void run_iterate(const RunConfig& cfg, std::ostream& out) {
  const Matrix u0 = single_input(cfg);
  auto [states, report] = iterate_sequence(u0, cfg.max_iter, cfg.tolerances);
  switch (cfg.format) {
    case OutputFormat::Json:
      write_output(cfg, trace_to_json(states, report, cfg.emit, cfg.tolerances), out);
      break;
    case OutputFormat::Csv:
      write_output(cfg, trace_to_csv(states), out);
      break;
    case OutputFormat::Pretty: {
      std::ostringstream os;
      os << std::scientific << std::setprecision(3);
      for (const SequenceState& s : states) {
        os << "k=" << s.k;
        if (s.hs_dist_prev) os << "  |U_k - U_{k-1}| = " << *s.hs_dist_prev;
        if (s.d_prev) os << "  d = " << *s.d_prev;
        os << '\n';
      }
      os << (report.converged ? "converged" : "not converged") << " after " << report.steps
         << " steps (" << to_string(report.reason)
         << "), final distance = " << fmt_double(report.final_distance) << "\nlimit:\n"
         << pretty_matrix(report.limit);
      write_output(cfg, os.str(), out);
      break;
    }
  }
}

inline void run_sweep(const RunConfig& cfg, std::ostream& out) {
  if (cfg.format != OutputFormat::Csv) {
    throw ParseError("sweep emits CSV; use --format csv or omit --format");
  }
  std::string csv = "a,b_sign,steps,final_distance";
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) {
      csv += ",re(u_" + std::to_string(i) + "_" + std::to_string(j) + ")";
      csv += ",im(u_" + std::to_string(i) + "_" + std::to_string(j) + ")";
    }
  csv += '\n';
  for (int g = 0; g < cfg.sweep_steps; ++g) {
    const double a = static_cast<double>(g) / cfg.sweep_steps;
    const double b = cfg.sweep_b_sign * std::sqrt(std::max(0.0, 1.0 - a * a));
    Matrix u0 = Matrix::from_rows({{a, b}, {b, -a}});
    auto [states, report] = iterate_sequence(u0, cfg.max_iter, cfg.tolerances);
    csv += fmt_double(a);
    csv += ',' + std::to_string(cfg.sweep_b_sign);
    csv += ',' + std::to_string(report.steps);
    csv += ',' + fmt_double(report.final_distance);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        csv += ',' + fmt_double(report.limit(i, j).real());
        csv += ',' + fmt_double(report.limit(i, j).imag());
      }
    csv += '\n';
  }
  write_output(cfg, csv, out);
}

inline void require_json_or_pretty(const RunConfig& cfg) {
  if (cfg.format == OutputFormat::Csv) {
    throw ParseError("CSV output is only available for iterate and sweep");
  }
}

inline void emit_matrix_result(const RunConfig& cfg, const Matrix& m, std::ostream& out) {
  require_json_or_pretty(cfg);
  if (cfg.format == OutputFormat::Json) {
    write_output(cfg, matrix_to_json(m), out);
  } else {
    write_output(cfg, pretty_matrix(m), out);
  }
}

}  // namespace detail

// Executes one parsed command, writing the result to `out`. Throws ParseError
// for malformed inputs and Error for operation-contract violations.
inline void run(const RunConfig& cfg, std::ostream& out) {
  cfg.tolerances.validate();
  switch (cfg.command) {
    case Command::Iterate:
      detail::run_iterate(cfg, out);
      return;
    case Command::Frame: {
      detail::require_json_or_pretty(cfg);
      const Matrix u = detail::single_input(cfg);
      const Eigenframe f = build_frame(u, cfg.tolerances);
      if (cfg.format == OutputFormat::Pretty) {
        detail::write_output(cfg, detail::pretty_matrix(f.columns), out);
        return;
      }
      std::string body = "{\"frame\":" + frame_to_json(f);
      if (cfg.emit.spectra) {
        body += ",\"spectrum\":" +
                clusters_to_json(cluster_eigenvalues(eig_normal(u), f.unitary_source,
                                                     cfg.tolerances));
      }
      body += '}';
      detail::write_output(cfg, body, out);
      return;
    }
    case Command::Hamiltonian: {
      const Matrix u = detail::single_input(cfg);
      detail::emit_matrix_result(cfg, hamiltonian_from_frame(build_frame(u, cfg.tolerances)).h,
                                 out);
      return;
    }
    case Command::Cayley: {
      const Matrix m = detail::single_input(cfg);
      Matrix v(1);
      if (is_unitary(m, cfg.tolerances.eps_unitary)) {
        v = cayley_spectral(build_frame(m, cfg.tolerances));
      } else if (is_hermitian(m, cfg.tolerances.eps_unitary)) {
        v = cayley_rational(m);
      } else {
        throw Error("cayley: input is neither unitary nor hermitian");
      }
      detail::emit_matrix_result(cfg, v, out);
      return;
    }
    case Command::Distance: {
      detail::require_json_or_pretty(cfg);
      const Matrix a = detail::resolve_matrix(cfg.input_a);
      const Matrix b = detail::resolve_matrix(cfg.input_b);
      const double hs = hs_distance(a, b);
      const double d = phase_min_distance(a, b, cfg.tolerances);
      if (cfg.format == OutputFormat::Json) {
        detail::write_output(cfg, "{\"hs\":" + fmt_double(hs) + ",\"d\":" + fmt_double(d) + "}",
                             out);
      } else {
        detail::write_output(cfg,
                             "hs = " + fmt_double(hs) + "\nd  = " + fmt_double(d) + "\n", out);
      }
      return;
    }
    case Command::Compose: {
      const Matrix a = detail::resolve_matrix(cfg.input_a);
      const Matrix b = detail::resolve_matrix(cfg.input_b);
      detail::emit_matrix_result(cfg, apply_composition(detail::parse_kind(cfg.kind), a, b), out);
      return;
    }
    case Command::Distributivity: {
      detail::require_json_or_pretty(cfg);
      const Matrix a = detail::resolve_matrix(cfg.input_a);
      const Matrix b = detail::resolve_matrix(cfg.input_b);
      const DistributivityReport r = check_distributivity(
          detail::parse_kind(cfg.kind), a, b, cfg.distributivity_tol, cfg.tolerances);
      if (cfg.format == OutputFormat::Json) {
        std::string body = std::string("{\"kind\":\"") + to_string(r.kind) +
                           "\",\"residual\":" + fmt_double(r.residual) +
                           ",\"holds\":" + (r.holds ? "true" : "false") +
                           ",\"lhs\":" + matrix_to_json(r.lhs) +
                           ",\"rhs\":" + matrix_to_json(r.rhs) + "}";
        detail::write_output(cfg, body, out);
      } else {
        detail::write_output(cfg,
                             std::string(to_string(r.kind)) + ": residual = " +
                                 fmt_double(r.residual) + (r.holds ? " (holds)" : " (fails)") +
                                 "\nF(a op b):\n" + detail::pretty_matrix(r.lhs) +
                                 "F(a) op F(b):\n" + detail::pretty_matrix(r.rhs),
                             out);
      }
      return;
    }
    case Command::Sweep:
      detail::run_sweep(cfg, out);
      return;
  }
  throw Error("run: unknown command");
}

namespace detail {

inline void add_tolerance_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--tol-conv", cfg.tolerances.eps_conv, "convergence tolerance");
  cmd->add_option("--tol-cluster", cfg.tolerances.eps_cluster, "eigenvalue clustering radius");
  cmd->add_option("--tol-zero", cfg.tolerances.eps_zero, "numerical zero threshold");
  cmd->add_option("--tol-cmp", cfg.tolerances.eps_cmp, "ordering comparison tolerance");
}

inline void add_format_flags(CLI::App* cmd, RunConfig& cfg, std::string& format) {
  cmd->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "csv", "pretty"}));
  cmd->add_option("--out", cfg.out_path, "output path or 'stdout'");
}

inline void add_single_input_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--gate", cfg.gate, "gate name (phase:<phi>, not, hadamard, sigmax, sigmay, "
                                      "sigmaz, cnot, toffoli, fredkin, teleport, boost:<alpha>)");
  cmd->add_option("--in", cfg.in_path, "matrix JSON file");
}

inline void add_pair_input_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--a", cfg.input_a, "first input (path or gate name)")->required();
  cmd->add_option("--b", cfg.input_b, "second input (path or gate name)")->required();
}

inline void add_emit_flags(CLI::App* cmd, std::vector<std::string>& emit, bool& dump_spectrum) {
  cmd->add_option("--emit", emit, "extra per-step output: frames,hamiltonians,cayleys,spectra")
      ->delimiter(',');
  cmd->add_flag("--dump-spectrum", dump_spectrum, "include eigenvalue clusters in the output");
}

inline void apply_emit(const std::vector<std::string>& emit, bool dump_spectrum, EmitFlags& out) {
  for (const std::string& e : emit) {
    if (e == "frames" || e == "frame") out.frames = true;
    else if (e == "hamiltonians" || e == "hamiltonian") out.hamiltonians = true;
    else if (e == "cayleys" || e == "cayley") out.cayleys = true;
    else if (e == "spectra" || e == "spectrum") out.spectra = true;
    else throw ParseError("unknown --emit item '" + e + "'");
  }
  if (dump_spectrum) out.spectra = true;
}

inline OutputFormat parse_format(const std::string& f, Command command) {
  if (f == "json") return OutputFormat::Json;
  if (f == "csv") return OutputFormat::Csv;
  if (f == "pretty") return OutputFormat::Pretty;
  return command == Command::Sweep ? OutputFormat::Csv : OutputFormat::Json;
}

}  // namespace detail

// Command-line entry point. Returns the process exit status:
// 0 on success, 1 on an operation (domain) error, 2 on malformed input.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  std::string format;
  std::vector<std::string> emit;
  bool dump_spectrum = false;

  CLI::App app{"eigenvector-sequence toolkit for quantum gates"};
  app.require_subcommand(1);

  CLI::App* iterate = app.add_subcommand("iterate", "run the sequence U_{k+1} = F_n(U_k)");
  detail::add_single_input_flags(iterate, cfg);
  iterate->add_option("--max-iter", cfg.max_iter, "maximum number of steps")
      ->check(CLI::PositiveNumber);
  detail::add_emit_flags(iterate, emit, dump_spectrum);
  detail::add_tolerance_flags(iterate, cfg);
  detail::add_format_flags(iterate, cfg, format);

  CLI::App* frame = app.add_subcommand("frame", "apply the eigenframe map F_n once");
  detail::add_single_input_flags(frame, cfg);
  detail::add_emit_flags(frame, emit, dump_spectrum);
  detail::add_tolerance_flags(frame, cfg);
  detail::add_format_flags(frame, cfg, format);

  CLI::App* hamiltonian = app.add_subcommand("hamiltonian", "Hamilton operator of a unitary");
  detail::add_single_input_flags(hamiltonian, cfg);
  detail::add_tolerance_flags(hamiltonian, cfg);
  detail::add_format_flags(hamiltonian, cfg, format);

  CLI::App* cayley = app.add_subcommand(
      "cayley", "Cayley transform (spectral for unitary input, rational for hermitian)");
  detail::add_single_input_flags(cayley, cfg);
  detail::add_tolerance_flags(cayley, cfg);
  detail::add_format_flags(cayley, cfg, format);

  CLI::App* distance = app.add_subcommand("distance", "Hilbert-Schmidt and phase-min distances");
  detail::add_pair_input_flags(distance, cfg);
  detail::add_tolerance_flags(distance, cfg);
  detail::add_format_flags(distance, cfg, format);

  CLI::App* compose = app.add_subcommand("compose", "kronecker / direct_sum / star product");
  compose->add_option("--kind", cfg.kind, "composition kind")
      ->required()
      ->check(CLI::IsMember({"kronecker", "direct_sum", "star"}));
  detail::add_pair_input_flags(compose, cfg);
  detail::add_format_flags(compose, cfg, format);

  CLI::App* distributivity =
      app.add_subcommand("distributivity", "compare F(a op b) against F(a) op F(b)");
  distributivity->add_option("--kind", cfg.kind, "composition kind")
      ->required()
      ->check(CLI::IsMember({"kronecker", "direct_sum", "star"}));
  detail::add_pair_input_flags(distributivity, cfg);
  distributivity->add_option("--tol", cfg.distributivity_tol, "residual threshold for 'holds'")
      ->check(CLI::PositiveNumber);
  detail::add_tolerance_flags(distributivity, cfg);
  detail::add_format_flags(distributivity, cfg, format);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "iterate over the [[a,b],[b,-a]] grid and classify limits (CSV)");
  sweep->add_option("--steps", cfg.sweep_steps, "number of grid points in [0,1)")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--b-sign", cfg.sweep_b_sign, "sign of b")
      ->check(CLI::IsMember({1, -1}));
  sweep->add_option("--max-iter", cfg.max_iter, "maximum number of steps per grid point")
      ->check(CLI::PositiveNumber);
  detail::add_tolerance_flags(sweep, cfg);
  detail::add_format_flags(sweep, cfg, format);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());  // CLI11 convention
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "{\"error\":{\"kind\":\"input\",\"message\":\"" << detail::json_escape(e.what())
        << "\"}}\n";
    return 2;
  }

  try {
    if (iterate->parsed()) cfg.command = Command::Iterate;
    else if (frame->parsed()) cfg.command = Command::Frame;
    else if (hamiltonian->parsed()) cfg.command = Command::Hamiltonian;
    else if (cayley->parsed()) cfg.command = Command::Cayley;
    else if (distance->parsed()) cfg.command = Command::Distance;
    else if (compose->parsed()) cfg.command = Command::Compose;
    else if (distributivity->parsed()) cfg.command = Command::Distributivity;
    else if (sweep->parsed()) cfg.command = Command::Sweep;
    cfg.format = detail::parse_format(format, cfg.command);
    detail::apply_emit(emit, dump_spectrum, cfg.emit);
    try {
      cfg.tolerances.validate();
    } catch (const Error& e) {
      throw ParseError(e.what());
    }
    run(cfg, out);
    return 0;
  } catch (const ParseError& e) {
    err << "{\"error\":{\"kind\":\"input\",\"message\":\"" << detail::json_escape(e.what())
        << "\"}}\n";
    return 2;
  } catch (const std::exception& e) {
    err << "{\"error\":{\"kind\":\"domain\",\"message\":\"" << detail::json_escape(e.what())
        << "\"}}\n";
    return 1;
  }
}

}  // namespace eigenseq
