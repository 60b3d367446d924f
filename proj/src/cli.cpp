#include "qca/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "qca/analysis.hpp"
#include "qca/io.hpp"

namespace qca {
namespace {

// Input problems that map to exit code 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << bytes)) throw std::runtime_error("cannot write '" + path + "'");
}

void emit_matrix(const ProbabilityMatrix& m, const std::string& csv_path,
                 const std::string& pgm_path, std::ostream& out) {
  if (!csv_path.empty()) write_file(csv_path, write_csv(m));
  if (!pgm_path.empty()) write_file(pgm_path, render_pgm(m));
  if (csv_path.empty() && pgm_path.empty()) {
    out << write_csv(m);
  } else {
    out << "states=" << m.n_states() << " columns=" << m.n_columns() << "\n";
  }
}

void print_check(const CheckReport& r, std::ostream& out) {
  out << r.name << ": " << (r.passed ? "PASS" : "FAIL")
      << " worst_deviation=" << format_real(r.worst_deviation)
      << " tolerance=" << format_real(r.tolerance) << " (" << r.details << ")\n";
}

void require_dense(const QcaConfig& config) {
  if (2 * config.n_cells > kMaxDenseQubits) {
    throw InputError("dense operators need 2*cells <= " + std::to_string(kMaxDenseQubits));
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-qubit-per-cell quantum cellular automaton simulator", "qca"};
  app.require_subcommand(1);

  std::string input;
  std::string csv_path;
  std::string pgm_path;

  auto* simulate = app.add_subcommand("simulate", "Evolve a config and write its probability pattern");
  simulate->add_option("config", input, "Run config file")->required();
  simulate->add_option("--out-csv", csv_path, "CSV output path");
  simulate->add_option("--out-pgm", pgm_path, "PGM output path");

  auto* script = app.add_subcommand("script", "Run a timestep-by-timestep gate script");
  script->add_option("script", input, "Gate script file")->required();
  script->add_option("--out-csv", csv_path, "CSV output path");
  script->add_option("--out-pgm", pgm_path, "PGM output path");

  std::size_t horizon = kDefaultPeriodHorizon;
  double period_tol = kDefaultPeriodTolerance;
  auto* period = app.add_subcommand("period", "Detect the period of the probability pattern");
  period->add_option("config", input, "Run config file")->required();
  period->add_option("--horizon", horizon, "Number of recorded columns to examine")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 24));
  period->add_option("--tol", period_tol, "L-infinity tolerance between columns")
      ->check(CLI::PositiveNumber);

  long long translation_steps = 20;
  double check_tol = kUnitaryTolerance;
  auto* check = app.add_subcommand("check", "Unitarity, interaction and translation checks");
  check->add_option("config", input, "Run config file")->required();
  check->add_option("--steps", translation_steps, "Steps for the translation check")
      ->check(CLI::NonNegativeNumber);
  check->add_option("--tol", check_tol, "Tolerance for unitarity and translation")
      ->check(CLI::PositiveNumber);

  std::string matrix_out;
  auto* matrix = app.add_subcommand("matrix", "Dump the dense one-step operator as CSV");
  matrix->add_option("config", input, "Run config file")->required();
  matrix->add_option("--out", matrix_out, "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    if (simulate->parsed()) {
      const QcaConfig config = parse_config(read_file(input));
      emit_matrix(evolve(config), csv_path, pgm_path, out);
      return kExitOk;
    }
    if (script->parsed()) {
      const GateScriptFile file = parse_gate_script(read_file(input));
      emit_matrix(run_gate_script(file.n_qubits, file.initial_index, file.steps), csv_path,
                  pgm_path, out);
      return kExitOk;
    }
    if (period->parsed()) {
      QcaConfig config = parse_config(read_file(input));
      const long long per_step = config.record == RecordMode::PerPhase ? 2 : 1;
      config.n_steps = static_cast<long long>((horizon - 1 + per_step - 1) / per_step);
      ProbabilityMatrix m = evolve(config);
      m.truncate(horizon);
      const PeriodReport r = detect_period(m, period_tol);
      out << "found=" << (r.found ? "true" : "false") << "\n"
          << "period=" << r.period << "\n"
          << "max_deviation=" << format_real(r.max_deviation) << "\n"
          << "tolerance=" << format_real(r.tolerance) << "\n"
          << "columns_examined=" << r.columns_examined << "\n";
      return r.found ? kExitOk : kExitFailed;
    }
    if (check->parsed()) {
      const QcaConfig config = parse_config(read_file(input));
      require_dense(config);
      std::vector<CheckReport> reports;
      reports.push_back(check_unitary(build_dense_rule(config), check_tol));
      reports.push_back(check_interaction(config));
      if (config.boundary == BoundaryCondition::Cyclic) {
        reports.push_back(check_translation(config, translation_steps, check_tol));
      }
      bool all = true;
      for (const auto& r : reports) {
        print_check(r, out);
        all = all && r.passed;
      }
      return all ? kExitOk : kExitFailed;
    }
    if (matrix->parsed()) {
      const QcaConfig config = parse_config(read_file(input));
      require_dense(config);
      const std::string csv = write_operator_csv(build_dense_rule(config));
      if (matrix_out.empty()) {
        out << csv;
      } else {
        write_file(matrix_out, csv);
      }
      return kExitOk;
    }
  } catch (const ConfigError& e) {
    err << "qca: " << input << ": " << e.what() << "\n";
    return kExitConfigError;
  } catch (const InputError& e) {
    err << "qca: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "qca: " << e.what() << "\n";
    return kExitFailed;
  }
  return kExitConfigError;
}

}  // namespace qca
