#pragma once

// Text formats: run configs, gate scripts, CSV probability tables and plain
// PGM renderings.

#include <stdexcept>
#include <string>
#include <string_view>

#include "qca/rules.hpp"

namespace qca {

class ConfigError : public std::runtime_error {
 public:
  enum class Kind { Syntax, Range, NonUnitary };

  ConfigError(Kind kind, int line, const std::string& message);

  Kind kind() const { return kind_; }
  /// 1-based line of the offending input, 0 when not tied to a line.
  int line() const { return line_; }

 private:
  Kind kind_;
  int line_;
};

/// Parses `key=value` lines. Blank lines and lines starting with '#' are
/// ignored. Required keys: cells, rule, steps, initial.
QcaConfig parse_config(std::string_view text);

/// Canonical text for a config; parse_config(format_config(c)) == c.
std::string format_config(const QcaConfig& config);

/// Shortest round-trip decimal, e.g. "0.5", "1", "1e-300".
std::string format_real(double x);
/// "re+imi" / "re-imi" with both parts in shortest round-trip form.
std::string format_complex(Complex z);
/// Accepts "a", "bi", "a+bi" and "a-bi". Throws std::invalid_argument.
Complex parse_complex(std::string_view text);

struct GateScriptFile {
  int n_qubits = 0;
  BasisIndex initial_index = 0;
  GateScript steps;
};

/// Header lines (`cells=N` or `qubits=n`, and `initial=k`) followed by one
/// line per timestep. A timestep holds one or more `;`-separated gates:
/// `H q`, `X q`, `CN ctrl tgt`, `CCN ctrl ctrl tgt`, where a qubit is `s<j>`,
/// `c<j>` (cell naming, needs `cells=`) or `q<p>` (raw bit position).
GateScriptFile parse_gate_script(std::string_view text);

/// Plain PGM (P2), maxval 255, one image row per basis state (state 0 on
/// top), one image column per recorded time point. Pixel value is
/// round-half-away-from-zero(255 * (1 - p)), so p = 1 is black. Text lines
/// are wrapped to at most 70 characters; every image row starts a new line.
std::string render_pgm(const ProbabilityMatrix& matrix);

/// Header `state,t0,t1,...`, then one line per state: index followed by the
/// probabilities in shortest round-trip form.
std::string write_csv(const ProbabilityMatrix& matrix);
ProbabilityMatrix parse_csv(std::string_view text);

/// Dense operator as CSV rows of format_complex entries.
std::string write_operator_csv(const DenseOperator& op);

}  // namespace qca
