#include "qca/io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace qca {
namespace {

using Kind = ConfigError::Kind;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

template <typename T>
std::optional<T> parse_number(std::string_view s) {
  T value{};
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc{} || ptr != end || s.empty()) return std::nullopt;
  return value;
}

// A logical input line: its 1-based number and trimmed content.
struct Line {
  int number;
  std::string_view text;
};

std::vector<Line> content_lines(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  for (std::string_view raw : split(text, '\n')) {
    ++number;
    const std::string_view t = trim(raw);
    if (t.empty() || t.front() == '#') continue;
    lines.push_back({number, t});
  }
  return lines;
}

std::pair<std::string_view, std::string_view> split_key_value(const Line& line) {
  const auto eq = line.text.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError(Kind::Syntax, line.number, "expected key=value");
  }
  return {trim(line.text.substr(0, eq)), trim(line.text.substr(eq + 1))};
}

long long parse_integer(const Line& line, std::string_view key, std::string_view value) {
  const auto v = parse_number<long long>(value);
  if (!v) {
    throw ConfigError(Kind::Syntax, line.number,
                      "'" + std::string(key) + "' expects an integer, got '" + std::string(value) + "'");
  }
  return *v;
}

BasisIndex parse_index(const Line& line, std::string_view key, std::string_view value) {
  const long long v = parse_integer(line, key, value);
  if (v < 0) throw ConfigError(Kind::Range, line.number, std::string(key) + " must be >= 0");
  return static_cast<BasisIndex>(v);
}

int parse_cells(const Line& line, std::string_view value) {
  const long long v = parse_integer(line, "cells", value);
  if (v < 1 || v > kMaxCells) {
    throw ConfigError(Kind::Range, line.number,
                      "cells must be in 1.." + std::to_string(kMaxCells));
  }
  return static_cast<int>(v);
}

EvaluationSpec parse_evaluation(const Line& line, std::string_view value) {
  if (value == "identity") return EvaluationSpec::identity();
  if (value == "h_both") return EvaluationSpec::hadamard_both();
  if (value == "h_s_then_cn") return EvaluationSpec::hadamard_s_then_cn();
  constexpr std::string_view prefix = "custom:";
  if (!value.starts_with(prefix)) {
    throw ConfigError(Kind::Syntax, line.number, "unknown eval '" + std::string(value) + "'");
  }
  const auto entries = split(value.substr(prefix.size()), ',');
  if (entries.size() != 16) {
    throw ConfigError(Kind::Syntax, line.number,
                      "custom eval needs 16 entries, got " + std::to_string(entries.size()));
  }
  Matrix m(4, 4);
  for (std::size_t i = 0; i < 16; ++i) {
    try {
      m(i / 4, i % 4) = parse_complex(trim(entries[i]));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(Kind::Syntax, line.number, e.what());
    }
  }
  try {
    return EvaluationSpec::custom_matrix(SmallUnitary(std::move(m)));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(Kind::NonUnitary, line.number, e.what());
  }
}

std::string_view rule_name(NeighborhoodRule r) {
  switch (r) {
    case NeighborhoodRule::RightNeighbor: return "right";
    case NeighborhoodRule::LeftNeighbor: return "left";
    case NeighborhoodRule::BothNeighbors: return "both";
  }
  return "?";
}

std::string_view boundary_name(BoundaryCondition b) {
  switch (b) {
    case BoundaryCondition::ConstantZero: return "const0";
    case BoundaryCondition::ConstantOne: return "const1";
    case BoundaryCondition::Cyclic: return "cyclic";
  }
  return "?";
}

template <typename Enum, std::size_t N>
Enum lookup(const Line& line, std::string_view key, std::string_view value,
            const std::array<std::pair<std::string_view, Enum>, N>& table) {
  for (const auto& [name, e] : table)
    if (name == value) return e;
  throw ConfigError(Kind::Syntax, line.number,
                    "unknown " + std::string(key) + " '" + std::string(value) + "'");
}

void append_wrapped(std::string& out, std::size_t& line_len, std::string_view token) {
  constexpr std::size_t kMaxLine = 70;
  if (line_len > 0 && line_len + 1 + token.size() > kMaxLine) {
    out += '\n';
    line_len = 0;
  }
  if (line_len > 0) {
    out += ' ';
    ++line_len;
  }
  out += token;
  line_len += token.size();
}

}  // namespace

ConfigError::ConfigError(Kind kind, int line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      kind_(kind),
      line_(line) {}

std::string format_real(double x) {
  std::array<char, 64> buf;
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

std::string format_complex(Complex z) {
  std::string out = format_real(z.real());
  if (std::signbit(z.imag())) {
    out += '-';
    out += format_real(-z.imag());
  } else {
    out += '+';
    out += format_real(z.imag());
  }
  out += 'i';
  return out;
}

Complex parse_complex(std::string_view text) {
  const auto bad = [&] {
    return std::invalid_argument("malformed complex number '" + std::string(text) + "'");
  };
  const char* const begin = text.data();
  const char* const end = begin + text.size();
  if (text.empty()) throw bad();
  double first = 0.0;
  auto res = std::from_chars(begin, end, first);
  if (res.ec != std::errc{}) throw bad();
  if (res.ptr == end) return {first, 0.0};
  if (*res.ptr == 'i' && res.ptr + 1 == end) return {0.0, first};
  const char sign = *res.ptr;
  if (sign != '+' && sign != '-') throw bad();
  double second = 0.0;
  const char* p = res.ptr + 1;
  if (p < end && (*p == '+' || *p == '-')) throw bad();
  res = std::from_chars(p, end, second);
  if (res.ec != std::errc{} || res.ptr + 1 != end || *res.ptr != 'i') throw bad();
  return {first, sign == '-' ? -second : second};
}

QcaConfig parse_config(std::string_view text) {
  QcaConfig config;
  std::map<std::string, int, std::less<>> seen;  // key -> line
  std::optional<Line> initial_line;
  std::string_view initial_value;

  for (const Line& line : content_lines(text)) {
    const auto [key, value] = split_key_value(line);
    if (seen.contains(key)) {
      throw ConfigError(Kind::Syntax, line.number, "duplicate key '" + std::string(key) + "'");
    }
    if (key == "cells") {
      config.n_cells = parse_cells(line, value);
    } else if (key == "rule") {
      config.rule = lookup<NeighborhoodRule, 3>(line, key, value,
                                                {{{"right", NeighborhoodRule::RightNeighbor},
                                                  {"left", NeighborhoodRule::LeftNeighbor},
                                                  {"both", NeighborhoodRule::BothNeighbors}}});
    } else if (key == "boundary") {
      config.boundary = lookup<BoundaryCondition, 3>(line, key, value,
                                                     {{{"const0", BoundaryCondition::ConstantZero},
                                                       {"const1", BoundaryCondition::ConstantOne},
                                                       {"cyclic", BoundaryCondition::Cyclic}}});
    } else if (key == "eval") {
      config.evaluation = parse_evaluation(line, value);
    } else if (key == "steps") {
      config.n_steps = parse_integer(line, key, value);
      if (config.n_steps < 0) throw ConfigError(Kind::Range, line.number, "steps must be >= 0");
    } else if (key == "initial") {
      initial_line = line;
      initial_value = value;
    } else if (key == "record") {
      config.record = lookup<RecordMode, 2>(
          line, key, value, {{{"step", RecordMode::PerStep}, {"phase", RecordMode::PerPhase}}});
    } else {
      throw ConfigError(Kind::Syntax, line.number, "unknown key '" + std::string(key) + "'");
    }
    seen.emplace(std::string(key), line.number);
  }

  for (std::string_view required : {"cells", "rule", "steps", "initial"}) {
    if (!seen.contains(required)) {
      throw ConfigError(Kind::Syntax, 0, "missing required key '" + std::string(required) + "'");
    }
  }
  config.initial_index = parse_index(*initial_line, "initial", initial_value);
  const BasisIndex n_states = config.layout().n_states();
  if (config.initial_index >= n_states) {
    throw ConfigError(Kind::Range, initial_line->number,
                      "initial " + std::to_string(config.initial_index) + " >= " +
                          std::to_string(n_states) + " basis states");
  }
  return config;
}

std::string format_config(const QcaConfig& config) {
  std::string out;
  out += "cells=" + std::to_string(config.n_cells) + "\n";
  out += "rule=" + std::string(rule_name(config.rule)) + "\n";
  out += "boundary=" + std::string(boundary_name(config.boundary)) + "\n";
  out += "eval=";
  switch (config.evaluation.kind) {
    case EvaluationKind::Identity: out += "identity"; break;
    case EvaluationKind::HadamardBoth: out += "h_both"; break;
    case EvaluationKind::HadamardSThenCN: out += "h_s_then_cn"; break;
    case EvaluationKind::Custom: {
      out += "custom:";
      const auto& data = config.evaluation.custom->matrix().data();
      for (std::size_t i = 0; i < data.size(); ++i) {
        if (i > 0) out += ',';
        out += format_complex(data[i]);
      }
      break;
    }
  }
  out += "\n";
  out += "steps=" + std::to_string(config.n_steps) + "\n";
  out += "initial=" + std::to_string(config.initial_index) + "\n";
  out += std::string("record=") + (config.record == RecordMode::PerStep ? "step" : "phase") + "\n";
  return out;
}

GateScriptFile parse_gate_script(std::string_view text) {
  GateScriptFile script;
  std::optional<int> cells;
  std::optional<int> qubits;
  std::optional<Line> initial_line;
  std::string_view initial_value;
  bool in_body = false;

  const auto finish_header = [&](const Line& at) {
    if (cells.has_value() == qubits.has_value()) {
      throw ConfigError(Kind::Syntax, at.number, "script header needs exactly one of cells= or qubits=");
    }
    if (!initial_line) throw ConfigError(Kind::Syntax, at.number, "script header needs initial=");
    script.n_qubits = cells ? 2 * *cells : *qubits;
    script.initial_index = parse_index(*initial_line, "initial", initial_value);
    if (script.initial_index >= (BasisIndex{1} << script.n_qubits)) {
      throw ConfigError(Kind::Range, initial_line->number, "initial index outside the register");
    }
    in_body = true;
  };

  const auto parse_qubit = [&](const Line& line, std::string_view token) -> int {
    if (token.size() < 2) throw ConfigError(Kind::Syntax, line.number, "bad qubit '" + std::string(token) + "'");
    const auto number = parse_number<int>(token.substr(1));
    if (!number) throw ConfigError(Kind::Syntax, line.number, "bad qubit '" + std::string(token) + "'");
    int position = -1;
    switch (token.front()) {
      case 'q':
        position = *number;
        break;
      case 's':
      case 'c':
        if (!cells) {
          throw ConfigError(Kind::Syntax, line.number, "cell qubit names need a cells= header");
        }
        if (*number < 0 || *number >= *cells) {
          throw ConfigError(Kind::Range, line.number, "cell index out of range in '" + std::string(token) + "'");
        }
        position = RegisterLayout(*cells).bit_position(
            *number, token.front() == 's' ? QubitRole::S : QubitRole::C);
        break;
      default:
        throw ConfigError(Kind::Syntax, line.number, "bad qubit '" + std::string(token) + "'");
    }
    if (position < 0 || position >= script.n_qubits) {
      throw ConfigError(Kind::Range, line.number, "qubit '" + std::string(token) + "' outside the register");
    }
    return position;
  };

  const auto parse_gate = [&](const Line& line, std::string_view spec) -> GateOp {
    std::vector<std::string_view> tokens;
    for (std::string_view t : split(spec, ' '))
      if (!trim(t).empty()) tokens.push_back(trim(t));
    if (tokens.empty()) throw ConfigError(Kind::Syntax, line.number, "empty gate");
    const std::string_view name = tokens.front();
    const std::size_t arity = name == "CCN" ? 3 : name == "CN" ? 2 : (name == "H" || name == "X") ? 1 : 0;
    if (arity == 0) throw ConfigError(Kind::Syntax, line.number, "unknown gate '" + std::string(name) + "'");
    if (tokens.size() != arity + 1) {
      throw ConfigError(Kind::Syntax, line.number,
                        std::string(name) + " takes " + std::to_string(arity) + " qubit(s)");
    }
    std::vector<int> q;
    for (std::size_t i = 1; i < tokens.size(); ++i) q.push_back(parse_qubit(line, tokens[i]));
    if (std::set<int>(q.begin(), q.end()).size() != q.size()) {
      throw ConfigError(Kind::Syntax, line.number, "gate qubits must be distinct");
    }
    if (name == "H") return hadamard(q[0]);
    if (name == "X") return pauli_x(q[0]);
    if (name == "CN") return cnot(q[0], q[1]);
    return toffoli(q[0], q[1], q[2]);
  };

  const auto lines = content_lines(text);
  for (const Line& line : lines) {
    const bool header = line.text.find('=') != std::string_view::npos;
    if (header) {
      if (in_body) throw ConfigError(Kind::Syntax, line.number, "header line after gate lines");
      const auto [key, value] = split_key_value(line);
      if (key == "cells") {
        if (cells) throw ConfigError(Kind::Syntax, line.number, "duplicate key 'cells'");
        cells = parse_cells(line, value);
      } else if (key == "qubits") {
        if (qubits) throw ConfigError(Kind::Syntax, line.number, "duplicate key 'qubits'");
        const long long n = parse_integer(line, key, value);
        if (n < 1 || n > kMaxQubits) {
          throw ConfigError(Kind::Range, line.number, "qubits must be in 1.." + std::to_string(kMaxQubits));
        }
        qubits = static_cast<int>(n);
      } else if (key == "initial") {
        if (initial_line) throw ConfigError(Kind::Syntax, line.number, "duplicate key 'initial'");
        initial_line = line;
        initial_value = value;
      } else {
        throw ConfigError(Kind::Syntax, line.number, "unknown key '" + std::string(key) + "'");
      }
      continue;
    }
    if (!in_body) finish_header(line);
    std::vector<GateOp> timestep;
    for (std::string_view spec : split(line.text, ';')) timestep.push_back(parse_gate(line, trim(spec)));
    script.steps.push_back(std::move(timestep));
  }
  if (!in_body) finish_header(Line{lines.empty() ? 0 : lines.back().number, {}});
  return script;
}

std::string render_pgm(const ProbabilityMatrix& matrix) {
  std::string out = "P2\n" + std::to_string(matrix.n_columns()) + " " +
                    std::to_string(matrix.n_states()) + "\n255\n";
  for (std::size_t r = 0; r < matrix.n_states(); ++r) {
    std::size_t line_len = 0;
    for (std::size_t t = 0; t < matrix.n_columns(); ++t) {
      const double shade = std::round(255.0 * (1.0 - matrix.at(r, t)));
      const int pixel = static_cast<int>(std::clamp(shade, 0.0, 255.0));
      append_wrapped(out, line_len, std::to_string(pixel));
    }
    out += '\n';
  }
  return out;
}

std::string write_csv(const ProbabilityMatrix& matrix) {
  std::string out = "state";
  for (std::size_t t = 0; t < matrix.n_columns(); ++t) out += ",t" + std::to_string(t);
  out += '\n';
  for (std::size_t r = 0; r < matrix.n_states(); ++r) {
    out += std::to_string(r);
    for (std::size_t t = 0; t < matrix.n_columns(); ++t) {
      out += ',';
      out += format_real(matrix.at(r, t));
    }
    out += '\n';
  }
  return out;
}

ProbabilityMatrix parse_csv(std::string_view text) {
  auto rows = split(text, '\n');
  if (!rows.empty() && rows.back().empty()) rows.pop_back();
  if (rows.empty()) throw std::invalid_argument("empty CSV");
  const auto header = split(rows.front(), ',');
  if (header.empty() || header.front() != "state") throw std::invalid_argument("bad CSV header");
  const std::size_t n_cols = header.size() - 1;
  for (std::size_t t = 0; t < n_cols; ++t) {
    if (header[t + 1] != "t" + std::to_string(t)) throw std::invalid_argument("bad CSV header");
  }
  const std::size_t n_states = rows.size() - 1;
  std::vector<std::vector<double>> columns(n_cols, std::vector<double>(n_states));
  for (std::size_t r = 0; r < n_states; ++r) {
    const auto cells = split(rows[r + 1], ',');
    if (cells.size() != n_cols + 1 || parse_number<std::size_t>(cells[0]) != r) {
      throw std::invalid_argument("bad CSV row " + std::to_string(r + 2));
    }
    for (std::size_t t = 0; t < n_cols; ++t) {
      const auto v = parse_number<double>(cells[t + 1]);
      if (!v) throw std::invalid_argument("bad CSV value in row " + std::to_string(r + 2));
      columns[t][r] = *v;
    }
  }
  ProbabilityMatrix matrix(n_states);
  for (auto& c : columns) matrix.append(std::move(c));
  return matrix;
}

std::string write_operator_csv(const DenseOperator& op) {
  std::string out;
  for (std::size_t r = 0; r < op.matrix.rows(); ++r) {
    for (std::size_t c = 0; c < op.matrix.cols(); ++c) {
      if (c > 0) out += ',';
      out += format_complex(op.matrix(r, c));
    }
    out += '\n';
  }
  return out;
}

}  // namespace qca
