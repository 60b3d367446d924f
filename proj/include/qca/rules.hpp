#pragma once

// Compilation of the two-phase automaton rule into gate sequences and
// evolution into probability matrices.
//
// One step is R = R_E R_I: the interaction phase R_I flips c-qubits under the
// control of neighboring s-qubits, then the evaluation phase R_E applies the
// same two-qubit unitary inside every cell.

#include <optional>
#include <vector>

#include "qca/gates.hpp"
#include "qca/register.hpp"

namespace qca {

enum class NeighborhoodRule {
  RightNeighbor,  // s_j controls c_{j+1}
  LeftNeighbor,   // s_j controls c_{j-1}
  BothNeighbors,  // s_{j-1} and s_{j+1} jointly control c_j
};

enum class BoundaryCondition { ConstantZero, ConstantOne, Cyclic };

enum class EvaluationKind { Identity, HadamardBoth, HadamardSThenCN, Custom };

/// Per-cell unitary over the ordered pair (s_j, c_j), s more significant.
struct EvaluationSpec {
  EvaluationKind kind = EvaluationKind::HadamardBoth;
  std::optional<SmallUnitary> custom;  // set iff kind == Custom, 4x4

  static EvaluationSpec identity() { return {EvaluationKind::Identity, std::nullopt}; }
  static EvaluationSpec hadamard_both() { return {EvaluationKind::HadamardBoth, std::nullopt}; }
  static EvaluationSpec hadamard_s_then_cn() {
    return {EvaluationKind::HadamardSThenCN, std::nullopt};
  }
  static EvaluationSpec custom_matrix(SmallUnitary u);

  friend bool operator==(const EvaluationSpec&, const EvaluationSpec&) = default;
};

enum class RecordMode { PerStep, PerPhase };

struct QcaConfig {
  int n_cells = 1;
  NeighborhoodRule rule = NeighborhoodRule::RightNeighbor;
  BoundaryCondition boundary = BoundaryCondition::ConstantZero;
  EvaluationSpec evaluation = EvaluationSpec::hadamard_both();
  BasisIndex initial_index = 0;
  long long n_steps = 0;
  RecordMode record = RecordMode::PerStep;

  RegisterLayout layout() const { return RegisterLayout(n_cells); }

  friend bool operator==(const QcaConfig&, const QcaConfig&) = default;
};

/// Throws std::invalid_argument / std::out_of_range on an invalid config.
void validate(const QcaConfig& config);

struct CompiledRule {
  int n_qubits = 0;
  std::vector<GateOp> interaction;  // ControlledFlip only
  std::vector<GateOp> evaluation;   // grouped per cell, ascending cell index
};

/// Probability table: one column per recorded time point, column 0 is the
/// initial state. Stored column-major.
class ProbabilityMatrix {
 public:
  explicit ProbabilityMatrix(std::size_t n_states);

  std::size_t n_states() const { return n_states_; }
  std::size_t n_columns() const { return columns_.size(); }
  const std::vector<double>& column(std::size_t t) const { return columns_[t]; }
  double at(std::size_t state, std::size_t t) const { return columns_[t][state]; }

  void append(std::vector<double> column);
  void truncate(std::size_t n_columns);

  friend bool operator==(const ProbabilityMatrix&, const ProbabilityMatrix&) = default;

 private:
  std::size_t n_states_;
  std::vector<std::vector<double>> columns_;
};

std::vector<GateOp> compile_interaction(const QcaConfig& config);
std::vector<GateOp> compile_evaluation(const QcaConfig& config);
CompiledRule compile(const QcaConfig& config);

/// Dense R = R_E R_I (interaction acts first); requires 2 * n_cells <= 10.
DenseOperator build_dense_rule(const QcaConfig& config);

StateVector step(StateVector state, const CompiledRule& rule);

ProbabilityMatrix evolve(const QcaConfig& config);

/// Each timestep is a group of gates applied in order; one column is recorded
/// after every timestep.
using GateScript = std::vector<std::vector<GateOp>>;

ProbabilityMatrix run_gate_script(int n_qubits, BasisIndex initial_index,
                                  const GateScript& script);

}  // namespace qca
