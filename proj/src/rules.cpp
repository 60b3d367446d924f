#include "qca/rules.hpp"

#include <stdexcept>
#include <string>

namespace qca {

EvaluationSpec EvaluationSpec::custom_matrix(SmallUnitary u) {
  if (u.dim() != 4) throw std::invalid_argument("custom evaluation needs a 4x4 unitary");
  return {EvaluationKind::Custom, std::move(u)};
}

void validate(const QcaConfig& config) {
  const RegisterLayout layout(config.n_cells);
  if (config.initial_index >= layout.n_states()) {
    throw std::out_of_range("initial index " + std::to_string(config.initial_index) +
                            " >= " + std::to_string(layout.n_states()));
  }
  if (config.n_steps < 0) throw std::out_of_range("negative step count");
  const bool is_custom = config.evaluation.kind == EvaluationKind::Custom;
  if (is_custom != config.evaluation.custom.has_value()) {
    throw std::invalid_argument("custom matrix present iff evaluation kind is Custom");
  }
  if (is_custom && config.evaluation.custom->dim() != 4) {
    throw std::invalid_argument("custom evaluation needs a 4x4 unitary");
  }
}

ProbabilityMatrix::ProbabilityMatrix(std::size_t n_states) : n_states_(n_states) {}

void ProbabilityMatrix::append(std::vector<double> column) {
  if (column.size() != n_states_) throw std::invalid_argument("column length mismatch");
  columns_.push_back(std::move(column));
}

void ProbabilityMatrix::truncate(std::size_t n_columns) {
  if (n_columns < columns_.size()) columns_.resize(n_columns);
}

std::vector<GateOp> compile_interaction(const QcaConfig& config) {
  validate(config);
  const RegisterLayout layout = config.layout();
  const int n = layout.n_cells();
  const bool cyclic = config.boundary == BoundaryCondition::Cyclic;
  const bool constant_one = config.boundary == BoundaryCondition::ConstantOne;
  std::vector<GateOp> gates;

  switch (config.rule) {
    case NeighborhoodRule::RightNeighbor:
      // The phantom neighbor left of cell 0 drives c_0.
      if (constant_one) gates.emplace_back(ControlledFlip({}, layout.c_bit(0)));
      for (int j = 0; j < n; ++j) {
        if (j + 1 < n) {
          gates.emplace_back(ControlledFlip({layout.s_bit(j)}, layout.c_bit(j + 1)));
        } else if (cyclic) {
          gates.emplace_back(ControlledFlip({layout.s_bit(j)}, layout.c_bit(0)));
        }
      }
      break;
    case NeighborhoodRule::LeftNeighbor:
      for (int j = 0; j < n; ++j) {
        if (j > 0) {
          gates.emplace_back(ControlledFlip({layout.s_bit(j)}, layout.c_bit(j - 1)));
        } else if (cyclic) {
          gates.emplace_back(ControlledFlip({layout.s_bit(j)}, layout.c_bit(n - 1)));
        }
      }
      // The phantom neighbor right of cell N-1 drives c_{N-1}.
      if (constant_one) gates.emplace_back(ControlledFlip({}, layout.c_bit(n - 1)));
      break;
    case NeighborhoodRule::BothNeighbors:
      for (int j = 0; j < n; ++j) {
        std::vector<int> controls;
        bool fires = true;
        for (int neighbor : {j + 1, j - 1}) {
          if (neighbor >= 0 && neighbor < n) {
            controls.push_back(layout.s_bit(neighbor));
          } else if (cyclic) {
            controls.push_back(layout.s_bit((neighbor + n) % n));
          } else if (!constant_one) {
            fires = false;  // a control pinned to 0 never fires
          }
        }
        if (fires) gates.emplace_back(ControlledFlip(std::move(controls), layout.c_bit(j)));
      }
      break;
  }
  return gates;
}

std::vector<GateOp> compile_evaluation(const QcaConfig& config) {
  validate(config);
  const RegisterLayout layout = config.layout();
  std::vector<GateOp> gates;
  for (int j = 0; j < layout.n_cells(); ++j) {
    const int s = layout.s_bit(j);
    const int c = layout.c_bit(j);
    switch (config.evaluation.kind) {
      case EvaluationKind::Identity:
        break;
      case EvaluationKind::HadamardBoth:
        gates.push_back(hadamard(s));
        gates.push_back(hadamard(c));
        break;
      case EvaluationKind::HadamardSThenCN:
        gates.push_back(hadamard(s));
        gates.push_back(cnot(s, c));
        break;
      case EvaluationKind::Custom:
        // c < s, so s is the more significant matrix index bit.
        gates.emplace_back(LocalUnitary({c, s}, *config.evaluation.custom));
        break;
    }
  }
  return gates;
}

CompiledRule compile(const QcaConfig& config) {
  return {config.layout().n_qubits(), compile_interaction(config), compile_evaluation(config)};
}

DenseOperator build_dense_rule(const QcaConfig& config) {
  const CompiledRule rule = compile(config);
  const DenseOperator interaction = compose_dense(rule.interaction, rule.n_qubits);
  const DenseOperator evaluation = compose_dense(rule.evaluation, rule.n_qubits);
  return {rule.n_qubits, multiply(evaluation.matrix, interaction.matrix)};
}

namespace {

void apply_all(StateVector& state, const std::vector<GateOp>& gates) {
  for (const GateOp& g : gates) apply_in_place(state, g);
}

}  // namespace

StateVector step(StateVector state, const CompiledRule& rule) {
  if (state.n_qubits() != rule.n_qubits) {
    throw std::invalid_argument("state has " + std::to_string(state.n_qubits()) +
                                " qubits, rule expects " + std::to_string(rule.n_qubits));
  }
  apply_all(state, rule.interaction);
  apply_all(state, rule.evaluation);
  return state;
}

ProbabilityMatrix evolve(const QcaConfig& config) {
  const CompiledRule rule = compile(config);
  StateVector state = basis_state(rule.n_qubits, config.initial_index);
  ProbabilityMatrix out(state.size());
  out.append(probabilities(state));
  for (long long t = 0; t < config.n_steps; ++t) {
    apply_all(state, rule.interaction);
    if (config.record == RecordMode::PerPhase) out.append(probabilities(state));
    apply_all(state, rule.evaluation);
    out.append(probabilities(state));
  }
  return out;
}

ProbabilityMatrix run_gate_script(int n_qubits, BasisIndex initial_index,
                                  const GateScript& script) {
  for (const auto& timestep : script)
    for (const GateOp& g : timestep) validate(g, n_qubits);
  StateVector state = basis_state(n_qubits, initial_index);
  ProbabilityMatrix out(state.size());
  out.append(probabilities(state));
  for (const auto& timestep : script) {
    apply_all(state, timestep);
    out.append(probabilities(state));
  }
  return out;
}

}  // namespace qca
