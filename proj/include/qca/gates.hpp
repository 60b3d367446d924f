#pragma once

// Gate algebra: standard gate matrices, placement-aware gate descriptions,
// dense embeddings (test oracle path) and the in-place state-vector kernels.

#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "qca/matrix.hpp"
#include "qca/register.hpp"

namespace qca {

inline constexpr int kMaxDenseQubits = 10;
inline constexpr double kUnitaryTolerance = 1e-12;

/// A 2x2, 4x4 or 8x8 unitary (max-norm of U^dagger U - I at most 1e-12).
class SmallUnitary {
 public:
  explicit SmallUnitary(Matrix m);

  std::size_t dim() const { return m_.rows(); }
  int n_qubits() const;
  const Matrix& matrix() const { return m_; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  friend bool operator==(const SmallUnitary&, const SmallUnitary&) = default;

 private:
  Matrix m_;
};

enum class GateName { I, X, H, CN, CCN };

/// Packed CN/CCN matrices take the more significant qubit(s) as control(s).
SmallUnitary standard_gate(GateName name);
SmallUnitary standard_gate(std::string_view name);

/// Flips `target` when every control bit is 1. An empty control set is a
/// plain X on the target.
struct ControlledFlip {
  ControlledFlip(std::vector<int> controls, int target);

  std::vector<int> controls;  // ascending, distinct
  int target;

  friend bool operator==(const ControlledFlip&, const ControlledFlip&) = default;
};

/// A small unitary on the listed bit positions. Ascending bit positions map
/// to ascending significance inside the matrix: qubits[0] is the least
/// significant index bit of the matrix.
struct LocalUnitary {
  LocalUnitary(std::vector<int> qubits, SmallUnitary matrix);

  std::vector<int> qubits;  // ascending, distinct
  SmallUnitary matrix;

  friend bool operator==(const LocalUnitary&, const LocalUnitary&) = default;
};

using GateOp = std::variant<ControlledFlip, LocalUnitary>;

GateOp hadamard(int bit);
GateOp pauli_x(int bit);
GateOp cnot(int control, int target);
GateOp toffoli(int control_a, int control_b, int target);

/// Throws std::out_of_range if any position is >= n_qubits.
void validate(const GateOp& gate, int n_qubits);

/// Dense operator over a whole register. Unitarity is a property to be
/// checked (see analysis), not a construction precondition.
struct DenseOperator {
  int n_qubits = 0;
  Matrix matrix;

  static DenseOperator identity(int n_qubits);
};

DenseOperator embed_gate(const GateOp& gate, int n_qubits);

/// Product of embedded gates. The first gate in `gates` acts first, so the
/// result is G_k ... G_2 G_1.
DenseOperator compose_dense(std::span<const GateOp> gates, int n_qubits);

/// Applies `gate` to `state` without materializing a dense operator.
/// ControlledFlip is an exact amplitude permutation.
void apply_in_place(StateVector& state, const GateOp& gate);
StateVector apply_gate(StateVector state, const GateOp& gate);

/// Dense operator times state (oracle path).
StateVector apply_dense(const DenseOperator& op, const StateVector& state);

}  // namespace qca
