#pragma once

// Qubit layout of a two-qubit-per-cell register and the global state vector.
//
// Cell j owns two qubits: the control qubit c_j at bit position 2j and the
// state qubit s_j at bit position 2j+1. Bit p contributes 2^p to a basis
// index, so the ket |s_{N-1} c_{N-1} ... s_0 c_0> reads as a binary number
// with its leftmost symbol most significant.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace qca {

using Complex = std::complex<double>;
using BasisIndex = std::uint64_t;

inline constexpr int kMaxCells = 12;
inline constexpr int kMaxQubits = 24;
inline constexpr double kNormTolerance = 1e-9;

enum class QubitRole { C, S };

class RegisterLayout {
 public:
  explicit RegisterLayout(int n_cells);

  int n_cells() const { return n_cells_; }
  int n_qubits() const { return 2 * n_cells_; }
  BasisIndex n_states() const { return BasisIndex{1} << n_qubits(); }

  /// Bit position of a cell's qubit: 2j for C, 2j+1 for S.
  int bit_position(int cell, QubitRole role) const;
  int c_bit(int cell) const { return bit_position(cell, QubitRole::C); }
  int s_bit(int cell) const { return bit_position(cell, QubitRole::S); }

 private:
  int n_cells_;
};

int bit_position(const RegisterLayout& layout, int cell, QubitRole role);

/// Global amplitude vector of an n-qubit register. Bit p of a basis index is
/// the value of the qubit at bit position p.
class StateVector {
 public:
  /// Takes ownership of `amplitudes`; the length must be a power of two
  /// (2^n, 1 <= n <= 24), entries finite and the norm 1 within 1e-9.
  explicit StateVector(std::vector<Complex> amplitudes);

  int n_qubits() const { return n_qubits_; }
  std::size_t size() const { return amplitudes_.size(); }
  std::span<const Complex> amplitudes() const { return amplitudes_; }
  const Complex& operator[](BasisIndex k) const { return amplitudes_[k]; }

  double norm_squared() const;

  friend bool operator==(const StateVector&, const StateVector&) = default;

 private:
  friend class StateAccess;
  StateVector(int n_qubits, std::vector<Complex> amplitudes, bool /*trusted*/)
      : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {}

  int n_qubits_;
  std::vector<Complex> amplitudes_;
};

// In-place access for the gate kernels. Not part of the public surface: the
// kernels preserve the norm, so they may skip revalidation.
class StateAccess {
 public:
  static std::vector<Complex>& amplitudes(StateVector& s) { return s.amplitudes_; }
  static StateVector adopt(int n_qubits, std::vector<Complex> amplitudes) {
    return StateVector(n_qubits, std::move(amplitudes), true);
  }
};

StateVector basis_state(int n_qubits, BasisIndex index);

/// |a_k|^2 for every basis index k.
std::vector<double> probabilities(const StateVector& state);

}  // namespace qca
