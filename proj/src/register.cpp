#include "qca/register.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qca {

RegisterLayout::RegisterLayout(int n_cells) : n_cells_(n_cells) {
  if (n_cells < 1 || n_cells > kMaxCells) {
    throw std::out_of_range("cell count " + std::to_string(n_cells) + " outside 1.." +
                            std::to_string(kMaxCells));
  }
}

int RegisterLayout::bit_position(int cell, QubitRole role) const {
  if (cell < 0 || cell >= n_cells_) {
    throw std::out_of_range("cell index " + std::to_string(cell) + " outside 0.." +
                            std::to_string(n_cells_ - 1));
  }
  return 2 * cell + (role == QubitRole::S ? 1 : 0);
}

int bit_position(const RegisterLayout& layout, int cell, QubitRole role) {
  return layout.bit_position(cell, role);
}

StateVector::StateVector(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
  const std::size_t len = amplitudes_.size();
  if (len < 2 || !std::has_single_bit(len)) {
    throw std::invalid_argument("amplitude count must be 2^n with n >= 1");
  }
  n_qubits_ = std::countr_zero(len);
  if (n_qubits_ > kMaxQubits) {
    throw std::length_error("register exceeds " + std::to_string(kMaxQubits) + " qubits");
  }
  for (const Complex& a : amplitudes_) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
      throw std::invalid_argument("non-finite amplitude");
    }
  }
  if (std::abs(norm_squared() - 1.0) > kNormTolerance) {
    throw std::invalid_argument("state is not normalized");
  }
}

double StateVector::norm_squared() const {
  double sum = 0.0;
  for (const Complex& a : amplitudes_) sum += std::norm(a);
  return sum;
}

StateVector basis_state(int n_qubits, BasisIndex index) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw std::out_of_range("qubit count " + std::to_string(n_qubits) + " outside 1.." +
                            std::to_string(kMaxQubits));
  }
  const BasisIndex dim = BasisIndex{1} << n_qubits;
  if (index >= dim) {
    throw std::out_of_range("basis index " + std::to_string(index) + " >= " + std::to_string(dim));
  }
  std::vector<Complex> amps(dim);
  amps[index] = 1.0;
  return StateAccess::adopt(n_qubits, std::move(amps));
}

std::vector<double> probabilities(const StateVector& state) {
  std::vector<double> col;
  col.reserve(state.size());
  for (const Complex& a : state.amplitudes()) col.push_back(std::norm(a));
  return col;
}

}  // namespace qca
