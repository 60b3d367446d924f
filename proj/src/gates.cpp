#include "qca/gates.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qca {
namespace {

// Inserts a zero bit at each of the ascending `positions` of `i`.
inline BasisIndex insert_zero_bits(BasisIndex i, std::span<const int> positions) {
  for (int p : positions) {
    const BasisIndex low = i & ((BasisIndex{1} << p) - 1);
    i = ((i >> p) << (p + 1)) | low;
  }
  return i;
}

// Scatters the low bits of `local` onto `positions` (bit b -> positions[b]).
inline BasisIndex deposit(std::size_t local, std::span<const int> positions) {
  BasisIndex out = 0;
  for (std::size_t b = 0; b < positions.size(); ++b)
    if ((local >> b) & 1U) out |= BasisIndex{1} << positions[b];
  return out;
}

inline std::size_t extract(BasisIndex k, std::span<const int> positions) {
  std::size_t out = 0;
  for (std::size_t b = 0; b < positions.size(); ++b)
    out |= static_cast<std::size_t>((k >> positions[b]) & 1U) << b;
  return out;
}

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

void check_position(int p, int n_qubits) {
  if (p < 0 || p >= n_qubits) {
    throw std::out_of_range("bit position " + std::to_string(p) + " outside register of " +
                            std::to_string(n_qubits) + " qubits");
  }
}

void check_dense_size(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxDenseQubits) {
    throw std::length_error("dense operators are limited to " + std::to_string(kMaxDenseQubits) +
                            " qubits (requested " + std::to_string(n_qubits) + ")");
  }
}

void apply_flip(std::vector<Complex>& amps, int n_qubits, const ControlledFlip& g) {
  std::vector<int> fixed = g.controls;
  fixed.push_back(g.target);
  std::sort(fixed.begin(), fixed.end());
  BasisIndex control_mask = 0;
  for (int c : g.controls) control_mask |= BasisIndex{1} << c;
  const BasisIndex target_bit = BasisIndex{1} << g.target;
  const BasisIndex count = BasisIndex{1} << (n_qubits - static_cast<int>(fixed.size()));
  for (BasisIndex i = 0; i < count; ++i) {
    const BasisIndex k0 = insert_zero_bits(i, fixed) | control_mask;
    std::swap(amps[k0], amps[k0 | target_bit]);
  }
}

template <std::size_t D>
void apply_local(std::vector<Complex>& amps, int n_qubits, const LocalUnitary& g) {
  const std::span<const int> qubits = g.qubits;
  std::array<BasisIndex, D> offset{};
  for (std::size_t c = 0; c < D; ++c) offset[c] = deposit(c, qubits);

  // Nonzero entries per row; zero entries contribute nothing and are skipped
  // so that identity-like rows reproduce their input exactly.
  std::array<std::array<std::size_t, D>, D> cols{};
  std::array<std::array<Complex, D>, D> vals{};
  std::array<std::size_t, D> nnz{};
  for (std::size_t r = 0; r < D; ++r)
    for (std::size_t c = 0; c < D; ++c)
      if (g.matrix(r, c) != Complex{}) {
        cols[r][nnz[r]] = c;
        vals[r][nnz[r]] = g.matrix(r, c);
        ++nnz[r];
      }

  const BasisIndex count = BasisIndex{1} << (n_qubits - static_cast<int>(qubits.size()));
  std::array<Complex, D> in;
  for (BasisIndex i = 0; i < count; ++i) {
    const BasisIndex base = insert_zero_bits(i, qubits);
    for (std::size_t c = 0; c < D; ++c) in[c] = amps[base + offset[c]];
    for (std::size_t r = 0; r < D; ++r) {
      double re = 0.0, im = 0.0;
      for (std::size_t e = 0; e < nnz[r]; ++e) {
        const Complex v = vals[r][e], x = in[cols[r][e]];
        const double pr = v.real() * x.real() - v.imag() * x.imag();
        const double pi = v.real() * x.imag() + v.imag() * x.real();
        if (e == 0) {
          re = pr;
          im = pi;
        } else {
          re += pr;
          im += pi;
        }
      }
      amps[base + offset[r]] = Complex{re, im};
    }
  }
}

}  // namespace

SmallUnitary::SmallUnitary(Matrix m) : m_(std::move(m)) {
  const std::size_t d = m_.rows();
  if (!m_.square() || (d != 2 && d != 4 && d != 8)) {
    throw std::invalid_argument("small unitary must be 2x2, 4x4 or 8x8");
  }
  for (const Complex& x : m_.data()) {
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
      throw std::invalid_argument("non-finite matrix entry");
  }
  const double dev = unitarity_deviation(m_);
  if (dev > kUnitaryTolerance) {
    throw std::invalid_argument("matrix is not unitary (deviation " + std::to_string(dev) + ")");
  }
}

int SmallUnitary::n_qubits() const { return std::countr_zero(m_.rows()); }

SmallUnitary standard_gate(GateName name) {
  const double h = 1.0 / std::sqrt(2.0);
  switch (name) {
    case GateName::I:
      return SmallUnitary(Matrix::identity(2));
    case GateName::X:
      return SmallUnitary(Matrix{{0, 1}, {1, 0}});
    case GateName::H:
      return SmallUnitary(Matrix{{h, h}, {h, -h}});
    case GateName::CN:
      return SmallUnitary(Matrix{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
    case GateName::CCN: {
      Matrix m = Matrix::identity(8);
      m(6, 6) = m(7, 7) = 0.0;
      m(6, 7) = m(7, 6) = 1.0;
      return SmallUnitary(std::move(m));
    }
  }
  throw std::invalid_argument("unknown gate");
}

SmallUnitary standard_gate(std::string_view name) {
  if (name == "I") return standard_gate(GateName::I);
  if (name == "X") return standard_gate(GateName::X);
  if (name == "H") return standard_gate(GateName::H);
  if (name == "CN") return standard_gate(GateName::CN);
  if (name == "CCN") return standard_gate(GateName::CCN);
  throw std::invalid_argument("unknown gate name '" + std::string(name) + "'");
}

ControlledFlip::ControlledFlip(std::vector<int> controls_in, int target_in)
    : controls(sorted_unique(std::move(controls_in))), target(target_in) {
  if (target < 0) throw std::out_of_range("negative target position");
  for (int c : controls) {
    if (c < 0) throw std::out_of_range("negative control position");
    if (c == target) throw std::invalid_argument("target is also a control");
  }
}

LocalUnitary::LocalUnitary(std::vector<int> qubits_in, SmallUnitary matrix_in)
    : qubits(std::move(qubits_in)), matrix(std::move(matrix_in)) {
  if (!std::is_sorted(qubits.begin(), qubits.end()) ||
      std::adjacent_find(qubits.begin(), qubits.end()) != qubits.end()) {
    throw std::invalid_argument("local unitary positions must be ascending and distinct");
  }
  if (!qubits.empty() && qubits.front() < 0) throw std::out_of_range("negative bit position");
  if (static_cast<int>(qubits.size()) != matrix.n_qubits()) {
    throw std::invalid_argument("matrix dimension does not match the number of positions");
  }
}

GateOp hadamard(int bit) { return LocalUnitary({bit}, standard_gate(GateName::H)); }
GateOp pauli_x(int bit) { return ControlledFlip({}, bit); }
GateOp cnot(int control, int target) { return ControlledFlip({control}, target); }
GateOp toffoli(int control_a, int control_b, int target) {
  if (control_a == control_b) throw std::invalid_argument("toffoli controls must differ");
  return ControlledFlip({control_a, control_b}, target);
}

void validate(const GateOp& gate, int n_qubits) {
  std::visit(
      [n_qubits](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, ControlledFlip>) {
          check_position(g.target, n_qubits);
          for (int c : g.controls) check_position(c, n_qubits);
        } else {
          for (int q : g.qubits) check_position(q, n_qubits);
        }
      },
      gate);
}

DenseOperator DenseOperator::identity(int n_qubits) {
  check_dense_size(n_qubits);
  return {n_qubits, Matrix::identity(std::size_t{1} << n_qubits)};
}

DenseOperator embed_gate(const GateOp& gate, int n_qubits) {
  check_dense_size(n_qubits);
  validate(gate, n_qubits);
  const std::size_t dim = std::size_t{1} << n_qubits;
  DenseOperator op{n_qubits, Matrix(dim, dim)};
  if (const auto* flip = std::get_if<ControlledFlip>(&gate)) {
    BasisIndex mask = 0;
    for (int c : flip->controls) mask |= BasisIndex{1} << c;
    for (BasisIndex k = 0; k < dim; ++k) {
      const BasisIndex image = (k & mask) == mask ? k ^ (BasisIndex{1} << flip->target) : k;
      op.matrix(image, k) = 1.0;
    }
    return op;
  }
  const auto& local = std::get<LocalUnitary>(gate);
  const std::span<const int> qubits = local.qubits;
  const BasisIndex local_mask = deposit(local.matrix.dim() - 1, qubits);
  for (BasisIndex col = 0; col < dim; ++col) {
    const BasisIndex base = col & ~local_mask;
    const std::size_t lc = extract(col, qubits);
    for (std::size_t lr = 0; lr < local.matrix.dim(); ++lr)
      op.matrix(base | deposit(lr, qubits), col) = local.matrix(lr, lc);
  }
  return op;
}

DenseOperator compose_dense(std::span<const GateOp> gates, int n_qubits) {
  DenseOperator acc = DenseOperator::identity(n_qubits);
  for (const GateOp& g : gates) {
    acc.matrix = multiply(embed_gate(g, n_qubits).matrix, acc.matrix);
  }
  return acc;
}

void apply_in_place(StateVector& state, const GateOp& gate) {
  const int n = state.n_qubits();
  validate(gate, n);
  auto& amps = StateAccess::amplitudes(state);
  if (const auto* flip = std::get_if<ControlledFlip>(&gate)) {
    apply_flip(amps, n, *flip);
    return;
  }
  const auto& local = std::get<LocalUnitary>(gate);
  switch (local.matrix.dim()) {
    case 2:
      apply_local<2>(amps, n, local);
      break;
    case 4:
      apply_local<4>(amps, n, local);
      break;
    case 8:
      apply_local<8>(amps, n, local);
      break;
    default:
      throw std::logic_error("unsupported local unitary dimension");
  }
}

StateVector apply_gate(StateVector state, const GateOp& gate) {
  apply_in_place(state, gate);
  return state;
}

StateVector apply_dense(const DenseOperator& op, const StateVector& state) {
  if (op.n_qubits != state.n_qubits()) throw std::invalid_argument("operator/state size mismatch");
  return StateVector(multiply(op.matrix, state.amplitudes()));
}

}  // namespace qca
