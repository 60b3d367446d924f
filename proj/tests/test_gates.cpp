#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "qca/gates.hpp"
#include "test_support.hpp"

using namespace qca;
using qca::testing::linf;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

std::vector<Complex> sorted_by_bits(std::span<const Complex> v) {
  std::vector<Complex> out(v.begin(), v.end());
  std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
    return std::pair(a.real(), a.imag()) < std::pair(b.real(), b.imag());
  });
  return out;
}

}  // namespace

TEST_CASE("standard gates") {
  const Matrix h = standard_gate(GateName::H).matrix();
  CHECK(max_abs_diff(multiply(h, h), Matrix::identity(2)) <= 1e-15);
  CHECK(standard_gate("X").matrix() == Matrix{{0, 1}, {1, 0}});
  CHECK(standard_gate("I").matrix() == Matrix::identity(2));

  const Matrix cn = standard_gate(GateName::CN).matrix();
  const auto after_cn = multiply(cn, basis_state(2, 0b10).amplitudes());
  CHECK(after_cn == std::vector<Complex>{0, 0, 0, 1});

  const Matrix ccn = standard_gate(GateName::CCN).matrix();
  CHECK(multiply(ccn, basis_state(3, 0b110).amplitudes())[0b111] == Complex{1.0, 0.0});
  CHECK(multiply(ccn, basis_state(3, 0b100).amplitudes())[0b100] == Complex{1.0, 0.0});

  CHECK_THROWS_AS(standard_gate("Y"), std::invalid_argument);
}

TEST_CASE("small unitaries reject bad matrices") {
  CHECK_THROWS_AS(SmallUnitary(Matrix{{1, 1}, {0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(SmallUnitary(Matrix::identity(3)), std::invalid_argument);
  CHECK_THROWS_AS(SmallUnitary(Matrix(2, 4)), std::invalid_argument);
}

TEST_CASE("kron") {
  CHECK(kron(Matrix::identity(2), Matrix::identity(2)) == Matrix::identity(4));
  const Matrix big = kron(Matrix(2, 2), Matrix(4, 4));
  CHECK(big.rows() == 8);
  CHECK(big.cols() == 8);

  // Left factor acts on the more significant qubit: H on bit 1 of |10>.
  const Matrix h_hi = kron(standard_gate(GateName::H).matrix(), Matrix::identity(2));
  const StateVector out(multiply(h_hi, basis_state(2, 2).amplitudes()));
  const auto p = probabilities(out);
  CHECK(p[0] == doctest::Approx(0.5));
  CHECK(p[1] == 0.0);
  CHECK(p[2] == doctest::Approx(0.5));
  CHECK(p[3] == 0.0);
}

TEST_CASE("kron is associative bit for bit on dyadic entries") {
  // Dyadic rationals with small numerators multiply without rounding, so the
  // two groupings perform identical exact operations.
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> num(-8, 8);
  auto dyadic = [&](std::size_t r, std::size_t c) {
    Matrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = {num(rng) / 8.0, num(rng) / 4.0};
    return m;
  };
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix a = dyadic(2, 2), b = dyadic(2, 4), c = dyadic(4, 2);
    CHECK(kron(kron(a, b), c) == kron(a, kron(b, c)));
  }
}

TEST_CASE("embed_gate of controlled flips") {
  CHECK(embed_gate(cnot(1, 0), 2).matrix == standard_gate(GateName::CN).matrix());

  // Enumerate the XOR rule by hand: only 101 and 111 have bits 0 and 2 set.
  const DenseOperator toff = embed_gate(toffoli(0, 2, 1), 3);
  for (BasisIndex k = 0; k < 8; ++k) {
    const BasisIndex expected = k == 5 ? 7 : k == 7 ? 5 : k;
    for (BasisIndex r = 0; r < 8; ++r)
      CHECK(toff.matrix(r, k) == Complex{r == expected ? 1.0 : 0.0, 0.0});
  }

  for (int p = 0; p < 4; ++p) {
    const DenseOperator flip = embed_gate(ControlledFlip({}, p), 4);
    const DenseOperator x = embed_gate(LocalUnitary({p}, standard_gate(GateName::X)), 4);
    CHECK(flip.matrix == x.matrix);
  }
}

TEST_CASE("local unitaries map ascending positions to ascending significance") {
  // Packed CN has its control on the more significant index bit, i.e. the
  // higher of the two listed positions.
  const DenseOperator packed = embed_gate(LocalUnitary({0, 2}, standard_gate(GateName::CN)), 3);
  CHECK(packed.matrix == embed_gate(cnot(2, 0), 3).matrix);
  const DenseOperator packed3 =
      embed_gate(LocalUnitary({1, 3, 4}, standard_gate(GateName::CCN)), 5);
  CHECK(packed3.matrix == embed_gate(toffoli(3, 4, 1), 5).matrix);
}

TEST_CASE("embedded flips are permutation matrices and all embeddings are unitary") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 6;
    const GateOp g = testing::random_gate(n, rng);
    const DenseOperator op = embed_gate(g, n);
    CHECK(unitarity_deviation(op.matrix) <= 1e-12);
    if (std::holds_alternative<ControlledFlip>(g)) {
      for (std::size_t r = 0; r < op.matrix.rows(); ++r) {
        int row_ones = 0, col_ones = 0;
        for (std::size_t c = 0; c < op.matrix.cols(); ++c) {
          const Complex x = op.matrix(r, c);
          CHECK((x == Complex{} || x == Complex{1.0, 0.0}));
          row_ones += x == Complex{1.0, 0.0};
          col_ones += op.matrix(c, r) == Complex{1.0, 0.0};
        }
        CHECK(row_ones == 1);
        CHECK(col_ones == 1);
      }
    }
  }
}

TEST_CASE("gate placement errors") {
  CHECK_THROWS_AS(embed_gate(cnot(2, 0), 2), std::out_of_range);
  CHECK_THROWS_AS(apply_gate(basis_state(2, 0), hadamard(5)), std::out_of_range);
  CHECK_THROWS_AS(ControlledFlip({1}, 1), std::invalid_argument);
  CHECK_THROWS_AS(LocalUnitary({2, 1}, SmallUnitary(Matrix::identity(4))), std::invalid_argument);
  CHECK_THROWS_AS(LocalUnitary({0}, SmallUnitary(Matrix::identity(4))), std::invalid_argument);
  CHECK_THROWS_AS(embed_gate(hadamard(0), kMaxDenseQubits + 1), std::length_error);
  CHECK_THROWS_AS(compose_dense({}, kMaxDenseQubits + 1), std::length_error);
}

TEST_CASE("apply_gate") {
  const auto p = probabilities(apply_gate(basis_state(2, 2), hadamard(1)));
  CHECK(p[0] == doctest::Approx(0.5));
  CHECK(p[1] == 0.0);
  CHECK(p[2] == doctest::Approx(0.5));
  CHECK(p[3] == 0.0);

  std::mt19937_64 rng(5);
  const StateVector psi = testing::random_state(4, rng);
  CHECK(apply_gate(psi, LocalUnitary({1, 3}, SmallUnitary(Matrix::identity(4)))) == psi);
  CHECK(apply_gate(psi, LocalUnitary({2}, standard_gate(GateName::I))) == psi);

  const StateVector three = testing::random_state(3, rng);
  const GateOp g = cnot(2, 0);
  CHECK(linf(apply_gate(three, g), apply_dense(embed_gate(g, 3), three)) <= 1e-12);
}

TEST_CASE("apply_gate matches the dense oracle and preserves the norm") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 1 + trial % 8;
    const StateVector psi = testing::random_state(n, rng);
    const GateOp g = testing::random_gate(n, rng);
    const StateVector fast = apply_gate(psi, g);
    CHECK(linf(fast, apply_dense(embed_gate(g, n), psi)) <= 1e-12);
    CHECK(std::abs(fast.norm_squared() - psi.norm_squared()) <= 1e-12);
    if (std::holds_alternative<ControlledFlip>(g)) {
      CHECK(sorted_by_bits(fast.amplitudes()) == sorted_by_bits(psi.amplitudes()));
    }
  }
}

TEST_CASE("compose_dense") {
  CHECK(compose_dense({}, 3).matrix == Matrix::identity(8));

  // H on bit 1 then CN(1 -> 0) applied to |10>: (|00> - |11>)/sqrt2.
  const std::vector<GateOp> seq{hadamard(1), cnot(1, 0)};
  const DenseOperator op = compose_dense(seq, 2);
  const auto out = multiply(op.matrix, basis_state(2, 2).amplitudes());
  CHECK(linf(out, std::vector<Complex>{kInvSqrt2, 0, 0, -kInvSqrt2}) <= 1e-15);
  const auto p = probabilities(StateVector(out));
  CHECK(p[0] == doctest::Approx(0.5));
  CHECK(p[3] == doctest::Approx(0.5));

  // Order: the first gate acts first.
  const std::vector<GateOp> reversed{cnot(1, 0), hadamard(1)};
  CHECK(max_abs_diff(compose_dense(reversed, 2).matrix, op.matrix) > 0.1);

  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 6;
    std::vector<GateOp> gates;
    for (int i = 0; i < 12; ++i) gates.push_back(testing::random_gate(n, rng));
    CHECK(unitarity_deviation(compose_dense(gates, n).matrix) <= 1e-12);
  }
}

TEST_CASE("kernels handle the full register size without a dense operator") {
  StateVector psi = basis_state(kMaxQubits, 0);
  apply_in_place(psi, hadamard(kMaxQubits - 1));
  apply_in_place(psi, cnot(kMaxQubits - 1, 0));
  const BasisIndex top = (BasisIndex{1} << (kMaxQubits - 1)) | 1;
  CHECK(std::norm(psi[0]) == doctest::Approx(0.5));
  CHECK(std::norm(psi[top]) == doctest::Approx(0.5));
}
