#pragma once

// Row-major dense complex matrix used for gate matrices and dense operators.

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "qca/register.hpp"

namespace qca {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols);
  /// Row-major construction from nested lists; all rows must be the same length.
  Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static Matrix identity(std::size_t dim);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const std::vector<Complex>& data() const { return data_; }

  Matrix adjoint() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// Kronecker product; the left operand owns the more significant index bits.
Matrix kron(const Matrix& a, const Matrix& b);

/// a * b. Zero entries of `a` are skipped, so embedded gate operators
/// (a few nonzeros per row) multiply in O(dim^2 * nnz_row).
Matrix multiply(const Matrix& a, const Matrix& b);

std::vector<Complex> multiply(const Matrix& a, std::span<const Complex> v);

/// max |a_ij - b_ij|; shapes must match.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// max-norm of (m^dagger m - I).
double unitarity_deviation(const Matrix& m);

}  // namespace qca
