#include "qca/matrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace qca {

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
}

Matrix Matrix::identity(std::size_t dim) {
  Matrix m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t ar = 0; ar < a.rows(); ++ar)
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      const Complex x = a(ar, ac);
      for (std::size_t br = 0; br < b.rows(); ++br)
        for (std::size_t bc = 0; bc < b.cols(); ++bc)
          out(ar * b.rows() + br, ac * b.cols() + bc) = x * b(br, bc);
    }
  return out;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product shape mismatch");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex x = a(i, k);
      if (x == Complex{}) continue;
      // Spelled out: std::complex operator* takes a NaN-recovery branch.
      const double xr = x.real(), xi = x.imag();
      const Complex* brow = &b(k, 0);
      Complex* orow = &out(i, 0);
      for (std::size_t j = 0; j < b.cols(); ++j) {
        const double br = brow[j].real(), bi = brow[j].imag();
        orow[j] += Complex{xr * br - xi * bi, xr * bi + xi * br};
      }
    }
  return out;
}

std::vector<Complex> multiply(const Matrix& a, std::span<const Complex> v) {
  if (a.cols() != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
  std::vector<Complex> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex sum{};
    for (std::size_t k = 0; k < a.cols(); ++k) sum += a(i, k) * v[k];
    out[i] = sum;
  }
  return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matrix shape mismatch");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    worst = std::max(worst, std::abs(a.data()[i] - b.data()[i]));
  return worst;
}

double unitarity_deviation(const Matrix& m) {
  if (!m.square()) throw std::invalid_argument("unitarity check needs a square matrix");
  const Matrix gram = multiply(m.adjoint(), m);
  return max_abs_diff(gram, Matrix::identity(m.rows()));
}

}  // namespace qca
