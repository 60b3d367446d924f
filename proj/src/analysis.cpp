#include "qca/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qca {
namespace {

double column_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

BasisIndex s_bit_mask(int n_cells) {
  BasisIndex mask = 0;
  for (int j = 0; j < n_cells; ++j) mask |= BasisIndex{1} << (2 * j + 1);
  return mask;
}

}  // namespace

CheckReport check_unitary(const DenseOperator& op, double tol) {
  CheckReport report{"unitary", false, unitarity_deviation(op.matrix), tol, {}};
  report.passed = report.worst_deviation <= tol;
  std::ostringstream details;
  details << op.n_qubits << "-qubit operator, max|U^dagger U - I| = " << report.worst_deviation;
  report.details = details.str();
  return report;
}

CheckReport check_interaction(const QcaConfig& config) {
  const RegisterLayout layout = config.layout();
  const DenseOperator op = compose_dense(compile_interaction(config), layout.n_qubits());
  const std::size_t dim = op.matrix.rows();
  const BasisIndex s_mask = s_bit_mask(layout.n_cells());

  double entry_distance = 0.0;
  std::size_t structure_violations = 0;
  std::size_t s_bit_violations = 0;
  std::vector<std::size_t> row_hits(dim, 0);
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t ones = 0;
    std::size_t image = 0;
    for (std::size_t row = 0; row < dim; ++row) {
      const Complex x = op.matrix(row, col);
      entry_distance = std::max(entry_distance, std::min(std::abs(x), std::abs(x - 1.0)));
      if (x == Complex{1.0, 0.0}) {
        ++ones;
        image = row;
        ++row_hits[row];
      } else if (x != Complex{}) {
        ++structure_violations;
      }
    }
    if (ones != 1) {
      ++structure_violations;
    } else if ((image & s_mask) != (col & s_mask)) {
      ++s_bit_violations;
    }
  }
  for (std::size_t hits : row_hits)
    if (hits != 1) ++structure_violations;

  CheckReport report{"interaction", false, 0.0, 0.0, {}};
  report.worst_deviation =
      entry_distance + static_cast<double>(structure_violations + s_bit_violations);
  report.passed = report.worst_deviation <= report.tolerance;
  std::ostringstream details;
  details << dim << "x" << dim << " operator, entry distance " << entry_distance
          << ", permutation violations " << structure_violations << ", s-bit violations "
          << s_bit_violations;
  report.details = details.str();
  return report;
}

PeriodReport detect_period(const ProbabilityMatrix& matrix, double tol) {
  if (matrix.n_columns() == 0) throw std::invalid_argument("period detection needs a column");
  if (!(tol > 0.0)) throw std::invalid_argument("period tolerance must be positive");
  const std::size_t cols = matrix.n_columns();
  PeriodReport report;
  report.tolerance = tol;
  report.columns_examined = cols;
  for (std::size_t p = 1; 2 * p + 1 <= cols; ++p) {
    double worst = 0.0;
    bool ok = true;
    for (std::size_t t = 0; t + p < cols; ++t) {
      worst = std::max(worst, column_distance(matrix.column(t), matrix.column(t + p)));
      if (worst > tol) {
        ok = false;
        break;
      }
    }
    if (ok) {
      report.found = true;
      report.period = p;
      report.max_deviation = worst;
      return report;
    }
  }
  return report;
}

BasisIndex shift_cells(BasisIndex k, int n_cells) {
  const int width = 2 * n_cells;
  const BasisIndex mask = (BasisIndex{1} << width) - 1;
  k &= mask;
  return ((k << 2) | (k >> (width - 2))) & mask;
}

CheckReport check_translation(const QcaConfig& config, long long steps, double tol) {
  if (config.boundary != BoundaryCondition::Cyclic) {
    throw std::invalid_argument("translation check requires a cyclic boundary");
  }
  if (steps < 0) throw std::out_of_range("negative step count");
  QcaConfig base = config;
  base.n_steps = steps;
  QcaConfig shifted = base;
  shifted.initial_index = shift_cells(config.initial_index, config.n_cells);

  const ProbabilityMatrix original = evolve(base);
  const ProbabilityMatrix moved = evolve(shifted);
  double worst = 0.0;
  for (std::size_t t = 0; t < original.n_columns(); ++t)
    for (BasisIndex k = 0; k < original.n_states(); ++k)
      worst = std::max(worst, std::abs(original.at(k, t) -
                                       moved.at(shift_cells(k, config.n_cells), t)));

  CheckReport report{"translation", worst <= tol, worst, tol, {}};
  std::ostringstream details;
  details << original.n_columns() << " columns compared under a one-cell shift";
  report.details = details.str();
  return report;
}

}  // namespace qca
