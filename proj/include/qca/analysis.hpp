#pragma once

// Structural checks on compiled rules and period detection on probability
// patterns.

#include <string>

#include "qca/gates.hpp"
#include "qca/rules.hpp"

namespace qca {

inline constexpr double kDefaultPeriodTolerance = 1e-9;
inline constexpr double kExploratoryPeriodTolerance = 1e-6;
inline constexpr std::size_t kDefaultPeriodHorizon = 4096;

struct CheckReport {
  std::string name;
  bool passed = false;
  double worst_deviation = 0.0;
  double tolerance = 0.0;
  std::string details;
};

struct PeriodReport {
  bool found = false;
  std::size_t period = 0;  // 0 when not found
  double max_deviation = 0.0;
  double tolerance = 0.0;
  std::size_t columns_examined = 0;
};

CheckReport check_unitary(const DenseOperator& op, double tol = kUnitaryTolerance);

/// The dense interaction operator must be a 0/1 permutation that leaves every
/// s-bit unchanged. Requires 2 * n_cells <= 10.
CheckReport check_interaction(const QcaConfig& config);

/// Smallest p >= 1 with L-inf(col_t, col_{t+p}) <= tol for all comparable t,
/// reported only when the matrix has at least 2p + 1 columns.
PeriodReport detect_period(const ProbabilityMatrix& matrix, double tol = kDefaultPeriodTolerance);

/// Cell-shift map on basis indices: the qubit pair of cell j moves to cell
/// (j + 1) mod N.
BasisIndex shift_cells(BasisIndex k, int n_cells);

/// Compares the evolution from shift(initial) with the shifted evolution from
/// initial over `steps` steps. Requires a cyclic boundary.
CheckReport check_translation(const QcaConfig& config, long long steps,
                              double tol = kUnitaryTolerance);

}  // namespace qca
