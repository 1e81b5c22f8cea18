#pragma once

#include <functional>
#include <vector>

#include "cavelim/operator.hpp"

namespace cavelim {

struct ConvergenceRow {
  Index cutoff;
  double value;
  double change;  ///< value − previous value; NaN on the first row
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  double tolerance = 0.0;
  /// |last change| < tolerance
  bool converged = false;
  /// Smallest cutoff from which every later value stays within tolerance of
  /// the last one; −1 if only the last cutoff qualifies.
  Index converged_cutoff = -1;
  double final_value = 0.0;
};

/// Evaluates `observable(L)` on an increasing list of cutoffs.
ConvergenceTable cutoff_convergence(const std::function<double(Index)>& observable,
                                    const std::vector<Index>& cutoffs, double tolerance);

}  // namespace cavelim
