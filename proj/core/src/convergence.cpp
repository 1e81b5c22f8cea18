#include "cavelim/convergence.hpp"

#include <cmath>
#include <limits>

#include "cavelim/error.hpp"

namespace cavelim {

ConvergenceTable cutoff_convergence(const std::function<double(Index)>& observable,
                                    const std::vector<Index>& cutoffs, double tolerance) {
  if (cutoffs.size() < 2) throw SpecError("cutoff_convergence: need at least two cutoffs");
  for (std::size_t i = 1; i < cutoffs.size(); ++i) {
    if (cutoffs[i] <= cutoffs[i - 1]) {
      throw SpecError("cutoff_convergence: cutoffs must be strictly increasing");
    }
  }
  if (!(tolerance > 0.0)) throw SpecError("cutoff_convergence: tolerance must be positive");

  ConvergenceTable table;
  table.tolerance = tolerance;
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (Index cutoff : cutoffs) {
    const double v = observable(cutoff);
    table.rows.push_back({cutoff, v, v - prev});
    prev = v;
  }
  table.final_value = table.rows.back().value;
  table.converged = std::abs(table.rows.back().change) < tolerance;

  std::size_t first = table.rows.size() - 1;
  while (first > 0 &&
         std::abs(table.rows[first - 1].value - table.final_value) < tolerance) {
    --first;
  }
  if (first + 1 < table.rows.size()) table.converged_cutoff = table.rows[first].cutoff;
  return table;
}

}  // namespace cavelim
