#pragma once

#include <cstdint>
#include <vector>

#include "cavelim/superop.hpp"

namespace cavelim {

/// All d² eigenvalues, sorted by real part descending (ties by imaginary part).
/// Throws BudgetError above `dense_cap`.
std::vector<cplx> spectrum(const SuperOp& generator, Index dense_cap = kDenseLiouvilleCap);

/// Eigenvalues of a dense matrix via LAPACK zgeev, unsorted.
std::vector<cplx> eigenvalues(const Matrix& m);

void sort_spectrum(std::vector<cplx>& values);

struct SpectrumNearOptions {
  Index extra_vectors = 6;  ///< block size is k + extra_vectors
  int max_iterations = 500;
  double tol = 1e-9;  ///< Ritz residual relative to ‖ℒ‖₁
  std::uint64_t seed = 7;
};

/**
 * The k eigenvalues closest to `shift`, by block inverse iteration with
 * (ℒ − shift)⁻¹ and Rayleigh–Ritz extraction on ℒ. The shift must not be
 * an eigenvalue. Sorted by distance to the shift.
 */
std::vector<cplx> spectrum_near(const SuperOp& generator, cplx shift, Index k,
                                const SpectrumNearOptions& opts = {});

/// For each probe value, the distance to the nearest reference value.
std::vector<double> nearest_distances(const std::vector<cplx>& probe,
                                      const std::vector<cplx>& reference);

}  // namespace cavelim
