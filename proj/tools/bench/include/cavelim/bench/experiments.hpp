#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cavelim/cavelim.hpp"

namespace cavelim::bench {

// ---- optomechanical sweep --------------------------------------------------

struct OptomechSweepSettings {
  double omega0 = 0.5;
  double g = 0.1;
  double eta = 0.1;
  std::vector<double> deltas;
  Index mirror_cutoff = 30;
  Index cavity_cutoff = 3;
  /// The effective model is re-solved at mirror_cutoff + check_extra.
  Index check_extra = 10;
  /// Relative change of m̄_eff below which the mirror cutoff counts as converged.
  double convergence_tol = 0.01;
  bool compute_full = true;
};

struct OptomechRow {
  double delta = 0.0;
  double mbar_full = 0.0;  ///< NaN when the full model is skipped
  double mbar_eff = 0.0;
  double mbar_eff_check = 0.0;
  double mbar_formula = 0.0;
  double alpha_residual = 0.0;
  Index mirror_cutoff = 0;
  Index cavity_cutoff = 0;
  bool converged = false;
  /// "null-space", or "from-vacuum" when the steady manifold is degenerate
  std::string steady_route;
  std::string error;
};

OptomechRow optomech_point(const OptomechSweepSettings& s, double delta);
std::vector<OptomechRow> optomech_sweep(const OptomechSweepSettings& s, int threads = 1);

// ---- Ising cooling ---------------------------------------------------------

struct IsingCoolSettings {
  IsingCavityParams params;
  bool omega_c_from_gap = true;
  double degeneracy_tol = 1e-2;
  double t_final = 200.0;
  Index n_times = 201;
  Index cavity_cutoff = 3;
  bool compute_full = true;
  double rtol = 1e-8;
  double atol = 1e-10;
};

struct IsingCoolResult {
  IsingGap gap{};
  double omega_c = 0.0;
  double alpha_residual = 0.0;
  std::vector<double> times;
  std::vector<double> energy_eff;
  std::vector<double> energy_full;  ///< empty when the full model is skipped
  std::string full_note;
};

IsingCoolResult ising_cool(const IsingCoolSettings& s);

/// All spins up, the σᶻ = +1 product state.
Operator polarized_state(int n_sites);

// ---- Rabi spectrum ---------------------------------------------------------

struct RabiSpectrumSettings {
  RabiParams params;
  std::vector<Index> cutoffs{30};
  Index dense_cap = kDenseLiouvilleCap;
  /// Used when the full generator exceeds dense_cap.
  Index near_count = 8;
  cplx near_shift{0.01, 0.0};
};

struct RabiSpectrumBlock {
  Index cutoff = 0;
  bool dense = true;
  std::vector<cplx> eigenvalues;
  std::string error;
};

struct RabiSpectrumResult {
  std::vector<cplx> effective;
  std::vector<RabiSpectrumBlock> full;
  /// distances[b][i]: effective eigenvalue i to the nearest value of block b
  std::vector<std::vector<double>> distances;
};

RabiSpectrumResult rabi_spectrum(const RabiSpectrumSettings& s, int threads = 1);

/// The k eigenvalues nearest `shift` of the full Rabi generator at each cutoff.
std::vector<std::vector<cplx>> rabi_near_zero(const RabiParams& p, const std::vector<Index>& cutoffs,
                                              Index k, cplx shift, int threads = 1);

// ---- Rabi thermal scan -----------------------------------------------------

struct RabiThermalSettings {
  double omega0 = 3.0;
  double omega_c = 2.5;
  double g = 0.1;
  std::vector<double> nbars{0.0, 1.0, 2.0, 4.0};
  std::vector<Index> cutoffs{10, 20, 30, 40};
  double convergence_tol = 1e-5;
};

struct RabiThermalRow {
  double nbar = 0.0;
  double sz_formula = 0.0;
  double sz_eff = 0.0;
  double sz_full = 0.0;  ///< at the largest cutoff
  std::vector<ConvergenceRow> ladder;
  Index converged_cutoff = -1;
  bool converged = false;
  std::string error;
};

RabiThermalRow rabi_thermal_point(const RabiThermalSettings& s, double nbar);
std::vector<RabiThermalRow> rabi_thermal(const RabiThermalSettings& s, int threads = 1);

/// Full-model steady ⟨σᶻ⟩ of the Rabi model at one cutoff.
double rabi_full_sz(const RabiParams& p, Index cutoff);
/// Effective-model steady ⟨σᶻ⟩ from the numerically solved α.
double rabi_effective_sz(const RabiParams& p);

// ---- α solve ---------------------------------------------------------------

struct AlphaSolveSettings {
  std::variant<RabiParams, IsingCavityParams, OptomechParams> model;
  SylvesterRoute route = SylvesterRoute::Auto;
};

std::string model_name(const AlphaSolveSettings& s);

struct AlphaSolveResult {
  std::string model;
  AlphaSolution solution;
  ValidityReport validity;
  double drive_norm = 0.0;
  /// Max entry difference to a closed form, when the model has one.
  std::optional<double> closed_form_difference;
};

AlphaSolveResult alpha_solve(const AlphaSolveSettings& s);

/// Calls body(i) for every i in [0, n) on up to `threads` worker threads.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body);

}  // namespace cavelim::bench
