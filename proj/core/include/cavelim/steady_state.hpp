#pragma once

#include "cavelim/evolve.hpp"
#include "cavelim/superop.hpp"

namespace cavelim {

enum class SteadyRoute {
  Auto,       ///< dense LU up to dense_cap or for well-filled generators, sparse LU otherwise
  Dense,
  Sparse,
  Evolution,  ///< long-time integration from the maximally mixed state
};

struct SteadyStateOptions {
  SteadyRoute route = SteadyRoute::Auto;
  Index dense_cap = 1024;
  /// Auto also goes dense up to kDenseLiouvilleCap above this fill fraction.
  double dense_fill = 0.05;
  /// ‖ℒρ‖_F ≤ residual_tol · ‖ℒ‖₁ · ‖ρ‖_F
  double residual_tol = 1e-8;
  double psd_tol = 1e-8;
  /// Two independently bordered solves must agree to this (max entry).
  double uniqueness_tol = 1e-6;
  /// Dense route: reciprocal condition below this means a degenerate kernel.
  double min_rcond = 1e-13;
  /// Dense route: below this a second bordered solve confirms uniqueness.
  double confirm_rcond = 1e-8;
  /// Evolution route: integration chunk and total horizon, in generator time.
  double evolution_chunk = 50.0;
  double evolution_horizon = 1e5;
};

/**
 * Unique null vector of the generator as a density matrix: Hermitized,
 * trace one, checked positive semidefinite and checked against the residual
 * bound. A kernel of dimension above one raises DegenerateSteadyStateError.
 */
Operator steady_state(const SuperOp& generator, const SteadyStateOptions& opts = {});

/// Integrates from `rho0` until ‖ℒρ‖_F ≤ residual_tol · ‖ρ‖_F.
Operator steady_state_by_evolution(const SuperOp& generator, const Operator& rho0,
                                   const SteadyStateOptions& opts = {});

/// ‖ℒρ‖_F / (‖ℒ‖₁ ‖ρ‖_F).
double steady_residual(const SuperOp& generator, const Operator& rho);

}  // namespace cavelim
