#pragma once

#include <string>
#include <vector>

#include "cavelim/superop.hpp"

namespace cavelim {

/// Tr(Oρ).
cplx expect(const Operator& op, const Operator& rho);

struct Observable {
  std::string name;
  Operator op;
};

struct EvolveOptions {
  double rtol = 1e-8;
  double atol = 1e-10;
  double initial_step = 0.0;  ///< 0 picks a step from the generator norm
  long max_steps = 50'000'000;
  bool store_states = true;
  /// Tolerance on Hermiticity, trace and positivity of the initial state.
  double state_tol = 1e-10;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Operator> states;  ///< empty unless store_states
  std::vector<std::string> observable_names;
  /// observables[k][i] = ⟨O_k⟩ at times[i]
  std::vector<std::vector<cplx>> observables;
  std::string generator;
  double rtol = 0.0;
  double atol = 0.0;
  long accepted_steps = 0;
  long rejected_steps = 0;
};

/**
 * Integrates dρ/dt = ℒρ with the Dormand–Prince 5(4) pair and records the
 * state and observables at every point of `times`; the first point is the
 * initial time. Steps are shortened to land on grid points exactly.
 *
 * Throws IntegrationError when the step size underflows.
 */
Trajectory evolve(const SuperOp& generator, const Operator& rho0, const std::vector<double>& times,
                  const std::vector<Observable>& observables = {}, const EvolveOptions& opts = {});

/// Throws SpecError unless ρ is Hermitian, unit trace and PSD within `tol`.
void require_density_matrix(const Operator& rho, double tol, const char* context);

}  // namespace cavelim
