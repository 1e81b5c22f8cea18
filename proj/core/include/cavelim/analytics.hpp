#pragma once

#include "cavelim/superop.hpp"

namespace cavelim {

/// Weak-coupling phonon jump rates of the driven optomechanical cavity.
struct RatePair {
  double cooling;  ///< A₋
  double heating;  ///< A₊
};

/// A∓ = κg²η² / ((Δ² + κ²)[(Δ ± ω₀)² + κ²]).
RatePair cooling_heating_rates(double omega0, double delta, double g, double eta, double kappa);

/// A₊/(A₋ − A₊) = ((Δ + ω₀)² + κ²)/(−4Δω₀); requires Δ < 0 and ω₀ > 0.
double mbar_weak(double omega0, double delta, double kappa);

/// Detuning that minimizes mbar_weak.
double mbar_weak_optimal_detuning(double omega0, double kappa);

struct RabiShifts {
  double delta_omega0;   ///< Δω₀ = lamb + bloch_siegert
  double sigma_omega0;   ///< Σω₀
  double lamb;           ///< co-rotating part of Δω₀
  double bloch_siegert;  ///< counter-rotating part of Δω₀
};

/// Closed-form frequency shift and energy offset of the dissipative Rabi model.
RabiShifts rabi_shifts(double omega0, double omega_c, double g, double kappa, double nbar);

/// The same quantities from given α± coefficients: Δω₀ = g(2n̄+1)(Re α₋ − Re α₊).
RabiShifts rabi_shifts_from_alpha(cplx alpha_plus, cplx alpha_minus, double g, double nbar);

/// Steady ⟨σᶻ⟩ = −2ω_cω₀ / ((ω_c² + ω₀² + κ²)(2n̄ + 1)).
double rabi_steady_sz(double omega0, double omega_c, double kappa, double nbar);

struct SimplifiedGenerator {
  SuperOp generator;
  /// A₋ ≤ A₊: the truncated steady state sits at the cutoff.
  bool cutoff_dominated;
};

/// ℒρ = −iω₀[b†b, ρ] + A₋𝒟[b]ρ + A₊𝒟[b†]ρ on the lowest `cutoff` Fock levels.
SimplifiedGenerator simplified_optomech_generator(double omega0, const RatePair& rates,
                                                  Index cutoff);

}  // namespace cavelim
