#pragma once

#include <vector>

#include "cavelim/system_spec.hpp"

namespace cavelim {

/// Radiation-pressure coupled mirror; all frequencies in units of κ.
struct OptomechParams {
  double omega0 = 1.0;  ///< mirror frequency
  double delta = -1.0;  ///< laser–cavity detuning ω_L − ω_c
  double g = 0.1;       ///< optomechanical coupling
  double eta = 0.1;     ///< drive strength
  double kappa = 1.0;   ///< cavity linewidth
  Index mirror_cutoff = 20;
};

/// Open-boundary transverse-field Ising chain with Jaynes–Cummings coupling.
struct IsingCavityParams {
  int n_sites = 4;
  double h = 1.0;
  double j = 5.0;
  double g = 0.3;
  double omega_c = 1.0;
  double kappa = 1.0;
};

/// Two-level atom coupled via σ^x to a thermal mode.
struct RabiParams {
  double omega0 = 3.0;
  double omega_c = 2.5;
  double g = 0.1;
  double kappa = 1.0;
  double nbar = 0.0;
};

inline const std::string kMirrorSpace = "mirror";

void validate(const OptomechParams& p);
void validate(const IsingCavityParams& p);
void validate(const RabiParams& p);

/// H_S = ω₀ b†b, Ω_S = −Δ + g(b + b†), S = η, n̄ = 0.
SystemSpec make_optomech(const OptomechParams& p);

/// H_S = hΣσᶻ − JΣσˣσˣ, Ω_S = ω_c, S = gΣσ⁻, n̄ = 0.
SystemSpec make_ising_cavity(const IsingCavityParams& p);

/// H_S = (ω₀/2)σᶻ, Ω_S = ω_c, S = gσˣ.
SystemSpec make_rabi(const RabiParams& p);

/// The Ising system Hamiltonian alone.
Operator ising_hamiltonian(int n_sites, double h, double j);

struct IsingGap {
  double e0;
  double e1;
  double gap;
  int ground_multiplicity;  ///< levels merged into the ground cluster
};

inline constexpr int kIsingMaxSites = 12;
inline constexpr double kDefaultDegeneracyTol = 1e-9;

/**
 * Lowest level E0 and the first level strictly above the ground cluster.
 * Eigenvalues within `degeneracy_tol · max(1, |E0|)` of E0 are one level.
 * The cooling experiments pass a looser tolerance so that the exponentially
 * split parity doublet of the ordered phase counts as the ground manifold.
 */
IsingGap ising_gap(int n_sites, double h, double j, double degeneracy_tol = kDefaultDegeneracyTol,
                   int max_sites = kIsingMaxSites);

/// Bose–Einstein occupation [exp(βω) − 1]⁻¹; requires βω > 0.
double thermal_occupation(double beta, double omega_c);

/// Diagonal thermal state on the lowest `cutoff` Fock levels, renormalized.
Operator thermal_state(double nbar, Index cutoff, std::string space = "mode");

}  // namespace cavelim
