#pragma once

#include <string_view>

#include "cavelim/models.hpp"
#include "cavelim/system_spec.hpp"

namespace cavelim {

enum class AlphaMethod { Generic, OptomechClosed, OptomechWeak, RabiAnalytic };

std::string_view to_string(AlphaMethod m);

/// Effective-field operator α together with its elimination residual.
struct AlphaSolution {
  Operator alpha;
  double residual = 0.0;  ///< ‖[H_S,α] + Ω_Sα + S − iκα‖ (spectral norm)
  AlphaMethod method = AlphaMethod::Generic;
};

/// [H_S, α] + Ω_S α + S − iκα. Zero exactly when α solves the steady condition.
Operator elimination_lhs(const SystemSpec& spec, const Operator& alpha);
double elimination_residual(const SystemSpec& spec, const Operator& alpha);

enum class SylvesterRoute {
  Auto,        ///< vectorized while d² ≤ vectorized_cap, Schur otherwise
  Vectorized,  ///< (I⊗(H_S+Ω_S−iκ) − H_Sᵀ⊗I) vec α = −vec S, dense LU
  Schur,       ///< Bartels–Stewart on (H_S+Ω_S−iκ)α − αH_S = −S
};

struct AlphaSolveOptions {
  SylvesterRoute route = SylvesterRoute::Auto;
  Index vectorized_cap = 4096;    ///< largest d² solved by the vectorized route
  double max_condition = 1e12;    ///< reject systems with a worse condition estimate
};

/// Solves the steady elimination condition for a generic SystemSpec.
AlphaSolution solve_alpha_steady(const SystemSpec& spec, const AlphaSolveOptions& opts = {});

/**
 * Closed-form α for the optomechanical model: column m of α is
 * η[Δ + mω₀ + iκ − ω₀b†b − g(b + b†)]⁻¹ |m⟩, evaluated on the truncated
 * mirror space.
 */
AlphaSolution alpha_optomech_closed(const OptomechParams& p);

/// First-order (weak-coupling) expansion η/(Δ+iκ)[1 + g b/(Δ+ω₀+iκ) + g b†/(Δ−ω₀+iκ)].
AlphaSolution alpha_optomech_weak(const OptomechParams& p);

struct RabiAlpha {
  cplx plus;   ///< α₊ = −g/(ω_c + ω₀ − iκ)
  cplx minus;  ///< α₋ = −g/(ω_c − ω₀ − iκ)
};

RabiAlpha rabi_alpha_coefficients(double omega0, double omega_c, double g, double kappa);

/// α = α₊σ⁺ + α₋σ⁻, exact for the Rabi model.
AlphaSolution alpha_rabi(double omega0, double omega_c, double g, double kappa);

struct ValidityReport {
  double alpha_norm = 0.0;
  /// ‖[Ω_S, α]‖ / (‖Ω_S − iκ‖ ‖α‖); 0 with alpha_is_zero set when α = 0.
  double commutator_ratio = 0.0;
  double residual = 0.0;
  bool alpha_is_zero = false;
};

ValidityReport validity_report(const SystemSpec& spec, const Operator& alpha);

/// Entrywise max |a − b| restricted to rows/cols < dim − boundary.
double interior_max_difference(const Operator& a, const Operator& b, Index boundary = 2);

}  // namespace cavelim
