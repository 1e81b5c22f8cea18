#pragma once

#include <utility>

#include "cavelim/superop.hpp"
#include "cavelim/system_spec.hpp"

namespace cavelim {

/// Tag of the truncated bosonic factor in composite spaces.
inline const std::string kModeSpace = "mode";

/// Space tag of spec ⊗ mode.
std::string composite_space(const SystemSpec& spec);

/**
 * Full system ⊗ mode generator on dim(spec)·cutoff states:
 *
 *   H = H_S⊗I + Ω_S⊗a†a + S⊗a† + S†⊗a,
 *   κ[(n̄+1)𝒟[I⊗a] + n̄𝒟[I⊗a†]].
 */
SuperOp build_full_liouvillian(const SystemSpec& spec, Index cutoff);

/// Embeds a system operator as O⊗I on the composite space.
Operator embed_system(const Operator& op, Index cutoff);
/// Embeds a mode operator as I⊗O on the composite space.
Operator embed_mode(const SystemSpec& spec, const Operator& op);

/// Partial trace over the mode factor of a composite operator.
Operator trace_out_mode(const Operator& rho, const SystemSpec& spec);

struct EffectiveModel {
  Operator alpha;
  Operator h_eff;
  Operator jump_down;  ///< α
  double rate_down;    ///< κ(n̄+1)
  Operator jump_up;    ///< α†
  double rate_up;      ///< κn̄, exactly zero at n̄ = 0
};

struct EffectiveOptions {
  /// Reject α whose elimination residual exceeds this times ‖S‖.
  double residual_tol = 1e-8;
};

/**
 * H_eff = H_S + ½(α†S + S†α) + (n̄/2)([α†,S] + [S†,α]) + n̄Ω_S.
 *
 * Throws SpecError when α does not solve the elimination condition for
 * `spec`. The result is Hermitized.
 */
Operator effective_hamiltonian(const SystemSpec& spec, const Operator& alpha,
                               const EffectiveOptions& opts = {});

/// ℒ_eff = −i[H_eff, ·] + κ{(n̄+1)𝒟[α] + n̄𝒟[α†]} on the system alone.
std::pair<SuperOp, EffectiveModel> build_effective_liouvillian(const SystemSpec& spec,
                                                               const Operator& alpha,
                                                               const EffectiveOptions& opts = {});

/// The zero-occupation form H_S + ½(α†S + S†α), κ𝒟[α]; ignores spec.nbar().
std::pair<SuperOp, EffectiveModel> build_effective_liouvillian_zero_temperature(
    const SystemSpec& spec, const Operator& alpha, const EffectiveOptions& opts = {});

}  // namespace cavelim
