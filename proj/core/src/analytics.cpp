#include "cavelim/analytics.hpp"

#include <cmath>

#include "cavelim/error.hpp"

namespace cavelim {

RatePair cooling_heating_rates(double omega0, double delta, double g, double eta, double kappa) {
  if (!(kappa > 0.0)) throw SpecError("cooling_heating_rates: kappa must be positive");
  const double k2 = kappa * kappa;
  const double base = kappa * g * g * eta * eta / (delta * delta + k2);
  const double lower = delta + omega0;
  const double upper = delta - omega0;
  return {base / (lower * lower + k2), base / (upper * upper + k2)};
}

double mbar_weak(double omega0, double delta, double kappa) {
  if (!(delta < 0.0)) throw SpecError("mbar_weak: needs a red detuning (delta < 0)");
  if (!(omega0 > 0.0)) throw SpecError("mbar_weak: omega0 must be positive");
  const double s = delta + omega0;
  return (s * s + kappa * kappa) / (-4.0 * delta * omega0);
}

double mbar_weak_optimal_detuning(double omega0, double kappa) {
  return -std::sqrt(kappa * kappa + omega0 * omega0);
}

RabiShifts rabi_shifts(double omega0, double omega_c, double g, double kappa, double nbar) {
  const double k2 = kappa * kappa;
  const double co = omega_c - omega0;
  const double counter = omega_c + omega0;
  const double scale = 2.0 * nbar + 1.0;
  RabiShifts s{};
  s.lamb = -scale * g * g * co / (co * co + k2);
  s.bloch_siegert = scale * g * g * counter / (counter * counter + k2);
  s.delta_omega0 = s.lamb + s.bloch_siegert;
  s.sigma_omega0 = -g * g * (co / (co * co + k2) + counter / (counter * counter + k2));
  return s;
}

RabiShifts rabi_shifts_from_alpha(cplx alpha_plus, cplx alpha_minus, double g, double nbar) {
  const double scale = 2.0 * nbar + 1.0;
  RabiShifts s{};
  s.lamb = g * scale * alpha_minus.real();
  s.bloch_siegert = -g * scale * alpha_plus.real();
  s.delta_omega0 = g * scale * (alpha_minus.real() - alpha_plus.real());
  s.sigma_omega0 = g * (alpha_minus.real() + alpha_plus.real());
  return s;
}

double rabi_steady_sz(double omega0, double omega_c, double kappa, double nbar) {
  return -2.0 * omega_c * omega0 /
         ((omega_c * omega_c + omega0 * omega0 + kappa * kappa) * (2.0 * nbar + 1.0));
}

SimplifiedGenerator simplified_optomech_generator(double omega0, const RatePair& rates,
                                                  Index cutoff) {
  if (cutoff < 2) throw SpecError("simplified_optomech_generator: cutoff must be at least 2");
  if (!(rates.cooling >= 0.0) || !(rates.heating >= 0.0)) {
    throw SpecError("simplified_optomech_generator: rates must be non-negative");
  }
  const auto b = bosonic_ops(cutoff, "mirror");
  std::vector<LindbladTerm> terms{{rates.cooling, to_sparse(b.a.matrix())},
                                  {rates.heating, to_sparse(b.adag.matrix())}};
  SuperOp gen(to_sparse((omega0 * b.n).matrix()), std::move(terms), "mirror", "simplified");
  return {std::move(gen), !(rates.cooling > rates.heating)};
}

}  // namespace cavelim
