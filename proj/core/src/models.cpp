#include "cavelim/models.hpp"

#include <algorithm>
#include <cmath>

#include "cavelim/error.hpp"

namespace cavelim {

void validate(const OptomechParams& p) {
  if (!(p.kappa > 0.0)) throw SpecError("optomech: kappa must be positive");
  if (p.mirror_cutoff < 3) throw SpecError("optomech: mirror cutoff must be at least 3");
}

void validate(const IsingCavityParams& p) {
  if (p.n_sites < 2) throw SpecError("ising: chain needs at least 2 sites");
  if (!(p.kappa > 0.0)) throw SpecError("ising: kappa must be positive");
}

void validate(const RabiParams& p) {
  if (!(p.kappa > 0.0)) throw SpecError("rabi: kappa must be positive");
  if (!(p.nbar >= 0.0)) throw SpecError("rabi: nbar must be non-negative");
}

SystemSpec make_optomech(const OptomechParams& p) {
  validate(p);
  const auto b = bosonic_ops(p.mirror_cutoff, kMirrorSpace);
  const Index m = p.mirror_cutoff;
  const Operator id = Operator::identity(m, kMirrorSpace);
  Operator h_s = p.omega0 * b.n;
  Operator omega_s = cplx{-p.delta} * id + p.g * (b.a + b.adag);
  Operator drive = p.eta * id;
  return SystemSpec(std::move(h_s), std::move(omega_s), std::move(drive), p.kappa, 0.0);
}

Operator ising_hamiltonian(int n_sites, double h, double j) {
  const Index dim = Index{1} << n_sites;
  Operator out = Operator::zero(dim, spin_space(n_sites));
  for (int n = 1; n <= n_sites; ++n) out += h * spin_site(PauliAxis::Z, n, n_sites);
  for (int n = 1; n < n_sites; ++n) {
    out -= j * (spin_site(PauliAxis::X, n, n_sites) * spin_site(PauliAxis::X, n + 1, n_sites));
  }
  return out;
}

SystemSpec make_ising_cavity(const IsingCavityParams& p) {
  validate(p);
  const int n = p.n_sites;
  const Index dim = Index{1} << n;
  Operator drive = Operator::zero(dim, spin_space(n));
  for (int k = 1; k <= n; ++k) drive += spin_site(PauliAxis::Minus, k, n);
  drive *= p.g;
  return SystemSpec(ising_hamiltonian(n, p.h, p.j),
                    p.omega_c * Operator::identity(dim, spin_space(n)), std::move(drive),
                    p.kappa, 0.0);
}

SystemSpec make_rabi(const RabiParams& p) {
  validate(p);
  const std::string space = spin_space(1);
  return SystemSpec(Operator(0.5 * p.omega0 * pauli(PauliAxis::Z), space),
                    p.omega_c * Operator::identity(2, space),
                    Operator(p.g * pauli(PauliAxis::X), space), p.kappa, p.nbar);
}

IsingGap ising_gap(int n_sites, double h, double j, double degeneracy_tol, int max_sites) {
  if (n_sites < 1) throw SpecError("ising_gap: need at least one site");
  if (n_sites > max_sites) {
    throw BudgetError("ising_gap: N = " + std::to_string(n_sites) +
                      " exceeds the dense-diagonalization cap of " + std::to_string(max_sites));
  }
  const Operator hs = ising_hamiltonian(n_sites, h, j);
  Eigen::SelfAdjointEigenSolver<Matrix> es(hs.matrix(), Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& ev = es.eigenvalues();  // ascending
  const double e0 = ev(0);
  const double tol = degeneracy_tol * std::max(1.0, std::abs(e0));
  int cluster = 1;
  while (cluster < ev.size() && ev(cluster) - e0 <= tol) ++cluster;
  if (cluster == ev.size()) {
    throw SpecError("ising_gap: the whole spectrum lies within the degeneracy tolerance");
  }
  const double e1 = ev(cluster);
  return {e0, e1, e1 - e0, cluster};
}

double thermal_occupation(double beta, double omega_c) {
  const double x = beta * omega_c;
  if (!(x > 0.0)) throw SpecError("thermal_occupation: beta * omega_c must be positive");
  return 1.0 / std::expm1(x);
}

Operator thermal_state(double nbar, Index cutoff, std::string space) {
  if (cutoff < 2) throw SpecError("thermal_state: cutoff must be at least 2");
  if (!(nbar >= 0.0)) throw SpecError("thermal_state: nbar must be non-negative");
  Matrix rho = Matrix::Zero(cutoff, cutoff);
  const double ratio = nbar / (nbar + 1.0);
  double p = 1.0 / (nbar + 1.0);
  double total = 0.0;
  for (Index m = 0; m < cutoff; ++m) {
    rho(m, m) = p;
    total += p;
    p *= ratio;
  }
  rho /= total;
  return Operator(std::move(rho), std::move(space));
}

}  // namespace cavelim
