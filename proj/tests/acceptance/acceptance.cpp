// Acceptance suite: one PASS/FAIL line per criterion, diagnostics indented below it.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "cavelim/bench/experiments.hpp"
#include "cavelim/cavelim.hpp"

namespace {

using namespace cavelim;
using namespace cavelim::bench;

// ---- pinned tolerances -------------------------------------------------------

constexpr double kWeakEffVsFull = 0.05;
constexpr double kWeakEffVsFormula = 0.15;
constexpr double kWeakRuntimeSeconds = 300.0;

constexpr double kStrongFormulaDeviation = 0.20;
constexpr double kStrongEffVsFull = 0.10;

constexpr double kCoolingGroundDistance = 0.1;
constexpr double kCoolingTrajectoryFraction = 0.05;

constexpr double kThermalEffVsFormula = 1e-10;
constexpr double kThermalFullVsFormula = 0.01;
constexpr double kThermalStrongDeviation = 0.05;
constexpr double kThermalConvergenceTol = 1e-5;
constexpr Index kThermalStrongMinCertified = 60;
constexpr double kThermalRuntimeSeconds = 600.0;

constexpr double kSpectrumMatch = 0.02;
constexpr double kSpectrumZero = 1e-10;
constexpr double kSpectrumDrift = 1e-3;

constexpr double kPropTraceHerm = 1e-10;
constexpr double kPropRabiAlpha = 1e-12;
constexpr double kPropOptomechInterior = 1e-8;
constexpr double kPropGenericResidual = 1e-8;
constexpr double kPropPsd = -1e-8;
constexpr double kPropConjugate = 1e-9;
constexpr double kPropShiftRoutes = 1e-12;
constexpr double kPropQuadraticFactor = 1.5;
constexpr double kPropIntegratorTrace = 1e-8;
constexpr double kPropIntegratorHerm = 1e-10;
constexpr int kPropSamples = 100;

const std::vector<double> kDeltas = [] {
  std::vector<double> d;
  for (int i = 0; i < 11; ++i) d.push_back(-3.0 + 2.7 * i / 11.0);
  d.push_back(-0.3);
  return d;
}();

// ---- reporting ---------------------------------------------------------------

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int g_failures = 0;

void verdict(int id, const std::string& title, bool pass, const std::string& summary) {
  std::printf("%s [%d] %s: %s\n", pass ? "PASS" : "FAIL", id, title.c_str(), summary.c_str());
  std::fflush(stdout);
  g_failures += !pass;
}

void note(const std::string& line) {
  std::printf("    %s\n", line.c_str());
  std::fflush(stdout);
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// ---- 1, 2: optomechanical sweeps ---------------------------------------------

std::vector<OptomechRow> sweep(double omega0, double g) {
  OptomechSweepSettings s;
  s.omega0 = omega0;
  s.g = g;
  s.eta = 0.1;
  s.deltas = kDeltas;
  return optomech_sweep(s);
}

void optomech_weak() {
  const Stopwatch clock;
  bool pass = true;
  double worst_full = 0.0, worst_formula = 0.0;
  for (double omega0 : {0.5, 3.0}) {
    for (const auto& r : sweep(omega0, 0.1)) {
      if (!r.error.empty()) {
        pass = false;
        note(fmt::format("omega0={} delta={:.4f}: {}", omega0, r.delta, r.error));
        continue;
      }
      const double dfull = rel(r.mbar_eff, r.mbar_full);
      const double dform = rel(r.mbar_eff, r.mbar_formula);
      worst_full = std::max(worst_full, dfull);
      worst_formula = std::max(worst_formula, dform);
      const bool ok = dfull <= kWeakEffVsFull && dform <= kWeakEffVsFormula;
      pass = pass && ok;
      note(fmt::format("omega0={} delta={:+.4f} full={:.5f} eff={:.5f} formula={:.5f} "
                       "eff/full={:.4f} eff/formula={:.4f} converged={}{}",
                       omega0, r.delta, r.mbar_full, r.mbar_eff, r.mbar_formula, dfull, dform, r.converged,
                       ok ? "" : "  <-- out of tolerance"));
    }
  }
  const double wall = clock.seconds();
  pass = pass && wall < kWeakRuntimeSeconds;
  verdict(1, "optomech weak coupling", pass,
          fmt::format("max |eff-full|/full = {:.4f} (<= {}), max |eff-formula|/formula = {:.4f} (<= {}), "
                      "runtime {:.0f} s (< {:.0f} s)",
                      worst_full, kWeakEffVsFull, worst_formula, kWeakEffVsFormula, wall, kWeakRuntimeSeconds));
}

void optomech_strong() {
  bool all_close = true;
  int discrepant = 0;
  double worst_full = 0.0, best_formula = 0.0;
  for (double omega0 : {0.5, 3.0}) {
    for (const auto& r : sweep(omega0, 0.4)) {
      if (!r.error.empty()) {
        all_close = false;
        note(fmt::format("omega0={} delta={:.4f}: {}", omega0, r.delta, r.error));
        continue;
      }
      const double dfull = rel(r.mbar_eff, r.mbar_full);
      const double dform = rel(r.mbar_formula, r.mbar_eff);
      worst_full = std::max(worst_full, dfull);
      all_close = all_close && dfull <= kStrongEffVsFull;
      if (r.converged) {
        best_formula = std::max(best_formula, dform);
        discrepant += dform > kStrongFormulaDeviation;
      }
      note(fmt::format("omega0={} delta={:+.4f} full={:.5f} eff={:.5f} formula={:.5f} "
                       "eff/full={:.4f} formula/eff={:.4f} converged={}",
                       omega0, r.delta, r.mbar_full, r.mbar_eff, r.mbar_formula, dfull, dform, r.converged));
    }
  }
  verdict(2, "optomech beyond weak coupling", all_close && discrepant > 0,
          fmt::format("{} converged point(s) with |formula-eff|/eff > {} (max {:.4f}); "
                      "max |eff-full|/full = {:.4f} (<= {})",
                      discrepant, kStrongFormulaDeviation, best_formula, worst_full, kStrongEffVsFull));
}

// ---- 3: Ising cooling ----------------------------------------------------------

void ising_cooling() {
  IsingCoolSettings s;
  s.params.n_sites = 4;
  s.params.h = 1.0;
  s.params.j = 5.0;
  s.params.g = 0.3;
  s.t_final = 200.0;
  s.n_times = 201;
  s.cavity_cutoff = 3;
  const IsingCoolResult r = ising_cool(s);
  const double e0 = r.gap.e0;
  const double e_init = r.energy_eff.front();
  const double reach = r.energy_eff.back() - e0;
  double worst = 0.0;
  for (std::size_t i = 0; i < r.energy_full.size(); ++i) {
    worst = std::max(worst, std::abs(r.energy_eff[i] - r.energy_full[i]));
  }
  const double allowed = kCoolingTrajectoryFraction * (e_init - e0);
  for (std::size_t i = 0; i < r.times.size(); i += 25) {
    note(fmt::format("t={:5.0f} E_eff={:+.5f} E_full={:+.5f}", r.times[i], r.energy_eff[i],
                     r.energy_full.empty() ? NAN : r.energy_full[i]));
  }
  note(fmt::format("gap={:.6f} (ground multiplicity {}), omega_c={:.6f}, alpha residual {:.2e}", r.gap.gap,
                   r.gap.ground_multiplicity, r.omega_c, r.alpha_residual));
  const bool full_ok = !r.energy_full.empty() && worst <= allowed;
  verdict(3, "Ising cooling", reach <= kCoolingGroundDistance && full_ok,
          fmt::format("E_eff(200) - E0 = {:.4f} (<= {}), max |E_eff-E_full| = {:.4f} (<= {:.4f} = {} (E_init-E0))",
                      reach, kCoolingGroundDistance, worst, allowed, kCoolingTrajectoryFraction));
}

// ---- 4: Rabi thermal scan --------------------------------------------------------

void rabi_thermal_scan() {
  const Stopwatch clock;
  const std::vector<double> nbars{0.0, 1.0, 2.0, 4.0};

  double worst_eff = 0.0;
  for (double g : {0.1, 3.0}) {
    for (double nbar : nbars) {
      const double sz = rabi_effective_sz({3.0, 2.5, g, 1.0, nbar});
      worst_eff = std::max(worst_eff, std::abs(sz - rabi_steady_sz(3.0, 2.5, 1.0, nbar)));
    }
  }
  const bool part_a = worst_eff <= kThermalEffVsFormula;

  const auto certified_value = [](const RabiThermalRow& r) -> double {
    for (const auto& row : r.ladder) {
      if (row.cutoff == r.converged_cutoff) return row.value;
    }
    return NAN;
  };

  RabiThermalSettings weak;
  weak.nbars = nbars;
  weak.g = 0.1;
  weak.cutoffs.clear();
  for (Index L = 10; L <= 100; L += 10) weak.cutoffs.push_back(L);
  weak.convergence_tol = kThermalConvergenceTol;
  bool part_b = true;
  double worst_weak = 0.0;
  for (const auto& r : rabi_thermal(weak)) {
    const double v = certified_value(r);
    const double dev = std::abs(v - r.sz_formula);
    const bool ok = r.error.empty() && r.converged && r.converged_cutoff > 0 && dev <= kThermalFullVsFormula;
    part_b = part_b && ok;
    worst_weak = std::max(worst_weak, dev);
    note(fmt::format("g=0.1 nbar={} formula={:+.6f} eff={:+.6f} full(L={})={:+.6f} dev={:.2e}{}", r.nbar,
                     r.sz_formula, r.sz_eff, r.converged_cutoff, v, dev, r.error.empty() ? "" : " " + r.error));
  }

  RabiThermalSettings strong = weak;
  strong.g = 3.0;
  strong.cutoffs.clear();
  for (Index L = 20; L <= 100; L += 5) strong.cutoffs.push_back(L);
  double worst_strong = 0.0;
  Index hardest = 0;
  bool all_certified = true;
  for (const auto& r : rabi_thermal(strong)) {
    const double v = certified_value(r);
    worst_strong = std::max(worst_strong, std::abs(v - r.sz_formula));
    all_certified = all_certified && r.error.empty() && r.converged && r.converged_cutoff > 0;
    hardest = std::max(hardest, r.converged_cutoff);
    note(fmt::format("g=3 nbar={} formula={:+.6f} full(L={})={:+.6f} dev={:.4f}", r.nbar, r.sz_formula,
                     r.converged_cutoff, v, std::abs(v - r.sz_formula)));
  }
  const bool part_c = all_certified && worst_strong > kThermalStrongDeviation && hardest >= kThermalStrongMinCertified;
  const double wall = clock.seconds();

  verdict(4, "Rabi thermal scan", part_a && part_b && part_c && wall < kThermalRuntimeSeconds,
          fmt::format("(a) max |eff-formula| = {:.1e} (<= {:.0e}); (b) max |full-formula| at certified L = {:.4f} "
                      "(<= {}); (c) max deviation at g=3 = {:.4f} (> {}), hardest certified L = {} (>= {}, tol {:.0e}); "
                      "runtime {:.0f} s",
                      worst_eff, kThermalEffVsFormula, worst_weak, kThermalFullVsFormula, worst_strong,
                      kThermalStrongDeviation, hardest, kThermalStrongMinCertified, kThermalConvergenceTol, wall));
}

// ---- 5: Rabi spectrum --------------------------------------------------------------

void rabi_spectrum_check() {
  RabiSpectrumSettings s;
  s.params = {3.0, 2.5, 0.1, 1.0, 1.0};
  s.cutoffs = {30};
  const RabiSpectrumResult r = rabi_spectrum(s);
  const auto zeros = std::count_if(r.effective.begin(), r.effective.end(),
                                   [](cplx z) { return std::abs(z) < kSpectrumZero; });
  bool matched = r.effective.size() == 4 && r.full.size() == 1 && r.full[0].error.empty() && r.full[0].dense;
  double worst = 0.0;
  if (matched) {
    for (std::size_t i = 0; i < r.effective.size(); ++i) {
      worst = std::max(worst, r.distances[0][i]);
      note(fmt::format("effective {:+.6f}{:+.6f}i  nearest full at distance {:.2e}", r.effective[i].real(),
                       r.effective[i].imag(), r.distances[0][i]));
    }
    matched = worst <= kSpectrumMatch;
  }

  const RabiParams hot{3.0, 2.5, 0.1, 1.0, 4.0};
  const auto near = rabi_near_zero(hot, {20, 40}, 4, cplx{0.01, 0.0});
  const auto moved = nearest_distances(near[1], near[0]);
  const double drift = *std::max_element(moved.begin(), moved.end());
  for (std::size_t i = 0; i < near[1].size(); ++i) {
    note(fmt::format("nbar=4 L=40 {:+.6f}{:+.6f}i  moved {:.2e} from L=20", near[1][i].real(), near[1][i].imag(),
                     moved[i]));
  }

  verdict(5, "Rabi spectrum", matched && zeros == 1 && drift > kSpectrumDrift,
          fmt::format("max distance effective->full(L=30) = {:.2e} (<= {}), {} effective eigenvalue(s) within {:.0e} "
                      "of 0 (== 1), nbar=4 drift L=20->40 = {:.2e} (> {:.0e})",
                      worst, kSpectrumMatch, zeros, kSpectrumZero, drift, kSpectrumDrift));
}

// ---- 6: property suites --------------------------------------------------------------

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  cplx complex() { return {gauss_(rng_), gauss_(rng_)}; }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  Index size(Index lo, Index hi) { return std::uniform_int_distribution<Index>(lo, hi)(rng_); }

  Matrix matrix(Index n) {
    Matrix m(n, n);
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i) m(i, j) = complex();
    return m;
  }
  Operator hermitian(Index n, const std::string& space) {
    const Matrix m = matrix(n);
    return {(m + m.adjoint()) / 2.0, space};
  }
  Operator density(Index n, const std::string& space) {
    const Matrix g = matrix(n);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return {0.5 * (rho + rho.adjoint()), space};
  }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> gauss_;
};

struct PropertyLog {
  int failed = 0;
  void check(const std::string& name, bool ok, const std::string& detail) {
    failed += !ok;
    note(fmt::format("{} {}: {}", ok ? "ok  " : "FAIL", name, detail));
  }
};

std::vector<SuperOp> generator_zoo(Sampler& rng) {
  std::vector<SuperOp> zoo;
  const OptomechParams om{0.5, -1.0, 0.1, 0.1, 1.0, 8};
  const SystemSpec optomech = make_optomech(om);
  zoo.push_back(build_full_liouvillian(optomech, 3));
  zoo.push_back(build_effective_liouvillian(optomech, alpha_optomech_closed(om).alpha).first);
  zoo.push_back(simplified_optomech_generator(0.5, cooling_heating_rates(0.5, -1.0, 0.1, 0.1, 1.0), 8).generator);

  IsingCavityParams ip;
  ip.omega_c = ising_gap(4, 1.0, 5.0, 1e-2).gap;
  const SystemSpec ising = make_ising_cavity(ip);
  zoo.push_back(build_full_liouvillian(ising, 3));
  zoo.push_back(build_effective_liouvillian(ising, solve_alpha_steady(ising).alpha).first);

  for (double nbar : {0.0, 2.0}) {
    const SystemSpec rabi = make_rabi({3.0, 2.5, 0.1, 1.0, nbar});
    zoo.push_back(build_full_liouvillian(rabi, 10));
    zoo.push_back(build_effective_liouvillian(rabi, alpha_rabi(3.0, 2.5, 0.1, 1.0).alpha).first);
  }
  for (int i = 0; i < 4; ++i) {
    const Index d = rng.size(2, 5);
    const SystemSpec spec(rng.hermitian(d, "random"), rng.hermitian(d, "random"), Operator(rng.matrix(d), "random"),
                          rng.uniform(0.2, 2.0), rng.uniform(0.0, 3.0));
    zoo.push_back(build_full_liouvillian(spec, 3));
    zoo.push_back(build_effective_liouvillian(spec, solve_alpha_steady(spec).alpha).first);
  }
  return zoo;
}

void properties() {
  PropertyLog log;
  Sampler rng(20240917);

  const auto zoo = generator_zoo(rng);
  double worst_tr = 0.0, worst_herm = 0.0;
  for (const auto& gen : zoo) {
    for (int s = 0; s < kPropSamples; ++s) {
      const Operator out = gen.apply(rng.density(gen.dim(), gen.space()));
      worst_tr = std::max(worst_tr, std::abs(trace(out)));
      worst_herm = std::max(worst_herm, hermiticity_defect(out));
    }
  }
  log.check("trace/Hermiticity preservation",
            worst_tr <= kPropTraceHerm && worst_herm <= kPropTraceHerm,
            fmt::format("{} generators x {} states, max |Tr Lrho| = {:.1e}, max defect = {:.1e}", zoo.size(),
                        kPropSamples, worst_tr, worst_herm));

  double worst_generic = 0.0, worst_closed = 0.0, worst_rabi = 0.0;
  for (int i = 0; i < 30; ++i) {
    const Index d = rng.size(1, 8);
    const SystemSpec spec(rng.hermitian(d, "random"), rng.hermitian(d, "random"), Operator(rng.matrix(d), "random"),
                          rng.uniform(0.2, 2.0));
    for (auto route : {SylvesterRoute::Vectorized, SylvesterRoute::Schur}) {
      AlphaSolveOptions o;
      o.route = route;
      worst_generic = std::max(worst_generic, solve_alpha_steady(spec, o).residual / spectral_norm(spec.drive()));
    }
  }
  for (double delta : kDeltas) {
    for (double g : {0.1, 0.4}) {
      worst_closed = std::max(worst_closed, alpha_optomech_closed({0.5, delta, g, 0.1, 1.0, 20}).residual / 0.1);
    }
  }
  for (double g : {0.1, 1.0, 3.0}) worst_rabi = std::max(worst_rabi, alpha_rabi(3.0, 2.5, g, 1.0).residual / g);
  log.check("elimination residual contracts",
            worst_generic <= kPropGenericResidual && worst_closed <= kPropGenericResidual &&
                worst_rabi <= kPropGenericResidual,
            fmt::format("residual/||S||: generic {:.1e}, optomech closed {:.1e}, rabi analytic {:.1e} (<= {:.0e})",
                        worst_generic, worst_closed, worst_rabi, kPropGenericResidual));

  double rabi_gap = 0.0, optomech_gap = 0.0;
  for (double g : {0.1, 1.0, 3.0}) {
    for (double nbar : {0.0, 1.0, 4.0}) {
      const RabiParams p{3.0, 2.5, g, 1.0, nbar};
      const Matrix diff = solve_alpha_steady(make_rabi(p)).alpha.matrix() - alpha_rabi(3.0, 2.5, g, 1.0).alpha.matrix();
      rabi_gap = std::max(rabi_gap, diff.cwiseAbs().maxCoeff());
    }
  }
  for (double omega0 : {0.5, 3.0}) {
    for (double delta : kDeltas) {
      const OptomechParams p{omega0, delta, 0.1, 0.1, 1.0, 12};
      optomech_gap = std::max(optomech_gap, interior_max_difference(alpha_optomech_closed(p).alpha,
                                                                    solve_alpha_steady(make_optomech(p)).alpha));
    }
  }
  log.check("alpha oracle equivalences", rabi_gap <= kPropRabiAlpha && optomech_gap <= kPropOptomechInterior,
            fmt::format("rabi analytic vs generic {:.1e} (<= {:.0e}), optomech closed vs generic interior {:.1e} "
                        "(<= {:.0e})",
                        rabi_gap, kPropRabiAlpha, optomech_gap, kPropOptomechInterior));

  double reduction = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Index d = rng.size(1, 6);
    const SystemSpec spec(rng.hermitian(d, "random"), rng.hermitian(d, "random"), Operator(rng.matrix(d), "random"),
                          rng.uniform(0.2, 2.0), 0.0);
    const Operator alpha = solve_alpha_steady(spec).alpha;
    const SparseMatrix a = build_effective_liouvillian(spec, alpha).first.sparse_matrix();
    const SparseMatrix b = build_effective_liouvillian_zero_temperature(spec, alpha).first.sparse_matrix();
    reduction = std::max(reduction, Matrix(a - b).cwiseAbs().maxCoeff());
  }
  log.check("nbar=0 reduction", reduction == 0.0, fmt::format("max entry difference {:.1e} (== 0)", reduction));

  double min_eig = INFINITY;
  int steady_count = 0;
  std::vector<SuperOp> steady_set;
  for (int i = 0; i < 20; ++i) {
    const Index d = rng.size(2, 6);
    steady_set.emplace_back(to_sparse(rng.hermitian(d, "random").matrix()),
                            std::vector<LindbladTerm>{{rng.uniform(0.1, 2.0), to_sparse(rng.matrix(d))},
                                                      {rng.uniform(0.1, 2.0), to_sparse(rng.matrix(d))}},
                            "random");
  }
  for (std::size_t i = 0; i < zoo.size(); ++i) {
    if (zoo[i].space() != spin_space(4)) steady_set.push_back(zoo[i]);
  }
  for (const auto& gen : steady_set) {
    try {
      const Operator rho = steady_state(gen);
      min_eig = std::min(min_eig, Eigen::SelfAdjointEigenSolver<Matrix>(rho.matrix()).eigenvalues().minCoeff());
      ++steady_count;
    } catch (const DegenerateSteadyStateError&) {
    }
  }
  log.check("steady-state positivity", min_eig >= kPropPsd && steady_count >= 25,
            fmt::format("{} steady states, min eigenvalue {:.1e} (>= {:.0e})", steady_count, min_eig, kPropPsd));

  double conj_gap = 0.0;
  int spectra = 0;
  for (const auto& gen : zoo) {
    if (gen.liouville_dim() > 1024) continue;
    const auto ev = spectrum(gen);
    std::vector<cplx> mirrored(ev.size());
    std::transform(ev.begin(), ev.end(), mirrored.begin(), [](cplx z) { return std::conj(z); });
    const auto dist = nearest_distances(mirrored, ev);
    conj_gap = std::max(conj_gap, *std::max_element(dist.begin(), dist.end()) / gen.norm_estimate());
    ++spectra;
  }
  log.check("spectra conjugate-symmetric", conj_gap <= kPropConjugate,
            fmt::format("{} spectra, max relative distance to the conjugate set {:.1e} (<= {:.0e})", spectra,
                        conj_gap, kPropConjugate));

  double shift_gap = 0.0;
  for (int i = 0; i < kPropSamples; ++i) {
    const double w0 = rng.uniform(0.1, 5.0), wc = rng.uniform(0.1, 5.0), g = rng.uniform(0.0, 3.0);
    const double kappa = rng.uniform(0.1, 3.0), nbar = rng.uniform(0.0, 5.0);
    const RabiAlpha a = rabi_alpha_coefficients(w0, wc, g, kappa);
    const RabiShifts x = rabi_shifts(w0, wc, g, kappa, nbar);
    const RabiShifts y = rabi_shifts_from_alpha(a.plus, a.minus, g, nbar);
    shift_gap = std::max({shift_gap, std::abs(x.delta_omega0 - y.delta_omega0),
                          std::abs(x.sigma_omega0 - y.sigma_omega0)});
  }
  log.check("rabi_shifts route equivalence", shift_gap <= kPropShiftRoutes,
            fmt::format("max difference {:.1e} (<= {:.0e})", shift_gap, kPropShiftRoutes));

  double worst_ratio_dev = 0.0;
  for (double omega0 : {0.5, 3.0}) {
    for (double delta : {-3.0, -1.0, -0.3}) {
      const double r1 = alpha_optomech_weak({omega0, delta, 0.02, 0.1, 1.0, 20}).residual;
      const double r2 = alpha_optomech_weak({omega0, delta, 0.01, 0.1, 1.0, 20}).residual;
      worst_ratio_dev = std::max(worst_ratio_dev, std::max((r1 / r2) / 4.0, 4.0 / (r1 / r2)));
    }
  }
  log.check("weak-coupling alpha residual is O(g^2)", worst_ratio_dev <= kPropQuadraticFactor,
            fmt::format("halving g divides the residual by 4 up to a factor {:.3f} (<= {})", worst_ratio_dev,
                        kPropQuadraticFactor));

  double traj_tr = 0.0, traj_herm = 0.0;
  for (const SuperOp& gen : {zoo[0], zoo[5], zoo[7]}) {
    std::vector<double> times;
    for (int i = 0; i <= 50; ++i) times.push_back(0.5 * i);
    const Trajectory tr = evolve(gen, rng.density(gen.dim(), gen.space()), times);
    for (const auto& rho : tr.states) {
      traj_tr = std::max(traj_tr, std::abs(trace(rho) - 1.0));
      traj_herm = std::max(traj_herm, hermiticity_defect(rho));
    }
  }
  log.check("integrator trace/Hermiticity", traj_tr <= kPropIntegratorTrace && traj_herm <= kPropIntegratorHerm,
            fmt::format("max |Tr rho - 1| = {:.1e} (<= {:.0e}), max defect = {:.1e} (<= {:.0e})", traj_tr,
                        kPropIntegratorTrace, traj_herm, kPropIntegratorHerm));

  verdict(6, "property suites", log.failed == 0, fmt::format("{} property group(s) failed", log.failed));
}

}  // namespace

// Arguments select criteria by number; none runs them all.
int main(int argc, char** argv) {
  const std::vector<std::function<void()>> criteria{optomech_weak, optomech_strong, ising_cooling,
                                                    rabi_thermal_scan, rabi_spectrum_check, properties};
  std::vector<bool> selected(criteria.size(), argc < 2);
  for (int a = 1; a < argc; ++a) {
    const int id = std::atoi(argv[a]);
    if (id < 1 || id > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "unknown criterion '%s'\n", argv[a]);
      return 2;
    }
    selected[id - 1] = true;
  }
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (!selected[i]) continue;
    try {
      criteria[i]();
    } catch (const std::exception& e) {
      verdict(static_cast<int>(i + 1), "criterion", false, std::string("exception: ") + e.what());
    }
  }
  std::printf("%d criterion/criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
