#include "cavelim/bench/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

namespace cavelim::bench {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Operator vacuum(Index cutoff, const std::string& space) {
  Matrix m = Matrix::Zero(cutoff, cutoff);
  m(0, 0) = 1.0;
  return Operator(std::move(m), space);
}

struct SteadyOutcome {
  Operator rho;
  bool degenerate;
};

SteadyOutcome steady_or_from(const SuperOp& gen, const Operator& start) {
  try {
    return {steady_state(gen), false};
  } catch (const DegenerateSteadyStateError&) {
    return {steady_state_by_evolution(gen, start), true};
  }
}

}  // namespace

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& body) {
  const std::size_t workers =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, threads)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

// ---- optomechanical sweep --------------------------------------------------

namespace {

double effective_mbar(const OptomechParams& p, bool& degenerate) {
  const SystemSpec spec = make_optomech(p);
  const AlphaSolution alpha = alpha_optomech_closed(p);
  const auto [gen, model] = build_effective_liouvillian(spec, alpha.alpha);
  const auto out = steady_or_from(gen, vacuum(p.mirror_cutoff, kMirrorSpace));
  degenerate = degenerate || out.degenerate;
  return expect(bosonic_ops(p.mirror_cutoff, kMirrorSpace).n, out.rho).real();
}

}  // namespace

OptomechRow optomech_point(const OptomechSweepSettings& s, double delta) {
  OptomechRow row;
  row.delta = delta;
  row.mirror_cutoff = s.mirror_cutoff;
  row.cavity_cutoff = s.compute_full ? s.cavity_cutoff : 0;
  row.mbar_full = kNaN;
  row.mbar_eff = kNaN;
  row.mbar_eff_check = kNaN;
  row.alpha_residual = kNaN;
  row.mbar_formula = delta < 0.0 ? mbar_weak(s.omega0, delta, 1.0) : kNaN;
  try {
    OptomechParams p{s.omega0, delta, s.g, s.eta, 1.0, s.mirror_cutoff};
    row.alpha_residual = alpha_optomech_closed(p).residual;
    bool degenerate = false;
    row.mbar_eff = effective_mbar(p, degenerate);

    OptomechParams wide = p;
    wide.mirror_cutoff = s.mirror_cutoff + s.check_extra;
    row.mbar_eff_check = effective_mbar(wide, degenerate);
    const double scale = std::max(std::abs(row.mbar_eff_check), 1e-12);
    row.converged = std::abs(row.mbar_eff_check - row.mbar_eff) <= s.convergence_tol * scale;

    if (s.compute_full) {
      const SystemSpec spec = make_optomech(p);
      const SuperOp full = build_full_liouvillian(spec, s.cavity_cutoff);
      const Operator start =
          kron(vacuum(s.mirror_cutoff, kMirrorSpace), vacuum(s.cavity_cutoff, kModeSpace));
      const auto out = steady_or_from(full, start);
      degenerate = degenerate || out.degenerate;
      const Operator n = embed_system(bosonic_ops(s.mirror_cutoff, kMirrorSpace).n, s.cavity_cutoff);
      row.mbar_full = expect(n, out.rho).real();
    }
    row.steady_route = degenerate ? "from-vacuum" : "null-space";
  } catch (const Error& e) {
    row.error = e.what();
  }
  return row;
}

std::vector<OptomechRow> optomech_sweep(const OptomechSweepSettings& s, int threads) {
  std::vector<OptomechRow> rows(s.deltas.size());
  parallel_for(rows.size(), threads, [&](std::size_t i) { rows[i] = optomech_point(s, s.deltas[i]); });
  return rows;
}

// ---- Ising cooling ---------------------------------------------------------

Operator polarized_state(int n_sites) {
  const Index dim = Index{1} << n_sites;
  Matrix m = Matrix::Zero(dim, dim);
  m(0, 0) = 1.0;
  return Operator(std::move(m), spin_space(n_sites));
}

IsingCoolResult ising_cool(const IsingCoolSettings& s) {
  IsingCoolResult out;
  IsingCavityParams p = s.params;
  out.gap = ising_gap(p.n_sites, p.h, p.j, s.degeneracy_tol);
  if (s.omega_c_from_gap) p.omega_c = out.gap.gap;
  out.omega_c = p.omega_c;

  const SystemSpec spec = make_ising_cavity(p);
  const AlphaSolution alpha = solve_alpha_steady(spec);
  out.alpha_residual = alpha.residual;
  const auto [gen, model] = build_effective_liouvillian(spec, alpha.alpha);

  if (s.n_times < 2) throw SpecError("ising_cool: need at least two time points");
  out.times.resize(static_cast<std::size_t>(s.n_times));
  for (Index i = 0; i < s.n_times; ++i) {
    out.times[static_cast<std::size_t>(i)] =
        s.t_final * static_cast<double>(i) / static_cast<double>(s.n_times - 1);
  }

  EvolveOptions eopts;
  eopts.rtol = s.rtol;
  eopts.atol = s.atol;
  eopts.store_states = false;

  const Operator& hs = spec.hamiltonian();
  const Operator rho0 = polarized_state(p.n_sites);
  const Trajectory eff = evolve(gen, rho0, out.times, {{"H_S", hs}}, eopts);
  for (const cplx& v : eff.observables[0]) out.energy_eff.push_back(v.real());

  if (s.compute_full) {
    const SuperOp full = build_full_liouvillian(spec, s.cavity_cutoff);
    const Operator rho0_full = kron(rho0, vacuum(s.cavity_cutoff, kModeSpace));
    const Trajectory tf =
        evolve(full, rho0_full, out.times, {{"H_S", embed_system(hs, s.cavity_cutoff)}}, eopts);
    for (const cplx& v : tf.observables[0]) out.energy_full.push_back(v.real());
  } else {
    out.full_note = "full model skipped: outside the run budget";
  }
  return out;
}

// ---- Rabi spectrum ---------------------------------------------------------

namespace {

SuperOp rabi_effective_generator(const RabiParams& p) {
  const SystemSpec spec = make_rabi(p);
  return build_effective_liouvillian(spec, solve_alpha_steady(spec).alpha).first;
}

}  // namespace

RabiSpectrumResult rabi_spectrum(const RabiSpectrumSettings& s, int threads) {
  RabiSpectrumResult out;
  out.effective = spectrum(rabi_effective_generator(s.params));
  out.full.resize(s.cutoffs.size());
  parallel_for(s.cutoffs.size(), threads, [&](std::size_t b) {
    RabiSpectrumBlock& block = out.full[b];
    block.cutoff = s.cutoffs[b];
    try {
      const SuperOp gen = build_full_liouvillian(make_rabi(s.params), block.cutoff);
      block.dense = gen.liouville_dim() <= s.dense_cap;
      block.eigenvalues = block.dense ? spectrum(gen, s.dense_cap)
                                      : spectrum_near(gen, s.near_shift, s.near_count);
    } catch (const Error& e) {
      block.error = e.what();
    }
  });
  for (const auto& block : out.full) {
    if (block.eigenvalues.empty()) {
      out.distances.emplace_back(out.effective.size(), kNaN);
    } else {
      out.distances.push_back(nearest_distances(out.effective, block.eigenvalues));
    }
  }
  return out;
}

std::vector<std::vector<cplx>> rabi_near_zero(const RabiParams& p, const std::vector<Index>& cutoffs,
                                              Index k, cplx shift, int threads) {
  std::vector<std::vector<cplx>> out(cutoffs.size());
  parallel_for(cutoffs.size(), threads, [&](std::size_t i) {
    out[i] = spectrum_near(build_full_liouvillian(make_rabi(p), cutoffs[i]), shift, k);
  });
  return out;
}

// ---- Rabi thermal scan -----------------------------------------------------

double rabi_full_sz(const RabiParams& p, Index cutoff) {
  const SystemSpec spec = make_rabi(p);
  const Operator rho = steady_state(build_full_liouvillian(spec, cutoff));
  const Operator sz = embed_system(Operator(pauli(PauliAxis::Z), spec.space()), cutoff);
  return expect(sz, rho).real();
}

double rabi_effective_sz(const RabiParams& p) {
  const Operator rho = steady_state(rabi_effective_generator(p));
  return expect(Operator(pauli(PauliAxis::Z), spin_space(1)), rho).real();
}

RabiThermalRow rabi_thermal_point(const RabiThermalSettings& s, double nbar) {
  RabiThermalRow row;
  row.nbar = nbar;
  row.sz_formula = rabi_steady_sz(s.omega0, s.omega_c, 1.0, nbar);
  row.sz_eff = kNaN;
  row.sz_full = kNaN;
  const RabiParams p{s.omega0, s.omega_c, s.g, 1.0, nbar};
  try {
    row.sz_eff = rabi_effective_sz(p);
    const ConvergenceTable table = cutoff_convergence(
        [&](Index cutoff) { return rabi_full_sz(p, cutoff); }, s.cutoffs, s.convergence_tol);
    row.ladder = table.rows;
    row.sz_full = table.final_value;
    row.converged = table.converged;
    row.converged_cutoff = table.converged_cutoff;
  } catch (const Error& e) {
    row.error = e.what();
  }
  return row;
}

std::vector<RabiThermalRow> rabi_thermal(const RabiThermalSettings& s, int threads) {
  std::vector<RabiThermalRow> rows(s.nbars.size());
  parallel_for(rows.size(), threads, [&](std::size_t i) { rows[i] = rabi_thermal_point(s, s.nbars[i]); });
  return rows;
}

// ---- α solve ---------------------------------------------------------------

std::string model_name(const AlphaSolveSettings& s) {
  switch (s.model.index()) {
    case 0:
      return "rabi";
    case 1:
      return "ising";
    default:
      return "optomech";
  }
}

AlphaSolveResult alpha_solve(const AlphaSolveSettings& s) {
  const SystemSpec spec = std::visit(
      [](const auto& p) -> SystemSpec {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, RabiParams>) {
          return make_rabi(p);
        } else if constexpr (std::is_same_v<T, IsingCavityParams>) {
          return make_ising_cavity(p);
        } else {
          return make_optomech(p);
        }
      },
      s.model);

  AlphaSolveOptions opts;
  opts.route = s.route;
  AlphaSolveResult out{model_name(s), solve_alpha_steady(spec, opts), {}, spectral_norm(spec.drive()),
                       std::nullopt};
  out.validity = validity_report(spec, out.solution.alpha);

  std::optional<Operator> closed;
  if (const auto* r = std::get_if<RabiParams>(&s.model)) {
    closed = alpha_rabi(r->omega0, r->omega_c, r->g, r->kappa).alpha;
  } else if (const auto* o = std::get_if<OptomechParams>(&s.model)) {
    closed = alpha_optomech_closed(*o).alpha;
  }
  if (closed) {
    out.closed_form_difference =
        (closed->matrix() - out.solution.alpha.matrix()).cwiseAbs().maxCoeff();
  }
  return out;
}

}  // namespace cavelim::bench
