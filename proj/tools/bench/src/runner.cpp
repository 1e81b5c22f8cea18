#include "cavelim/bench/runner.hpp"

#include <chrono>
#include <cmath>

#include <fmt/format.h>

#include "cavelim/bench/output.hpp"

namespace cavelim::bench {

namespace fs = std::filesystem;

std::string engine_version() { return CAVELIM_VERSION; }

namespace {

/// Composite dimension above which the Ising full model needs --large-run.
constexpr Index kIsingFullDimBudget = 192;

Budget budget_for(bool large_run) {
  if (!large_run) return kDeskBudget;
  return Budget{kIsingMaxSites, 400};
}

const json& section(const json& config, const char* key) {
  static const json empty;
  return config.contains(key) ? config.at(key) : empty;
}

void check_top_level(const json& config) {
  if (!config.is_object()) throw SpecError("config: top level must be an object");
  for (const auto& [key, value] : config.items()) {
    if (key != "experiment" && key != "model" && key != "numerics" && key != "output") {
      throw SpecError("config: unknown key " + key);
    }
  }
}

class Clock {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

json manifest_for(const RunReport& report, double wall, json extra = json::object()) {
  json m{{"experiment", report.experiment},
         {"engine_version", engine_version()},
         {"config", report.config},
         {"wall_time_s", wall}};
  m["run"] = std::move(extra);
  return m;
}

std::string tag(double v) { return fmt::format("{:g}", v); }

// ---- per-experiment drivers ------------------------------------------------

void run_optomech(RunReport& report, const OptomechSweepConfig& c, const fs::path& dir, int threads) {
  for (double omega0 : c.omega0s) {
    for (double g : c.gs) {
      const Clock clock;
      OptomechSweepSettings s;
      s.omega0 = omega0;
      s.g = g;
      s.eta = c.eta;
      s.deltas = c.deltas;
      s.mirror_cutoff = c.mirror_cutoff;
      s.cavity_cutoff = c.cavity_cutoff;
      s.check_extra = c.check_extra;
      s.convergence_tol = c.convergence_tol;
      const auto rows = optomech_sweep(s, threads);

      std::size_t unconverged = 0;
      for (const auto& r : rows) unconverged += r.error.empty() && !r.converged;
      CsvTable table(json(), {"delta_over_kappa", "mbar_full", "mbar_eff", "mbar_weak_formula",
                              "mirror_cutoff", "cavity_cutoff", "mbar_eff_check", "check_cutoff",
                              "mirror_converged", "alpha_residual", "steady_route", "error"});
      for (const auto& r : rows) {
        report.failed_rows += !r.error.empty();
        table.add_row({r.delta, r.mbar_full, r.mbar_eff, r.mbar_formula,
                       static_cast<long long>(r.mirror_cutoff), static_cast<long long>(r.cavity_cutoff),
                       r.mbar_eff_check, static_cast<long long>(s.mirror_cutoff + s.check_extra),
                       static_cast<long long>(r.converged), r.alpha_residual, r.steady_route, r.error});
      }
      table.manifest() = manifest_for(report, clock.seconds(),
                                      {{"omega0", omega0},
                                       {"g", g},
                                       {"g_label", "stand-in coupling"},
                                       {"unconverged_rows", unconverged}});
      const fs::path path = dir / fmt::format("optomech_omega0={}_g={}.csv", tag(omega0), tag(g));
      table.write(path);
      report.files.push_back(path);
    }
  }
}

void run_ising(RunReport& report, IsingCoolConfig c, const fs::path& dir, bool large_run) {
  const Clock clock;
  IsingCoolSettings& s = c.settings;
  const Index composite = (Index{1} << s.params.n_sites) * s.cavity_cutoff;
  std::string note;
  if (s.compute_full && composite > kIsingFullDimBudget && !large_run) {
    s.compute_full = false;
    note = fmt::format("full model skipped: composite dimension {} exceeds {}", composite,
                       kIsingFullDimBudget);
  }
  const IsingCoolResult r = ising_cool(s);
  if (note.empty()) note = r.full_note;

  std::vector<std::string> cols{"t_kappa", "energy_eff"};
  if (!r.energy_full.empty()) cols.push_back("energy_full");
  cols.push_back("e0");
  CsvTable table(json(), cols);
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    std::vector<Cell> row{r.times[i], r.energy_eff[i]};
    if (!r.energy_full.empty()) row.emplace_back(r.energy_full[i]);
    row.emplace_back(r.gap.e0);
    table.add_row(std::move(row));
  }
  json extra{{"e0", r.gap.e0},
             {"e1", r.gap.e1},
             {"gap", r.gap.gap},
             {"ground_multiplicity", r.gap.ground_multiplicity},
             {"omega_c", r.omega_c},
             {"alpha_residual", r.alpha_residual},
             {"cavity_cutoff", s.cavity_cutoff}};
  if (!note.empty()) extra["note"] = note;
  table.manifest() = manifest_for(report, clock.seconds(), extra);
  const fs::path path = dir / fmt::format("ising_cool_N={}.csv", s.params.n_sites);
  table.write(path);
  report.files.push_back(path);
}

void run_spectrum(RunReport& report, const RabiSpectrumConfig& c, const fs::path& dir, int threads) {
  const Clock clock;
  const RabiSpectrumSettings& s = c.settings;
  const RabiSpectrumResult r = rabi_spectrum(s, threads);

  CsvTable eff(json(), {"index", "re", "im"});
  for (std::size_t i = 0; i < r.effective.size(); ++i) {
    eff.add_row({static_cast<long long>(i), r.effective[i].real(), r.effective[i].imag()});
  }
  eff.manifest() = manifest_for(report, clock.seconds(), {{"generator", "effective"}});
  const fs::path eff_path = dir / "rabi_spectrum_effective.csv";
  eff.write(eff_path);
  report.files.push_back(eff_path);

  CsvTable match(json(), {"cutoff", "eff_index", "eff_re", "eff_im", "distance"});
  json blocks = json::array();
  for (std::size_t b = 0; b < r.full.size(); ++b) {
    const auto& block = r.full[b];
    const Index l = block.cutoff;
    blocks.push_back({{"cutoff", l},
                      {"mode", block.dense ? "dense" : "nearest"},
                      {"reduction_factor", l * l},
                      {"error", block.error}});
    if (!block.error.empty()) {
      ++report.failed_rows;
      continue;
    }
    CsvTable full(json(), {"re", "im"});
    for (const cplx& z : block.eigenvalues) full.add_row({z.real(), z.imag()});
    full.manifest() = manifest_for(report, clock.seconds(),
                                   {{"generator", "full"},
                                    {"cutoff", l},
                                    {"mode", block.dense ? "dense" : "nearest"},
                                    {"reduction_factor", l * l}});
    const fs::path path = dir / fmt::format("rabi_spectrum_full_L={}.csv", l);
    full.write(path);
    report.files.push_back(path);
    for (std::size_t i = 0; i < r.effective.size(); ++i) {
      match.add_row({static_cast<long long>(l), static_cast<long long>(i), r.effective[i].real(),
                     r.effective[i].imag(), r.distances[b][i]});
    }
  }

  RabiParams drift_params = s.params;
  drift_params.nbar = c.drift_nbar;
  CsvTable drift(json(), {"cutoff", "index", "re", "im", "shift_from_previous"});
  double max_shift = std::nan("");
  try {
    const auto near = rabi_near_zero(drift_params, c.drift_cutoffs, c.drift_count, s.near_shift, threads);
    for (std::size_t b = 0; b < near.size(); ++b) {
      const std::vector<double> moved =
          b == 0 ? std::vector<double>(near[b].size(), std::nan(""))
                 : nearest_distances(near[b], near[b - 1]);
      for (std::size_t i = 0; i < near[b].size(); ++i) {
        drift.add_row({static_cast<long long>(c.drift_cutoffs[b]), static_cast<long long>(i),
                       near[b][i].real(), near[b][i].imag(), moved[i]});
        if (b > 0 && !(moved[i] <= max_shift)) max_shift = moved[i];
      }
    }
  } catch (const Error& e) {
    ++report.failed_rows;
    blocks.push_back({{"drift_error", e.what()}});
  }
  drift.manifest() = manifest_for(report, clock.seconds(),
                                  {{"generator", "full"}, {"nbar", c.drift_nbar}, {"max_shift", max_shift}});
  const fs::path drift_path = dir / "rabi_spectrum_drift.csv";
  drift.write(drift_path);
  report.files.push_back(drift_path);

  match.manifest() = manifest_for(report, clock.seconds(), {{"blocks", blocks}});
  const fs::path match_path = dir / "rabi_spectrum_match.csv";
  match.write(match_path);
  report.files.push_back(match_path);
}

void run_thermal(RunReport& report, const RabiThermalConfig& c, const fs::path& dir, int threads) {
  for (double g : c.gs) {
    const Clock clock;
    RabiThermalSettings s;
    s.omega0 = c.omega0;
    s.omega_c = c.omega_c;
    s.g = g;
    s.nbars = c.nbars;
    s.cutoffs = c.cutoffs;
    s.convergence_tol = c.convergence_tol;
    const auto rows = rabi_thermal(s, threads);

    CsvTable table(json(), {"nbar", "sz_formula", "sz_eff", "sz_full", "cutoff", "converged_cutoff",
                            "converged", "error"});
    CsvTable ladder(json(), {"nbar", "cutoff", "sz_full", "change"});
    for (const auto& r : rows) {
      report.failed_rows += !r.error.empty();
      table.add_row({r.nbar, r.sz_formula, r.sz_eff, r.sz_full,
                     static_cast<long long>(s.cutoffs.back()), static_cast<long long>(r.converged_cutoff),
                     static_cast<long long>(r.converged), r.error});
      for (const auto& step : r.ladder) {
        ladder.add_row({r.nbar, static_cast<long long>(step.cutoff), step.value, step.change});
      }
    }
    const json procedure{{"g", g},
                         {"procedure", "steady state at every cutoff of the ladder; converged when the "
                                       "last change is below convergence_tol"},
                         {"convergence_tol", c.convergence_tol}};
    table.manifest() = manifest_for(report, clock.seconds(), procedure);
    ladder.manifest() = manifest_for(report, clock.seconds(), procedure);
    const fs::path path = dir / fmt::format("rabi_thermal_g={}.csv", tag(g));
    const fs::path ladder_path = dir / fmt::format("rabi_thermal_g={}_ladder.csv", tag(g));
    table.write(path);
    ladder.write(ladder_path);
    report.files.push_back(path);
    report.files.push_back(ladder_path);
  }
}

json matrix_json(const Matrix& m, bool imag) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(imag ? m(i, j).imag() : m(i, j).real());
    rows.push_back(std::move(row));
  }
  return rows;
}

void run_alpha(RunReport& report, const AlphaSolveSettings& s, const fs::path& dir) {
  const Clock clock;
  json out;
  try {
    const AlphaSolveResult r = alpha_solve(s);
    out = {{"model", r.model},
           {"method", std::string(to_string(r.solution.method))},
           {"dim", r.solution.alpha.dim()},
           {"space", r.solution.alpha.space()},
           {"residual", r.solution.residual},
           {"drive_norm", r.drive_norm},
           {"alpha", {{"real", matrix_json(r.solution.alpha.matrix(), false)},
                      {"imag", matrix_json(r.solution.alpha.matrix(), true)}}},
           {"validity",
            {{"alpha_norm", r.validity.alpha_norm},
             {"commutator_ratio", r.validity.commutator_ratio},
             {"residual", r.validity.residual},
             {"alpha_is_zero", r.validity.alpha_is_zero}}}};
    if (r.closed_form_difference) out["closed_form_difference"] = *r.closed_form_difference;
  } catch (const Error& e) {
    ++report.failed_rows;
    out = {{"model", model_name(s)}, {"error", e.what()}};
  }
  out["manifest"] = manifest_for(report, clock.seconds());
  const fs::path path = dir / fmt::format("alpha_{}.json", model_name(s));
  write_text(path, out.dump(2) + "\n");
  report.files.push_back(path);
}

}  // namespace

json resolve_config(const std::string& experiment, const json& config, bool large_run) {
  check_top_level(config);
  const std::string exp = experiment_of(config, experiment);
  if (exp != experiment) {
    throw SpecError("config: file describes '" + exp + "' but '" + experiment + "' was requested");
  }
  const Budget b = budget_for(large_run);
  const json& m = section(config, "model");
  const json& n = section(config, "numerics");
  json resolved;
  if (exp == "optomech-sweep") {
    resolved = to_json(parse_optomech_sweep(m, n, b));
  } else if (exp == "ising-cool") {
    resolved = to_json(parse_ising_cool(m, n, b));
  } else if (exp == "rabi-spectrum") {
    resolved = to_json(parse_rabi_spectrum(m, n, b));
  } else if (exp == "rabi-thermal") {
    resolved = to_json(parse_rabi_thermal(m, n, b));
  } else if (exp == "alpha-solve") {
    resolved = to_json(parse_alpha_solve(m, n, b));
  } else {
    throw SpecError("config: unknown experiment '" + exp + "'");
  }
  resolved["experiment"] = exp;
  return resolved;
}

RunReport run_experiment(const std::string& experiment, const json& config, const RunOptions& opts) {
  RunReport report;
  report.experiment = experiment;
  report.config = resolve_config(experiment, config, opts.large_run);

  fs::path dir = "results";
  if (opts.out_dir) {
    dir = *opts.out_dir;
  } else if (config.contains("output") && config.at("output").contains("directory")) {
    dir = config.at("output").at("directory").get<std::string>();
  }

  const Budget b = budget_for(opts.large_run);
  const json& m = report.config.at("model");
  const json& n = report.config.at("numerics");
  if (experiment == "optomech-sweep") {
    run_optomech(report, parse_optomech_sweep(m, n, b), dir, opts.threads);
  } else if (experiment == "ising-cool") {
    run_ising(report, parse_ising_cool(m, n, b), dir, opts.large_run);
  } else if (experiment == "rabi-spectrum") {
    run_spectrum(report, parse_rabi_spectrum(m, n, b), dir, opts.threads);
  } else if (experiment == "rabi-thermal") {
    run_thermal(report, parse_rabi_thermal(m, n, b), dir, opts.threads);
  } else {
    run_alpha(report, parse_alpha_solve(m, n, b), dir);
  }
  return report;
}

}  // namespace cavelim::bench
