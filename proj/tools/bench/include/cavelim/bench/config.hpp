#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "cavelim/bench/experiments.hpp"

namespace cavelim::bench {

using json = nlohmann::json;

inline const std::vector<std::string> kExperiments{"optomech-sweep", "ising-cool", "rabi-spectrum",
                                                   "rabi-thermal", "alpha-solve"};

/// Desk-scale limits lifted by --large-run.
struct Budget {
  int max_sites = 6;
  Index max_cutoff = 40;
};

inline constexpr Budget kDeskBudget{};

struct OptomechSweepConfig {
  std::vector<double> omega0s{0.5, 3.0};
  std::vector<double> gs{0.1};
  double eta = 0.1;
  std::vector<double> deltas;
  Index mirror_cutoff = 30;
  Index cavity_cutoff = 3;
  Index check_extra = 10;
  double convergence_tol = 0.01;
};

struct IsingCoolConfig {
  IsingCoolSettings settings;
};

struct RabiSpectrumConfig {
  RabiSpectrumSettings settings;
  /// Nearest-to-zero drift check on the full model.
  double drift_nbar = 4.0;
  std::vector<Index> drift_cutoffs{20, 40};
  Index drift_count = 4;
};

struct RabiThermalConfig {
  double omega0 = 3.0;
  double omega_c = 2.5;
  std::vector<double> gs{0.1, 3.0};
  std::vector<double> nbars{0.0, 1.0, 2.0, 4.0};
  std::vector<Index> cutoffs{10, 20, 30, 40};
  double convergence_tol = 1e-5;
};

/**
 * Reads a JSON experiment config, or the manifest line of a previously
 * written CSV (its "config" member), so that outputs can be regenerated.
 */
json load_config(const std::filesystem::path& path);

/// Experiment tag of a config; `fallback` when the config has none.
std::string experiment_of(const json& config, const std::string& fallback);

// Parsing fills defaults, validates against the budget and throws SpecError
// or BudgetError. Serialization writes every resolved field.
OptomechSweepConfig parse_optomech_sweep(const json& model, const json& numerics, const Budget& b);
IsingCoolConfig parse_ising_cool(const json& model, const json& numerics, const Budget& b);
RabiSpectrumConfig parse_rabi_spectrum(const json& model, const json& numerics, const Budget& b);
RabiThermalConfig parse_rabi_thermal(const json& model, const json& numerics, const Budget& b);
AlphaSolveSettings parse_alpha_solve(const json& model, const json& numerics, const Budget& b);

json to_json(const OptomechSweepConfig& c);
json to_json(const IsingCoolConfig& c);
json to_json(const RabiSpectrumConfig& c);
json to_json(const RabiThermalConfig& c);
json to_json(const AlphaSolveSettings& c);

/// A numeric grid: an explicit array or {"start", "stop", "count"}.
std::vector<double> parse_grid(const json& node, const std::string& name);

}  // namespace cavelim::bench
