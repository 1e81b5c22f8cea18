#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cavelim/bench/config.hpp"

namespace cavelim::bench {

struct RunOptions {
  /// Overrides config.output.directory when set.
  std::optional<std::filesystem::path> out_dir;
  int threads = 1;
  bool large_run = false;
};

struct RunReport {
  std::string experiment;
  std::vector<std::filesystem::path> files;
  std::size_t failed_rows = 0;
  /// Resolved config as echoed in every manifest.
  json config;
};

std::string engine_version();

/// Parses, validates and runs one experiment; writes its output files.
RunReport run_experiment(const std::string& experiment, const json& config, const RunOptions& opts);

/// Resolves defaults and budgets without running anything.
json resolve_config(const std::string& experiment, const json& config, bool large_run);

}  // namespace cavelim::bench
