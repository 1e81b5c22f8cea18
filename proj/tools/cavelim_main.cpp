#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cavelim/bench/runner.hpp"

namespace {

int run(const std::string& experiment, const std::string& config_path,
        const cavelim::bench::RunOptions& opts) {
  using namespace cavelim::bench;
  const json config = config_path.empty() ? json::object() : load_config(config_path);
  const RunReport report = run_experiment(experiment, config, opts);
  for (const auto& f : report.files) std::cout << f.string() << '\n';
  if (report.failed_rows > 0) {
    std::cerr << experiment << ": " << report.failed_rows << " row(s) failed\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Full and effective open-system simulations of a damped bosonic mode"};
  app.set_version_flag("--version", cavelim::bench::engine_version());
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  cavelim::bench::RunOptions opts;

  for (const auto& name : cavelim::bench::kExperiments) {
    CLI::App* sub = app.add_subcommand(name, "run the " + name + " experiment");
    sub->add_option("--config", config_path, "JSON config, or a CSV written by an earlier run")
        ->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory (overrides the config)");
    sub->add_option("--threads", opts.threads, "worker threads for sweeps")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--large-run", opts.large_run, "lift the desk-scale chain and cutoff budgets");
  }

  CLI11_PARSE(app, argc, argv);

  const std::string experiment = app.get_subcommands().front()->get_name();
  if (!out_dir.empty()) opts.out_dir = out_dir;
  try {
    return run(experiment, config_path, opts);
  } catch (const cavelim::BudgetError& e) {
    std::cerr << "budget: " << e.what() << '\n';
    return 3;
  } catch (const cavelim::SpecError& e) {
    std::cerr << "config: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
}
