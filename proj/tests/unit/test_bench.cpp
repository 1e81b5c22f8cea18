#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "cavelim/bench/config.hpp"
#include "cavelim/bench/output.hpp"
#include "cavelim/bench/runner.hpp"
#include "cavelim/error.hpp"

namespace cavelim::bench {
namespace {

namespace fs = std::filesystem;

class ScratchDir {
 public:
  explicit ScratchDir(const std::string& name)
      : path_(fs::temp_directory_path() / ("cavelim_test_" + name)) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~ScratchDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

const json kSmallSweep = json::parse(R"({
  "experiment": "optomech-sweep",
  "model": {"omega0": [3.0], "g": [0.1], "eta": 0.1},
  "numerics": {"delta": {"start": -3.0, "stop": -1.0, "count": 3},
               "mirror_cutoff": 8, "cavity_cutoff": 2, "check_extra": 2}
})");

TEST(Grid, ExplicitAndLinspace) {
  EXPECT_EQ(parse_grid(json::array({1.0, 2.5}), "x"), (std::vector<double>{1.0, 2.5}));
  const auto g = parse_grid(json{{"start", -3.0}, {"stop", -0.3}, {"count", 12}}, "delta");
  ASSERT_EQ(g.size(), 12u);
  EXPECT_EQ(g.front(), -3.0);
  EXPECT_EQ(g.back(), -0.3);
  EXPECT_NEAR(g[1] - g[0], 2.7 / 11.0, 1e-15);
  EXPECT_EQ(parse_grid(json(0.5), "x"), (std::vector<double>{0.5}));
  EXPECT_THROW(parse_grid(json{{"start", 0.0}, {"stop", 1.0}}, "x"), SpecError);
  EXPECT_THROW(parse_grid(json("abc"), "x"), SpecError);
}

TEST(Config, DefaultsResolve) {
  for (const auto& exp : kExperiments) {
    const json r = resolve_config(exp, json::object(), false);
    EXPECT_EQ(r.at("experiment"), exp);
    EXPECT_TRUE(r.contains("model"));
  }
  const json sweep = resolve_config("optomech-sweep", json::object(), false);
  EXPECT_EQ(sweep["numerics"]["delta"].size(), 12u);
}

TEST(Config, UnknownKeysRejected) {
  json c = kSmallSweep;
  c["numerics"]["mirror_cutof"] = 3;
  EXPECT_THROW(resolve_config("optomech-sweep", c, false), SpecError);
  c = kSmallSweep;
  c["extra"] = 1;
  EXPECT_THROW(resolve_config("optomech-sweep", c, false), SpecError);
  EXPECT_THROW(resolve_config("rabi-spectrum", kSmallSweep, false), SpecError);
  EXPECT_THROW(resolve_config("optomech-sweep", json{{"experiment", "nope"}}, false), SpecError);
}

TEST(Config, TypeAndRangeErrors) {
  json c = kSmallSweep;
  c["model"]["eta"] = "fast";
  EXPECT_THROW(resolve_config("optomech-sweep", c, false), SpecError);
  c = kSmallSweep;
  c["model"]["omega0"] = json::array({-1.0});
  EXPECT_THROW(resolve_config("optomech-sweep", c, false), SpecError);
  const json rabi{{"numerics", {{"nbar", {-1.0}}}}};
  EXPECT_THROW(resolve_config("rabi-thermal", rabi, false), SpecError);
}

TEST(Config, BudgetsAndLargeRun) {
  json c = kSmallSweep;
  c["numerics"]["mirror_cutoff"] = 35;
  c["numerics"]["check_extra"] = 10;
  EXPECT_THROW(resolve_config("optomech-sweep", c, false), BudgetError);
  EXPECT_NO_THROW(resolve_config("optomech-sweep", c, true));
  const json ising{{"model", {{"n_sites", 9}}}};
  EXPECT_THROW(resolve_config("ising-cool", ising, false), BudgetError);
  EXPECT_NO_THROW(resolve_config("ising-cool", ising, true));
  const json thermal{{"numerics", {{"cutoffs", {20, 60}}}}};
  EXPECT_THROW(resolve_config("rabi-thermal", thermal, false), BudgetError);
}

TEST(Config, ShippedConfigsResolve) {
  const fs::path dir = CAVELIM_CONFIG_DIR;
  int seen = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const json c = load_config(entry.path());
    const std::string exp = experiment_of(c, "");
    const bool large = entry.path().stem().string().find("large") != std::string::npos;
    EXPECT_NO_THROW(resolve_config(exp, c, large)) << entry.path();
    ++seen;
  }
  EXPECT_GE(seen, 5);
}

TEST(Csv, FormatAndParse) {
  EXPECT_EQ(format_number(0.1), "0.10000000000000001");
  EXPECT_EQ(format_number(std::nan("")), "nan");
  EXPECT_EQ(format_number(-INFINITY), "-inf");
  const ScratchDir tmp("csv");
  CsvTable t(json{{"k", 1}}, {"a", "b", "c"});
  t.add_row({1.5, 2LL, std::string("x,y")});
  EXPECT_THROW(t.add_row({1.0}), DimensionError);
  t.write(tmp.path() / "sub" / "t.csv");
  const ParsedCsv p = read_csv(tmp.path() / "sub" / "t.csv");
  EXPECT_EQ(p.manifest.at("k"), 1);
  EXPECT_EQ(p.columns, (std::vector<std::string>{"a", "b", "c"}));
  ASSERT_EQ(p.rows.size(), 1u);
  EXPECT_EQ(p.rows[0], (std::vector<std::string>{"1.5", "2", "x,y"}));
}

TEST(Runner, SweepRoundTripsBitIdentically) {
  const ScratchDir tmp("roundtrip");
  RunOptions opts;
  opts.out_dir = tmp.path() / "first";
  const RunReport first = run_experiment("optomech-sweep", kSmallSweep, opts);
  ASSERT_EQ(first.files.size(), 1u);
  EXPECT_EQ(first.failed_rows, 0u);
  const ParsedCsv a = read_csv(first.files[0]);
  ASSERT_EQ(a.rows.size(), 3u);
  EXPECT_EQ(a.manifest.at("engine_version"), engine_version());
  EXPECT_EQ(a.manifest.at("run").at("g_label"), "stand-in coupling");

  const json echoed = load_config(first.files[0]);
  opts.out_dir = tmp.path() / "second";
  const RunReport second = run_experiment(experiment_of(echoed, ""), echoed, opts);
  const ParsedCsv b = read_csv(second.files[0]);
  EXPECT_EQ(a.columns, b.columns);
  EXPECT_EQ(a.rows, b.rows);
  EXPECT_EQ(a.manifest.at("config"), b.manifest.at("config"));
}

TEST(Runner, ThreadCountDoesNotChangeResults) {
  const ScratchDir tmp("threads");
  RunOptions one, two;
  one.out_dir = tmp.path() / "one";
  two.out_dir = tmp.path() / "two";
  two.threads = 2;
  const ParsedCsv a = read_csv(run_experiment("optomech-sweep", kSmallSweep, one).files[0]);
  const ParsedCsv b = read_csv(run_experiment("optomech-sweep", kSmallSweep, two).files[0]);
  EXPECT_EQ(a.rows, b.rows);
}

TEST(Runner, DecoupledMirrorStaysInVacuum) {
  json c = kSmallSweep;
  c["model"]["g"] = json::array({0.0});
  const ScratchDir tmp("decoupled");
  RunOptions opts;
  opts.out_dir = tmp.path();
  const RunReport r = run_experiment("optomech-sweep", c, opts);
  EXPECT_EQ(r.failed_rows, 0u);
  const ParsedCsv p = read_csv(r.files[0]);
  for (const auto& row : p.rows) {
    EXPECT_LT(std::abs(std::stod(row[1])), 1e-10);
    EXPECT_LT(std::abs(std::stod(row[2])), 1e-10);
    EXPECT_EQ(row[10], "from-vacuum");
  }
}

TEST(Runner, AlphaSolveRabiMatchesClosedForm) {
  const ScratchDir tmp("alpha");
  RunOptions opts;
  opts.out_dir = tmp.path();
  const json c{{"model", {{"kind", "rabi"}}}};
  const RunReport r = run_experiment("alpha-solve", c, opts);
  std::ifstream in(r.files.at(0));
  const json out = json::parse(in);
  EXPECT_LE(out.at("closed_form_difference").get<double>(), 1e-12);
  EXPECT_EQ(out.at("manifest").at("experiment"), "alpha-solve");
}

TEST(Runner, AlphaSolveZeroDrive) {
  const AlphaSolveResult r = alpha_solve({RabiParams{3.0, 2.5, 0.0, 1.0, 0.0}});
  EXPECT_EQ(r.solution.alpha.matrix().cwiseAbs().maxCoeff(), 0.0);
  EXPECT_TRUE(r.validity.alpha_is_zero);
}

TEST(Runner, ThermalRowRecordsLadder) {
  const ScratchDir tmp("thermal");
  RunOptions opts;
  opts.out_dir = tmp.path();
  const json c{{"model", {{"g", {0.1}}}}, {"numerics", {{"nbar", {0.0}}, {"cutoffs", {6, 8, 10}}}}};
  const RunReport r = run_experiment("rabi-thermal", c, opts);
  EXPECT_EQ(r.files.size(), 2u);
  const ParsedCsv p = read_csv(r.files[0]);
  ASSERT_EQ(p.rows.size(), 1u);
  EXPECT_NEAR(std::stod(p.rows[0][1]), -15.0 / 16.25, 1e-15);
}

}  // namespace
}  // namespace cavelim::bench
