#include "replication/error.hpp"
#include "replication/experiments.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace replication;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("replication_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

ExperimentConfig small(ExperimentId id) {
  ExperimentConfig c = default_config(id);
  c.workers = 1;
  return c;
}

}  // namespace

TEST(Config, FigureDefaults) {
  const ExperimentConfig a = default_config(ExperimentId::Fig2a);
  EXPECT_EQ(a.n_sites, 20);
  EXPECT_EQ(a.kappa_grid, (std::vector<double>{0.0, 0.02, 0.1}));
  EXPECT_EQ(a.zeta, a.eta);
  EXPECT_EQ(a.nbar, 1.0);
  EXPECT_NEAR(a.mbar, std::sqrt(2.0), 1e-15);
  EXPECT_EQ(default_config(ExperimentId::Fig2e).kappa_grid.size(), 31u);
  EXPECT_NEAR(default_config(ExperimentId::Fig2e).kappa_grid.front(), 1e-2, 1e-15);
  EXPECT_NEAR(default_config(ExperimentId::Fig2e).kappa_grid.back(), 1e2, 1e-10);
  EXPECT_EQ(default_config(ExperimentId::Fig3a).samples, 500);
  EXPECT_EQ(default_config(ExperimentId::Fig3b).n_sites, 3);
  EXPECT_EQ(default_config(ExperimentId::Fig5b).kappa_end, 0.4);
  EXPECT_EQ(default_config(ExperimentId::Fig5b).zeta, 0.5);
  for (ExperimentId id : all_experiments()) EXPECT_EQ(parse_experiment(to_string(id)), id);
}

TEST(Config, KeyValueParsing) {
  const KeyValues kv = parse_key_values("# comment\nexperiment = fig2c\n n_sites=4 # trailing\nkappa_grid = 0.1, 0.2\n\n");
  const ExperimentConfig c = config_from_key_values(kv, ExperimentId::Custom);
  EXPECT_EQ(c.id, ExperimentId::Fig2c);
  EXPECT_EQ(c.n_sites, 4);
  EXPECT_EQ(c.kappa_grid, (std::vector<double>{0.1, 0.2}));
  EXPECT_EQ(c.kappa, 0.1);  // fig2c default retained

  auto kind = [](const std::string& text) {
    try {
      config_from_key_values(parse_key_values(text), ExperimentId::Custom);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::NoConvergence;
  };
  EXPECT_EQ(kind("bogus = 1"), ErrorKind::ConfigInvalid);
  EXPECT_EQ(kind("n_sites = 2.5"), ErrorKind::ConfigInvalid);
  EXPECT_EQ(kind("eta = abc"), ErrorKind::ConfigInvalid);
  EXPECT_EQ(kind("no equals sign"), ErrorKind::ConfigInvalid);
  EXPECT_EQ(kind("eta = 1\neta = 2"), ErrorKind::ConfigInvalid);
  EXPECT_EQ(kind("experiment = fig9"), ErrorKind::ConfigInvalid);
  EXPECT_EQ(kind("seed = -3"), ErrorKind::ConfigInvalid);
}

TEST(Config, ManifestRoundTripsEveryKey) {
  ExperimentConfig c = default_config(ExperimentId::Fig3a);
  c.seed = 18446744073709551615ULL;
  c.eta = 0.123456789012;
  const auto entries = config_entries(c);
  EXPECT_EQ(entries.size(), config_schema().size());
  const ExperimentConfig back = config_from_key_values(parse_key_values(format_key_values(entries)), ExperimentId::Custom);
  EXPECT_EQ(config_entries(back), entries);
}

TEST(Csv, HeaderSortingAndNumberFormat) {
  ExperimentConfig c = small(ExperimentId::Fig2a);
  c.n_sites = 4;
  c.kappa_grid = {0.1, 0.0};
  const ExperimentOutput out = compute_experiment(c);
  const std::string csv = out.table.to_csv();
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "kappa,pair,e_raw,e_normalized,e_reference,e_reference_normalized");
  ASSERT_EQ(out.table.rows.size(), 8u);
  for (std::size_t i = 1; i < out.table.rows.size(); ++i) {
    const auto& a = out.table.rows[i - 1];
    const auto& b = out.table.rows[i];
    EXPECT_TRUE(a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]));
  }
  for (const auto& r : out.table.rows) EXPECT_EQ(r[4], out.table.rows[0][4]);
  // Lossless rows carry the normalized driving value.
  EXPECT_NE(csv.find("0,1,2.54310660633,0.717761808743,"), std::string::npos);
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333333");
  EXPECT_EQ(format_number(1e-20), "1e-20");
}

TEST(Experiments, Fig3cVanishesAtSeparableEnd) {
  ExperimentConfig c = small(ExperimentId::Fig3c);
  c.mbar_grid = {1.0, std::sqrt(2.0)};
  const ExperimentOutput out = compute_experiment(c);
  ASSERT_EQ(out.table.rows.size(), 6u);
  for (int j = 0; j < 3; ++j) {
    EXPECT_EQ(out.table.rows[j][2], 0.0);
    EXPECT_NEAR(out.table.rows[3 + j][2], 0.9581441056, 1e-8);
  }
}

TEST(Experiments, EveryFigureProducesItsTable) {
  // Shrunk grids; checks the column schema of each experiment.
  for (ExperimentId id : all_experiments()) {
    ExperimentConfig c = small(id);
    c.kappa_grid.resize(std::min<std::size_t>(c.kappa_grid.size(), 2));
    c.sites_grid.resize(std::min<std::size_t>(c.sites_grid.size(), 2));
    c.nbar_grid.resize(std::min<std::size_t>(c.nbar_grid.size(), 2));
    c.mbar_grid = {c.nbar, std::sqrt(c.nbar * (c.nbar + 1))};
    c.samples = 3;
    c.omega_points = 21;
    if (id == ExperimentId::Fig3b || id == ExperimentId::Fig3c) c.n_sites = 2;
    const ExperimentOutput out = compute_experiment(c);
    EXPECT_FALSE(out.table.rows.empty()) << to_string(id);
    EXPECT_GE(out.table.columns.size(), 6u);
    for (const auto& r : out.table.rows) EXPECT_EQ(r.size(), out.table.columns.size()) << to_string(id);
  }
}

TEST(Experiments, WorkerCountDoesNotChangeBytes) {
  ExperimentConfig c = small(ExperimentId::Fig3a);
  c.n_sites = 5;
  c.samples = 20;
  const std::string serial = compute_experiment(c).table.to_csv();
  c.workers = 3;
  EXPECT_EQ(compute_experiment(c).table.to_csv(), serial);
  c.workers = 0;
  EXPECT_EQ(compute_experiment(c).table.to_csv(), serial);
  c.seed += 1;
  EXPECT_NE(compute_experiment(c).table.to_csv(), serial);
}

TEST(Experiments, ErrorsNameTheSweepPoint) {
  ExperimentConfig c = small(ExperimentId::Fig2d);
  c.mbar_grid = {1.0, 1.2, 1.6};
  try {
    compute_experiment(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ConfigInvalid);
    EXPECT_NE(std::string(e.what()).find("mbar = 1.6"), std::string::npos) << e.what();
  }
  ExperimentConfig closed = small(ExperimentId::Fig2a);
  closed.zeta = 0.0;
  closed.kappa_grid = {0.1, 0.0};
  try {
    compute_experiment(closed);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotHurwitz);
    EXPECT_NE(std::string(e.what()).find("kappa = 0:"), std::string::npos) << e.what();
  }
}

TEST(Experiments, RunWritesCsvAndManifestOrNothing) {
  const fs::path dir = scratch("run");
  ExperimentConfig c = small(ExperimentId::Fig2b);
  c.sites_grid = {2, 3};
  c.output = (dir / "out.csv").string();
  const ExperimentOutput out = run_experiment(c);
  EXPECT_EQ(slurp(dir / "out.csv"), out.table.to_csv());
  const KeyValues manifest = parse_key_values(slurp(dir / "out.csv.manifest"));
  for (const auto& [key, value] : config_entries(c)) EXPECT_EQ(manifest.at(key), value);
  EXPECT_EQ(manifest.at("rows"), "5");

  const std::string before = slurp(dir / "out.csv");
  c.sites_grid = {2, 0};
  EXPECT_THROW(run_experiment(c), Error);
  EXPECT_EQ(slurp(dir / "out.csv"), before);
  int files = 0;
  for (const auto& e : fs::directory_iterator(dir)) files += e.is_regular_file();
  EXPECT_EQ(files, 2);
}

TEST(Validate, SmallBudgetSkipsInsteadOfPassing) {
  ValidationOptions o;
  o.budget = 10;
  const auto results = validate("all", o);
  ASSERT_EQ(results.size(), validation_suites().size());
  for (const auto& s : results) EXPECT_EQ(s.status, CheckStatus::Skipped) << s.name;
  const auto doc = nlohmann::json::parse(report_json(results));
  EXPECT_EQ(doc["summary"]["skipped"], 4);
  EXPECT_EQ(doc["summary"]["pass"], 0);
}

TEST(Validate, InjectedDiffusionFaultIsCaughtAndNamed) {
  ValidationOptions o;
  o.inject_fault = "diffusion-sign";
  const auto results = validate("gaussian_vs_fock", o);
  ASSERT_EQ(results.size(), 1u);
  EXPECT_EQ(results[0].status, CheckStatus::Fail);
  bool named = false;
  for (const auto& c : results[0].checks) named = named || c.detail.find("<a_1 a_2>") != std::string::npos;
  EXPECT_TRUE(named);
  EXPECT_EQ(validate("gaussian_vs_fock")[0].status, CheckStatus::Pass);
}

TEST(Validate, FastSuitesPassAndUnknownSuiteFails) {
  for (const char* name : {"closed_form_vs_general", "fixed_point"}) {
    const auto r = validate(name);
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r[0].status, CheckStatus::Pass) << name;
  }
  EXPECT_EQ(validate("nope")[0].status, CheckStatus::Fail);
}

#ifdef REPLICATE_BIN
TEST(Cli, ExitCodesAndOutputs) {
  const fs::path dir = scratch("cli");
  const std::string bin = REPLICATE_BIN;
  auto run = [&](const std::string& args) {
    const int status = std::system((bin + " " + args + " > " + (dir / "stdout").string() + " 2>&1").c_str());
    return WEXITSTATUS(status);
  };
  std::ofstream(dir / "cfg.txt") << "experiment = fig2b\nsites_grid = 2, 3\n";
  EXPECT_EQ(run("run --config " + (dir / "cfg.txt").string() + " --out " + (dir / "a.csv").string() + " --workers 2"), 0);
  EXPECT_TRUE(fs::exists(dir / "a.csv"));
  EXPECT_TRUE(fs::exists(dir / "a.csv.manifest"));
  EXPECT_NE(slurp(dir / "a.csv.manifest").find("workers = 2"), std::string::npos);
  EXPECT_EQ(run("run --experiment fig2a --seed 12 --out " + (dir / "b.csv").string()), 0);
  EXPECT_NE(slurp(dir / "b.csv.manifest").find("seed = 12"), std::string::npos);
  EXPECT_EQ(run("run"), 2);
  EXPECT_EQ(run("run --experiment fig9"), 2);
  EXPECT_EQ(run("frobnicate"), 2);
  EXPECT_EQ(run("validate --suite fixed_point --budget 8"), 4);
  EXPECT_EQ(run("validate --suite gaussian_vs_fock --inject-fault diffusion-sign --report " + (dir / "r.json").string()), 3);
  EXPECT_EQ(nlohmann::json::parse(slurp(dir / "r.json"))["suites"][0]["status"], "fail");
  EXPECT_EQ(run("validate --suite closed_form_vs_general"), 0);
  EXPECT_EQ(run("schema"), 0);
  EXPECT_NE(slurp(dir / "stdout").find("kappa_grid"), std::string::npos);
}
#endif
