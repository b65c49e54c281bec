#pragma once

// Figure datasets and oracle validation suites behind the command-line tool.

#include "replication/parallel.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace replication {

enum class ExperimentId {
  Fig2a, Fig2b, Fig2c, Fig2d, Fig2e, Fig3a, Fig3b, Fig3c, Fig5a, Fig5b, Custom
};

std::string to_string(ExperimentId id);
// Throws ConfigInvalid.
ExperimentId parse_experiment(const std::string& name);
std::vector<ExperimentId> all_experiments();

// Every physical and numerical setting an experiment consumes. Which fields
// matter depends on the experiment; unused ones are still written to the
// manifest.
struct ExperimentConfig {
  ExperimentId id = ExperimentId::Custom;

  int n_sites = 10;
  double eta = 1.0;
  double kappa = 0.0;       // all cavities, unless a sweep overrides it
  double kappa_end = 0.0;   // cavities N and 2N (fig2e, fig5); negative means "same as kappa"
  double zeta = 1.0;
  double nbar = 1.0;
  double mbar = 1.4142135623730951;
  double g = 0.0;           // atom coupling (fig3b)
  double spin_gamma = 1.0;  // XX chain reservoir rate (fig3c)
  double spin_coupling = 1.0;

  std::vector<double> kappa_grid;
  std::vector<double> sites_grid;
  std::vector<double> nbar_grid;
  std::vector<double> mbar_grid;
  std::vector<double> delta_xi_grid;
  int samples = 500;

  double omega_min = -3.0;
  double omega_max = 3.0;
  int omega_points = 1201;

  std::uint64_t seed = 20120101;
  int workers = 0;          // 0: all available
  std::string output = "results.csv";
};

// Figure-caption defaults for the experiment.
ExperimentConfig default_config(ExperimentId id);

// Flat key = value documents. '#' starts a comment; list values are
// comma-separated. Throws ConfigInvalid on unknown keys or malformed values.
using KeyValues = std::map<std::string, std::string>;
KeyValues parse_key_values(const std::string& text);
std::string format_key_values(const std::vector<std::pair<std::string, std::string>>& entries);

// Starts from default_config of the "experiment" key (or `fallback` when
// absent) and applies the remaining keys.
ExperimentConfig config_from_key_values(const KeyValues& kv, ExperimentId fallback);
void apply_overrides(ExperimentConfig& cfg, const KeyValues& kv);
std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& cfg);
// Documented keys with a one-line description each.
std::vector<std::pair<std::string, std::string>> config_schema();

// Number formatting shared by CSV and manifest: 12 significant digits, '.'.
std::string format_number(double v);

struct ResultTable {
  std::vector<std::string> columns;  // sweep, pair, e_raw, e_normalized, e_reference, extras...
  std::vector<std::vector<double>> rows;

  std::string to_csv() const;
};

struct ExperimentOutput {
  ResultTable table;
  // Derived quantities worth recording next to the resolved parameters.
  std::vector<std::pair<std::string, std::string>> notes;
};

// Computes the dataset. Module errors are rethrown with the sweep point named.
ExperimentOutput compute_experiment(const ExperimentConfig& cfg);

// Writes cfg.output and cfg.output + ".manifest" (via temporary files; nothing
// is left behind on failure).
ExperimentOutput run_experiment(const ExperimentConfig& cfg);

enum class CheckStatus { Pass, Fail, Skipped, Info };
std::string to_string(CheckStatus s);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  double value = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

struct SuiteResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::vector<CheckResult> checks;
};

struct ValidationOptions {
  std::size_t budget = 1200;   // largest Hilbert dimension any oracle may use
  std::string inject_fault;    // "", or "diffusion-sign"
  ExecutionPolicy policy{};
};

std::vector<std::string> validation_suites();
// name is one suite or "all". Never throws for failed checks.
std::vector<SuiteResult> validate(const std::string& name, const ValidationOptions& options = {});
std::string report_json(const std::vector<SuiteResult>& suites);

}  // namespace replication
