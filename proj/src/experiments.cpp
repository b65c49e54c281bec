#include "replication/experiments.hpp"

#include "replication/baselines.hpp"
#include "replication/cavity_array.hpp"
#include "replication/error.hpp"
#include "replication/fock_oracle.hpp"
#include "replication/output_spectrum.hpp"
#include "replication/spin_models.hpp"

#include <Eigen/Eigenvalues>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

namespace replication {

namespace {

using Row = std::vector<double>;

const std::vector<std::string> kBaseColumns = {"pair", "e_raw", "e_normalized", "e_reference",
                                               "e_reference_normalized"};

ExecutionPolicy policy_of(const ExperimentConfig& cfg) {
  ExecutionPolicy p;
  p.workers = cfg.workers;
  if (cfg.workers == 1) p.mode = Execution::Serial;
  return p;
}

ArrayConfig array_of(const ExperimentConfig& c, int n_sites, double kappa, double kappa_end,
                     double nbar, double mbar) {
  ArrayConfig a = ArrayConfig::homogeneous(n_sites, c.eta, kappa, c.zeta, nbar, mbar);
  if (kappa_end >= 0.0) {
    a.kappa[n_sites - 1] = kappa_end;
    a.kappa[2 * n_sites - 1] = kappa_end;
  }
  return a;
}

std::vector<double> resolved_mbar_grid(const ExperimentConfig& c) {
  if (!c.mbar_grid.empty()) return c.mbar_grid;
  return uniform_grid(c.nbar, std::sqrt(c.nbar * (c.nbar + 1.0)), 25);
}

Row base_row(double sweep, int pair, double raw, double normalized, double reference) {
  return {sweep, static_cast<double>(pair), raw, normalized, reference, normalized_logneg(reference)};
}

std::vector<Row> profile_rows(double sweep, const EntanglementProfile& p) {
  std::vector<Row> rows;
  for (const auto& pe : p.pairs)
    rows.push_back(base_row(sweep, pe.site + 1, pe.raw, pe.normalized, p.drive_raw));
  return rows;
}

// Evaluates point(i) for every sweep index, wrapping module errors with the
// offending sweep point, and concatenates the rows in index order.
std::vector<Row> sweep(const std::string& name, const std::vector<double>& grid,
                       const ExecutionPolicy& policy,
                       const std::function<std::vector<Row>(double)>& point) {
  std::vector<std::vector<Row>> parts(grid.size());
  for_each_index(grid.size(), policy, [&](std::size_t i) {
    try {
      parts[i] = point(grid[i]);
    } catch (const Error& e) {
      throw Error(e.kind(), "at " + name + " = " + format_number(grid[i]) + ": " + e.message());
    }
  });
  std::vector<Row> rows;
  for (auto& p : parts) rows.insert(rows.end(), p.begin(), p.end());
  return rows;
}

ResultTable make_table(const std::string& sweep_name, std::vector<Row> rows,
                       const std::vector<std::string>& extras = {}) {
  ResultTable t;
  t.columns.push_back(sweep_name);
  t.columns.insert(t.columns.end(), kBaseColumns.begin(), kBaseColumns.end());
  t.columns.insert(t.columns.end(), extras.begin(), extras.end());
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return a[0] != b[0] ? a[0] < b[0] : a[1] < b[1];
  });
  t.rows = std::move(rows);
  return t;
}

std::string format_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + format_number(v[i]);
  return s;
}

ExperimentOutput spin_mbar_sweep(const ExperimentConfig& c, bool atoms) {
  const int n = c.n_sites;
  const std::vector<double> grid = resolved_mbar_grid(c);
  std::vector<Row> rows = sweep("mbar", grid, policy_of(c), [&](double m) {
    Liouvillian l(1);
    if (atoms) {
      ArrayConfig a = array_of(c, n, c.kappa, c.kappa_end, c.nbar, m);
      a.g.assign(n, c.g);
      EffectiveModel em = build_effective_general(a);
      l = std::move(em.generator);
    } else {
      l = build_xx_liouvillian(n, std::vector<double>(n - 1, c.spin_coupling), c.spin_gamma, c.nbar, m);
    }
    const SteadyState ss = steady_state_dm(l);
    std::vector<Row> rows;
    const double ref = driving_entanglement(c.nbar, m);
    for (int j = 0; j < n; ++j) {
      const double e = logneg_qubits(reduced_pair_dm(ss.rho, j, n + j));
      // Two-qubit log-negativity is already bounded by one.
      rows.push_back(base_row(m, j + 1, e, e, ref));
    }
    return rows;
  });
  ExperimentOutput out{make_table("mbar", std::move(rows)), {}};
  out.notes.emplace_back("mbar_grid_resolved", format_list(grid));
  if (atoms) {
    ArrayConfig a = array_of(c, n, c.kappa, c.kappa_end, c.nbar, grid.back());
    a.g.assign(n, c.g);
    out.notes.emplace_back("adiabaticity_ratio", format_number(adiabaticity_ratio(a)));
  }
  return out;
}

std::vector<double> local_maxima(const std::vector<double>& x, const std::vector<double>& y) {
  std::vector<double> out;
  for (std::size_t i = 1; i + 1 < y.size(); ++i)
    if (y[i] > y[i - 1] && y[i] >= y[i + 1]) out.push_back(x[i]);
  return out;
}

void check_config(const ExperimentConfig& c) {
  if (c.n_sites < 1) throw Error(ErrorKind::ConfigInvalid, "n_sites must be >= 1");
  if (c.omega_points < 2 || !(c.omega_max > c.omega_min))
    throw Error(ErrorKind::ConfigInvalid, "frequency grid needs omega_max > omega_min and >= 2 points");
  if (c.samples < 1) throw Error(ErrorKind::ConfigInvalid, "samples must be >= 1");
  if (c.workers < 0) throw Error(ErrorKind::ConfigInvalid, "workers must be >= 0");
}

}  // namespace

std::string ResultTable::to_csv() const {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
  out += "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + format_number(r[i]);
    out += "\n";
  }
  return out;
}

ExperimentOutput compute_experiment(const ExperimentConfig& c) {
  check_config(c);
  const ExecutionPolicy policy = policy_of(c);
  const int n = c.n_sites;
  ExperimentOutput out;

  switch (c.id) {
    case ExperimentId::Fig2a:
      out.table = make_table("kappa", sweep("kappa", c.kappa_grid, policy, [&](double k) {
                               return profile_rows(k, pair_entanglement_profile(
                                                          array_of(c, n, k, c.kappa_end, c.nbar, c.mbar)));
                             }));
      break;
    case ExperimentId::Fig2b:
      out.table = make_table("n_sites", sweep("n_sites", c.sites_grid, policy, [&](double sites) {
                               const int ns = static_cast<int>(std::lround(sites));
                               if (ns < 1 || ns != sites)
                                 throw Error(ErrorKind::ConfigInvalid, "site counts must be positive integers");
                               return profile_rows(sites, pair_entanglement_profile(array_of(
                                                              c, ns, c.kappa, c.kappa_end, c.nbar, c.mbar)));
                             }));
      break;
    case ExperimentId::Fig2c:
      out.table = make_table("nbar", sweep("nbar", c.nbar_grid, policy, [&](double nb) {
                               const double m = std::sqrt(nb * (nb + 1.0));
                               return profile_rows(nb, pair_entanglement_profile(
                                                           array_of(c, n, c.kappa, c.kappa_end, nb, m)));
                             }));
      break;
    case ExperimentId::Fig2d: {
      const auto grid = resolved_mbar_grid(c);
      out.table = make_table("mbar", sweep("mbar", grid, policy, [&](double m) {
                               return profile_rows(m, pair_entanglement_profile(
                                                          array_of(c, n, c.kappa, c.kappa_end, c.nbar, m)));
                             }));
      out.notes.emplace_back("mbar_grid_resolved", format_list(grid));
      break;
    }
    case ExperimentId::Fig2e:
      out.table = make_table("kappa_end", sweep("kappa_end", c.kappa_grid, policy, [&](double k) {
                               return profile_rows(k, pair_entanglement_profile(
                                                          array_of(c, n, c.kappa, k, c.nbar, c.mbar)));
                             }));
      break;
    case ExperimentId::Fig3a: {
      std::vector<Row> rows;
      for (double dxi : c.delta_xi_grid) {
        DisorderSpec spec;
        spec.base = array_of(c, n, c.kappa, c.kappa_end, c.nbar, c.mbar);
        spec.delta_xi = dxi;
        spec.samples = c.samples;
        spec.seed = c.seed;
        DisorderSummary s;
        try {
          s = disorder_sweep(spec, policy);
        } catch (const Error& e) {
          throw Error(e.kind(), "at delta_xi = " + format_number(dxi) + ": " + e.message());
        }
        for (std::size_t j = 0; j < s.mean.pairs.size(); ++j) {
          Row r = base_row(dxi, static_cast<int>(j) + 1, s.mean.pairs[j].raw, s.mean.pairs[j].normalized,
                           s.mean.drive_raw);
          r.push_back(s.min.pairs[j].normalized);
          r.push_back(s.max.pairs[j].normalized);
          r.push_back(s.standard_error[j]);
          rows.push_back(std::move(r));
        }
      }
      out.table = make_table("delta_xi", std::move(rows),
                             {"e_min_normalized", "e_max_normalized", "e_raw_standard_error"});
      break;
    }
    case ExperimentId::Fig3b:
      out = spin_mbar_sweep(c, true);
      break;
    case ExperimentId::Fig3c:
      out = spin_mbar_sweep(c, false);
      break;
    case ExperimentId::Fig5a: {
      const ArrayConfig base = array_of(c, n, c.kappa, c.kappa_end, c.nbar, c.mbar);
      const auto omega = uniform_grid(c.omega_min, c.omega_max, c.omega_points);
      std::vector<KappaPoint> pts;
      try {
        pts = max_out_vs_kappa(base, c.kappa_grid, omega, policy);
      } catch (const Error& e) {
        throw Error(e.kind(), "in kappa_end sweep: " + e.message());
      }
      const double ref = driving_entanglement(c.nbar, c.mbar);
      std::vector<Row> rows;
      for (const auto& p : pts) {
        Row r = base_row(p.kappa, n, p.e_max, normalized_logneg(p.e_max), ref);
        r.push_back(p.omega_at_max);
        rows.push_back(std::move(r));
      }
      out.table = make_table("kappa_end", std::move(rows), {"omega_at_max"});
      break;
    }
    case ExperimentId::Fig5b: {
      const ArrayConfig a = array_of(c, n, c.kappa, c.kappa_end, c.nbar, c.mbar);
      const auto omega = uniform_grid(c.omega_min, c.omega_max, c.omega_points);
      const SpectrumResult s = output_pair_spectrum(a, {n - 1, 2 * n - 1}, omega, policy);
      const double ref = driving_entanglement(c.nbar, c.mbar);
      std::vector<Row> rows;
      for (std::size_t i = 0; i < omega.size(); ++i)
        rows.push_back(base_row(omega[i], n, s.e_out[i], normalized_logneg(s.e_out[i]), ref));
      out.table = make_table("omega", std::move(rows));
      std::vector<double> modes, damped;
      for (int k = 1; k <= n; ++k) modes.push_back(2.0 * c.eta * std::cos(k * M_PI / (n + 1)));
      Eigen::ComplexEigenSolver<ComplexMatrix> es(build_drift(a).m_minus, false);
      for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) damped.push_back(-es.eigenvalues()(i).imag());
      std::sort(damped.begin(), damped.end());
      out.notes.emplace_back("normal_modes", format_list(modes));
      out.notes.emplace_back("damped_mode_frequencies", format_list(damped));
      out.notes.emplace_back("local_maxima", format_list(local_maxima(omega, s.e_out)));
      out.notes.emplace_back("e_max_refined", format_number(s.e_max_refined));
      out.notes.emplace_back("omega_refined", format_number(s.omega_refined));
      break;
    }
    case ExperimentId::Custom: {
      const ArrayConfig a = array_of(c, n, c.kappa, c.kappa_end, c.nbar, c.mbar);
      out.table = make_table("kappa", profile_rows(c.kappa, pair_entanglement_profile(a)));
      break;
    }
  }
  return out;
}

ExperimentOutput run_experiment(const ExperimentConfig& cfg) {
  ExperimentOutput out = compute_experiment(cfg);

  std::vector<std::pair<std::string, std::string>> manifest = config_entries(cfg);
  manifest.emplace_back("rows", std::to_string(out.table.rows.size()));
  manifest.emplace_back("columns", [&] {
    std::string s;
    for (std::size_t i = 0; i < out.table.columns.size(); ++i) s += (i ? ", " : "") + out.table.columns[i];
    return s;
  }());
  for (const auto& note : out.notes) manifest.push_back(note);

  namespace fs = std::filesystem;
  const fs::path csv = cfg.output;
  const fs::path man = cfg.output + ".manifest";
  const fs::path csv_tmp = cfg.output + ".tmp";
  const fs::path man_tmp = cfg.output + ".manifest.tmp";
  auto write = [](const fs::path& p, const std::string& text) {
    std::ofstream f(p, std::ios::binary | std::ios::trunc);
    f << text;
    f.close();
    if (!f) throw Error(ErrorKind::ConfigInvalid, "cannot write " + p.string());
  };
  try {
    write(csv_tmp, out.table.to_csv());
    write(man_tmp, "# resolved parameters\n" + format_key_values(manifest));
    fs::rename(csv_tmp, csv);
    fs::rename(man_tmp, man);
  } catch (...) {
    std::error_code ec;
    fs::remove(csv_tmp, ec);
    fs::remove(man_tmp, ec);
    throw;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Validation suites

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
    case CheckStatus::Info: return "info";
  }
  return "fail";
}

namespace {

CheckResult upper_check(const std::string& name, double value, double tol, std::string detail = {}) {
  return {name, value <= tol ? CheckStatus::Pass : CheckStatus::Fail, value, tol, std::move(detail)};
}

std::string moment_name(const LadderCorrelations& a, const LadderCorrelations& b) {
  const ComplexMatrix* blocks[4][2] = {{&a.mm, &b.mm}, {&a.mp, &b.mp}, {&a.pm, &b.pm}, {&a.pp, &b.pp}};
  const char* left[4] = {"a", "a", "a^dag", "a^dag"};
  const char* right[4] = {"a", "a^dag", "a", "a^dag"};
  double worst = -1.0;
  std::string name;
  for (int blk = 0; blk < 4; ++blk)
    for (Eigen::Index j = 0; j < blocks[blk][0]->rows(); ++j)
      for (Eigen::Index k = 0; k < blocks[blk][0]->cols(); ++k) {
        const double d = std::abs((*blocks[blk][0])(j, k) - (*blocks[blk][1])(j, k));
        if (d > worst) {
          worst = d;
          name = std::string("<") + left[blk] + "_" + std::to_string(j + 1) + " " + right[blk] + "_" +
                 std::to_string(k + 1) + ">";
        }
      }
  return name;
}

SuiteResult skipped(const std::string& name, std::size_t needed, std::size_t budget) {
  SuiteResult s{name, CheckStatus::Skipped, {}};
  s.checks.push_back({"budget", CheckStatus::Skipped, static_cast<double>(needed),
                      static_cast<double>(budget),
                      "needs Hilbert dimension " + std::to_string(needed) + ", budget " + std::to_string(budget)});
  return s;
}

void finish(SuiteResult& s) {
  s.status = CheckStatus::Pass;
  for (const auto& c : s.checks)
    if (c.status == CheckStatus::Fail) s.status = CheckStatus::Fail;
}

template <class F>
void guarded(SuiteResult& s, const std::string& name, F&& f) {
  try {
    f();
  } catch (const std::exception& e) {
    s.checks.push_back({name, CheckStatus::Fail, 0.0, 0.0, e.what()});
  }
}

SuiteResult gaussian_vs_fock(const ValidationOptions& o) {
  const std::vector<int> cutoffs = {8, 10, 12};
  ArrayConfig cfg = ArrayConfig::homogeneous(1, 1.0, 0.0, 1.0, 0.5, std::sqrt(0.75));
  const std::size_t needed = truncated_dimension(cfg, cutoffs.back());
  if (needed > o.budget) return skipped("gaussian_vs_fock", needed, o.budget);
  SuiteResult s{"gaussian_vs_fock", CheckStatus::Pass, {}};
  guarded(s, "moments", [&] {
    const FieldDrift drift = build_drift(cfg);
    RealMatrix d = build_diffusion(cfg);
    if (o.inject_fault == "diffusion-sign") {
      d.block(0, 2, 2, 2) *= -1.0;
      d.block(2, 0, 2, 2) *= -1.0;
    }
    const LadderCorrelations gauss = ladder_correlations_from_cm(solve_lyapunov(DriftDiffusion(drift.a, d)));
    double previous = std::numeric_limits<double>::infinity();
    bool monotone = true;
    for (int n_max : cutoffs) {
      const FockOracleResult r = solve_truncated(cfg, n_max);
      const double diff = max_moment_difference(r.moments, gauss);
      monotone = monotone && diff < previous;
      previous = diff;
      CheckResult c = upper_check("max_moment_difference_nmax_" + std::to_string(n_max), diff, 1e-3,
                                  "largest mismatch in " + moment_name(r.moments, gauss));
      if (n_max != cutoffs.back()) c.status = CheckStatus::Info;
      s.checks.push_back(c);
    }
    s.checks.push_back({"monotone_in_cutoff", monotone ? CheckStatus::Pass : CheckStatus::Fail,
                        monotone ? 1.0 : 0.0, 1.0, "difference decreases as n_max grows"});
  });
  finish(s);
  return s;
}

SuiteResult effective_vs_full(const ValidationOptions& o) {
  ArrayConfig cfg = ArrayConfig::homogeneous(1, 1.0, 0.0, 1.0, 1.0, 1.2);
  cfg.g = {0.01};
  const int cutoff = default_cutoff(cfg.nbar);
  const std::size_t needed = truncated_dimension(cfg, cutoff + 2);
  if (needed > o.budget) return skipped("effective_vs_full", needed, o.budget);
  SuiteResult s{"effective_vs_full", CheckStatus::Pass, {}};
  for (double m : {1.2, std::sqrt(2.0)}) {
    const std::string tag = "mbar_" + format_number(m);
    guarded(s, tag, [&] {
      cfg.mbar = m;
      TruncationSpec spec;
      spec.cfg = cfg;
      spec.frame = FockFrame::Squeezed;
      spec.dimension_budget = o.budget;
      const FockOracleResult full = full_cavity_atom_oracle(spec);
      const SteadyState eff = steady_state_dm(build_effective_general(cfg).generator);
      s.checks.push_back(upper_check("trace_distance_" + tag,
                                     trace_distance(full.atom_pairs[0].matrix(), eff.rho.matrix()), 1e-2,
                                     "cutoff shift " + format_number(full.convergence_shift)));
    });
  }
  finish(s);
  return s;
}

SuiteResult closed_form_vs_general(const ValidationOptions& o) {
  const std::size_t needed = std::size_t{1} << 6;
  if (needed > o.budget) return skipped("closed_form_vs_general", needed, o.budget);
  SuiteResult s{"closed_form_vs_general", CheckStatus::Pass, {}};
  struct Case { int n; double eta; double zeta; };
  for (const Case c : {Case{2, 1.0, 1.0}, Case{3, 1.0, 1.0}, Case{2, 1.3, 0.5}, Case{3, 1.3, 0.5}}) {
    const std::string tag = "N" + std::to_string(c.n) + "_eta" + format_number(c.eta) + "_zeta" + format_number(c.zeta);
    guarded(s, tag, [&] {
      const double g = 0.01 * c.eta;
      ArrayConfig cfg = ArrayConfig::homogeneous(c.n, c.eta, 0.0, c.zeta, 1.0, 1.2);
      cfg.g.assign(c.n, g);
      const EffectiveModel general = build_effective_general(cfg);
      const Parity p = parity_of(c.n);
      const ClosedFormParameters par = closed_form_parameters(g, c.eta, c.zeta, p);
      const EffectiveModel closed = build_effective_closed_form(c.n, p, par.j_rate, par.gamma, 1.0, 1.2);
      s.checks.push_back(upper_check("distance_" + tag, generator_distance(closed.generator, general.generator),
                                     0.02, "Hermitian closed form vs general construction"));
      const EffectiveModel printed = build_effective_closed_form(c.n, p, par.j_rate, par.gamma, 1.0, 1.2,
                                                                 ClosedFormVariant::AsPrinted);
      s.checks.push_back({"as_printed_distance_" + tag, CheckStatus::Info,
                          generator_distance(printed.generator, general.generator), 0.02,
                          "complex W kept in the jump term"});
      const Parity other = p == Parity::Even ? Parity::Odd : Parity::Even;
      const ClosedFormParameters pw = closed_form_parameters(g, c.eta, c.zeta, other);
      const EffectiveModel wrong = build_effective_closed_form(c.n, other, pw.j_rate, pw.gamma, 1.0, 1.2);
      s.checks.push_back({"other_parity_distance_" + tag, CheckStatus::Info,
                          generator_distance(wrong.generator, general.generator), 0.02,
                          "parity label not matching N"});
    });
  }
  finish(s);
  return s;
}

SuiteResult fixed_point(const ValidationOptions& o) {
  const std::size_t needed = std::size_t{1} << 6;
  if (needed > o.budget) return skipped("fixed_point", needed, o.budget);
  SuiteResult s{"fixed_point", CheckStatus::Pass, {}};
  for (double nb : {0.5, 1.0}) {
    const std::string tag = "xx_N3_nbar" + format_number(nb);
    guarded(s, tag, [&] {
      const double m = std::sqrt(nb * (nb + 1.0));
      const SteadyState ss = steady_state_dm(build_xx_liouvillian(3, {1.0, 1.0}, 1.0, nb, m));
      s.checks.push_back(upper_check("infidelity_" + tag, 1.0 - fidelity(replicated_state(nb, 3), ss.rho), 1e-8));
    });
  }
  guarded(s, "effective_N1", [&] {
    ArrayConfig cfg = ArrayConfig::homogeneous(1, 1.0, 0.0, 1.0, 1.0, std::sqrt(2.0));
    cfg.g = {0.01};
    const SteadyState ss = steady_state_dm(build_effective_general(cfg).generator);
    s.checks.push_back(upper_check("infidelity_effective_N1", 1.0 - fidelity(replicated_state(1.0, 1), ss.rho), 1e-6));
  });
  finish(s);
  return s;
}

nlohmann::ordered_json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace

std::vector<std::string> validation_suites() {
  return {"gaussian_vs_fock", "effective_vs_full", "closed_form_vs_general", "fixed_point"};
}

std::vector<SuiteResult> validate(const std::string& name, const ValidationOptions& options) {
  std::vector<SuiteResult> out;
  bool matched = false;
  for (const auto& suite : validation_suites()) {
    if (name != "all" && name != suite) continue;
    matched = true;
    if (suite == "gaussian_vs_fock") out.push_back(gaussian_vs_fock(options));
    if (suite == "effective_vs_full") out.push_back(effective_vs_full(options));
    if (suite == "closed_form_vs_general") out.push_back(closed_form_vs_general(options));
    if (suite == "fixed_point") out.push_back(fixed_point(options));
  }
  if (!matched) {
    SuiteResult s{name, CheckStatus::Fail, {}};
    s.checks.push_back({"suite", CheckStatus::Fail, 0.0, 0.0, "unknown suite"});
    out.push_back(s);
  }
  return out;
}

std::string report_json(const std::vector<SuiteResult>& suites) {
  nlohmann::ordered_json doc;
  doc["suites"] = nlohmann::ordered_json::array();
  int pass = 0, fail = 0, skip = 0;
  for (const auto& s : suites) {
    if (s.status == CheckStatus::Pass) ++pass;
    if (s.status == CheckStatus::Fail) ++fail;
    if (s.status == CheckStatus::Skipped) ++skip;
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : s.checks)
      checks.push_back({{"name", c.name},
                        {"status", to_string(c.status)},
                        {"value", json_number(c.value)},
                        {"tolerance", json_number(c.tolerance)},
                        {"detail", c.detail}});
    doc["suites"].push_back({{"name", s.name}, {"status", to_string(s.status)}, {"checks", checks}});
  }
  doc["summary"] = {{"pass", pass}, {"fail", fail}, {"skipped", skip}};
  return doc.dump(2) + "\n";
}

}  // namespace replication
