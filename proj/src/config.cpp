#include "replication/error.hpp"
#include "replication/experiments.hpp"
#include "replication/output_spectrum.hpp"

#include <cmath>
#include <functional>
#include <iomanip>
#include <locale>
#include <sstream>

namespace replication {

namespace {

const std::vector<std::pair<ExperimentId, std::string>>& experiment_names() {
  static const std::vector<std::pair<ExperimentId, std::string>> names = {
      {ExperimentId::Fig2a, "fig2a"}, {ExperimentId::Fig2b, "fig2b"}, {ExperimentId::Fig2c, "fig2c"},
      {ExperimentId::Fig2d, "fig2d"}, {ExperimentId::Fig2e, "fig2e"}, {ExperimentId::Fig3a, "fig3a"},
      {ExperimentId::Fig3b, "fig3b"}, {ExperimentId::Fig3c, "fig3c"}, {ExperimentId::Fig5a, "fig5a"},
      {ExperimentId::Fig5b, "fig5b"}, {ExperimentId::Custom, "custom"}};
  return names;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  std::istringstream in(v);
  in.imbue(std::locale::classic());
  double x = 0.0;
  in >> x;
  if (in.fail() || !in.eof())
    throw Error(ErrorKind::ConfigInvalid, "key '" + key + "': not a number: '" + v + "'");
  return x;
}

long long parse_integer(const std::string& key, const std::string& v) {
  const double x = parse_double(key, v);
  if (x != std::floor(x) || std::abs(x) > 9e15)
    throw Error(ErrorKind::ConfigInvalid, "key '" + key + "': not an integer: '" + v + "'");
  return static_cast<long long>(x);
}

std::vector<double> parse_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  if (trim(v).empty()) return out;
  std::istringstream in(v);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_double(key, trim(item)));
  return out;
}

std::string format_list(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += format_number(v[i]);
  }
  return s;
}

struct Field {
  const char* key;
  const char* doc;
  std::function<void(ExperimentConfig&, const std::string&)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

template <typename T>
Field number_field(const char* key, const char* doc, T ExperimentConfig::*member) {
  return Field{key, doc,
               [key, member](ExperimentConfig& c, const std::string& v) {
                 if constexpr (std::is_floating_point_v<T>)
                   c.*member = parse_double(key, v);
                 else
                   c.*member = static_cast<T>(parse_integer(key, v));
               },
               [member](const ExperimentConfig& c) {
                 if constexpr (std::is_floating_point_v<T>)
                   return format_number(c.*member);
                 else
                   return std::to_string(c.*member);
               }};
}

Field list_field(const char* key, const char* doc, std::vector<double> ExperimentConfig::*member) {
  return Field{key, doc,
               [key, member](ExperimentConfig& c, const std::string& v) { c.*member = parse_list(key, v); },
               [member](const ExperimentConfig& c) { return format_list(c.*member); }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> f = {
      Field{"experiment", "fig2a|fig2b|fig2c|fig2d|fig2e|fig3a|fig3b|fig3c|fig5a|fig5b|custom",
            [](ExperimentConfig& c, const std::string& v) { c.id = parse_experiment(v); },
            [](const ExperimentConfig& c) { return to_string(c.id); }},
      number_field("n_sites", "cavities per array N", &ExperimentConfig::n_sites),
      number_field("eta", "homogeneous hopping eta (eta_0 for disorder)", &ExperimentConfig::eta),
      number_field("kappa", "decay rate of every cavity", &ExperimentConfig::kappa),
      number_field("kappa_end", "decay rate of cavities N and 2N; negative: same as kappa",
                   &ExperimentConfig::kappa_end),
      number_field("zeta", "reservoir coupling of the driven pair", &ExperimentConfig::zeta),
      number_field("nbar", "reservoir occupation", &ExperimentConfig::nbar),
      number_field("mbar", "reservoir inter-mode correlation", &ExperimentConfig::mbar),
      number_field("g", "atom-cavity coupling", &ExperimentConfig::g),
      number_field("spin_gamma", "XX chain reservoir rate gamma", &ExperimentConfig::spin_gamma),
      number_field("spin_coupling", "XX chain coupling J_j", &ExperimentConfig::spin_coupling),
      list_field("kappa_grid", "swept decay rates (all cavities, or end cavities for fig2e/fig5a)",
                 &ExperimentConfig::kappa_grid),
      list_field("sites_grid", "swept N (fig2b)", &ExperimentConfig::sites_grid),
      list_field("nbar_grid", "swept nbar with mbar = sqrt(nbar (nbar + 1)) (fig2c)",
                 &ExperimentConfig::nbar_grid),
      list_field("mbar_grid", "swept mbar; empty: 25 points on [nbar, sqrt(nbar (nbar + 1))]",
                 &ExperimentConfig::mbar_grid),
      list_field("delta_xi_grid", "disorder widths (fig3a)", &ExperimentConfig::delta_xi_grid),
      number_field("samples", "disorder realizations", &ExperimentConfig::samples),
      number_field("omega_min", "lower end of the frequency grid", &ExperimentConfig::omega_min),
      number_field("omega_max", "upper end of the frequency grid", &ExperimentConfig::omega_max),
      number_field("omega_points", "frequency grid size", &ExperimentConfig::omega_points),
      Field{"seed", "disorder seed (unsigned 64-bit)",
            [](ExperimentConfig& c, const std::string& v) {
              try {
                std::size_t pos = 0;
                if (v.empty() || v.front() < '0' || v.front() > '9') throw std::invalid_argument(v);
                c.seed = std::stoull(v, &pos);
                if (pos != v.size()) throw std::invalid_argument(v);
              } catch (const std::exception&) {
                throw Error(ErrorKind::ConfigInvalid, "key 'seed': not an unsigned integer: '" + v + "'");
              }
            },
            [](const ExperimentConfig& c) { return std::to_string(c.seed); }},
      number_field("workers", "worker threads; 0: all available", &ExperimentConfig::workers),
      Field{"output", "CSV path; the manifest goes to <output>.manifest",
            [](ExperimentConfig& c, const std::string& v) { c.output = v; },
            [](const ExperimentConfig& c) { return c.output; }},
  };
  return f;
}

}  // namespace

std::string to_string(ExperimentId id) {
  for (const auto& [k, name] : experiment_names())
    if (k == id) return name;
  return "custom";
}

ExperimentId parse_experiment(const std::string& name) {
  for (const auto& [k, n] : experiment_names())
    if (n == name) return k;
  throw Error(ErrorKind::ConfigInvalid, "unknown experiment '" + name + "'");
}

std::vector<ExperimentId> all_experiments() {
  std::vector<ExperimentId> out;
  for (const auto& entry : experiment_names()) out.push_back(entry.first);
  return out;
}

std::string format_number(double v) {
  std::ostringstream out;
  out.imbue(std::locale::classic());
  out << std::setprecision(12) << v;
  return out.str();
}

ExperimentConfig default_config(ExperimentId id) {
  const double sq2 = std::sqrt(2.0);
  ExperimentConfig c;
  c.id = id;
  c.eta = 1.0;
  c.zeta = 1.0;
  c.nbar = 1.0;
  c.mbar = sq2;
  c.kappa_end = -1.0;
  switch (id) {
    case ExperimentId::Fig2a:
      c.n_sites = 20;
      c.kappa_grid = {0.0, 0.02, 0.1};
      break;
    case ExperimentId::Fig2b:
      c.kappa = 0.1;
      c.n_sites = 30;
      for (int n = 2; n <= 30; ++n) c.sites_grid.push_back(n);
      break;
    case ExperimentId::Fig2c:
      c.n_sites = 10;
      c.kappa = 0.1;
      c.nbar_grid = uniform_grid(0.0, 3.0, 25);
      break;
    case ExperimentId::Fig2d:
      c.n_sites = 10;
      c.kappa = 0.1;
      break;
    case ExperimentId::Fig2e:
      c.n_sites = 10;
      c.kappa = 0.0;
      c.kappa_grid = log_grid(1e-2, 1e2, 31);
      break;
    case ExperimentId::Fig3a:
      c.n_sites = 10;
      c.kappa = 0.02;
      c.delta_xi_grid = {0.0, 0.2, 0.5};
      c.samples = 500;
      break;
    case ExperimentId::Fig3b:
      c.n_sites = 3;
      c.kappa = 0.0;
      c.g = 0.01;
      break;
    case ExperimentId::Fig3c:
      c.n_sites = 3;
      c.spin_gamma = 1.0;
      c.spin_coupling = 1.0;
      break;
    case ExperimentId::Fig5a:
      c.n_sites = 10;
      c.kappa = 0.0;
      c.zeta = 0.5;
      c.kappa_grid = log_grid(1e-2, 1e2, 31);
      break;
    case ExperimentId::Fig5b:
      c.n_sites = 10;
      c.kappa = 0.0;
      c.kappa_end = 0.4;
      c.zeta = 0.5;
      break;
    case ExperimentId::Custom:
      c.n_sites = 10;
      c.kappa = 0.1;
      break;
  }
  return c;
}

KeyValues parse_key_values(const std::string& text) {
  KeyValues kv;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorKind::ConfigInvalid, "line " + std::to_string(number) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw Error(ErrorKind::ConfigInvalid, "line " + std::to_string(number) + ": empty key");
    if (kv.count(key))
      throw Error(ErrorKind::ConfigInvalid, "line " + std::to_string(number) + ": duplicate key '" + key + "'");
    kv[key] = trim(line.substr(eq + 1));
  }
  return kv;
}

std::string format_key_values(const std::vector<std::pair<std::string, std::string>>& entries) {
  std::string out;
  for (const auto& [k, v] : entries) out += k + " = " + v + "\n";
  return out;
}

void apply_overrides(ExperimentConfig& cfg, const KeyValues& kv) {
  for (const auto& [key, value] : kv) {
    if (key == "experiment") continue;
    bool found = false;
    for (const auto& f : fields())
      if (key == f.key) {
        f.set(cfg, value);
        found = true;
        break;
      }
    if (!found) throw Error(ErrorKind::ConfigInvalid, "unknown key '" + key + "'");
  }
}

ExperimentConfig config_from_key_values(const KeyValues& kv, ExperimentId fallback) {
  const auto it = kv.find("experiment");
  ExperimentConfig cfg = default_config(it == kv.end() ? fallback : parse_experiment(it->second));
  apply_overrides(cfg, kv);
  return cfg;
}

std::vector<std::pair<std::string, std::string>> config_entries(const ExperimentConfig& cfg) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& f : fields()) out.emplace_back(f.key, f.get(cfg));
  return out;
}

std::vector<std::pair<std::string, std::string>> config_schema() {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& f : fields()) out.emplace_back(f.key, f.doc);
  return out;
}

}  // namespace replication
