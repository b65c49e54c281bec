#include "replication/cavity_array.hpp"

#include "replication/error.hpp"
#include "replication/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace replication {

ArrayConfig ArrayConfig::homogeneous(int n_sites, double eta, double kappa, double zeta,
                                     double nbar, double mbar) {
  ArrayConfig cfg;
  cfg.n_sites = n_sites;
  const auto bonds = static_cast<std::size_t>(std::max(0, n_sites - 1));
  cfg.eta_one.assign(bonds, eta);
  cfg.eta_two.assign(bonds, eta);
  cfg.kappa.assign(static_cast<std::size_t>(std::max(0, 2 * n_sites)), kappa);
  cfg.zeta = zeta;
  cfg.nbar = nbar;
  cfg.mbar = mbar;
  return cfg;
}

bool ArrayConfig::has_atoms() const {
  return std::any_of(g.begin(), g.end(), [](double x) { return x != 0.0; });
}

ArrayConfig ArrayConfig::without_atoms() const {
  ArrayConfig out = *this;
  out.g.clear();
  return out;
}

ArrayConfig ArrayConfig::swapped_arrays() const {
  ArrayConfig out = *this;
  std::swap(out.eta_one, out.eta_two);
  const auto n = static_cast<std::size_t>(n_sites);
  for (std::size_t j = 0; j < n; ++j) std::swap(out.kappa[j], out.kappa[j + n]);
  return out;
}

void ArrayConfig::validate() const {
  auto fail = [](const char* what) { throw Error(ErrorKind::ConfigInvalid, what); };
  if (n_sites < 1) fail("n_sites must be at least 1");
  const auto bonds = static_cast<std::size_t>(n_sites - 1);
  if (eta_one.size() != bonds || eta_two.size() != bonds) fail("each array needs N - 1 couplings");
  if (kappa.size() != 2 * static_cast<std::size_t>(n_sites)) fail("kappa needs 2N entries");
  if (!g.empty() && g.size() != static_cast<std::size_t>(n_sites)) fail("g needs N entries");
  auto nonneg = [](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return x >= 0.0 && std::isfinite(x); });
  };
  if (!nonneg(eta_one) || !nonneg(eta_two) || !nonneg(kappa) || !nonneg(g)) {
    fail("rates must be finite and nonnegative");
  }
  if (!(zeta >= 0.0) || !(nbar >= 0.0) || !(mbar >= 0.0)) fail("zeta, nbar, mbar must be nonnegative");
  if (mbar > std::sqrt(nbar * (nbar + 1.0)) + 1e-12) fail("mbar exceeds sqrt(nbar (nbar + 1))");
}

RealMatrix quadrature_embedding(const ComplexMatrix& m) {
  const Eigen::Index n = m.rows();
  RealMatrix a(2 * n, 2 * n);
  for (Eigen::Index j = 0; j < n; ++j) {
    for (Eigen::Index k = 0; k < n; ++k) {
      const double re = m(j, k).real();
      const double im = m(j, k).imag();
      a(2 * j, 2 * k) = re;
      a(2 * j, 2 * k + 1) = -im;
      a(2 * j + 1, 2 * k) = im;
      a(2 * j + 1, 2 * k + 1) = re;
    }
  }
  return a;
}

FieldDrift build_drift(const ArrayConfig& cfg) {
  cfg.validate();
  if (cfg.has_atoms()) {
    throw Error(ErrorKind::ConfigInvalid, "Gaussian drift requires a configuration without atoms");
  }
  const int n = cfg.n_sites;
  const Complex minus_i(0.0, -1.0);
  ComplexMatrix m = ComplexMatrix::Zero(2 * n, 2 * n);
  for (int array = 0; array < 2; ++array) {
    const int offset = array * n;
    for (int j = 0; j + 1 < n; ++j) {
      const double eta = cfg.bond(array, j);
      m(offset + j, offset + j + 1) = minus_i * eta;
      m(offset + j + 1, offset + j) = minus_i * eta;
    }
  }
  for (int j = 0; j < 2 * n; ++j) m(j, j) = -cfg.kappa[static_cast<std::size_t>(j)];
  m(0, 0) -= cfg.zeta;
  m(n, n) -= cfg.zeta;

  FieldDrift out;
  out.a = quadrature_embedding(m);
  out.m_plus = m.conjugate();
  out.m_minus = std::move(m);
  return out;
}

RealMatrix build_diffusion(const ArrayConfig& cfg) {
  cfg.validate();
  if (cfg.has_atoms()) {
    throw Error(ErrorKind::ConfigInvalid, "Gaussian diffusion requires a configuration without atoms");
  }
  const int n = cfg.n_sites;
  RealMatrix d = RealMatrix::Zero(4 * n, 4 * n);
  for (int j = 0; j < 2 * n; ++j) {
    const double rate = 2.0 * cfg.kappa[static_cast<std::size_t>(j)];
    d(2 * j, 2 * j) += rate;
    d(2 * j + 1, 2 * j + 1) += rate;
  }
  const double thermal = 2.0 * cfg.zeta * (2.0 * cfg.nbar + 1.0);
  for (int j : {0, n}) {
    d(2 * j, 2 * j) += thermal;
    d(2 * j + 1, 2 * j + 1) += thermal;
  }
  // The cross term of the reservoir sources d<a_1 a_{N+1}>/dt = -2 zeta m, so
  // the steady correlation is <a_1 a_{N+1}> = -m.
  const double cross = 4.0 * cfg.zeta * cfg.mbar;
  const int x1 = 0, p1 = 1, x2 = 2 * n, p2 = 2 * n + 1;
  d(x1, x2) = d(x2, x1) = -cross;
  d(p1, p2) = d(p2, p1) = cross;
  return d;
}

QuadratureCovariance steady_state(const ArrayConfig& cfg) {
  const FieldDrift drift = build_drift(cfg);
  return solve_lyapunov(DriftDiffusion(drift.a, build_diffusion(cfg)));
}

EntanglementProfile pair_entanglement_profile(const QuadratureCovariance& sigma,
                                              const ArrayConfig& cfg) {
  const int n = cfg.n_sites;
  EntanglementProfile profile;
  profile.pairs.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double e = log_negativity_gaussian(reduce_to_pair(sigma, j, n + j));
    profile.pairs.push_back({j, e, normalized_logneg(e)});
  }
  const double nu = 2.0 * cfg.nbar + 1.0 - 2.0 * cfg.mbar;
  profile.drive_raw = std::max(0.0, -std::log2(nu));
  profile.drive_normalized = normalized_logneg(profile.drive_raw);
  return profile;
}

EntanglementProfile pair_entanglement_profile(const ArrayConfig& cfg) {
  return pair_entanglement_profile(steady_state(cfg), cfg);
}

void DisorderSpec::validate() const {
  base.validate();
  if (samples < 1) throw Error(ErrorKind::ConfigInvalid, "samples must be at least 1");
  const double eta0 = base.n_sites > 1 ? base.eta_one.front() : 0.0;
  auto homogeneous = [eta0](const std::vector<double>& v) {
    return std::all_of(v.begin(), v.end(), [eta0](double x) { return x == eta0; });
  };
  if (!homogeneous(base.eta_one) || !homogeneous(base.eta_two)) {
    throw Error(ErrorKind::ConfigInvalid, "disorder base must have homogeneous couplings");
  }
  if (!(delta_xi >= 0.0) || (base.n_sites > 1 && delta_xi >= eta0)) {
    throw Error(ErrorKind::ConfigInvalid, "delta_xi must satisfy 0 <= delta_xi < eta_0");
  }
}

ArrayConfig disorder_realization(const DisorderSpec& spec, int sample) {
  ArrayConfig cfg = spec.base;
  SplitMix64 rng(stream_seed(spec.seed, static_cast<std::uint64_t>(sample)));
  for (auto* bonds : {&cfg.eta_one, &cfg.eta_two}) {
    for (double& eta : *bonds) eta += spec.delta_xi * (rng.uniform() - 0.5);
  }
  return cfg;
}

DisorderSummary disorder_sweep(const DisorderSpec& spec, const ExecutionPolicy& policy) {
  spec.validate();
  const auto samples = static_cast<std::size_t>(spec.samples);
  std::vector<EntanglementProfile> profiles(samples);
  for_each_index(samples, policy, [&](std::size_t s) {
    profiles[s] = pair_entanglement_profile(disorder_realization(spec, static_cast<int>(s)));
  });

  const auto n = static_cast<std::size_t>(spec.base.n_sites);
  DisorderSummary out;
  out.mean = out.min = out.max = profiles.front();
  out.standard_error.assign(n, 0.0);
  // Offsets from the first sample keep identical draws bit-exact.
  const auto& first = profiles.front().pairs;
  std::vector<double> dev_raw(n, 0.0), dev_norm(n, 0.0);
  for (const auto& p : profiles) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto& v = p.pairs[j];
      dev_raw[j] += v.raw - first[j].raw;
      dev_norm[j] += v.normalized - first[j].normalized;
      auto& lo = out.min.pairs[j];
      auto& hi = out.max.pairs[j];
      if (v.raw < lo.raw) lo = v;
      if (v.raw > hi.raw) hi = v;
    }
  }
  const double count = static_cast<double>(samples);
  for (std::size_t j = 0; j < n; ++j) {
    const double mean = first[j].raw + dev_raw[j] / count;
    out.mean.pairs[j].raw = mean;
    out.mean.pairs[j].normalized = first[j].normalized + dev_norm[j] / count;
    if (samples > 1) {
      double ss = 0.0;
      for (const auto& p : profiles) ss += (p.pairs[j].raw - mean) * (p.pairs[j].raw - mean);
      out.standard_error[j] = std::sqrt(ss / (count - 1.0) / count);
    }
  }
  return out;
}

}  // namespace replication
