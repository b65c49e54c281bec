#include "replication/fock_oracle.hpp"

#include "replication/error.hpp"
#include "replication/spin_models.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace replication {

namespace {

constexpr double kMomentTolerance = 1e-3;

// Tr(rho op) for a sparse operator.
Complex expectation(const ComplexMatrix& rho, const SparseMatrix& op) {
  Complex acc = 0.0;
  for (int k = 0; k < op.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(op, k); it; ++it) acc += it.value() * rho(it.col(), it.row());
  return acc;
}

struct Register {
  std::vector<int> dims;
  std::vector<SparseMatrix> a;      // 2N field modes
  std::vector<SparseMatrix> sigma;  // 2N atoms, empty without atoms
  std::vector<int> charges;
};

Register make_register(const ArrayConfig& cfg, int n_max, FockFrame frame) {
  const int modes = cfg.n_modes();
  const bool atoms = cfg.has_atoms();
  Register reg;
  reg.dims.assign(modes, n_max + 1);
  if (atoms) reg.dims.insert(reg.dims.end(), modes, 2);
  const SparseMatrix a = boson_annihilation(n_max);
  for (int j = 0; j < modes; ++j) reg.a.push_back(embed(a, j, reg.dims));
  if (frame == FockFrame::Squeezed) {
    const double r = frame_squeezing(cfg);
    const SparseMatrix b0 = reg.a[0], bn = reg.a[cfg.n_sites];
    reg.a[0] = std::cosh(r) * b0 - std::sinh(r) * SparseMatrix(bn.adjoint());
    reg.a[cfg.n_sites] = std::cosh(r) * bn - std::sinh(r) * SparseMatrix(b0.adjoint());
  }
  if (atoms)
    for (int j = 0; j < modes; ++j) reg.sigma.push_back(embed(qubit_lowering(), modes + j, reg.dims));

  Eigen::Index total = 1;
  for (int d : reg.dims) total *= d;
  reg.charges.assign(static_cast<std::size_t>(total), 0);
  const int n = static_cast<int>(reg.dims.size());
  std::vector<int> digit(n);
  for (Eigen::Index idx = 0; idx < total; ++idx) {
    Eigen::Index rem = idx;
    for (int s = n - 1; s >= 0; --s) {
      digit[s] = static_cast<int>(rem % reg.dims[s]);
      rem /= reg.dims[s];
    }
    int q = 0;
    for (int s = 0; s < n; ++s) {
      const int site = s < modes ? s : s - modes;
      // Qubit digit 1 is the excited level.
      q += site < cfg.n_sites ? digit[s] : -digit[s];
    }
    reg.charges[idx] = q;
  }
  return reg;
}

}  // namespace

void TruncationSpec::validate() const {
  cfg.validate();
  const int cutoff = n_max == 0 ? default_cutoff(cfg.nbar) : n_max;
  if (cutoff < 3.0 * std::max(cfg.nbar, 1.0))
    throw Error(ErrorKind::ConfigInvalid,
                "Fock cutoff " + std::to_string(cutoff) + " below 3 max(nbar, 1)");
  const int checked = check_convergence ? cutoff + 2 : cutoff;
  const std::size_t dim = truncated_dimension(cfg, checked);
  if (dim > dimension_budget)
    throw Error(ErrorKind::DimensionBudgetExceeded,
                "truncated dimension " + std::to_string(dim) + " exceeds budget " +
                    std::to_string(dimension_budget));
}

int default_cutoff(double nbar) {
  return std::max(8, static_cast<int>(std::ceil(3.0 * (nbar + 1.0))));
}

std::size_t truncated_dimension(const ArrayConfig& cfg, int n_max) {
  double dim = std::pow(static_cast<double>(n_max + 1), cfg.n_modes());
  if (cfg.has_atoms()) dim *= std::pow(2.0, cfg.n_modes());
  if (dim > 1e15) return static_cast<std::size_t>(1e15);
  return static_cast<std::size_t>(dim);
}

double frame_squeezing(const ArrayConfig& cfg) {
  return 0.5 * std::atanh(cfg.mbar / (cfg.nbar + 0.5));
}

Liouvillian build_full_liouvillian(const ArrayConfig& cfg, int n_max, FockFrame frame) {
  cfg.validate();
  const Register reg = make_register(cfg, n_max, frame);
  const int n = cfg.n_sites;
  Liouvillian l(static_cast<Eigen::Index>(reg.charges.size()), reg.charges);

  SparseMatrix h(l.dim(), l.dim());
  for (int array = 0; array < 2; ++array)
    for (int j = 0; j + 1 < n; ++j) {
      const int p = array * n + j;
      SparseMatrix hop = SparseMatrix(reg.a[p].adjoint()) * reg.a[p + 1];
      h += cfg.bond(array, j) * (hop + SparseMatrix(hop.adjoint()));
    }
  if (!reg.sigma.empty())
    for (int p = 0; p < 2 * n; ++p) {
      SparseMatrix x = SparseMatrix(reg.sigma[p].adjoint()) * reg.a[p];
      h += cfg.g[p % n] * (x + SparseMatrix(x.adjoint()));
    }
  l.add_hamiltonian(h);
  for (int p = 0; p < 2 * n; ++p)
    if (cfg.kappa[p] > 0.0) l.add_dissipator(reg.a[p], cfg.kappa[p]);
  add_squeezed_reservoir(l, reg.a[0], reg.a[n], cfg.zeta, cfg.nbar, cfg.mbar);
  return l;
}

FockOracleResult solve_truncated(const ArrayConfig& cfg, int n_max, FockFrame frame) {
  const Register reg = make_register(cfg, n_max, frame);
  const Liouvillian l = build_full_liouvillian(cfg, n_max, frame);
  const SteadyState ss = steady_state_dm(l);
  const ComplexMatrix& rho = ss.rho.matrix();

  const int modes = cfg.n_modes();
  FockOracleResult out;
  out.n_max = n_max;
  out.residual = ss.residual;
  out.moments.mm.resize(modes, modes);
  out.moments.mp.resize(modes, modes);
  out.moments.pm.resize(modes, modes);
  out.moments.pp.resize(modes, modes);
  for (int j = 0; j < modes; ++j) {
    const SparseMatrix aj = reg.a[j], dj = reg.a[j].adjoint();
    for (int k = 0; k < modes; ++k) {
      const SparseMatrix ak = reg.a[k], dk = reg.a[k].adjoint();
      out.moments.mm(j, k) = expectation(rho, aj * ak);
      out.moments.mp(j, k) = expectation(rho, aj * dk);
      out.moments.pm(j, k) = expectation(rho, dj * ak);
      out.moments.pp(j, k) = expectation(rho, dj * dk);
    }
  }
  if (reg.sigma.empty()) {
    ComplexMatrix ground = ComplexMatrix::Zero(4, 4);
    ground(0, 0) = 1.0;
    out.atom_pairs.assign(cfg.n_sites, DensityMatrix(ground));
  } else {
    for (int j = 0; j < cfg.n_sites; ++j)
      out.atom_pairs.emplace_back(partial_trace(rho, reg.dims, {modes + j, modes + cfg.n_sites + j}));
  }
  return out;
}

double max_moment_difference(const LadderCorrelations& a, const LadderCorrelations& b) {
  return std::max({(a.mm - b.mm).cwiseAbs().maxCoeff(), (a.mp - b.mp).cwiseAbs().maxCoeff(),
                   (a.pm - b.pm).cwiseAbs().maxCoeff(), (a.pp - b.pp).cwiseAbs().maxCoeff()});
}

FockOracleResult full_cavity_atom_oracle(const TruncationSpec& spec) {
  spec.validate();
  const int cutoff = spec.n_max == 0 ? default_cutoff(spec.cfg.nbar) : spec.n_max;
  FockOracleResult out = solve_truncated(spec.cfg, cutoff, spec.frame);
  if (spec.check_convergence) {
    const FockOracleResult finer = solve_truncated(spec.cfg, cutoff + 2, spec.frame);
    out.convergence_shift = max_moment_difference(out.moments, finer.moments);
    if (out.convergence_shift > kMomentTolerance)
      throw Error(ErrorKind::TruncationUnconverged,
                  "moments move by " + std::to_string(out.convergence_shift) +
                      " between cutoffs " + std::to_string(cutoff) + " and " +
                      std::to_string(cutoff + 2));
  }
  return out;
}

}  // namespace replication
