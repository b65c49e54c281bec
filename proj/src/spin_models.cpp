#include "replication/spin_models.hpp"

#include "replication/error.hpp"
#include "replication/output_spectrum.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace replication {

namespace {

void check_reservoir(double nbar, double mbar) {
  if (!(nbar >= 0.0)) throw Error(ErrorKind::ConfigInvalid, "nbar must be >= 0");
  if (std::abs(mbar) > std::sqrt(nbar * (nbar + 1.0)) + 1e-12)
    throw Error(ErrorKind::OverSqueezed, "|mbar| exceeds sqrt(nbar (nbar + 1))");
}

void check_pairs(int n_sites, int limit) {
  if (n_sites < 1) throw Error(ErrorKind::ConfigInvalid, "need at least one pair");
  if (n_sites > limit)
    throw Error(ErrorKind::DimensionBudgetExceeded,
                "spin register of " + std::to_string(n_sites) + " pairs exceeds the limit of " +
                    std::to_string(limit));
}

// sbar_alpha for alpha in [0, 4N).
std::vector<SparseMatrix> bar_operators(int n_sites) {
  const int n_qubits = 2 * n_sites;
  std::vector<SparseMatrix> ops(2 * n_qubits);
  for (int q = 0; q < n_qubits; ++q) {
    ops[q + n_qubits] = qubit_lowering_at(q, n_qubits);
    ops[q] = ops[q + n_qubits].adjoint();
  }
  return ops;
}

}  // namespace

SparseMatrix qubit_lowering_at(int q, int n_qubits) {
  return embed(qubit_lowering(), q, std::vector<int>(n_qubits, 2));
}

std::vector<int> spin_charges(int n_sites) {
  const int n_qubits = 2 * n_sites;
  std::vector<int> q(std::size_t{1} << n_qubits, 0);
  for (std::size_t b = 0; b < q.size(); ++b)
    for (int k = 0; k < n_qubits; ++k)
      if ((b >> (n_qubits - 1 - k)) & 1U) q[b] += k < n_sites ? 1 : -1;
  return q;
}

void add_squeezed_reservoir(Liouvillian& l, const SparseMatrix& c1, const SparseMatrix& c2,
                            double rate, double nbar, double mbar) {
  const SparseMatrix id = sparse_identity(l.dim());
  const SparseMatrix d1 = c1.adjoint(), d2 = c2.adjoint();
  // c1 c2 is replaced by (c1 c2 + c2 c1) / 2 so that the generator stays
  // trace preserving when the operators are truncated.
  const SparseMatrix sym = 0.5 * (SparseMatrix(c1 * c2) + SparseMatrix(c2 * c1));
  const SparseMatrix sym_d = sym.adjoint();
  const double s = 2.0 * rate * mbar;
  l.add_term(s, c1, c2);
  l.add_term(s, c2, c1);
  l.add_term(-s, sym, id);
  l.add_term(-s, id, sym);
  l.add_term(s, d2, d1);
  l.add_term(s, d1, d2);
  l.add_term(-s, id, sym_d);
  l.add_term(-s, sym_d, id);
  for (const SparseMatrix* c : {&c1, &c2}) {
    l.add_dissipator(*c, rate * (nbar + 1.0));
    if (nbar > 0.0) l.add_dissipator(SparseMatrix(c->adjoint()), rate * nbar);
  }
}

Liouvillian build_xx_liouvillian(int n_sites, const std::vector<double>& coupling, double gamma,
                                 double nbar, double mbar) {
  check_pairs(n_sites, kMaxSpinPairs);
  if (static_cast<int>(coupling.size()) != n_sites - 1)
    throw Error(ErrorKind::ConfigInvalid, "XX chain needs N - 1 couplings");
  if (!(gamma >= 0.0)) throw Error(ErrorKind::ConfigInvalid, "gamma must be >= 0");
  check_reservoir(nbar, mbar);

  const int n_qubits = 2 * n_sites;
  Liouvillian l(Eigen::Index{1} << n_qubits, spin_charges(n_sites));
  std::vector<SparseMatrix> s(n_qubits);
  for (int q = 0; q < n_qubits; ++q) s[q] = qubit_lowering_at(q, n_qubits);

  SparseMatrix h(l.dim(), l.dim());
  for (int offset : {0, n_sites})
    for (int j = 0; j + 1 < n_sites; ++j) {
      SparseMatrix hop = SparseMatrix(s[offset + j].adjoint()) * s[offset + j + 1];
      h += coupling[j] * (hop + SparseMatrix(hop.adjoint()));
    }
  l.add_hamiltonian(h);
  add_squeezed_reservoir(l, s[0], s[n_sites], gamma, nbar, -mbar);
  return l;
}

double adiabaticity_ratio(const ArrayConfig& cfg) {
  cfg.validate();
  const FieldDrift drift = build_drift(cfg.without_atoms());
  Eigen::ComplexEigenSolver<ComplexMatrix> es(drift.m_minus, false);
  double slowest = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    slowest = std::min(slowest, -es.eigenvalues()(i).real());
  if (!(slowest > kHurwitzTolerance))
    throw Error(ErrorKind::NotHurwitz, "field drift has an undamped mode");
  double g_max = 0.0;
  for (double g : cfg.g) g_max = std::max(g_max, std::abs(g));
  return g_max * std::sqrt(cfg.nbar + 1.0) / slowest;
}

EffectiveSpinGenerators effective_matrices(const ArrayConfig& cfg) {
  cfg.validate();
  if (!cfg.has_atoms()) throw Error(ErrorKind::ConfigInvalid, "effective model needs atoms");
  const ArrayConfig field = cfg.without_atoms();
  const FieldDrift drift = build_drift(field);
  if (max_real_eigenvalue(drift.a) >= -kHurwitzTolerance)
    throw Error(ErrorKind::NotHurwitz, "field drift is not Hurwitz");
  const LadderCorrelations a = ladder_correlations_from_cm(steady_state(field));

  const int n = cfg.n_modes();
  Eigen::PartialPivLU<ComplexMatrix> lu_m(drift.m_minus), lu_p(drift.m_plus);
  const ComplexMatrix inv_m = lu_m.inverse(), inv_p = lu_p.inverse();

  ComplexMatrix t(2 * n, 2 * n), tb(2 * n, 2 * n);
  t << inv_m * a.mm, inv_m * a.mp, inv_p * a.pm, inv_p * a.pp;
  tb << a.mm * inv_m, a.mp * inv_p, a.pm * inv_m, a.pp * inv_p;
  tb.transposeInPlace();

  Eigen::VectorXcd g(2 * n);
  for (int alpha = 0; alpha < 2 * n; ++alpha) g(alpha) = cfg.g[(alpha % n) % cfg.n_sites];
  EffectiveSpinGenerators out;
  out.t = g.asDiagonal() * t * g.asDiagonal();
  out.tbar = g.asDiagonal() * tb * g.asDiagonal();
  return out;
}

Liouvillian effective_generator(int n_sites, const ComplexMatrix& t, const ComplexMatrix& tbar) {
  check_pairs(n_sites, kMaxSpinPairs);
  const int dim4 = 4 * n_sites;
  if (t.rows() != dim4 || t.cols() != dim4 || tbar.rows() != dim4 || tbar.cols() != dim4)
    throw Error(ErrorKind::IndexOutOfRange, "effective generator: matrix size mismatch");
  const std::vector<SparseMatrix> s = bar_operators(n_sites);
  Liouvillian l(Eigen::Index{1} << (2 * n_sites), spin_charges(n_sites));
  const double cut = 1e-14 * std::max(t.cwiseAbs().maxCoeff(), tbar.cwiseAbs().maxCoeff());

  SparseMatrix left(l.dim(), l.dim()), right(l.dim(), l.dim());
  for (int j = 0; j < dim4; ++j)
    for (int k = 0; k < dim4; ++k) {
      if (std::abs(t(j, k)) > cut) left += t(j, k) * SparseMatrix(s[j] * s[k]);
      if (std::abs(tbar(k, j)) > cut) right += tbar(k, j) * SparseMatrix(s[j] * s[k]);
      const Complex jump = -(t(k, j) + tbar(j, k));
      if (std::abs(jump) > cut) l.add_term(jump, s[j], s[k]);
    }
  const SparseMatrix id = sparse_identity(l.dim());
  l.add_term(1.0, left, id);
  l.add_term(1.0, id, right);
  return l;
}

EffectiveModel build_effective_general(const ArrayConfig& cfg) {
  check_pairs(cfg.n_sites, kMaxSpinPairs);
  const double ratio = adiabaticity_ratio(cfg);
  EffectiveSpinGenerators m = effective_matrices(cfg);
  Liouvillian l = effective_generator(cfg.n_sites, m.t, m.tbar);
  return EffectiveModel{std::move(l), std::move(m), ratio, ratio > kAdiabaticLimit};
}

ComplexMatrix closed_form_x(int n_sites, Parity parity) {
  const int n = n_sites;
  ComplexMatrix x = ComplexMatrix::Zero(n, n);
  const int shift = parity == Parity::Even ? 0 : 1;
  for (int j = 1; j <= n; ++j)
    for (int k = 1; k <= n; ++k) {
      double v = 0.0;
      for (int nn = 1; nn <= n; ++nn)
        for (int m = 1; m <= n; ++m) {
          const double sign = nn % 2 == 1 ? 1.0 : -1.0;  // (-1)^(n+1)
          if (j == 2 * m + shift && j == k + 2 * nn - 1) v += sign;
          if (k == 2 * m + shift && j + 2 * nn - 1 == k) v += sign;
        }
      x(j - 1, k - 1) = v;
    }
  return x;
}

ComplexMatrix closed_form_y(int n_sites, Parity parity) {
  const int n = n_sites;
  ComplexMatrix y = ComplexMatrix::Zero(n, n);
  const int shift = parity == Parity::Even ? 0 : -1;
  for (int j = 1; j <= n; ++j)
    for (int k = 1; k <= n; ++k) {
      double v = 0.0;
      for (int nn = 1; nn <= n; ++nn)
        for (int m = 1; m <= n; ++m) {
          const double sign = nn % 2 == 0 ? 1.0 : -1.0;  // (-1)^n
          if (j == 2 * m + shift && j == k + 2 * nn) v += sign;
          if (k == 2 * m + shift && j + 2 * nn == k) v += sign;
        }
      for (int m = 1; m <= n; ++m)
        if (j == 2 * m + shift && j == k) v += 1.0;
      y(j - 1, k - 1) = v;
    }
  return y;
}

ComplexMatrix closed_form_z(int n_sites) {
  ComplexMatrix z = ComplexMatrix::Zero(n_sites, n_sites);
  for (int j = 0; j < n_sites; ++j) z(j, j) = j % 2 == 0 ? 1.0 : -1.0;
  return z;
}

EffectiveSpinGenerators closed_form_matrices(int n_sites, Parity parity, double j_rate,
                                             double gamma, double nbar, double mbar,
                                             ClosedFormVariant variant) {
  if (!(gamma > 0.0)) throw Error(ErrorKind::ConfigInvalid, "closed form needs gamma > 0");
  check_reservoir(nbar, mbar);
  const int n = n_sites;
  EffectiveSpinGenerators out;
  out.x = closed_form_x(n, parity);
  out.y = closed_form_y(n, parity);
  out.z = closed_form_z(n);
  out.w = (out.y + Complex(0.0, j_rate / gamma) * out.x) * out.z;
  out.j_rate = j_rate;
  out.gamma = gamma;

  out.calx = ComplexMatrix::Zero(4 * n, 4 * n);
  out.caly = ComplexMatrix::Zero(4 * n, 4 * n);
  auto blk = [n](ComplexMatrix& c, int r, int col) { return c.block(r * n, col * n, n, n); };
  blk(out.calx, 0, 2) = (1.0 + nbar) * out.x;
  blk(out.calx, 1, 3) = (1.0 + nbar) * out.x;
  blk(out.calx, 2, 0) = -nbar * out.x;
  blk(out.calx, 3, 1) = -nbar * out.x;
  blk(out.caly, 0, 1) = mbar * out.w;
  blk(out.caly, 0, 2) = (1.0 + nbar) * out.y;
  blk(out.caly, 1, 0) = mbar * out.w;
  blk(out.caly, 1, 3) = (1.0 + nbar) * out.y;
  blk(out.caly, 2, 0) = nbar * out.y;
  blk(out.caly, 2, 3) = mbar * out.w.conjugate();
  blk(out.caly, 3, 1) = nbar * out.y;
  blk(out.caly, 3, 2) = mbar * out.w.conjugate();

  // Generator coefficients. Gauge sigma_j -> (-1)^j sigma_j on every qubit
  // (J -> -J) and sigma_{N+j} -> -sigma_{N+j} (mbar -> -mbar) map the block
  // conventions onto the cavity-derived model.
  ComplexMatrix y = out.caly;
  // W at -J is conj(W).
  ComplexMatrix w_top = out.w.conjugate(), w_bottom = out.w;
  if (variant == ClosedFormVariant::Hermitian) {
    // Only Re W is dissipative; i (J / gamma) X Z is antisymmetric and drops
    // out of the s_j s_k products, so it is removed from the jump term too.
    w_top = w_bottom = out.w.real().cast<Complex>();
  }
  blk(y, 0, 1) = mbar * w_top;
  blk(y, 1, 0) = mbar * w_top;
  blk(y, 2, 3) = mbar * w_bottom;
  blk(y, 3, 2) = mbar * w_bottom;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      if ((r % 2) != (c % 2)) blk(y, r, c) *= -1.0;
  const double jg = -j_rate;

  // gamma [2 s_j Y_kj rho s_k - Y_jk s_j s_k rho - Y_jk rho s_j s_k] - i J [X_jk s_j s_k, rho]
  // is the general form with T = -gamma Y - i J X and Tbar = (-gamma Y + i J X)^T.
  out.t = -gamma * y - Complex(0.0, jg) * out.calx;
  out.tbar = (-gamma * y + Complex(0.0, jg) * out.calx).transpose();
  return out;
}

ClosedFormParameters closed_form_parameters(double g, double eta, double zeta, Parity parity) {
  if (!(eta > 0.0) || !(zeta > 0.0))
    throw Error(ErrorKind::ConfigInvalid, "closed form needs eta > 0 and zeta > 0");
  ClosedFormParameters p;
  p.j_rate = g * g / eta;
  p.gamma = parity == Parity::Even ? zeta * g * g / (eta * eta) : g * g / zeta;
  return p;
}

EffectiveModel build_effective_closed_form(int n_sites, Parity parity, double j_rate, double gamma,
                                           double nbar, double mbar, ClosedFormVariant variant) {
  check_pairs(n_sites, 4);
  EffectiveSpinGenerators m =
      closed_form_matrices(n_sites, parity, j_rate, gamma, nbar, mbar, variant);
  Liouvillian l = effective_generator(n_sites, m.t, m.tbar);
  return EffectiveModel{std::move(l), std::move(m), 0.0, false};
}

double generator_distance(const Liouvillian& a, const Liouvillian& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::IndexOutOfRange, "generator dimension mismatch");
  const SparseMatrix sa = a.sparse(), sb = b.sparse();
  const double ref = sb.norm();
  if (ref == 0.0) return SparseMatrix(sa).norm() == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return SparseMatrix(sa - sb).norm() / ref;
}

}  // namespace replication
