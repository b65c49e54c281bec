#include "replication/output_spectrum.hpp"

#include "replication/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace replication {

namespace {

const Complex kI(0.0, 1.0);
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// Rows j of the returned n x 2n matrix express a_j in terms of quadratures.
ComplexMatrix annihilation_rows(int n) {
  ComplexMatrix t = ComplexMatrix::Zero(n, 2 * n);
  for (int j = 0; j < n; ++j) {
    t(j, 2 * j) = kInvSqrt2;
    t(j, 2 * j + 1) = kI * kInvSqrt2;
  }
  return t;
}

// Inverse of M + shift I; throws SingularResolvent when ill-conditioned.
ComplexMatrix resolvent(const ComplexMatrix& m, Complex shift) {
  ComplexMatrix shifted = m;
  shifted.diagonal().array() += shift;
  Eigen::FullPivLU<ComplexMatrix> lu(shifted);
  const double scale = std::max(1.0, shifted.cwiseAbs().maxCoeff());
  lu.setThreshold(1e-13);
  if (!lu.isInvertible() || lu.rcond() < 1e-14 * scale) {
    std::ostringstream msg;
    msg << "resolvent singular at shift " << shift;
    throw Error(ErrorKind::SingularResolvent, msg.str());
  }
  return lu.inverse();
}

double pair_logneg(const ArrayConfig& cfg, const LadderCorrelations& corr, double omega, int j, int k) {
  return log_negativity_gaussian(reduce_to_pair(output_covariance(cfg, corr, omega), j, k));
}

}  // namespace

LadderCorrelations ladder_correlations_from_cm(const QuadratureCovariance& sigma) {
  if (!is_physical(sigma, kNonPhysicalThreshold)) {
    throw Error(ErrorKind::NonPhysicalResult, "covariance matrix is not physical");
  }
  const int n = sigma.n_modes();
  // <R_i R_j> = (sigma_ij + i Omega_ij) / 2
  const ComplexMatrix g =
      0.5 * (sigma.matrix().cast<Complex>() + kI * symplectic_form(n).cast<Complex>());
  const ComplexMatrix tm = annihilation_rows(n);
  const ComplexMatrix tp = tm.conjugate();
  LadderCorrelations out;
  out.mm = tm * g * tm.transpose();
  out.mp = tm * g * tp.transpose();
  out.pm = tp * g * tm.transpose();
  out.pp = tp * g * tp.transpose();
  return out;
}

QuadratureCovariance cm_from_ladder_correlations(const LadderCorrelations& corr) {
  const int n = corr.n_modes();
  // R = S (a; a^dag)
  ComplexMatrix s = ComplexMatrix::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    s(2 * j, j) = kInvSqrt2;
    s(2 * j, n + j) = kInvSqrt2;
    s(2 * j + 1, j) = -kI * kInvSqrt2;
    s(2 * j + 1, n + j) = kI * kInvSqrt2;
  }
  ComplexMatrix full(2 * n, 2 * n);
  full << corr.mm, corr.mp, corr.pm, corr.pp;
  const ComplexMatrix g = s * full * s.transpose();
  return QuadratureCovariance((g + g.transpose()).real());
}

ComplexMatrix theta_map(int n_sites) {
  const int size = 4 * n_sites;
  ComplexMatrix theta = ComplexMatrix::Zero(size, size);
  // One-based: Theta_{j,k} = d_{j,2k-1} + d_{j,2k-4N-1} + i (d_{j,2k} - d_{j,2k-4N}).
  for (int k = 1; k <= size; ++k) {
    for (int j = 1; j <= size; ++j) {
      Complex v = 0.0;
      if (j == 2 * k - 1) v += 1.0;
      if (j == 2 * k - size - 1) v += 1.0;
      if (j == 2 * k) v += kI;
      if (j == 2 * k - size) v -= kI;
      theta(j - 1, k - 1) = v;
    }
  }
  return theta;
}

ComplexMatrix port_coupling(const ArrayConfig& cfg) {
  ComplexMatrix k = ComplexMatrix::Zero(cfg.n_modes(), cfg.n_modes());
  for (int j = 0; j < cfg.n_modes(); ++j) k(j, j) = std::sqrt(2.0 * cfg.kappa[static_cast<std::size_t>(j)]);
  return k;
}

ComplexMatrix assemble_output_correlations(const ArrayConfig& cfg, const LadderCorrelations& corr,
                                           double omega) {
  const FieldDrift drift = build_drift(cfg);
  const int n = cfg.n_modes();
  const ComplexMatrix k = port_coupling(cfg);
  const ComplexMatrix one = ComplexMatrix::Identity(n, n);
  const Complex iw = kI * omega;

  const ComplexMatrix r_minus_plus = resolvent(drift.m_minus, iw);   // (M^- + i w)^-1
  const ComplexMatrix r_minus_minus = resolvent(drift.m_minus, -iw); // (M^- - i w)^-1
  const ComplexMatrix r_plus_plus = resolvent(drift.m_plus, iw);     // (M^+ + i w)^-1
  const ComplexMatrix r_plus_minus = resolvent(drift.m_plus, -iw);   // (M^+ - i w)^-1

  const ComplexMatrix& a_mm = corr.mm;
  const ComplexMatrix& a_pm = corr.pm;
  const ComplexMatrix& a_pp = corr.pp;

  ComplexMatrix out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = k * (r_minus_plus * a_mm + a_mm.transpose() * r_minus_minus) * k;
  out.topRightCorner(n, n) =
      k * (r_minus_plus * a_pm.transpose() + a_pm.transpose() * r_plus_minus) * k - one;
  out.bottomLeftCorner(n, n) = k * (r_plus_plus * a_pm + a_pm * r_minus_minus) * k;
  out.bottomRightCorner(n, n) = k * (r_plus_plus * a_pp.transpose() + a_pp * r_plus_minus) * k;
  return -out;
}

QuadratureCovariance output_covariance(const ArrayConfig& cfg, const LadderCorrelations& corr,
                                       double omega) {
  const ComplexMatrix spectrum = assemble_output_correlations(cfg, corr, omega);
  const ComplexMatrix theta = theta_map(cfg.n_sites);
  const ComplexMatrix gamma =
      0.5 * (theta * spectrum * theta.transpose() + theta * spectrum.transpose() * theta.transpose());
  const double residue = gamma.imag().cwiseAbs().maxCoeff();
  if (residue > 1e-9 * std::max(1.0, gamma.real().cwiseAbs().maxCoeff())) {
    std::ostringstream msg;
    msg << "output covariance has imaginary residue " << residue;
    throw Error(ErrorKind::NonPhysicalResult, msg.str());
  }
  // Theta maps to x = a + a^dag, whose symmetrized moment already matches the
  // vacuum-normalized convention; the normalization constant is one.
  return QuadratureCovariance(gamma.real());
}

std::vector<double> uniform_grid(double lo, double hi, int points) {
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    grid[static_cast<std::size_t>(i)] =
        points == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  return grid;
}

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> grid = uniform_grid(std::log10(lo), std::log10(hi), points);
  for (double& x : grid) x = std::pow(10.0, x);
  return grid;
}

std::vector<double> default_omega_grid(double eta) { return uniform_grid(-3.0 * eta, 3.0 * eta, 1201); }

SpectrumResult output_pair_spectrum(const ArrayConfig& cfg, std::pair<int, int> pair,
                                    const std::vector<double>& omega_grid,
                                    const ExecutionPolicy& policy) {
  cfg.validate();
  const auto [j, k] = pair;
  if (j < 0 || k < 0 || j >= cfg.n_modes() || k >= cfg.n_modes() || j == k) {
    throw Error(ErrorKind::IndexOutOfRange, "output pair indices out of range");
  }
  if (cfg.kappa[static_cast<std::size_t>(j)] <= 0.0 || cfg.kappa[static_cast<std::size_t>(k)] <= 0.0) {
    throw Error(ErrorKind::ClosedPort, "output ports must have nonzero decay rate");
  }
  if (omega_grid.empty()) throw Error(ErrorKind::ConfigInvalid, "empty frequency grid");
  const LadderCorrelations corr = ladder_correlations_from_cm(steady_state(cfg));

  SpectrumResult out;
  out.omega_grid = omega_grid;
  out.e_out.assign(omega_grid.size(), 0.0);
  for_each_index(omega_grid.size(), policy, [&](std::size_t i) {
    out.e_out[i] = pair_logneg(cfg, corr, omega_grid[i], j, k);
  });

  const auto best = static_cast<std::size_t>(
      std::max_element(out.e_out.begin(), out.e_out.end()) - out.e_out.begin());
  out.e_max = out.e_out[best];
  out.omega_at_max = omega_grid[best];

  // Golden-section search on the bracket formed by the neighbouring grid points.
  double lo = omega_grid[best > 0 ? best - 1 : best];
  double hi = omega_grid[best + 1 < omega_grid.size() ? best + 1 : best];
  out.e_max_refined = out.e_max;
  out.omega_refined = out.omega_at_max;
  if (hi > lo) {
    const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    auto f = [&](double w) { return pair_logneg(cfg, corr, w, j, k); };
    double c = hi - ratio * (hi - lo);
    double d = lo + ratio * (hi - lo);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 60 && hi - lo > 1e-12; ++it) {
      if (fc > fd) {
        hi = d; d = c; fd = fc;
        c = hi - ratio * (hi - lo); fc = f(c);
      } else {
        lo = c; c = d; fc = fd;
        d = lo + ratio * (hi - lo); fd = f(d);
      }
    }
    const double w = 0.5 * (lo + hi);
    const double fw = f(w);
    if (fw > out.e_max_refined) {
      out.e_max_refined = fw;
      out.omega_refined = w;
    }
  }
  return out;
}

std::vector<KappaPoint> max_out_vs_kappa(const ArrayConfig& base, const std::vector<double>& kappa_grid,
                                         const std::vector<double>& omega_grid,
                                         const ExecutionPolicy& policy) {
  const int n = base.n_sites;
  std::vector<KappaPoint> curve(kappa_grid.size());
  for_each_index(kappa_grid.size(), policy, [&](std::size_t i) {
    ArrayConfig cfg = base;
    cfg.kappa[static_cast<std::size_t>(n - 1)] = kappa_grid[i];
    cfg.kappa[static_cast<std::size_t>(2 * n - 1)] = kappa_grid[i];
    const SpectrumResult s = output_pair_spectrum(cfg, {n - 1, 2 * n - 1}, omega_grid, serial_policy());
    curve[i] = {kappa_grid[i], s.e_max_refined, s.omega_refined};
  });
  return curve;
}

}  // namespace replication
