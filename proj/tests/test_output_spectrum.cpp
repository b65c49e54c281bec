#include "oracles.hpp"

#include "replication/baselines.hpp"
#include "replication/cavity_array.hpp"
#include "replication/error.hpp"
#include "replication/output_spectrum.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace replication;

namespace {

const double kSqrt2 = std::sqrt(2.0);

ArrayConfig fig5b_config() {
  ArrayConfig c = ArrayConfig::homogeneous(10, 1.0, 0.0, 0.5, 1.0, kSqrt2);
  c.kappa[9] = c.kappa[19] = 0.4;
  return c;
}

RealMatrix quadrature_ports(const ArrayConfig& c) {
  RealMatrix k = RealMatrix::Zero(2 * c.n_modes(), 2 * c.n_modes());
  for (int j = 0; j < c.n_modes(); ++j) k(2 * j, 2 * j) = k(2 * j + 1, 2 * j + 1) = std::sqrt(2 * c.kappa[j]);
  return k;
}

}  // namespace

TEST(OutputCovariance, MatchesFrequencyDomainLangevinSolution) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 1 + trial % 3;
    ArrayConfig c = ArrayConfig::homogeneous(n, 1.0, 0.0, 0.2 + u(rng), 0.5 + u(rng), 0.0);
    c.mbar = u(rng) * std::sqrt(c.nbar * (c.nbar + 1));
    for (auto& e : c.eta_one) e = 0.5 + u(rng);
    c.eta_two = c.eta_one;
    for (auto& k : c.kappa) k = 0.05 + 0.5 * u(rng);
    const RealMatrix port = quadrature_ports(c);
    const RealMatrix d_res = build_diffusion(c) - port * port.transpose();
    const LadderCorrelations corr = ladder_correlations_from_cm(steady_state(c));
    // Theta builds p with the opposite sign: compare in the reflected frame.
    RealMatrix flip = RealMatrix::Identity(port.rows(), port.cols());
    for (Eigen::Index j = 1; j < flip.rows(); j += 2) flip(j, j) = -1.0;
    for (double w : {-1.7, -0.3, 0.0, 0.45, 2.2}) {
      const RealMatrix ref = flip * oracle::langevin_output_covariance(build_drift(c).a, port, d_res, w) * flip;
      const RealMatrix got = output_covariance(c, corr, w).matrix();
      EXPECT_LT((got - ref).cwiseAbs().maxCoeff(), 1e-9) << "trial " << trial << " omega " << w;
    }
  }
}

TEST(OutputCovariance, ClosedPortsEmitVacuum) {
  ArrayConfig c = ArrayConfig::homogeneous(2, 1.0, 0.0, 1.0, 1.0, kSqrt2);
  c.kappa[1] = c.kappa[3] = 0.3;
  const LadderCorrelations corr = ladder_correlations_from_cm(steady_state(c));
  const RealMatrix s = output_covariance(c, corr, 0.4).matrix();
  // Modes 0 and 2 have no port: their output block is the vacuum.
  EXPECT_LT((s.block(0, 0, 2, 2) - RealMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((s.block(4, 4, 2, 2) - RealMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_TRUE(is_physical(QuadratureCovariance(s)));
}

TEST(LadderCorrelations, RoundTripThroughCovariance) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    ArrayConfig c = ArrayConfig::homogeneous(2, 0.7, 0.1 * trial, 1.0, 0.4 * (trial + 1), 0.0);
    c.mbar = 0.5 * std::sqrt(c.nbar * (c.nbar + 1));
    const QuadratureCovariance s = steady_state(c);
    const LadderCorrelations l = ladder_correlations_from_cm(s);
    // Canonical commutator: <a a^dag> - <a^dag a> = 1.
    for (int j = 0; j < 4; ++j) EXPECT_NEAR((l.mp(j, j) - l.pm(j, j)).real(), 1.0, 1e-12);
    EXPECT_LT((cm_from_ladder_correlations(l).matrix() - s.matrix()).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((l.pp - l.mm.conjugate()).cwiseAbs().maxCoeff(), 1e-12);
  }
  (void)rng;
}

TEST(PortCoupling, SqrtTwoKappa) {
  ArrayConfig c = ArrayConfig::homogeneous(2, 1.0, 0.0, 1.0, 1.0, 1.0);
  c.kappa = {0.0, 0.5, 0.0, 2.0};
  const ComplexMatrix k = port_coupling(c);
  EXPECT_NEAR(k(1, 1).real(), 1.0, 1e-15);
  EXPECT_NEAR(k(3, 3).real(), 2.0, 1e-15);
  EXPECT_EQ(k(0, 0), Complex(0.0));
}

TEST(Spectrum, Errors) {
  const ArrayConfig c = ArrayConfig::homogeneous(3, 1.0, 0.0, 1.0, 1.0, kSqrt2);
  try {
    output_pair_spectrum(c, {2, 5}, {0.0});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ClosedPort);
  }
  try {
    output_pair_spectrum(fig5b_config(), {9, 20}, {0.0});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::IndexOutOfRange);
  }
  // Middle site of a 3-chain is a node of the omega = 0 mode; with damping
  // only there, that mode stays undamped.
  ArrayConfig dark = ArrayConfig::homogeneous(3, 1.0, 0.0, 0.0, 0.0, 0.0);
  dark.kappa[1] = dark.kappa[4] = 0.5;
  const LadderCorrelations vac = ladder_correlations_from_cm(QuadratureCovariance::vacuum(6));
  try {
    assemble_output_correlations(dark, vac, 0.0);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SingularResolvent);
  }
  EXPECT_NO_THROW(assemble_output_correlations(dark, vac, 0.3));
}

TEST(Spectrum, SymmetricInFrequencyAndWorkerIndependent) {
  const ArrayConfig c = fig5b_config();
  const auto grid = uniform_grid(-2.5, 2.5, 101);
  const SpectrumResult a = output_pair_spectrum(c, {9, 19}, grid, serial_policy());
  const SpectrumResult b = output_pair_spectrum(c, {9, 19}, grid, ExecutionPolicy{Execution::Parallel, 4});
  EXPECT_EQ(a.e_out, b.e_out);
  for (std::size_t i = 0; i < grid.size(); ++i) EXPECT_NEAR(a.e_out[i], a.e_out[grid.size() - 1 - i], 1e-9);
  EXPECT_GE(a.e_max_refined, a.e_max - 1e-12);
}

TEST(Spectrum, PeaksTrackDampedModeFrequencies) {
  const ArrayConfig c = fig5b_config();
  const auto grid = default_omega_grid(1.0);
  const double step = grid[1] - grid[0];
  const SpectrumResult s = output_pair_spectrum(c, {9, 19}, grid);
  std::vector<double> maxima;
  for (std::size_t i = 1; i + 1 < grid.size(); ++i)
    if (s.e_out[i] > s.e_out[i - 1] && s.e_out[i] >= s.e_out[i + 1] && grid[i] > 0) maxima.push_back(grid[i]);
  Eigen::ComplexEigenSolver<ComplexMatrix> es(build_drift(c).m_minus, false);
  // (frequency, damping rate) of each damped mode with positive frequency
  std::vector<std::pair<double, double>> damped;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (-es.eigenvalues()(i).imag() > 0) damped.emplace_back(-es.eigenvalues()(i).imag(), -es.eigenvalues()(i).real());
  std::sort(damped.begin(), damped.end());
  damped.erase(std::unique(damped.begin(), damped.end(),
                           [](const auto& x, const auto& y) { return std::abs(x.first - y.first) < 1e-9; }),
               damped.end());
  ASSERT_EQ(maxima.size(), damped.size());
  // Overlapping lines pull the maxima by a fraction of the linewidth.
  for (std::size_t i = 0; i < maxima.size(); ++i)
    EXPECT_NEAR(maxima[i], damped[i].first, std::max(2 * step, 0.1 * damped[i].second));
}

TEST(Spectrum, EndLossSweepRisesThenFalls) {
  const ArrayConfig base = ArrayConfig::homogeneous(10, 1.0, 0.0, 0.5, 1.0, kSqrt2);
  const auto pts = max_out_vs_kappa(base, log_grid(1e-2, 1e2, 31), uniform_grid(-3.0, 3.0, 241));
  ASSERT_EQ(pts.size(), 31u);
  double best = 0.0;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (pts[i].e_max > best) best = pts[i].e_max, arg = i;
  EXPECT_GT(arg, 0u);
  EXPECT_LT(arg, pts.size() - 1);
  EXPECT_LT(pts.front().e_max, best);
  EXPECT_LT(pts.back().e_max, best);
  EXPECT_GE(best, 0.9 * driving_entanglement(1.0, kSqrt2));
}
