#include "oracles.hpp"

#include "replication/baselines.hpp"
#include "replication/cavity_array.hpp"
#include "replication/error.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

using namespace replication;

namespace {

const double kSqrt2 = std::sqrt(2.0);

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no exception";
  return ErrorKind::ConfigInvalid;
}

ArrayConfig random_config(std::mt19937_64& rng, int n) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ArrayConfig c = ArrayConfig::homogeneous(n, 1.0, 0.0, 0.3 + u(rng), 0.2 + 2 * u(rng), 0.0);
  c.mbar = u(rng) * std::sqrt(c.nbar * (c.nbar + 1));
  for (auto& e : c.eta_one) e = 0.2 + u(rng);
  for (auto& e : c.eta_two) e = 0.2 + u(rng);
  for (auto& k : c.kappa) k = 0.3 * u(rng);
  return c;
}

}  // namespace

TEST(Drift, SingleDrivenPairIsPureDamping) {
  const FieldDrift d = build_drift(ArrayConfig::homogeneous(1, 0.7, 0.0, 1.0, 1.0, kSqrt2));
  EXPECT_LT((d.a + RealMatrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_LT((d.m_minus + ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Drift, HoppingMatchesHandExpandedCommutators) {
  // H = eta (a1^dag a2 + h.c.): da1/dt = -i eta a2, so x1' = eta p2, p1' = -eta x2.
  const FieldDrift d = build_drift(ArrayConfig::homogeneous(2, 1.0, 0.0, 0.0, 0.0, 0.0));
  EXPECT_DOUBLE_EQ(d.a(0, 3), 1.0);
  EXPECT_DOUBLE_EQ(d.a(1, 2), -1.0);
  EXPECT_DOUBLE_EQ(d.a(0, 2), 0.0);
  EXPECT_DOUBLE_EQ(d.a(4, 7), 1.0);   // array two, modes 2 and 3
  EXPECT_DOUBLE_EQ(d.a(5, 6), -1.0);
  EXPECT_EQ(d.m_minus(0, 1), Complex(0, -1));
  // No inter-array drift.
  EXPECT_LT(d.a.block(0, 4, 4, 4).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Drift, RealEmbeddingSpectrumIsUnionOfLadderSpectra) {
  std::mt19937_64 rng(3);
  for (int n = 1; n <= 4; ++n) {
    const FieldDrift d = build_drift(random_config(rng, n));
    EXPECT_LT((d.m_plus - d.m_minus.conjugate()).cwiseAbs().maxCoeff(), 1e-15);
    std::vector<double> re_a, re_m;
    Eigen::EigenSolver<RealMatrix> ea(d.a);
    Eigen::ComplexEigenSolver<ComplexMatrix> em(d.m_minus), ep(d.m_plus);
    for (int i = 0; i < ea.eigenvalues().size(); ++i) re_a.push_back(std::abs(ea.eigenvalues()(i)));
    for (int i = 0; i < em.eigenvalues().size(); ++i) {
      re_m.push_back(std::abs(em.eigenvalues()(i)));
      re_m.push_back(std::abs(ep.eigenvalues()(i)));
    }
    std::sort(re_a.begin(), re_a.end());
    std::sort(re_m.begin(), re_m.end());
    for (std::size_t i = 0; i < re_a.size(); ++i) EXPECT_NEAR(re_a[i], re_m[i], 1e-10);
  }
}

TEST(Diffusion, VacuumDampingAndDrivenPairMoments) {
  ArrayConfig vac = ArrayConfig::homogeneous(3, 1.0, 0.4, 0.0, 0.0, 0.0);
  EXPECT_LT((build_diffusion(vac) - 0.8 * RealMatrix::Identity(12, 12)).cwiseAbs().maxCoeff(), 1e-15);

  // Isolated driven pair: <a1^dag a1> = n, <a1 a2> = -m.
  for (double n : {0.3, 1.0, 2.5}) {
    const double m = 0.8 * std::sqrt(n * (n + 1));
    const ArrayConfig c = ArrayConfig::homogeneous(1, 0.0, 0.0, 1.0, n, m);
    const QuadratureCovariance s = steady_state(c);
    const RealMatrix d = build_diffusion(c);
    EXPECT_LT((d - d.transpose()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_GE(Eigen::SelfAdjointEigenSolver<RealMatrix>(d).eigenvalues().minCoeff(), -1e-12);
    // <a1 a2> = (<x1 x2> - <p1 p2> + i <x1 p2> + i <p1 x2>) / 2 with sigma = 2 sym<RR>.
    const double a1a2 = (s(0, 2) - s(1, 3)) / 4.0;
    EXPECT_NEAR(a1a2, -m, 1e-12);
    EXPECT_NEAR((s(0, 0) + s(1, 1)) / 4.0 - 0.5, n, 1e-12);
    EXPECT_NEAR(log_negativity_gaussian(s), driving_entanglement(n, m), 1e-10);
  }
}

TEST(SteadyState, ClosedSystemIsNotHurwitz) {
  EXPECT_EQ(kind_of([] { steady_state(ArrayConfig::homogeneous(3, 1.0, 0.0, 0.0, 1.0, kSqrt2)); }),
            ErrorKind::NotHurwitz);
}

TEST(SteadyState, MatchesKroneckerOracleOnRandomArrays) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const ArrayConfig c = random_config(rng, 1 + trial % 4);
    const RealMatrix ref = oracle::lyapunov_kron(build_drift(c).a, build_diffusion(c));
    EXPECT_LT((steady_state(c).matrix() - ref).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Profile, LosslessReplicationIsExact) {
  for (int n : {1, 2, 3, 7, 12}) {
    const EntanglementProfile p = pair_entanglement_profile(ArrayConfig::homogeneous(n, 1.0, 0.0, 1.0, 1.0, kSqrt2));
    ASSERT_EQ(p.pairs.size(), static_cast<std::size_t>(n));
    EXPECT_NEAR(p.drive_raw, 2.5431066063, 1e-9);
    for (const auto& pe : p.pairs) {
      EXPECT_NEAR(pe.raw, p.drive_raw, 1e-9) << "N " << n << " pair " << pe.site;
      EXPECT_NEAR(pe.normalized, normalized_logneg(pe.raw), 1e-15);
    }
  }
}

TEST(Profile, SeparableDriveGivesNoEntanglement) {
  const EntanglementProfile p = pair_entanglement_profile(ArrayConfig::homogeneous(5, 1.0, 0.1, 1.0, 1.0, 1.0));
  for (const auto& pe : p.pairs) EXPECT_EQ(pe.raw, 0.0);
  EXPECT_EQ(p.drive_raw, 0.0);
}

TEST(Profile, ArraySwapSymmetry) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    ArrayConfig c = random_config(rng, 4);
    c.eta_two = c.eta_one;
    const EntanglementProfile a = pair_entanglement_profile(c);
    const EntanglementProfile b = pair_entanglement_profile(c.swapped_arrays());
    for (std::size_t j = 0; j < a.pairs.size(); ++j) EXPECT_NEAR(a.pairs[j].raw, b.pairs[j].raw, 1e-10);
  }
}

TEST(Profile, MonotoneInLoss) {
  for (int n : {3, 6}) {
    std::vector<double> previous;
    for (double k : {0.0, 0.05, 0.2}) {
      const EntanglementProfile p = pair_entanglement_profile(ArrayConfig::homogeneous(n, 1.0, k, 1.0, 1.0, kSqrt2));
      for (std::size_t j = 0; j < previous.size(); ++j) EXPECT_LE(p.pairs[j].raw, previous[j] + 1e-9);
      previous.clear();
      for (const auto& pe : p.pairs) previous.push_back(pe.raw);
    }
  }
}

TEST(Profile, BoundedByDrive) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 10; ++trial) {
    const ArrayConfig c = random_config(rng, 1 + trial % 5);
    const EntanglementProfile p = pair_entanglement_profile(c);
    for (const auto& pe : p.pairs) {
      EXPECT_GE(pe.raw, 0.0);
      EXPECT_LE(pe.raw, p.drive_raw + 1e-9);
    }
  }
}

TEST(Profile, StrongEndLossDecouplesEndSite) {
  // kappa_N >> eta: site N drops out and site N - 1 sees loss eta^2 / kappa_N.
  const int n = 6;
  for (double k : {1e3, 1e4}) {
    ArrayConfig full = ArrayConfig::homogeneous(n, 1.0, 0.0, 1.0, 1.0, kSqrt2);
    full.kappa[n - 1] = full.kappa[2 * n - 1] = k;
    ArrayConfig reduced = ArrayConfig::homogeneous(n - 1, 1.0, 0.0, 1.0, 1.0, kSqrt2);
    reduced.kappa[n - 2] = reduced.kappa[2 * n - 3] = 1.0 / k;
    const EntanglementProfile a = pair_entanglement_profile(full);
    const EntanglementProfile b = pair_entanglement_profile(reduced);
    for (int j = 0; j + 1 < n; ++j) EXPECT_NEAR(a.pairs[j].raw, b.pairs[j].raw, 10.0 / (k * k)) << "kappa " << k;
  }
}

TEST(Config, Validation) {
  auto c = ArrayConfig::homogeneous(3, 1.0, 0.1, 1.0, 1.0, kSqrt2);
  EXPECT_NO_THROW(c.validate());
  auto bad = c;
  bad.kappa.pop_back();
  EXPECT_EQ(kind_of([&] { bad.validate(); }), ErrorKind::ConfigInvalid);
  bad = c;
  bad.eta_two[0] = -1;
  EXPECT_EQ(kind_of([&] { bad.validate(); }), ErrorKind::ConfigInvalid);
  bad = c;
  bad.mbar = 1.5;
  EXPECT_EQ(kind_of([&] { pair_entanglement_profile(bad); }), ErrorKind::ConfigInvalid);
  bad = c;
  bad.g = {0.1, 0.1, 0.1};
  EXPECT_EQ(kind_of([&] { build_drift(bad); }), ErrorKind::ConfigInvalid);
  EXPECT_EQ(kind_of([] { ArrayConfig::homogeneous(0, 1.0, 0.1, 1.0, 1.0, 1.0).validate(); }),
            ErrorKind::ConfigInvalid);
}

TEST(Disorder, ZeroWidthReproducesHomogeneousProfile) {
  DisorderSpec spec;
  spec.base = ArrayConfig::homogeneous(6, 1.0, 0.02, 1.0, 1.0, kSqrt2);
  spec.samples = 7;
  spec.seed = 99;
  const DisorderSummary s = disorder_sweep(spec);
  const EntanglementProfile h = pair_entanglement_profile(spec.base);
  for (std::size_t j = 0; j < h.pairs.size(); ++j) {
    EXPECT_EQ(s.mean.pairs[j].raw, h.pairs[j].raw);
    EXPECT_EQ(s.min.pairs[j].raw, h.pairs[j].raw);
    EXPECT_EQ(s.max.pairs[j].raw, h.pairs[j].raw);
    EXPECT_EQ(s.standard_error[j], 0.0);
  }
}

TEST(Disorder, DrawsStayInWindowAndArraysDiffer) {
  DisorderSpec spec;
  spec.base = ArrayConfig::homogeneous(5, 1.0, 0.02, 1.0, 1.0, kSqrt2);
  spec.delta_xi = 0.4;
  spec.samples = 50;
  spec.seed = 1;
  bool differ = false;
  for (int s = 0; s < spec.samples; ++s) {
    const ArrayConfig c = disorder_realization(spec, s);
    for (int b = 0; b < 4; ++b) {
      EXPECT_GE(c.eta_one[b], 0.8);
      EXPECT_LE(c.eta_one[b], 1.2);
      EXPECT_GE(c.eta_two[b], 0.8);
      EXPECT_LE(c.eta_two[b], 1.2);
      differ = differ || c.eta_one[b] != c.eta_two[b];
    }
  }
  EXPECT_TRUE(differ);
  EXPECT_NE(disorder_realization(spec, 0).eta_one, disorder_realization(spec, 1).eta_one);
}

TEST(Disorder, DeterministicAcrossRunsAndWorkers) {
  DisorderSpec spec;
  spec.base = ArrayConfig::homogeneous(5, 1.0, 0.02, 1.0, 1.0, kSqrt2);
  spec.delta_xi = 0.5;
  spec.samples = 40;
  spec.seed = 2024;
  const DisorderSummary a = disorder_sweep(spec, serial_policy());
  const DisorderSummary b = disorder_sweep(spec, ExecutionPolicy{Execution::Parallel, 3});
  const DisorderSummary c = disorder_sweep(spec, ExecutionPolicy{Execution::Parallel, 0});
  for (std::size_t j = 0; j < a.mean.pairs.size(); ++j) {
    EXPECT_EQ(a.mean.pairs[j].raw, b.mean.pairs[j].raw);
    EXPECT_EQ(a.mean.pairs[j].raw, c.mean.pairs[j].raw);
    EXPECT_EQ(a.min.pairs[j].raw, b.min.pairs[j].raw);
    EXPECT_EQ(a.standard_error[j], b.standard_error[j]);
  }
  spec.seed = 2025;
  const DisorderSummary d = disorder_sweep(spec);
  EXPECT_NE(a.mean.pairs[1].raw, d.mean.pairs[1].raw);
}

TEST(Disorder, Validation) {
  DisorderSpec spec;
  spec.base = ArrayConfig::homogeneous(3, 1.0, 0.02, 1.0, 1.0, kSqrt2);
  spec.samples = 0;
  EXPECT_EQ(kind_of([&] { spec.validate(); }), ErrorKind::ConfigInvalid);
  spec.samples = 3;
  spec.delta_xi = 1.5;
  EXPECT_EQ(kind_of([&] { disorder_sweep(spec); }), ErrorKind::ConfigInvalid);
  spec.delta_xi = 0.1;
  spec.base.eta_one[0] = 0.5;
  EXPECT_EQ(kind_of([&] { spec.validate(); }), ErrorKind::ConfigInvalid);
}
