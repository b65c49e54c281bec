#pragma once

// Frequency-resolved covariance matrix of the field leaking out of the open
// cavities, from intracavity steady-state correlations and the resolvents of
// the ladder drift (input-output theory with vacuum input at the open ports).

#include "replication/cavity_array.hpp"
#include "replication/gaussian.hpp"
#include "replication/parallel.hpp"

#include <utility>
#include <vector>

namespace replication {

// (A^{ab})_{jk} = <abar^a_j abar^b_k> with abar^- = a and abar^+ = a^dag.
struct LadderCorrelations {
  ComplexMatrix mm;
  ComplexMatrix mp;
  ComplexMatrix pm;
  ComplexMatrix pp;

  int n_modes() const { return static_cast<int>(mm.rows()); }
};

// Requires zero first moments. Throws NonPhysicalResult for an unphysical input.
LadderCorrelations ladder_correlations_from_cm(const QuadratureCovariance& sigma);
// Inverse map; symmetrized second moments from ladder correlations.
QuadratureCovariance cm_from_ladder_correlations(const LadderCorrelations& corr);

// 4N x 4N map from (a_1..a_2N, a^dag_1..a^dag_2N) to the output quadrature
// ordering (x_1, p_1, ...) up to normalization. Its p rows are i(a - a^dag),
// so output covariances carry p with the opposite sign to steady_state.
ComplexMatrix theta_map(int n_sites);

// Port coupling K_jj = sqrt(2 kappa_j): the decay term kappa (2 a rho a^dag - ...)
// gives a_out = sqrt(2 kappa) a - a_in.
ComplexMatrix port_coupling(const ArrayConfig& cfg);

// Spectrum of the output correlation matrix at frequency omega, in the
// (-, +) block ordering. Throws SingularResolvent.
ComplexMatrix assemble_output_correlations(const ArrayConfig& cfg, const LadderCorrelations& corr,
                                           double omega);

// Symmetrized output covariance at omega. Throws NonPhysicalResult if the
// imaginary residue exceeds 1e-9.
QuadratureCovariance output_covariance(const ArrayConfig& cfg, const LadderCorrelations& corr,
                                       double omega);

struct SpectrumResult {
  std::vector<double> omega_grid;
  std::vector<double> e_out;
  double e_max = 0.0;          // max over the grid
  double omega_at_max = 0.0;
  double e_max_refined = 0.0;  // golden-section refinement around the grid maximum
  double omega_refined = 0.0;
};

// Uniform grid of `points` frequencies on [lo, hi].
std::vector<double> uniform_grid(double lo, double hi, int points);
std::vector<double> log_grid(double lo, double hi, int points);

// Default grid: 1201 points on [-3 eta, 3 eta].
std::vector<double> default_omega_grid(double eta);

// Output entanglement of modes (j, k), zero-based. Throws ClosedPort when
// either port has zero decay rate.
SpectrumResult output_pair_spectrum(const ArrayConfig& cfg, std::pair<int, int> pair,
                                    const std::vector<double>& omega_grid,
                                    const ExecutionPolicy& policy = {});

struct KappaPoint {
  double kappa = 0.0;
  double e_max = 0.0;
  double omega_at_max = 0.0;
};

// Sweeps kappa_N = kappa_2N over the grid, output pair (N, 2N).
std::vector<KappaPoint> max_out_vs_kappa(const ArrayConfig& base, const std::vector<double>& kappa_grid,
                                         const std::vector<double>& omega_grid,
                                         const ExecutionPolicy& policy = {});

}  // namespace replication
