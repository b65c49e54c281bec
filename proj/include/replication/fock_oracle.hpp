#pragma once

// Steady state of the full cavity (+ two-level atom) master equation in a
// truncated Fock basis. Small systems only; used to cross-check the Gaussian
// and effective descriptions.

#include "replication/cavity_array.hpp"
#include "replication/liouvillian.hpp"
#include "replication/output_spectrum.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace replication {

// Basis of the truncation. Squeezed uses number states of b with
// a_0 = cosh r b_0 - sinh r b_N^dag, a_N = cosh r b_N - sinh r b_0^dag and
// tanh 2r = mbar / (nbar + 1/2), in which the reservoir is thermal.
enum class FockFrame { Bare, Squeezed };

struct TruncationSpec {
  ArrayConfig cfg;
  FockFrame frame = FockFrame::Bare;
  int n_max = 0;                     // 0 selects default_cutoff(cfg.nbar)
  std::size_t dimension_budget = 1200;  // Hilbert-space dimension at the checked cutoff n_max + 2
  bool check_convergence = true;

  void validate() const;
};

// max(8, ceil(3 (nbar + 1))).
int default_cutoff(double nbar);

// Hilbert dimension (n_max + 1)^{2N} 2^{2N}, without the atomic factor when g = 0.
std::size_t truncated_dimension(const ArrayConfig& cfg, int n_max);

// Generator of the full model at one cutoff. Field modes come first in the
// register, then the 2N atoms (omitted when the configuration has no atoms).
Liouvillian build_full_liouvillian(const ArrayConfig& cfg, int n_max,
                                   FockFrame frame = FockFrame::Bare);

// Squeezing parameter r of the Squeezed frame.
double frame_squeezing(const ArrayConfig& cfg);

struct FockOracleResult {
  int n_max = 0;
  LadderCorrelations moments;        // <abar^a_j abar^b_k> over the 2N cavity modes
  std::vector<DensityMatrix> atom_pairs;  // (j, N + j) reduced states; ground states without atoms
  double convergence_shift = 0.0;    // max moment change between n_max and n_max + 2
  double residual = 0.0;
};

// Throws DimensionBudgetExceeded, TruncationUnconverged, ConfigInvalid.
FockOracleResult full_cavity_atom_oracle(const TruncationSpec& spec);

// Oracle at a single cutoff, without the convergence check.
FockOracleResult solve_truncated(const ArrayConfig& cfg, int n_max,
                                 FockFrame frame = FockFrame::Bare);

double max_moment_difference(const LadderCorrelations& a, const LadderCorrelations& b);

}  // namespace replication
