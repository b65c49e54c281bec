#pragma once

// Two coupled-cavity arrays driven at their first sites by a common two-mode
// squeezed reservoir. Sites are zero-based here: array one holds modes
// [0, N) and array two holds [N, 2N); the driven pair is (0, N).

#include "replication/gaussian.hpp"
#include "replication/parallel.hpp"

#include <cstdint>
#include <vector>

namespace replication {

struct ArrayConfig {
  int n_sites = 1;
  std::vector<double> eta_one;  // N - 1 bond couplings in array one
  std::vector<double> eta_two;  // N - 1 bond couplings in array two
  std::vector<double> kappa;    // 2N cavity decay rates
  double zeta = 1.0;            // reservoir coupling of the driven pair
  double nbar = 0.0;
  double mbar = 0.0;
  std::vector<double> g;        // empty, or N atom couplings shared by sites j and N + j

  static ArrayConfig homogeneous(int n_sites, double eta, double kappa, double zeta,
                                 double nbar, double mbar);

  int n_modes() const { return 2 * n_sites; }
  bool has_atoms() const;
  // Coupling between array sites `site` and `site + 1` of array 0 or 1.
  double bond(int array, int site) const { return array == 0 ? eta_one[site] : eta_two[site]; }
  // Same configuration with g cleared.
  ArrayConfig without_atoms() const;
  // Relabels j <-> N + j.
  ArrayConfig swapped_arrays() const;

  // Throws ConfigInvalid.
  void validate() const;
};

// Real drift A for the quadratures together with the ladder drift matrices:
// d<a_j>/dt = sum_k M^-_jk <a_k>, M^+ = conj(M^-).
struct FieldDrift {
  RealMatrix a;
  ComplexMatrix m_minus;
  ComplexMatrix m_plus;
};

// Requires a configuration without atoms.
FieldDrift build_drift(const ArrayConfig& cfg);
RealMatrix build_diffusion(const ArrayConfig& cfg);

// Real quadrature embedding of a complex ladder drift matrix.
RealMatrix quadrature_embedding(const ComplexMatrix& m_minus);

QuadratureCovariance steady_state(const ArrayConfig& cfg);

struct PairEntanglement {
  int site = 0;  // zero-based j, pairing modes (j, N + j)
  double raw = 0.0;
  double normalized = 0.0;
};

struct EntanglementProfile {
  std::vector<PairEntanglement> pairs;
  double drive_raw = 0.0;
  double drive_normalized = 0.0;
};

EntanglementProfile pair_entanglement_profile(const ArrayConfig& cfg);
EntanglementProfile pair_entanglement_profile(const QuadratureCovariance& sigma,
                                              const ArrayConfig& cfg);

struct DisorderSpec {
  ArrayConfig base;  // homogeneous couplings eta_0
  double delta_xi = 0.0;
  int samples = 1;
  std::uint64_t seed = 0;

  void validate() const;
};

struct DisorderSummary {
  EntanglementProfile mean;
  EntanglementProfile min;
  EntanglementProfile max;
  std::vector<double> standard_error;  // of the raw mean, per pair
};

// Bond couplings for one disorder realization, eta_0 + xi with
// xi ~ U[-delta/2, delta/2] drawn independently for every bond of both arrays.
ArrayConfig disorder_realization(const DisorderSpec& spec, int sample);

DisorderSummary disorder_sweep(const DisorderSpec& spec, const ExecutionPolicy& policy = {});

}  // namespace replication
