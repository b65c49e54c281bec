#pragma once

// Spin master equations: the XX chain driven by a squeezed reservoir, and the
// effective atomic model obtained by eliminating the cavity fields, in its
// general form and in the closed form available without cavity losses.
//
// Qubits follow the register layout of baselines.hpp. Index alpha in [0, 4N)
// labels sbar_alpha = sigma_alpha^dag for alpha < 2N and sigma_{alpha-2N}
// otherwise; likewise abar for the fields.

#include "replication/cavity_array.hpp"
#include "replication/liouvillian.hpp"

#include <vector>

namespace replication {

// Largest chain (pairs) accepted by the spin builders.
inline constexpr int kMaxSpinPairs = 5;

// Lowering operator of qubit q in a register of n qubits.
SparseMatrix qubit_lowering_at(int q, int n_qubits);
// (excitations of array one) - (excitations of array two) per basis state.
std::vector<int> spin_charges(int n_sites);

// Adds the squeezed-reservoir dissipator acting on the pair (c1, c2):
// rate [2 m (c1 rho c2 + c2 rho c1 - c1 c2 rho - rho c1 c2 + h.c.)
//       + sum_c (n + 1) D[c] + n D[c^dag]], with D[c] = 2 c rho c^dag - {c^dag c, rho}.
void add_squeezed_reservoir(Liouvillian& l, const SparseMatrix& c1, const SparseMatrix& c2,
                            double rate, double nbar, double mbar);

// -i[H_s, .] with H_s = sum_j J_j (sigma_j^dag sigma_{j+1} + h.c.) in both arrays,
// plus the reservoir on qubits (0, N) at rate gamma. The reservoir correlation
// enters with the phase that makes the replicated state a fixed point.
// Throws DimensionBudgetExceeded for N > kMaxSpinPairs, ConfigInvalid.
Liouvillian build_xx_liouvillian(int n_sites, const std::vector<double>& coupling, double gamma,
                                 double nbar, double mbar);

enum class Parity { Even, Odd };

struct EffectiveSpinGenerators {
  // General model.
  ComplexMatrix t;
  ComplexMatrix tbar;
  // Closed form.
  ComplexMatrix x;
  ComplexMatrix y;
  ComplexMatrix w;
  ComplexMatrix z;
  ComplexMatrix calx;
  ComplexMatrix caly;
  double j_rate = 0.0;
  double gamma = 0.0;
};

struct EffectiveModel {
  Liouvillian generator;
  EffectiveSpinGenerators matrices;
  double adiabaticity = 0.0;
  bool adiabatic_warning = false;  // adiabaticity above kAdiabaticLimit
};

inline constexpr double kAdiabaticLimit = 0.1;

// g_max sqrt(nbar + 1) / min_j |Re lambda_j(M^-)|. Throws NotHurwitz.
double adiabaticity_ratio(const ArrayConfig& cfg);

// T = G [[M^-^-1 A^--, M^-^-1 A^-+], [M^+^-1 A^+-, M^+^-1 A^++]] G and
// Tbar = G [[A^-- M^-^-1, A^-+ M^+^-1], [A^+- M^-^-1, A^++ M^+^-1]]^T G,
// with G = diag(g) and A the steady-state field correlations.
EffectiveSpinGenerators effective_matrices(const ArrayConfig& cfg);

// rho' = sum_jk [T_jk s_j s_k rho + Tbar_kj rho s_j s_k - (T_kj + Tbar_jk) s_j rho s_k].
Liouvillian effective_generator(int n_sites, const ComplexMatrix& t, const ComplexMatrix& tbar);

// Requires atoms in cfg. Throws NotHurwitz, DimensionBudgetExceeded.
EffectiveModel build_effective_general(const ArrayConfig& cfg);

// N x N coefficient matrices of the closed form, one-based delta sums.
ComplexMatrix closed_form_x(int n_sites, Parity parity);
ComplexMatrix closed_form_y(int n_sites, Parity parity);
ComplexMatrix closed_form_z(int n_sites);
// AsPrinted keeps the complex W in the jump term, which breaks Hermiticity for
// N >= 2; Hermitian keeps only Re W there.
enum class ClosedFormVariant { Hermitian, AsPrinted };

// calx, caly hold the block assemblies as written; t, tbar the coefficients
// actually used by the generator.
EffectiveSpinGenerators closed_form_matrices(int n_sites, Parity parity, double j_rate,
                                             double gamma, double nbar, double mbar,
                                             ClosedFormVariant variant = ClosedFormVariant::Hermitian);

// Parameters matching a lossless homogeneous configuration: J = g^2 / eta,
// gamma_even = zeta g^2 / eta^2, gamma_odd = g^2 / zeta.
struct ClosedFormParameters {
  double j_rate = 0.0;
  double gamma = 0.0;
};
ClosedFormParameters closed_form_parameters(double g, double eta, double zeta, Parity parity);

// Throws DimensionBudgetExceeded for N > 4.
EffectiveModel build_effective_closed_form(int n_sites, Parity parity, double j_rate, double gamma,
                                           double nbar, double mbar,
                                           ClosedFormVariant variant = ClosedFormVariant::Hermitian);
// Parity matching the number of pairs.
inline Parity parity_of(int n_sites) { return n_sites % 2 == 0 ? Parity::Even : Parity::Odd; }

// Relative distance |L1 - L2|_F / |L2|_F of two generators on the same space.
double generator_distance(const Liouvillian& a, const Liouvillian& b);

}  // namespace replication
