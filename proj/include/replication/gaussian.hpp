#pragma once

// Gaussian-state conventions.
//
// Quadratures are ordered R = (x_1, p_1, ..., x_n, p_n) with
// x = (a + a^dag)/sqrt(2) and p = (a - a^dag)/(i sqrt(2)). The covariance
// matrix is sigma_ij = <dR_i dR_j + dR_j dR_i>, so the vacuum is the identity
// and a mode with mean occupation n has sigma = (2n + 1) I_2. The commutator
// is [R_i, R_j] = i Omega_ij with 2x2 blocks [[0, 1], [-1, 0]].
//
// Logarithmic negativities are reported in base 2 everywhere.

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace replication {

using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;
using Complex = std::complex<double>;

inline constexpr double kHurwitzTolerance = 1e-12;
inline constexpr double kPhysicalTolerance = 1e-9;
inline constexpr double kNonPhysicalThreshold = 1e-6;

class QuadratureCovariance {
 public:
  // Symmetrizes the input. Throws ConfigInvalid if not square with even size.
  explicit QuadratureCovariance(RealMatrix sigma);

  static QuadratureCovariance vacuum(int n_modes);

  int n_modes() const { return static_cast<int>(sigma_.rows() / 2); }
  const RealMatrix& matrix() const { return sigma_; }
  double operator()(Eigen::Index i, Eigen::Index j) const { return sigma_(i, j); }

 private:
  RealMatrix sigma_;
};

// Block-diagonal Omega for n modes.
RealMatrix symplectic_form(int n_modes);

// Moment-equation form of a quadratic master equation:
// d sigma/dt = A sigma + sigma A^T + D.
class DriftDiffusion {
 public:
  // Throws ConfigInvalid if sizes disagree, D is not symmetric, or D has an
  // eigenvalue below -1e-12 * max(1, |D|).
  DriftDiffusion(RealMatrix drift, RealMatrix diffusion);

  const RealMatrix& drift() const { return drift_; }
  const RealMatrix& diffusion() const { return diffusion_; }

 private:
  RealMatrix drift_;
  RealMatrix diffusion_;
};

// Largest real part over the spectrum of a real matrix.
double max_real_eigenvalue(const RealMatrix& a);
double max_real_eigenvalue(const ComplexMatrix& a);

// Solves A X + X A^H + C = 0 by complex Schur back-substitution
// (Bartels-Stewart). No stability or physicality checks.
ComplexMatrix solve_continuous_lyapunov(const ComplexMatrix& a, const ComplexMatrix& c);

// Steady-state covariance of a drift/diffusion pair.
// Throws NotHurwitz, NonPhysicalResult, or NoConvergence (residual check).
QuadratureCovariance solve_lyapunov(const DriftDiffusion& gen);

// Moduli of the eigenvalues of i Omega sigma, ascending, one per mode.
// Throws NotPositiveDefinite.
std::vector<double> symplectic_eigenvalues(const QuadratureCovariance& sigma);

// True when every symplectic eigenvalue is >= 1 - tol.
bool is_physical(const QuadratureCovariance& sigma, double tol = kPhysicalTolerance);

// Flips the sign of the p quadrature of `mode` (rows and columns).
QuadratureCovariance partial_transpose(const QuadratureCovariance& sigma, int mode);

// max(0, -log2 nu) with nu the smallest symplectic eigenvalue of the
// covariance after transposing the second mode. Requires a 4x4 input.
double log_negativity_gaussian(const QuadratureCovariance& sigma);

// E / (1 + E).
double normalized_logneg(double e);

// 4x4 block on modes (j, k) in that order. Indices are zero-based.
QuadratureCovariance reduce_to_pair(const QuadratureCovariance& sigma, int j, int k);

// Diagonal blocks (2n+1) I_2, cross block diag(2m, -2m).
// Throws OverSqueezed when m > sqrt(n (n + 1)) + 1e-12.
QuadratureCovariance two_mode_squeezed_thermal_cm(double nbar, double mbar);

}  // namespace replication
