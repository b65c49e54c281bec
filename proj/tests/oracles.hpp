#pragma once

// Reference computations for the tests. Each one takes a route that does not
// share code with the library path it checks.

#include "replication/gaussian.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>
#include <vector>

namespace oracle {

using replication::Complex;
using replication::ComplexMatrix;
using replication::ComplexVector;
using replication::RealMatrix;

// A X + X A^T + D = 0 through the Kronecker-vectorized linear system.
inline RealMatrix lyapunov_kron(const RealMatrix& a, const RealMatrix& d) {
  const Eigen::Index n = a.rows();
  const RealMatrix id = RealMatrix::Identity(n, n);
  RealMatrix big(n * n, n * n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      big.block(i * n, j * n, n, n) = id(i, j) * a + a(i, j) * id;
  const Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(d.data(), n * n);
  const Eigen::VectorXd x = big.fullPivLu().solve(rhs);
  return Eigen::Map<const RealMatrix>(x.data(), n, n);
}

// Smallest symplectic eigenvalue of the partially transposed two-mode
// covariance from the local invariants det A, det B, det C, det sigma.
inline double pt_symplectic_min(const RealMatrix& s) {
  const double det_a = s.block(0, 0, 2, 2).determinant();
  const double det_b = s.block(2, 2, 2, 2).determinant();
  const double det_c = s.block(0, 2, 2, 2).determinant();
  const double delta = det_a + det_b - 2.0 * det_c;
  const double disc = std::max(0.0, delta * delta - 4.0 * s.determinant());
  return std::sqrt(std::max(0.0, (delta - std::sqrt(disc)) / 2.0));
}

inline double gaussian_logneg(const RealMatrix& s) {
  return std::max(0.0, -std::log2(pt_symplectic_min(s)));
}

// Kronecker product of dense matrices.
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Column-stacked superoperators: vec(A X B) = (B^T (x) A) vec X.
inline ComplexMatrix left_right(const ComplexMatrix& l, const ComplexMatrix& r) { return kron(r.transpose(), l); }

inline ComplexMatrix dissipator(const ComplexMatrix& c, double rate) {
  const ComplexMatrix id = ComplexMatrix::Identity(c.rows(), c.cols());
  const ComplexMatrix cdc = c.adjoint() * c;
  return rate * (2.0 * left_right(c, c.adjoint()) - left_right(cdc, id) - left_right(id, cdc));
}

inline ComplexMatrix commutator(const ComplexMatrix& h) {
  const ComplexMatrix id = ComplexMatrix::Identity(h.rows(), h.cols());
  return Complex(0, -1) * (left_right(h, id) - left_right(id, h));
}

// Kernel vector of a dense superoperator, reshaped into a unit-trace matrix.
inline ComplexMatrix dense_kernel_state(const ComplexMatrix& l, Eigen::Index dim) {
  Eigen::JacobiSVD<ComplexMatrix> svd(l, Eigen::ComputeFullV);
  const ComplexVector v = svd.matrixV().col(svd.matrixV().cols() - 1);
  ComplexMatrix rho = Eigen::Map<const ComplexMatrix>(v.data(), dim, dim);
  rho /= rho.trace();
  return 0.5 * (rho + rho.adjoint());
}

// Symmetrized output-field spectrum from the quantum Langevin equations in
// the frequency domain: dR/dt = A R + K R_in + F, R_out = K R - R_in, with
// vacuum input noise (identity) at every port and white reservoir noise of
// covariance d_reservoir. Returns Re(T N T^dag) with the noise stacked as
// (R_in, F).
inline RealMatrix langevin_output_covariance(const RealMatrix& a, const RealMatrix& port,
                                             const RealMatrix& d_reservoir, double omega) {
  const Eigen::Index n = a.rows();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix g = (Complex(0, -omega) * id - a.cast<Complex>()).inverse();
  const ComplexMatrix k = port.cast<Complex>();
  const ComplexMatrix t_in = k * g * k - id;
  const ComplexMatrix t_res = k * g;
  const ComplexMatrix out = t_in * t_in.adjoint() + t_res * d_reservoir.cast<Complex>() * t_res.adjoint();
  return out.real();
}

inline RealMatrix random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> normal;
  RealMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = normal(rng);
  return m;
}

inline ComplexMatrix random_complex(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  return random_matrix(rng, rows, cols).cast<Complex>() + Complex(0, 1) * random_matrix(rng, rows, cols).cast<Complex>();
}

inline ComplexMatrix random_density(std::mt19937_64& rng, Eigen::Index dim) {
  const ComplexMatrix b = random_complex(rng, dim, dim);
  ComplexMatrix rho = b * b.adjoint();
  return rho / rho.trace();
}

}  // namespace oracle
