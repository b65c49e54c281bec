#include "replication/gaussian.hpp"

#include "replication/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace replication {

QuadratureCovariance::QuadratureCovariance(RealMatrix sigma) {
  if (sigma.rows() != sigma.cols() || sigma.rows() % 2 != 0 || sigma.rows() == 0) {
    throw Error(ErrorKind::ConfigInvalid, "covariance matrix must be square with even size");
  }
  sigma_ = 0.5 * (sigma + sigma.transpose());
}

QuadratureCovariance QuadratureCovariance::vacuum(int n_modes) {
  return QuadratureCovariance(RealMatrix::Identity(2 * n_modes, 2 * n_modes));
}

RealMatrix symplectic_form(int n_modes) {
  RealMatrix omega = RealMatrix::Zero(2 * n_modes, 2 * n_modes);
  for (int m = 0; m < n_modes; ++m) {
    omega(2 * m, 2 * m + 1) = 1.0;
    omega(2 * m + 1, 2 * m) = -1.0;
  }
  return omega;
}

DriftDiffusion::DriftDiffusion(RealMatrix drift, RealMatrix diffusion)
    : drift_(std::move(drift)), diffusion_(std::move(diffusion)) {
  const auto n = drift_.rows();
  if (drift_.cols() != n || diffusion_.rows() != n || diffusion_.cols() != n) {
    throw Error(ErrorKind::ConfigInvalid, "drift and diffusion must be square and equal in size");
  }
  const double scale = std::max(1.0, diffusion_.cwiseAbs().maxCoeff());
  if ((diffusion_ - diffusion_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(ErrorKind::ConfigInvalid, "diffusion matrix is not symmetric");
  }
  diffusion_ = 0.5 * (diffusion_ + diffusion_.transpose());
  Eigen::SelfAdjointEigenSolver<RealMatrix> eig(diffusion_, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -1e-12 * scale) {
    throw Error(ErrorKind::ConfigInvalid, "diffusion matrix is not positive semidefinite");
  }
}

double max_real_eigenvalue(const ComplexMatrix& a) {
  Eigen::ComplexEigenSolver<ComplexMatrix> eig(a, false);
  return eig.eigenvalues().real().maxCoeff();
}

double max_real_eigenvalue(const RealMatrix& a) {
  Eigen::EigenSolver<RealMatrix> eig(a, false);
  return eig.eigenvalues().real().maxCoeff();
}

namespace {

// Solves T Y + Y T^H = -C for upper-triangular T.
ComplexMatrix solve_triangular_lyapunov(const ComplexMatrix& t, const ComplexMatrix& c) {
  const Eigen::Index n = t.rows();
  ComplexMatrix y = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    for (Eigen::Index j = n - 1; j >= 0; --j) {
      Complex rhs = -c(i, j);
      const Eigen::Index ti = n - i - 1;
      const Eigen::Index tj = n - j - 1;
      if (ti > 0) {
        rhs -= (t.row(i).segment(i + 1, ti) * y.col(j).segment(i + 1, ti)).value();
      }
      if (tj > 0) {
        rhs -= (y.row(i).segment(j + 1, tj) * t.row(j).segment(j + 1, tj).adjoint()).value();
      }
      y(i, j) = rhs / (t(i, i) + std::conj(t(j, j)));
    }
  }
  return y;
}

}  // namespace

ComplexMatrix solve_continuous_lyapunov(const ComplexMatrix& a, const ComplexMatrix& c) {
  Eigen::ComplexSchur<ComplexMatrix> schur(a);
  const ComplexMatrix& u = schur.matrixU();
  const ComplexMatrix y = solve_triangular_lyapunov(schur.matrixT(), u.adjoint() * c * u);
  return u * y * u.adjoint();
}

QuadratureCovariance solve_lyapunov(const DriftDiffusion& gen) {
  const RealMatrix& a = gen.drift();
  const RealMatrix& d = gen.diffusion();

  Eigen::ComplexSchur<ComplexMatrix> schur(a.cast<Complex>());
  const ComplexMatrix& t = schur.matrixT();
  const double lead = t.diagonal().real().maxCoeff();
  if (lead >= -kHurwitzTolerance) {
    std::ostringstream msg;
    msg << "drift has an eigenvalue with real part " << lead;
    throw Error(ErrorKind::NotHurwitz, msg.str());
  }
  const ComplexMatrix& u = schur.matrixU();
  const ComplexMatrix y = solve_triangular_lyapunov(t, u.adjoint() * d.cast<Complex>() * u);
  const RealMatrix sigma = (u * y * u.adjoint()).real();

  QuadratureCovariance result(sigma);
  const RealMatrix& s = result.matrix();
  const double residual = (a * s + s * a.transpose() + d).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, d.cwiseAbs().maxCoeff());
  if (residual > 1e-10 * scale) {
    std::ostringstream msg;
    msg << "Lyapunov residual " << residual << " exceeds tolerance";
    throw Error(ErrorKind::NoConvergence, msg.str());
  }
  const auto nu = symplectic_eigenvalues(result);
  if (nu.front() < 1.0 - kNonPhysicalThreshold) {
    std::ostringstream msg;
    msg << "steady state has symplectic eigenvalue " << nu.front();
    throw Error(ErrorKind::NonPhysicalResult, msg.str());
  }
  return result;
}

std::vector<double> symplectic_eigenvalues(const QuadratureCovariance& sigma) {
  const RealMatrix& s = sigma.matrix();
  Eigen::LLT<RealMatrix> llt(s);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorKind::NotPositiveDefinite, "covariance matrix is not positive definite");
  }
  const RealMatrix l = llt.matrixL();
  // i L^T Omega L is Hermitian and similar to i Omega sigma.
  const RealMatrix k = l.transpose() * symplectic_form(sigma.n_modes()) * l;
  const ComplexMatrix h = Complex(0.0, 1.0) * k.cast<Complex>();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(h, Eigen::EigenvaluesOnly);
  const RealVector& ev = eig.eigenvalues();  // ascending: -nu_max ... nu_max
  const int n = sigma.n_modes();
  std::vector<double> nu(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) nu[static_cast<std::size_t>(m)] = ev(n + m);
  std::sort(nu.begin(), nu.end());
  return nu;
}

bool is_physical(const QuadratureCovariance& sigma, double tol) {
  try {
    return symplectic_eigenvalues(sigma).front() >= 1.0 - tol;
  } catch (const Error&) {
    return false;
  }
}

QuadratureCovariance partial_transpose(const QuadratureCovariance& sigma, int mode) {
  if (mode < 0 || mode >= sigma.n_modes()) {
    throw Error(ErrorKind::IndexOutOfRange, "mode index out of range");
  }
  RealMatrix s = sigma.matrix();
  const Eigen::Index p = 2 * mode + 1;
  s.row(p) *= -1.0;
  s.col(p) *= -1.0;
  return QuadratureCovariance(std::move(s));
}

double log_negativity_gaussian(const QuadratureCovariance& sigma) {
  if (sigma.n_modes() != 2) {
    throw Error(ErrorKind::ConfigInvalid, "log negativity requires a two-mode covariance matrix");
  }
  const double nu = symplectic_eigenvalues(partial_transpose(sigma, 1)).front();
  if (nu >= 1.0 - 1e-12) return 0.0;
  return -std::log2(nu);
}

double normalized_logneg(double e) { return e / (1.0 + e); }

QuadratureCovariance reduce_to_pair(const QuadratureCovariance& sigma, int j, int k) {
  const int n = sigma.n_modes();
  if (j < 0 || k < 0 || j >= n || k >= n || j == k) {
    throw Error(ErrorKind::IndexOutOfRange, "pair indices must be distinct valid modes");
  }
  const int modes[2] = {j, k};
  RealMatrix block(4, 4);
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      block.block<2, 2>(2 * a, 2 * b) = sigma.matrix().block<2, 2>(2 * modes[a], 2 * modes[b]);
    }
  }
  return QuadratureCovariance(std::move(block));
}

QuadratureCovariance two_mode_squeezed_thermal_cm(double nbar, double mbar) {
  if (nbar < 0.0 || mbar < 0.0) {
    throw Error(ErrorKind::ConfigInvalid, "occupation and correlation must be nonnegative");
  }
  if (mbar > std::sqrt(nbar * (nbar + 1.0)) + 1e-12) {
    throw Error(ErrorKind::OverSqueezed, "m exceeds sqrt(n (n + 1))");
  }
  RealMatrix s = RealMatrix::Zero(4, 4);
  s.diagonal().setConstant(2.0 * nbar + 1.0);
  s(0, 2) = s(2, 0) = 2.0 * mbar;
  s(1, 3) = s(3, 1) = -2.0 * mbar;
  return QuadratureCovariance(std::move(s));
}

}  // namespace replication
