#pragma once

// Finite-dimensional master equations. A generator is kept as a list of
// terms coef * left * rho * right and realized as a matrix on demand, either
// on the full vectorized space or on a single charge sector.
//
// Vectorization is column stacking: vec(rho)[r + c d] = rho(r, c), so that
// vec(A rho B) = (B^T (x) A) vec(rho).

#include "replication/gaussian.hpp"

#include <Eigen/Sparse>

#include <cstddef>
#include <vector>

namespace replication {

using SparseMatrix = Eigen::SparseMatrix<Complex>;

ComplexVector vectorize(const ComplexMatrix& rho);
ComplexMatrix unvectorize(const ComplexVector& v, Eigen::Index dim);

SparseMatrix sparse_identity(Eigen::Index dim);
SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b);
// op acting on subsystem `position` of a register with the given dimensions.
SparseMatrix embed(const SparseMatrix& op, int position, const std::vector<int>& dims);
// |0><1| on a qubit (lowering; level |1> of the notation is index 0).
SparseMatrix qubit_lowering();
SparseMatrix boson_annihilation(int n_max);

class DensityMatrix {
 public:
  // Throws InvalidState unless Hermitian (1e-10), unit trace (1e-10), and
  // with minimum eigenvalue >= -1e-8.
  explicit DensityMatrix(ComplexMatrix rho);

  Eigen::Index dim() const { return rho_.rows(); }
  const ComplexMatrix& matrix() const { return rho_; }

 private:
  ComplexMatrix rho_;
};

DensityMatrix pure_state_dm(const ComplexVector& psi);

// Partial trace keeping `keep` (in that order) of a register with `dims`.
ComplexMatrix partial_trace(const ComplexMatrix& rho, const std::vector<int>& dims,
                            const std::vector<int>& keep);

// Two-qubit state of qubits (j, k), zero-based, from an n-qubit register.
DensityMatrix reduced_pair_dm(const DensityMatrix& rho, int j, int k);

// log2 of the trace norm of the partial transpose on the second qubit.
double logneg_qubits(const DensityMatrix& rho);

double fidelity(const ComplexVector& psi, const DensityMatrix& rho);
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

struct SuperTerm {
  Complex coef;
  SparseMatrix left;
  SparseMatrix right;
};

// Index set of vectorized entries (r, c) with equal charges.
struct Sector {
  std::vector<Eigen::Index> flat;       // sector position -> r + c d
  std::vector<Eigen::Index> position;   // r + c d -> sector position, or -1
};

class Liouvillian {
 public:
  // `charges` labels a conserved quantity per basis state; the generator must
  // not couple entries (r, c) with q_r - q_c = 0 to entries with q_r != q_c.
  // Empty charges means no symmetry is used.
  explicit Liouvillian(Eigen::Index dim, std::vector<int> charges = {});

  void add_term(Complex coef, SparseMatrix left, SparseMatrix right);
  // -i [H, rho]
  void add_hamiltonian(const SparseMatrix& h);
  // rate (2 c rho c^dag - {c^dag c, rho})
  void add_dissipator(const SparseMatrix& c, double rate);

  Eigen::Index dim() const { return dim_; }
  const std::vector<int>& charges() const { return charges_; }
  const std::vector<SuperTerm>& terms() const { return terms_; }

  ComplexMatrix apply(const ComplexMatrix& rho) const;
  ComplexMatrix apply_adjoint(const ComplexMatrix& x) const;

  // Sum of |coef| |left|_max |right|_max over the terms.
  double scale() const;

  Sector zero_charge_sector() const;
  Sector full_space() const;
  // Throws NoConvergence if the terms leak out of the sector by more than
  // 1e-12 * scale().
  SparseMatrix sector_matrix(const Sector& sector) const;
  SparseMatrix sparse() const { return sector_matrix(full_space()); }
  ComplexMatrix dense() const { return ComplexMatrix(sparse()); }

 private:
  Eigen::Index dim_;
  std::vector<int> charges_;
  std::vector<SuperTerm> terms_;
};

enum class SteadyStateMethod { Auto, DenseSvd, SparseLu };

struct SteadyStateOptions {
  SteadyStateMethod method = SteadyStateMethod::Auto;
  bool use_symmetry = true;
  std::size_t dense_limit = 512;  // largest unknown count solved densely under Auto
  double uniqueness_tolerance = 1e-8;
  double residual_tolerance = 1e-9;
};

struct SteadyState {
  DensityMatrix rho;
  double residual = 0.0;     // max |L(rho)|
  double gap = 0.0;          // certified separation from a second kernel vector, relative to |L|
  double norm = 0.0;         // spectral norm estimate of the solved matrix
  std::size_t unknowns = 0;
  SteadyStateMethod method = SteadyStateMethod::Auto;
};

// Unit-trace Hermitian kernel vector. Dense path: second-smallest singular
// value >= tol |L|. Sparse path: smallest singular value of the
// trace-bordered matrix >= tol |L|. Throws DegenerateSteadyState or
// NoConvergence.
SteadyState steady_state_dm(const Liouvillian& l, const SteadyStateOptions& options = {});

}  // namespace replication
