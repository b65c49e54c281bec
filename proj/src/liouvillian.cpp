#include "replication/liouvillian.hpp"

#include "replication/error.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <string>

namespace replication {

namespace {

constexpr double kHermitianTolerance = 1e-10;
constexpr double kTraceTolerance = 1e-10;
constexpr double kEigenTolerance = 1e-8;

double max_abs(const SparseMatrix& m) {
  double v = 0.0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) v = std::max(v, std::abs(it.value()));
  return v;
}

}  // namespace

ComplexVector vectorize(const ComplexMatrix& rho) {
  return Eigen::Map<const ComplexVector>(rho.data(), rho.size());
}

ComplexMatrix unvectorize(const ComplexVector& v, Eigen::Index dim) {
  if (v.size() != dim * dim)
    throw Error(ErrorKind::IndexOutOfRange, "unvectorize: length is not dim^2");
  return Eigen::Map<const ComplexMatrix>(v.data(), dim, dim);
}

SparseMatrix sparse_identity(Eigen::Index dim) {
  SparseMatrix id(dim, dim);
  id.setIdentity();
  return id;
}

SparseMatrix kron(const SparseMatrix& a, const SparseMatrix& b) {
  std::vector<Eigen::Triplet<Complex>> t;
  t.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
  for (int ka = 0; ka < a.outerSize(); ++ka)
    for (SparseMatrix::InnerIterator ia(a, ka); ia; ++ia)
      for (int kb = 0; kb < b.outerSize(); ++kb)
        for (SparseMatrix::InnerIterator ib(b, kb); ib; ++ib)
          t.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                         ia.value() * ib.value());
  SparseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  out.setFromTriplets(t.begin(), t.end());
  return out;
}

SparseMatrix embed(const SparseMatrix& op, int position, const std::vector<int>& dims) {
  if (position < 0 || position >= static_cast<int>(dims.size()))
    throw Error(ErrorKind::IndexOutOfRange, "embed: position out of range");
  if (op.rows() != dims[position] || op.cols() != dims[position])
    throw Error(ErrorKind::IndexOutOfRange, "embed: operator does not match subsystem");
  Eigen::Index before = 1, after = 1;
  for (int i = 0; i < position; ++i) before *= dims[i];
  for (std::size_t i = position + 1; i < dims.size(); ++i) after *= dims[i];
  return kron(kron(sparse_identity(before), op), sparse_identity(after));
}

SparseMatrix qubit_lowering() {
  SparseMatrix s(2, 2);
  s.insert(0, 1) = 1.0;
  return s;
}

SparseMatrix boson_annihilation(int n_max) {
  if (n_max < 1) throw Error(ErrorKind::ConfigInvalid, "boson_annihilation: n_max < 1");
  SparseMatrix a(n_max + 1, n_max + 1);
  for (int n = 1; n <= n_max; ++n) a.insert(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

DensityMatrix::DensityMatrix(ComplexMatrix rho) : rho_(std::move(rho)) {
  if (rho_.rows() != rho_.cols() || rho_.rows() == 0)
    throw Error(ErrorKind::InvalidState, "density matrix must be square and non-empty");
  double herm = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
  if (herm > kHermitianTolerance)
    throw Error(ErrorKind::InvalidState, "density matrix not Hermitian: " + std::to_string(herm));
  Complex tr = rho_.trace();
  if (std::abs(tr - 1.0) > kTraceTolerance)
    throw Error(ErrorKind::InvalidState, "density matrix trace " + std::to_string(tr.real()));
  ComplexMatrix h = 0.5 * (rho_ + rho_.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kEigenTolerance)
    throw Error(ErrorKind::InvalidState,
                "density matrix has eigenvalue " + std::to_string(es.eigenvalues().minCoeff()));
  rho_ = h;
}

DensityMatrix pure_state_dm(const ComplexVector& psi) {
  double n = psi.norm();
  if (n == 0.0) throw Error(ErrorKind::InvalidState, "zero state vector");
  ComplexVector u = psi / n;
  return DensityMatrix(u * u.adjoint());
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, const std::vector<int>& dims,
                            const std::vector<int>& keep) {
  const int n = static_cast<int>(dims.size());
  Eigen::Index total = 1;
  for (int d : dims) total *= d;
  if (rho.rows() != total || rho.cols() != total)
    throw Error(ErrorKind::IndexOutOfRange, "partial_trace: dimension mismatch");
  std::vector<bool> kept(n, false);
  for (int k : keep) {
    if (k < 0 || k >= n || kept[k])
      throw Error(ErrorKind::IndexOutOfRange, "partial_trace: bad subsystem list");
    kept[k] = true;
  }
  Eigen::Index keep_dim = 1;
  for (int k : keep) keep_dim *= dims[k];

  // Map a full index to (kept index, traced index).
  std::vector<Eigen::Index> kept_of(total), traced_of(total);
  std::vector<int> digit(n);
  for (Eigen::Index idx = 0; idx < total; ++idx) {
    Eigen::Index rem = idx;
    for (int s = n - 1; s >= 0; --s) {
      digit[s] = static_cast<int>(rem % dims[s]);
      rem /= dims[s];
    }
    Eigen::Index kidx = 0, tidx = 0;
    for (int k : keep) kidx = kidx * dims[k] + digit[k];
    for (int s = 0; s < n; ++s)
      if (!kept[s]) tidx = tidx * dims[s] + digit[s];
    kept_of[idx] = kidx;
    traced_of[idx] = tidx;
  }
  ComplexMatrix out = ComplexMatrix::Zero(keep_dim, keep_dim);
  for (Eigen::Index c = 0; c < total; ++c)
    for (Eigen::Index r = 0; r < total; ++r)
      if (traced_of[r] == traced_of[c]) out(kept_of[r], kept_of[c]) += rho(r, c);
  return out;
}

DensityMatrix reduced_pair_dm(const DensityMatrix& rho, int j, int k) {
  Eigen::Index d = rho.dim();
  int n = 0;
  while ((Eigen::Index{1} << n) < d) ++n;
  if ((Eigen::Index{1} << n) != d)
    throw Error(ErrorKind::InvalidState, "reduced_pair_dm: dimension is not a power of two");
  if (j < 0 || k < 0 || j >= n || k >= n || j == k)
    throw Error(ErrorKind::IndexOutOfRange, "reduced_pair_dm: qubit indices out of range");
  return DensityMatrix(partial_trace(rho.matrix(), std::vector<int>(n, 2), {j, k}));
}

double logneg_qubits(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw Error(ErrorKind::InvalidState, "logneg_qubits: expected a 4x4 state");
  const ComplexMatrix& m = rho.matrix();
  ComplexMatrix pt(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) pt(2 * a + b, 2 * c + d) = m(2 * a + d, 2 * c + b);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(pt, Eigen::EigenvaluesOnly);
  const double norm = es.eigenvalues().cwiseAbs().sum();
  // Separable states give norm 1 up to roundoff.
  if (norm <= 1.0 + 1e-12) return 0.0;
  return std::log2(norm);
}

double fidelity(const ComplexVector& psi, const DensityMatrix& rho) {
  if (psi.size() != rho.dim()) throw Error(ErrorKind::IndexOutOfRange, "fidelity: dimension mismatch");
  ComplexVector u = psi / psi.norm();
  return std::real(u.dot(rho.matrix() * u));
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorKind::IndexOutOfRange, "trace_distance: dimension mismatch");
  ComplexMatrix diff = a - b;
  ComplexMatrix h = 0.5 * (diff + diff.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

Liouvillian::Liouvillian(Eigen::Index dim, std::vector<int> charges)
    : dim_(dim), charges_(std::move(charges)) {
  if (dim < 1) throw Error(ErrorKind::ConfigInvalid, "Liouvillian: dim < 1");
  if (!charges_.empty() && static_cast<Eigen::Index>(charges_.size()) != dim)
    throw Error(ErrorKind::ConfigInvalid, "Liouvillian: charge list has wrong length");
}

void Liouvillian::add_term(Complex coef, SparseMatrix left, SparseMatrix right) {
  if (left.rows() != dim_ || left.cols() != dim_ || right.rows() != dim_ || right.cols() != dim_)
    throw Error(ErrorKind::IndexOutOfRange, "Liouvillian: operator dimension mismatch");
  if (coef == Complex(0.0)) return;
  left.prune(Complex(0.0));
  right.prune(Complex(0.0));
  if (left.nonZeros() == 0 || right.nonZeros() == 0) return;
  terms_.push_back({coef, std::move(left), std::move(right)});
}

void Liouvillian::add_hamiltonian(const SparseMatrix& h) {
  SparseMatrix id = sparse_identity(dim_);
  add_term(Complex(0.0, -1.0), h, id);
  add_term(Complex(0.0, 1.0), id, h);
}

void Liouvillian::add_dissipator(const SparseMatrix& c, double rate) {
  if (rate < 0.0) throw Error(ErrorKind::ConfigInvalid, "negative dissipation rate");
  SparseMatrix cd = c.adjoint();
  SparseMatrix cdc = cd * c;
  SparseMatrix id = sparse_identity(dim_);
  add_term(2.0 * rate, c, cd);
  add_term(-rate, cdc, id);
  add_term(-rate, id, cdc);
}

ComplexMatrix Liouvillian::apply(const ComplexMatrix& rho) const {
  ComplexMatrix out = ComplexMatrix::Zero(dim_, dim_);
  for (const auto& t : terms_) {
    ComplexMatrix lr = t.left * rho;
    out.noalias() += t.coef * (t.right.transpose() * lr.transpose()).transpose();
  }
  return out;
}

ComplexMatrix Liouvillian::apply_adjoint(const ComplexMatrix& x) const {
  ComplexMatrix out = ComplexMatrix::Zero(dim_, dim_);
  for (const auto& t : terms_) {
    SparseMatrix la = t.left.adjoint();
    SparseMatrix ra = t.right.adjoint();
    ComplexMatrix lx = la * x;
    out.noalias() += std::conj(t.coef) * (ra.transpose() * lx.transpose()).transpose();
  }
  return out;
}

double Liouvillian::scale() const {
  double s = 0.0;
  for (const auto& t : terms_) s += std::abs(t.coef) * max_abs(t.left) * max_abs(t.right);
  return s;
}

Sector Liouvillian::zero_charge_sector() const {
  if (charges_.empty()) return full_space();
  Sector s;
  const Eigen::Index n = dim_ * dim_;
  s.position.assign(static_cast<std::size_t>(n), -1);
  for (Eigen::Index c = 0; c < dim_; ++c)
    for (Eigen::Index r = 0; r < dim_; ++r)
      if (charges_[r] == charges_[c]) {
        s.position[r + c * dim_] = static_cast<Eigen::Index>(s.flat.size());
        s.flat.push_back(r + c * dim_);
      }
  return s;
}

Sector Liouvillian::full_space() const {
  Sector s;
  const Eigen::Index n = dim_ * dim_;
  s.flat.resize(n);
  s.position.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) s.flat[i] = s.position[i] = i;
  return s;
}

SparseMatrix Liouvillian::sector_matrix(const Sector& sector) const {
  // vec(L rho R)[r + c d] = sum L(r, r') rho(r', c') R(c', c).
  const Eigen::Index n = static_cast<Eigen::Index>(sector.flat.size());
  std::vector<Eigen::Triplet<Complex>> trip;
  double leak = 0.0;
  for (const auto& t : terms_) {
    // Column-compressed R gives, for each output column c, the input columns c'.
    SparseMatrix lrow = t.left;  // column-major: iterate columns r' of L, entries L(r, r')
    for (Eigen::Index c = 0; c < dim_; ++c) {
      for (SparseMatrix::InnerIterator ir(t.right, c); ir; ++ir) {
        const Eigen::Index cp = ir.row();
        const Complex rv = ir.value() * t.coef;
        for (Eigen::Index rp = 0; rp < dim_; ++rp) {
          const Eigen::Index col = sector.position[rp + cp * dim_];
          if (col < 0) continue;
          for (SparseMatrix::InnerIterator il(lrow, rp); il; ++il) {
            const Eigen::Index r = il.row();
            const Eigen::Index row = sector.position[r + c * dim_];
            const Complex v = il.value() * rv;
            if (row < 0) {
              leak = std::max(leak, std::abs(v));
              continue;
            }
            trip.emplace_back(row, col, v);
          }
        }
      }
    }
  }
  if (leak > 1e-12 * std::max(1.0, scale()))
    throw Error(ErrorKind::NoConvergence,
                "Liouvillian couples the symmetric sector to its complement (" +
                    std::to_string(leak) + ")");
  SparseMatrix out(n, n);
  out.setFromTriplets(trip.begin(), trip.end());
  out.prune(Complex(0.0), 1e-300);
  return out;
}

namespace {

ComplexMatrix assemble_rho(const ComplexVector& x, const Sector& sector, Eigen::Index dim) {
  ComplexMatrix rho = ComplexMatrix::Zero(dim, dim);
  for (std::size_t i = 0; i < sector.flat.size(); ++i) {
    Eigen::Index f = sector.flat[i];
    rho(f % dim, f / dim) = x(static_cast<Eigen::Index>(i));
  }
  return rho;
}

ComplexMatrix normalize_state(ComplexMatrix rho) {
  Complex tr = rho.trace();
  if (std::abs(tr) < 1e-300)
    throw Error(ErrorKind::NoConvergence, "kernel vector has vanishing trace");
  rho /= tr;
  return 0.5 * (rho + rho.adjoint());
}

// Spectral norm estimate by power iteration on A^H A.
double spectral_norm_estimate(const SparseMatrix& a) {
  ComplexVector x = ComplexVector::Ones(a.cols());
  for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = Complex(1.0 + 0.37 * std::sin(1.3 * i), 0.0);
  x.normalize();
  double est = 0.0;
  for (int it = 0; it < 60; ++it) {
    ComplexVector y = a.adjoint() * (a * x);
    double nrm = y.norm();
    if (nrm == 0.0) return 0.0;
    double next = std::sqrt(nrm);
    x = y / nrm;
    if (it > 5 && std::abs(next - est) <= 1e-6 * next) {
      est = next;
      break;
    }
    est = next;
  }
  return est;
}

}  // namespace

SteadyState steady_state_dm(const Liouvillian& l, const SteadyStateOptions& options) {
  const Eigen::Index d = l.dim();
  Sector sector = options.use_symmetry ? l.zero_charge_sector() : l.full_space();
  SparseMatrix ls = l.sector_matrix(sector);
  const Eigen::Index n = ls.rows();

  SteadyStateMethod method = options.method;
  if (method == SteadyStateMethod::Auto)
    method = static_cast<std::size_t>(n) <= options.dense_limit ? SteadyStateMethod::DenseSvd
                                                                : SteadyStateMethod::SparseLu;

  ComplexMatrix rho;
  double gap = 0.0, norm = 0.0;
  if (method == SteadyStateMethod::DenseSvd) {
    ComplexMatrix dense(ls);
    Eigen::BDCSVD<ComplexMatrix> svd(dense, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    norm = s(0);
    if (norm == 0.0) throw Error(ErrorKind::DegenerateSteadyState, "zero generator");
    double second = n >= 2 ? s(n - 2) : norm;
    gap = second / norm;
    if (second < options.uniqueness_tolerance * norm)
      throw Error(ErrorKind::DegenerateSteadyState,
                  "second-smallest singular value " + std::to_string(second) + " relative to " +
                      std::to_string(norm));
    rho = assemble_rho(svd.matrixV().col(n - 1), sector, d);
  } else {
    norm = spectral_norm_estimate(ls);
    if (norm == 0.0) throw Error(ErrorKind::DegenerateSteadyState, "zero generator");
    // Border with the trace functional: [[L, s w], [s w^T, 0]] [x; 0] = [0; s].
    const double s = norm;
    std::vector<Eigen::Triplet<Complex>> trip;
    trip.reserve(static_cast<std::size_t>(ls.nonZeros() + 2 * d));
    for (int k = 0; k < ls.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(ls, k); it; ++it)
        trip.emplace_back(it.row(), it.col(), it.value());
    for (Eigen::Index i = 0; i < d; ++i) {
      Eigen::Index p = sector.position[i + i * d];
      trip.emplace_back(n, p, s);
      trip.emplace_back(p, n, s);
    }
    SparseMatrix b(n + 1, n + 1);
    b.setFromTriplets(trip.begin(), trip.end());
    b.makeCompressed();
    Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
    lu.analyzePattern(b);
    lu.factorize(b);
    if (lu.info() != Eigen::Success)
      throw Error(ErrorKind::DegenerateSteadyState,
                  "bordered generator is singular: " + lu.lastErrorMessage());
    ComplexVector rhs = ComplexVector::Zero(n + 1);
    rhs(n) = s;
    ComplexVector x = lu.solve(rhs);
    // One step of iterative refinement.
    ComplexVector r = rhs - b * x;
    x += lu.solve(r);

    // Smallest singular value of the bordered matrix by inverse iteration on B^H B.
    ComplexVector v(n + 1);
    for (Eigen::Index i = 0; i <= n; ++i) v(i) = Complex(std::cos(0.7 * i + 0.1), std::sin(1.1 * i));
    v.normalize();
    double sigma_min = 0.0, prev = -1.0;
    for (int it = 0; it < 80; ++it) {
      ComplexVector y = lu.solve(v);
      ComplexVector z = lu.adjoint().solve(y);
      double nz = z.norm();
      if (!std::isfinite(nz) || nz == 0.0)
        throw Error(ErrorKind::DegenerateSteadyState, "inverse iteration broke down");
      sigma_min = 1.0 / std::sqrt(nz);
      v = z / nz;
      if (prev > 0.0 && std::abs(sigma_min - prev) <= 1e-4 * sigma_min) break;
      prev = sigma_min;
    }
    gap = sigma_min / norm;
    if (sigma_min < options.uniqueness_tolerance * norm)
      throw Error(ErrorKind::DegenerateSteadyState,
                  "bordered generator smallest singular value " + std::to_string(sigma_min) +
                      " relative to " + std::to_string(norm));
    rho = assemble_rho(x.head(n), sector, d);
  }

  rho = normalize_state(rho);
  double residual = l.apply(rho).cwiseAbs().maxCoeff();
  if (residual > options.residual_tolerance)
    throw Error(ErrorKind::NoConvergence,
                "steady-state residual " + std::to_string(residual) + " above tolerance");
  return SteadyState{DensityMatrix(std::move(rho)), residual, gap, norm,
                     static_cast<std::size_t>(n), method};
}

}  // namespace replication
