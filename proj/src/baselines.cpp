#include "replication/baselines.hpp"

#include "replication/error.hpp"

#include <cmath>

namespace replication {

DrivingStatistics driving_params(const DrivingFieldSpec& spec) {
  if (spec.nbar_thermal < 0.0 || spec.squeezing < 0.0) {
    throw Error(ErrorKind::ConfigInvalid, "driving field parameters must be nonnegative");
  }
  const double sh = std::sinh(spec.squeezing);
  return {spec.nbar_thermal + (2.0 * spec.nbar_thermal + 1.0) * sh * sh,
          (spec.nbar_thermal + 0.5) * std::sinh(2.0 * spec.squeezing)};
}

double driving_entanglement(double nbar, double mbar) {
  if (nbar < 0.0 || mbar < 0.0) {
    throw Error(ErrorKind::ConfigInvalid, "driving statistics must be nonnegative");
  }
  if (mbar > std::sqrt(nbar * (nbar + 1.0)) + 1e-12) {
    throw Error(ErrorKind::OverSqueezed, "m exceeds sqrt(n (n + 1))");
  }
  return std::max(0.0, -std::log2(2.0 * nbar + 1.0 - 2.0 * mbar));
}

double replication_amplitude(double nbar) { return std::sqrt(nbar / (2.0 * nbar + 1.0)); }

ComplexVector replicated_state(double nbar, int n_sites) {
  if (nbar < 0.0 || n_sites < 1) {
    throw Error(ErrorKind::ConfigInvalid, "replicated state needs nbar >= 0 and N >= 1");
  }
  const int qubits = 2 * n_sites;
  const double c = replication_amplitude(nbar);
  const double s = std::sqrt(1.0 - c * c);
  const Eigen::Index dim = Eigen::Index{1} << qubits;
  ComplexVector psi = ComplexVector::Zero(dim);
  // Only basis states where qubits j and N + j agree carry amplitude.
  for (Eigen::Index pattern = 0; pattern < (Eigen::Index{1} << n_sites); ++pattern) {
    Eigen::Index index = 0;
    double amp = 1.0;
    for (int j = 0; j < n_sites; ++j) {
      const bool excited = (pattern >> j) & 1;
      if (excited) {
        index |= Eigen::Index{1} << (qubits - 1 - j);
        index |= Eigen::Index{1} << (qubits - 1 - (n_sites + j));
        amp *= (j % 2 == 0) ? c : -c;
      } else {
        amp *= s;
      }
    }
    psi(index) = amp;
  }
  return psi;
}

double pure_pair_logneg(double c) { return std::log2(1.0 + 2.0 * c * std::sqrt(1.0 - c * c)); }

}  // namespace replication
