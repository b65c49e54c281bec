#pragma once

// Closed-form reference quantities for the squeezed driving field and the
// replicated pure state of the two-level systems.
//
// Qubit convention (shared with spin models): qubit q occupies bit
// (2N - 1 - q) of the basis index, so qubit 0 is the most significant. Level
// |1> (ground, annihilated by the lowering operator) is bit value 0, level |2>
// (excited) is bit value 1. Array one holds qubits [0, N), array two [N, 2N).

#include "replication/gaussian.hpp"

namespace replication {

struct DrivingFieldSpec {
  double nbar_thermal = 0.0;
  double squeezing = 0.0;  // r_0
};

struct DrivingStatistics {
  double nbar = 0.0;
  double mbar = 0.0;
};

DrivingStatistics driving_params(const DrivingFieldSpec& spec);

// max(0, -log2(2n + 1 - 2m)). Throws OverSqueezed.
double driving_entanglement(double nbar, double mbar);

// c = sqrt(n / (2n + 1)).
double replication_amplitude(double nbar);

// Tensor product over pairs (j, N + j) of
// sqrt(1 - c^2)|1,1> + (-1)^j c |2,2>, with j zero-based.
ComplexVector replicated_state(double nbar, int n_sites);

// log2(1 + 2 c sqrt(1 - c^2)) for a pair in Schmidt form.
double pure_pair_logneg(double c);

}  // namespace replication
