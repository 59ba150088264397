#pragma once

#include <stdexcept>

#include "hqkd/quantum_core.hpp"
#include "hqkd/random_stream.hpp"

namespace hqkd {

enum class NoiseScope {
  AllQubits,           // GHZ states (d = 8) and B92 qubits (d = 2) are depolarized
  QuantumChannelOnly,  // only the B92 qubit travelling Alice -> Bob is depolarized
};

struct NoiseConfig {
  double p = 0.0;
  NoiseScope apply_to = NoiseScope::AllQubits;

  /// Throws std::invalid_argument unless 0 <= p <= 1.
  void validate() const;
};

struct SecurityParams {
  int s = 20;
  int n = 128;

  void validate() const;
};

/// (1 - p) rho + p I/d.
DensityMatrix depolarize(const DensityMatrix& rho, double p);

/// One draw from the depolarizing channel acting on a pure state: with
/// probability p the state is replaced by a uniformly random computational
/// basis state. Averaged over draws this is exactly depolarize(|psi><psi|, p).
StateVector depolarize_sample(const StateVector& state, double p, RandomStream& rng);

/// sqrt((1 - p) + p/8).
double ghz_fidelity(double p);
/// sqrt((1 - p) + p/2), for either B92 signal state.
double b92_fidelity(double p);
/// min(ghz_fidelity, b92_fidelity).
double combined_fidelity(double p);

/// F^2 > 1 - 2^-s.
bool security_condition(double fidelity, const SecurityParams& params);

/// (2n + s + 1/ln 2) 2^-s, leaving out the O(2^-2s) remainder.
double entropy_bound(const SecurityParams& params);

}  // namespace hqkd
