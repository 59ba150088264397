#pragma once

#include <array>
#include <cstddef>
#include <utility>

#include "hqkd/protocol.hpp"
#include "hqkd/quantum_core.hpp"

namespace hqkd {

struct KeyRateInputs {
  double n = 0.0;      // rounds allocated to the mode
  double delta = 0.0;  // QBER in [0, 0.5]

  void validate() const;
};

/// -d log2 d - (1 - d) log2(1 - d), zero at both endpoints.
double binary_entropy(double delta);

/// Entangled (GHZ) mode: n (1/8) (1 - h(delta)).
double em_final(const KeyRateInputs& inputs);
/// Non-entangled (B92) mode: n (1/2) (1 - h(delta)).
double nem_final(const KeyRateInputs& inputs);
/// 1/2 em_final + 1/2 nem_final = 5 n (1 - h(delta)) / 16.
double combined_key_length(double n_total, double delta);

/// The same mixture with the sift rate the measurement procedure actually
/// yields (1/4 instead of 1/2): 3 n (1 - h(delta)) / 16.
double combined_key_length_procedure(double n_total, double delta);

/// 1 - |<psi0|psi1>|^2.
double conclusive_probability(const StateVector& psi0, const StateVector& psi1);
/// conclusive_probability(|0>, |+>) = 1/2.
double b92_conclusive_probability_analytic();

/// Fraction of positions where Alice's and Bob's bits differ.
/// Throws std::invalid_argument on an empty key.
double estimate_qber(const SiftedKey& key);

struct ParadoxReport {
  std::array<std::pair<CheckCombination, double>, 4> quantum_expectations{};
  double quantum_product = 0.0;
  int lhv_product = +1;
};

/// Exact XXX, XYY, YXY, YYX expectations on the ideal GHZ state and their
/// product, set against the +1 any assignment of predetermined +-1 values
/// gives.
ParadoxReport ghz_paradox_report();

/// Product of the four check-combination products for one assignment of
/// predetermined values (a1, a2, b1, b2, c1, c2); always +1.
int lhv_product(int a1, int a2, int b1, int b2, int c1, int c2);

}  // namespace hqkd
