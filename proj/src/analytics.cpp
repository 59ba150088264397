#include "hqkd/analytics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hqkd {

void KeyRateInputs::validate() const {
  if (!(n >= 0.0)) throw std::invalid_argument("key rate: n must be nonnegative");
  if (!(delta >= 0.0 && delta <= 0.5))
    throw std::invalid_argument("key rate: QBER " + std::to_string(delta) + " outside [0, 0.5]");
}

double binary_entropy(double delta) {
  if (!(delta >= 0.0 && delta <= 1.0))
    throw std::invalid_argument("binary_entropy: argument outside [0, 1]");
  if (delta == 0.0 || delta == 1.0) return 0.0;
  return -delta * std::log2(delta) - (1.0 - delta) * std::log2(1.0 - delta);
}

double em_final(const KeyRateInputs& inputs) {
  inputs.validate();
  return inputs.n * (1.0 / 8.0) * (1.0 - binary_entropy(inputs.delta));
}

double nem_final(const KeyRateInputs& inputs) {
  inputs.validate();
  return inputs.n * (1.0 / 2.0) * (1.0 - binary_entropy(inputs.delta));
}

double combined_key_length(double n_total, double delta) {
  const KeyRateInputs in{n_total, delta};
  return 0.5 * em_final(in) + 0.5 * nem_final(in);
}

double combined_key_length_procedure(double n_total, double delta) {
  const KeyRateInputs in{n_total, delta};
  in.validate();
  return 0.5 * em_final(in) + 0.5 * n_total * 0.25 * (1.0 - binary_entropy(delta));
}

double conclusive_probability(const StateVector& psi0, const StateVector& psi1) {
  if (psi0.dimension() != psi1.dimension())
    throw QuantumError("conclusive_probability: dimension mismatch");
  Complex overlap{};
  for (std::size_t i = 0; i < psi0.dimension(); ++i) overlap += std::conj(psi0[i]) * psi1[i];
  return 1.0 - std::norm(overlap);
}

double b92_conclusive_probability_analytic() {
  return conclusive_probability(StateVector(1), make_plus());
}

double estimate_qber(const SiftedKey& key) {
  if (key.empty()) throw std::invalid_argument("estimate_qber: empty key");
  if (key.bob_bits.size() != key.alice_bits.size())
    throw std::invalid_argument("estimate_qber: key halves differ in length");
  std::size_t errors = 0;
  for (std::size_t i = 0; i < key.size(); ++i) errors += key.alice_bits[i] != key.bob_bits[i];
  return static_cast<double>(errors) / static_cast<double>(key.size());
}

ParadoxReport ghz_paradox_report() {
  const auto ghz = make_ghz();
  ParadoxReport report;
  report.quantum_product = 1.0;
  for (std::size_t i = 0; i < kCheckCombinations.size(); ++i) {
    const auto c = kCheckCombinations[i];
    const auto bases = bases_of(c);
    // Stabilizer expectations are +-1 up to rounding; snap those so the
    // product is exact.
    double value = expectation_pauli_product(ghz, bases);
    if (std::abs(value - std::round(value)) < 1e-12) value = std::round(value);
    report.quantum_expectations[i] = {c, value};
    report.quantum_product *= value;
  }
  report.lhv_product = lhv_product(1, 1, 1, 1, 1, 1);
  return report;
}

int lhv_product(int a1, int a2, int b1, int b2, int c1, int c2) {
  return (a1 * b1 * c1) * (a1 * b2 * c2) * (a2 * b1 * c2) * (a2 * b2 * c1);
}

}  // namespace hqkd
