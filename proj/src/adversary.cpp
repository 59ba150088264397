#include "hqkd/adversary.hpp"

#include <charconv>
#include <stdexcept>

namespace hqkd {

EveStrategy EveStrategy::intercept_ghz(int target) {
  EveStrategy e{Kind::InterceptResendGhz, target};
  e.validate();
  return e;
}

void EveStrategy::validate() const {
  if (kind == Kind::InterceptResendGhz && (target_qubit < 0 || target_qubit > 2))
    throw std::invalid_argument("GHZ intercept target must be 0, 1 or 2");
}

std::string EveStrategy::to_string() const {
  switch (kind) {
    case Kind::None: return "none";
    case Kind::InterceptResendB92: return "intercept-resend-b92";
    case Kind::InterceptResendGhz: return "intercept-resend-ghz:" + std::to_string(target_qubit);
  }
  return "none";
}

EveStrategy EveStrategy::parse(const std::string& text) {
  if (text == "none") return none();
  if (text == "intercept-resend-b92") return intercept_b92();
  const std::string prefix = "intercept-resend-ghz:";
  if (text.rfind(prefix, 0) == 0) {
    const auto digits = text.substr(prefix.size());
    int q = -1;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), q);
    if (ec == std::errc{} && ptr == digits.data() + digits.size() && !digits.empty())
      return intercept_ghz(q);
  }
  throw std::invalid_argument("unknown eavesdropper strategy '" + text + "'");
}

StateVector intercept_b92(const StateVector& state, RandomStream& rng) {
  if (state.num_qubits() != 1) throw QuantumError("intercept_b92 expects a single qubit");
  const auto basis = rng.bit() ? PauliBasis::X : PauliBasis::Z;
  return measure_pauli(state, 0, basis, rng).collapsed;
}

StateVector intercept_ghz(const StateVector& state, int target, RandomStream& rng) {
  if (state.num_qubits() != 3) throw QuantumError("intercept_ghz expects a three-qubit state");
  if (target < 0 || target > 2) throw QuantumError("intercept_ghz target out of range");
  const auto basis = rng.bit() ? PauliBasis::Y : PauliBasis::X;
  return measure_pauli(state, target, basis, rng).collapsed;
}

}  // namespace hqkd
