#pragma once

#include <string>

#include "hqkd/quantum_core.hpp"
#include "hqkd/random_stream.hpp"

namespace hqkd {

/// Intercept-resend eavesdroppers on the quantum channel.
struct EveStrategy {
  enum class Kind { None, InterceptResendB92, InterceptResendGhz };

  Kind kind = Kind::None;
  /// Qubit Eve intercepts in GHZ rounds (0 Alice, 1 Bob, 2 Charlie).
  int target_qubit = 0;

  static EveStrategy none() { return {}; }
  static EveStrategy intercept_b92() { return {Kind::InterceptResendB92, 0}; }
  static EveStrategy intercept_ghz(int target);

  bool attacks_b92() const { return kind == Kind::InterceptResendB92; }
  bool attacks_ghz() const { return kind == Kind::InterceptResendGhz; }

  void validate() const;

  /// "none", "intercept-resend-b92", "intercept-resend-ghz:<qubit>".
  std::string to_string() const;
  static EveStrategy parse(const std::string& text);

  friend bool operator==(const EveStrategy&, const EveStrategy&) = default;
};

/// Eve measures the single B92 qubit in Z or X (uniformly) and forwards the
/// eigenstate she observed.
StateVector intercept_b92(const StateVector& state, RandomStream& rng);

/// Eve measures qubit `target` of a three-qubit state in X or Y (uniformly)
/// and forwards the collapsed state.
StateVector intercept_ghz(const StateVector& state, int target, RandomStream& rng);

}  // namespace hqkd
