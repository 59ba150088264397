#include "hqkd/protocol.hpp"

#include <cmath>
#include <stdexcept>

namespace hqkd {

namespace {

StateVector through_channel(StateVector state, double p, bool noisy, bool eve_present,
                            ChannelOrder order, RandomStream& rng, auto&& intercept) {
  auto add_noise = [&] {
    if (noisy) state = depolarize_sample(state, p, rng);
  };
  auto add_eve = [&] {
    if (eve_present) state = intercept(state);
  };
  if (order == ChannelOrder::NoiseThenEve) {
    add_noise();
    add_eve();
  } else {
    add_eve();
    add_noise();
  }
  return state;
}

ProtocolChoice measure_coin(RandomStream& rng) {
  const auto coin = apply_gate(StateVector(1), GateKind::H, {0});
  return measure_pauli(coin, 0, PauliBasis::Z, rng).outcome == +1 ? ProtocolChoice::GHZ
                                                                    : ProtocolChoice::B92;
}

}  // namespace

std::string_view to_string(ProtocolChoice choice) {
  return choice == ProtocolChoice::GHZ ? "ghz" : "b92";
}

ProtocolChoice coin_flip_round(RandomStream& rng) { return measure_coin(rng); }

TwoCoinOutcome two_coin_flip_round(RandomStream& rng) {
  const auto alice = measure_coin(rng);
  const auto bob = measure_coin(rng);
  return {alice, bob};
}

// ---------------------------------------------------------------------------
// GHZ

std::string_view to_string(CheckCombination c) {
  switch (c) {
    case CheckCombination::XXX: return "XXX";
    case CheckCombination::XYY: return "XYY";
    case CheckCombination::YXY: return "YXY";
    case CheckCombination::YYX: return "YYX";
  }
  return "?";
}

CheckCombination check_combination_from_string(std::string_view text) {
  for (auto c : kCheckCombinations)
    if (to_string(c) == text) return c;
  throw std::invalid_argument("unknown check combination '" + std::string(text) + "'");
}

std::array<PauliBasis, 3> bases_of(CheckCombination c) {
  const auto s = to_string(c);
  return {pauli_from_char(s[0]), pauli_from_char(s[1]), pauli_from_char(s[2])};
}

double target_product(CheckCombination c) { return c == CheckCombination::XXX ? +1.0 : -1.0; }

std::optional<CheckCombination> check_combination_of(const std::array<PauliBasis, 3>& bases) {
  for (auto c : kCheckCombinations)
    if (bases_of(c) == bases) return c;
  return std::nullopt;
}

std::string_view to_string(GhzRoundClass c) {
  switch (c) {
    case GhzRoundClass::KeyRound: return "key";
    case GhzRoundClass::CheckRound: return "check";
    case GhzRoundClass::Discarded: return "discarded";
  }
  return "?";
}

GhzRoundRecord GhzRoundRecord::classify(const std::array<PauliBasis, 3>& bases,
                                        const std::array<int, 3>& outcomes) {
  GhzRoundRecord r;
  r.bases = bases;
  r.outcomes = outcomes;
  const bool all_y = bases[0] == PauliBasis::Y && bases[1] == PauliBasis::Y &&
                     bases[2] == PauliBasis::Y;
  if (all_y) {
    r.classification = GhzRoundClass::KeyRound;
    r.key_bit = outcome_to_bit(outcomes[0]);
  } else if (auto c = check_combination_of(bases)) {
    r.classification = GhzRoundClass::CheckRound;
    r.combination = c;
  } else {
    r.classification = GhzRoundClass::Discarded;
  }
  return r;
}

int bob_key_bit(const GhzRoundRecord& record) {
  return outcome_to_bit(-record.outcomes[1] * record.outcomes[2]);
}

GhzRoundRecord ghz_round(RandomStream& rng, const NoiseConfig& noise, const EveStrategy& eve,
                         ChannelOrder order) {
  const bool noisy = noise.apply_to == NoiseScope::AllQubits && noise.p > 0.0;
  auto state = through_channel(make_ghz(), noise.p, noisy, eve.attacks_ghz(), order, rng,
                               [&](const StateVector& s) {
                                 return intercept_ghz(s, eve.target_qubit, rng);
                               });

  std::array<PauliBasis, 3> bases{};
  for (auto& b : bases) b = rng.bit() ? PauliBasis::Y : PauliBasis::X;

  std::array<int, 3> outcomes{};
  for (int q = 0; q < 3; ++q) {
    auto m = measure_pauli(state, q, bases[q], rng);
    outcomes[q] = m.outcome;
    state = std::move(m.collapsed);
  }
  return GhzRoundRecord::classify(bases, outcomes);
}

std::size_t CheckReport::min_sample_count() const {
  std::size_t m = combinations[0].sample_count;
  for (const auto& c : combinations) m = std::min(m, c.sample_count);
  return m;
}

CheckReport ghz_correlation_check(std::span<const GhzRoundRecord> records, double tolerance) {
  CheckReport report;
  report.tolerance = tolerance;
  std::array<double, 4> sums{};
  for (std::size_t i = 0; i < kCheckCombinations.size(); ++i)
    report.combinations[i].combination = kCheckCombinations[i];

  for (const auto& r : records) {
    if (r.classification != GhzRoundClass::CheckRound || !r.combination) continue;
    const auto k = static_cast<std::size_t>(*r.combination);
    sums[k] += r.outcome_product();
    ++report.combinations[k].sample_count;
  }

  report.passed = true;
  for (std::size_t k = 0; k < 4; ++k) {
    auto& stats = report.combinations[k];
    if (!stats.sampled()) continue;
    stats.mean_product = sums[k] / static_cast<double>(stats.sample_count);
    if (std::abs(stats.mean_product - target_product(stats.combination)) > tolerance)
      report.passed = false;
  }
  return report;
}

// ---------------------------------------------------------------------------
// B92

std::optional<int> B92RoundRecord::decoded_bit() const {
  if (!conclusive) return std::nullopt;
  return bob_basis == PauliBasis::Z ? 1 : 0;
}

B92RoundRecord b92_round(RandomStream& rng, const NoiseConfig& noise, const EveStrategy& eve,
                         ChannelOrder order) {
  B92RoundRecord r;
  r.alice_bit = rng.bit();
  r.sent_state = r.alice_bit == 0 ? SignalState::Zero : SignalState::Plus;
  const auto prepared = r.sent_state == SignalState::Zero ? StateVector(1) : make_plus();

  const bool noisy = noise.p > 0.0;
  const auto received = through_channel(prepared, noise.p, noisy, eve.attacks_b92(), order, rng,
                                        [&](const StateVector& s) { return intercept_b92(s, rng); });

  r.bob_bit = rng.bit();
  r.bob_basis = r.bob_bit == 0 ? PauliBasis::Z : PauliBasis::X;
  r.bob_outcome = measure_pauli(received, 0, r.bob_basis, rng).outcome;
  // |1> in Z and |-> in X are both the -1 outcome.
  r.conclusive = r.bob_outcome == -1;
  return r;
}

SiftedKey b92_sift(std::span<const B92RoundRecord> records,
                   std::span<const std::size_t> round_indices) {
  if (!round_indices.empty() && round_indices.size() != records.size())
    throw std::invalid_argument("b92_sift: round index count does not match record count");
  SiftedKey key;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto bit = records[i].decoded_bit();
    if (!bit) continue;
    key.alice_bits.push_back(static_cast<std::uint8_t>(records[i].alice_bit));
    key.bob_bits.push_back(static_cast<std::uint8_t>(*bit));
    key.source_rounds.push_back(round_indices.empty() ? i : round_indices[i]);
  }
  return key;
}

// ---------------------------------------------------------------------------
// Abort rule

std::string_view to_string(AbortReason reason) {
  switch (reason) {
    case AbortReason::Fidelity: return "fidelity";
    case AbortReason::CorrelationCheck: return "correlation-check";
    case AbortReason::InsufficientEvidence: return "insufficient-evidence";
    case AbortReason::Qber: return "qber";
  }
  return "?";
}

AbortDecision abort_decision(const CheckReport& check, double fidelity,
                             const SecurityParams& params, std::size_t min_check_samples,
                             std::optional<QberGate> qber) {
  if (!security_condition(fidelity, params)) return AbortDecision::abort(AbortReason::Fidelity);
  if (!check.passed) return AbortDecision::abort(AbortReason::CorrelationCheck);
  if (check.min_sample_count() < min_check_samples)
    return AbortDecision::abort(AbortReason::InsufficientEvidence);
  if (qber && qber->observed > qber->limit) return AbortDecision::abort(AbortReason::Qber);
  return AbortDecision::proceed();
}

}  // namespace hqkd
