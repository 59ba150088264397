#pragma once

// Round-level state machines: the selection coin, GHZ rounds, B92 rounds,
// sifting, GHZ correlation checks and the abort rule.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hqkd/adversary.hpp"
#include "hqkd/noise.hpp"
#include "hqkd/quantum_core.hpp"
#include "hqkd/random_stream.hpp"

namespace hqkd {

enum class ProtocolChoice { GHZ, B92 };

std::string_view to_string(ProtocolChoice choice);

/// Prepares H|0> and measures it in the computational basis: |0> selects GHZ,
/// |1> selects B92.
ProtocolChoice coin_flip_round(RandomStream& rng);

/// Variant where Alice and Bob each measure their own coin; the round is only
/// used when both see the same outcome.
struct TwoCoinOutcome {
  ProtocolChoice alice;
  ProtocolChoice bob;
  std::optional<ProtocolChoice> agreed() const {
    return alice == bob ? std::optional{alice} : std::nullopt;
  }
};

TwoCoinOutcome two_coin_flip_round(RandomStream& rng);

/// Whether Eve acts on the state before or after the depolarizing channel.
enum class ChannelOrder { NoiseThenEve, EveThenNoise };

// ---------------------------------------------------------------------------
// GHZ

enum class CheckCombination { XXX, XYY, YXY, YYX };

inline constexpr std::array<CheckCombination, 4> kCheckCombinations = {
    CheckCombination::XXX, CheckCombination::XYY, CheckCombination::YXY, CheckCombination::YYX};

std::string_view to_string(CheckCombination c);
CheckCombination check_combination_from_string(std::string_view text);
std::array<PauliBasis, 3> bases_of(CheckCombination c);
/// +1 for XXX, -1 for the other three.
double target_product(CheckCombination c);
std::optional<CheckCombination> check_combination_of(const std::array<PauliBasis, 3>& bases);

enum class GhzRoundClass { KeyRound, CheckRound, Discarded };

std::string_view to_string(GhzRoundClass c);

struct GhzRoundRecord {
  std::array<PauliBasis, 3> bases{};  // Alice, Bob, Charlie
  std::array<int, 3> outcomes{};      // each +1 or -1
  GhzRoundClass classification = GhzRoundClass::Discarded;
  std::optional<CheckCombination> combination;
  std::optional<int> key_bit;  // Alice's bit, key rounds only

  int outcome_product() const { return outcomes[0] * outcomes[1] * outcomes[2]; }

  /// Builds a record with classification, combination and key bit derived
  /// from the bases and outcomes.
  static GhzRoundRecord classify(const std::array<PauliBasis, 3>& bases,
                                 const std::array<int, 3>& outcomes);

  friend bool operator==(const GhzRoundRecord&, const GhzRoundRecord&) = default;
};

/// Outcome +1 -> 0, -1 -> 1.
inline int outcome_to_bit(int outcome) { return outcome == +1 ? 0 : 1; }

/// Bob's copy of a key bit, inferred from -(b * c) with Charlie co-located
/// with Bob. Only meaningful for key rounds.
int bob_key_bit(const GhzRoundRecord& record);

GhzRoundRecord ghz_round(RandomStream& rng, const NoiseConfig& noise, const EveStrategy& eve,
                         ChannelOrder order = ChannelOrder::NoiseThenEve);

struct CombinationStats {
  CheckCombination combination;
  std::size_t sample_count = 0;
  double mean_product = 0.0;
  bool sampled() const { return sample_count > 0; }
};

struct CheckReport {
  std::array<CombinationStats, 4> combinations{};
  double tolerance = 0.0;
  bool passed = true;

  const CombinationStats& operator[](CheckCombination c) const {
    return combinations[static_cast<std::size_t>(c)];
  }
  std::size_t min_sample_count() const;
};

/// Mean outcome product per check combination compared against its target.
/// Records that are not check rounds are ignored; unsampled combinations do
/// not fail the check.
CheckReport ghz_correlation_check(std::span<const GhzRoundRecord> records, double tolerance);

// ---------------------------------------------------------------------------
// B92

enum class SignalState { Zero, Plus };

struct B92RoundRecord {
  int alice_bit = 0;
  SignalState sent_state = SignalState::Zero;
  int bob_bit = 0;
  PauliBasis bob_basis = PauliBasis::Z;
  int bob_outcome = +1;
  bool conclusive = false;

  /// Z-basis |1> means Alice sent |+> (bit 1); X-basis |-> means she sent
  /// |0> (bit 0). Empty for inconclusive rounds.
  std::optional<int> decoded_bit() const;

  friend bool operator==(const B92RoundRecord&, const B92RoundRecord&) = default;
};

B92RoundRecord b92_round(RandomStream& rng, const NoiseConfig& noise, const EveStrategy& eve,
                         ChannelOrder order = ChannelOrder::NoiseThenEve);

struct SiftedKey {
  std::vector<std::uint8_t> alice_bits;
  std::vector<std::uint8_t> bob_bits;
  std::vector<std::size_t> source_rounds;

  std::size_t size() const { return alice_bits.size(); }
  bool empty() const { return alice_bits.empty(); }

  friend bool operator==(const SiftedKey&, const SiftedKey&) = default;
};

/// Keeps the conclusive rounds. source_rounds holds `round_indices[i]` for each
/// kept record i, or i itself when no indices are given.
SiftedKey b92_sift(std::span<const B92RoundRecord> records,
                   std::span<const std::size_t> round_indices = {});

// ---------------------------------------------------------------------------
// Abort rule

enum class AbortReason { Fidelity, CorrelationCheck, InsufficientEvidence, Qber };

std::string_view to_string(AbortReason reason);

struct AbortDecision {
  std::optional<AbortReason> reason;

  bool aborted() const { return reason.has_value(); }
  static AbortDecision proceed() { return {}; }
  static AbortDecision abort(AbortReason r) { return {r}; }

  friend bool operator==(const AbortDecision&, const AbortDecision&) = default;
};

/// Sifted-key error rate together with the largest acceptable value.
struct QberGate {
  double observed;
  double limit;
};

/// Conditions in order: F^2 <= 1 - 2^-s; a failed correlation check; any
/// combination with fewer than min_check_samples samples; QBER above its
/// limit (when a gate is given). The first one that holds is reported.
AbortDecision abort_decision(const CheckReport& check, double fidelity,
                             const SecurityParams& params, std::size_t min_check_samples,
                             std::optional<QberGate> qber = std::nullopt);

}  // namespace hqkd
