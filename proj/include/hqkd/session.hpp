#pragma once

// End-to-end sessions: per-round coin flips and protocol dispatch, then
// aggregation, the security evaluation and the abort gate.
//
// Round i draws only from RandomStream(seed, i), so rounds can be simulated in
// any order or in parallel and still produce the same log.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "hqkd/adversary.hpp"
#include "hqkd/noise.hpp"
#include "hqkd/protocol.hpp"

namespace hqkd {

inline constexpr std::uint64_t kDefaultSeed = 20240601;

enum class CoinMode { SharedCoin, TwoCoinDiscard };

std::string_view to_string(CoinMode mode);

struct SessionConfig {
  std::uint64_t total_rounds = 1000;
  std::uint64_t seed = kDefaultSeed;
  NoiseConfig noise;
  EveStrategy eve;
  SecurityParams security;
  CoinMode coin_mode = CoinMode::SharedCoin;
  double check_tolerance = 0.25;
  std::size_t min_check_samples = 16;
  /// Run only one protocol instead of flipping the coin.
  std::optional<ProtocolChoice> protocol_override;
  ChannelOrder channel_order = ChannelOrder::NoiseThenEve;
  /// Fraction of sifted B92 bits disclosed to estimate the QBER. At 1.0 the
  /// whole sifted key is compared (the simulator knows both sides) and kept.
  /// Below 1.0 a random subset is compared and then dropped from the key.
  double qber_sample_fraction = 1.0;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;

  /// "combined", "ghz" or "b92".
  std::string protocol_label() const;
};

/// Two-coin rounds whose coins disagree carry no protocol run.
struct CoinDiscardRecord {
  ProtocolChoice alice_coin;
  ProtocolChoice bob_coin;
  friend bool operator==(const CoinDiscardRecord&, const CoinDiscardRecord&) = default;
};

struct RoundRecord {
  std::uint64_t round_index = 0;
  std::variant<GhzRoundRecord, B92RoundRecord, CoinDiscardRecord> body;

  const GhzRoundRecord* ghz() const { return std::get_if<GhzRoundRecord>(&body); }
  const B92RoundRecord* b92() const { return std::get_if<B92RoundRecord>(&body); }

  friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

RoundRecord simulate_round(const SessionConfig& config, std::uint64_t round_index);

/// Reference loop over rounds, one after another.
std::vector<RoundRecord> simulate_rounds_serial(const SessionConfig& config);
/// OpenMP loop over rounds. Produces the same log as the serial version.
std::vector<RoundRecord> simulate_rounds_parallel(const SessionConfig& config);

enum class Execution { Serial, Parallel };

struct EmpiricalRates {
  double ghz_key_rate = 0.0;             // key bits per GHZ round
  double b92_sift_rate = 0.0;            // sifted bits per B92 round
  double combined_bits_per_round = 0.0;  // generated key bits per session round
};

struct SessionReport {
  SessionConfig config;
  std::size_t ghz_rounds = 0;
  std::size_t b92_rounds = 0;
  std::size_t coin_discards = 0;

  /// Generated before the abort gate; kept as diagnostics after an abort.
  std::size_t generated_ghz_bits = 0;
  std::size_t generated_b92_bits = 0;
  std::size_t generated_bits() const { return generated_ghz_bits + generated_b92_bits; }

  /// Key material; all empty when the session aborted.
  std::vector<std::uint8_t> ghz_key_bits;  // Alice's copy, round order
  SiftedKey b92_key;
  std::vector<std::uint8_t> combined_key;  // GHZ bits then B92 bits

  /// Sifted B92 QBER; empty when no bits were available to compare.
  std::optional<double> qber;
  std::size_t qber_sample_size = 0;
  /// Fraction of GHZ key rounds where Bob's -(b c) reconstruction differs
  /// from Alice's bit.
  std::optional<double> ghz_key_disagreement;

  CheckReport check_report;
  double fidelity_used = 1.0;
  AbortDecision verdict;
  EmpiricalRates rates;

  bool completed() const { return !verdict.aborted(); }
};

/// Aggregates a round log into a report and applies the abort gate.
SessionReport summarize_session(const SessionConfig& config, std::span<const RoundRecord> rounds);

SessionReport run_session(const SessionConfig& config, Execution exec = Execution::Parallel);

/// Closed-form fidelity of the protocols the session runs: GHZ-only and
/// B92-only use their own branch, combined sessions use the minimum.
double session_fidelity(const SessionConfig& config);

struct BatchCount {
  std::size_t batch = 0;
  std::size_t rounds = 0;
  std::size_t key_bits = 0;
};

/// Splits the log into `batches` contiguous, near-equal batches and counts
/// generated key bits per batch.
std::vector<BatchCount> batch_key_counts(std::span<const RoundRecord> rounds, std::size_t batches);

struct ComparisonRow {
  std::string protocol;
  std::uint64_t rounds = 0;
  std::size_t trials = 0;
  double mean_key_bits = 0.0;
  double key_rate = 0.0;
  std::size_t aborted_trials = 0;
  double formula_bits = 0.0;    // key-length formulas at zero QBER
  double procedure_bits = 0.0;  // same, with the 1/4 procedure sift rate for B92
};

/// Runs each config over `trials` consecutive seeds (seed, seed + 1, ...) and
/// returns rows ordered by mean generated key bits, largest first.
std::vector<ComparisonRow> compare_protocols(std::span<const SessionConfig> configs,
                                             std::size_t trials = 1);

}  // namespace hqkd
