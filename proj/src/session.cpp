#include "hqkd/session.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "hqkd/analytics.hpp"

namespace hqkd {

namespace {

// Stream index reserved for the QBER sample selection; rounds use 0..N-1.
constexpr std::uint64_t kQberSampleStream = ~std::uint64_t{0};

std::size_t generated_bits_of(const RoundRecord& r) {
  if (const auto* g = r.ghz()) return g->classification == GhzRoundClass::KeyRound ? 1 : 0;
  if (const auto* b = r.b92()) return b->conclusive ? 1 : 0;
  return 0;
}

double ratio(std::size_t num, std::size_t den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

std::string_view to_string(CoinMode mode) {
  return mode == CoinMode::SharedCoin ? "shared" : "two-coin";
}

void SessionConfig::validate() const {
  if (total_rounds < 1) throw std::invalid_argument("rounds: total_rounds must be >= 1");
  noise.validate();
  eve.validate();
  security.validate();
  if (!(check_tolerance > 0.0 && check_tolerance < 1.0))
    throw std::invalid_argument("check-tolerance: must lie in (0, 1)");
  if (min_check_samples < 1) throw std::invalid_argument("min-check-samples: must be >= 1");
  if (!(qber_sample_fraction > 0.0 && qber_sample_fraction <= 1.0))
    throw std::invalid_argument("qber-sample: fraction must lie in (0, 1]");
}

std::string SessionConfig::protocol_label() const {
  if (!protocol_override) return "combined";
  return std::string(to_string(*protocol_override));
}

RoundRecord simulate_round(const SessionConfig& config, std::uint64_t round_index) {
  RandomStream rng(config.seed, round_index);
  RoundRecord record;
  record.round_index = round_index;

  ProtocolChoice choice;
  if (config.protocol_override) {
    choice = *config.protocol_override;
  } else if (config.coin_mode == CoinMode::SharedCoin) {
    choice = coin_flip_round(rng);
  } else {
    const auto coins = two_coin_flip_round(rng);
    if (!coins.agreed()) {
      record.body = CoinDiscardRecord{coins.alice, coins.bob};
      return record;
    }
    choice = *coins.agreed();
  }

  if (choice == ProtocolChoice::GHZ)
    record.body = ghz_round(rng, config.noise, config.eve, config.channel_order);
  else
    record.body = b92_round(rng, config.noise, config.eve, config.channel_order);
  return record;
}

std::vector<RoundRecord> simulate_rounds_serial(const SessionConfig& config) {
  std::vector<RoundRecord> rounds;
  rounds.reserve(config.total_rounds);
  for (std::uint64_t i = 0; i < config.total_rounds; ++i) rounds.push_back(simulate_round(config, i));
  return rounds;
}

std::vector<RoundRecord> simulate_rounds_parallel(const SessionConfig& config) {
  std::vector<RoundRecord> rounds(config.total_rounds);
  const auto n = static_cast<std::int64_t>(config.total_rounds);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i)
    rounds[static_cast<std::size_t>(i)] = simulate_round(config, static_cast<std::uint64_t>(i));
  return rounds;
}

double session_fidelity(const SessionConfig& config) {
  const double p = config.noise.p;
  const bool ghz_noisy = config.noise.apply_to == NoiseScope::AllQubits;
  const double f_ghz = ghz_fidelity(ghz_noisy ? p : 0.0);
  const double f_b92 = b92_fidelity(p);
  if (!config.protocol_override) return std::min(f_ghz, f_b92);
  return *config.protocol_override == ProtocolChoice::GHZ ? f_ghz : f_b92;
}

SessionReport summarize_session(const SessionConfig& config, std::span<const RoundRecord> rounds) {
  SessionReport report;
  report.config = config;

  std::vector<GhzRoundRecord> ghz_records;
  std::vector<B92RoundRecord> b92_records;
  std::vector<std::size_t> b92_indices;
  std::size_t key_rounds = 0;
  std::size_t key_mismatches = 0;

  for (const auto& r : rounds) {
    if (const auto* g = r.ghz()) {
      ++report.ghz_rounds;
      ghz_records.push_back(*g);
      if (g->classification == GhzRoundClass::KeyRound) {
        ++key_rounds;
        report.ghz_key_bits.push_back(static_cast<std::uint8_t>(*g->key_bit));
        key_mismatches += bob_key_bit(*g) != *g->key_bit;
      }
    } else if (const auto* b = r.b92()) {
      ++report.b92_rounds;
      b92_records.push_back(*b);
      b92_indices.push_back(static_cast<std::size_t>(r.round_index));
    } else {
      ++report.coin_discards;
    }
  }
  if (key_rounds > 0) report.ghz_key_disagreement = ratio(key_mismatches, key_rounds);

  SiftedKey sifted = b92_sift(b92_records, b92_indices);
  report.generated_ghz_bits = report.ghz_key_bits.size();
  report.generated_b92_bits = sifted.size();

  // QBER: either the whole sifted key, or a disclosed random subset that is
  // then removed from the key.
  if (config.qber_sample_fraction >= 1.0) {
    if (!sifted.empty()) {
      report.qber = estimate_qber(sifted);
      report.qber_sample_size = sifted.size();
    }
    report.b92_key = std::move(sifted);
  } else {
    RandomStream pick(config.seed, kQberSampleStream);
    SiftedKey disclosed;
    for (std::size_t i = 0; i < sifted.size(); ++i) {
      SiftedKey& dst = pick.uniform() < config.qber_sample_fraction ? disclosed : report.b92_key;
      dst.alice_bits.push_back(sifted.alice_bits[i]);
      dst.bob_bits.push_back(sifted.bob_bits[i]);
      dst.source_rounds.push_back(sifted.source_rounds[i]);
    }
    if (!disclosed.empty()) {
      report.qber = estimate_qber(disclosed);
      report.qber_sample_size = disclosed.size();
    }
  }

  report.check_report = ghz_correlation_check(ghz_records, config.check_tolerance);
  report.fidelity_used = session_fidelity(config);

  // A B92-only run has no GHZ check rounds, so it cannot be held to the
  // per-combination sample minimum.
  const bool b92_only = config.protocol_override == ProtocolChoice::B92;
  const std::size_t min_samples = b92_only ? 0 : config.min_check_samples;
  std::optional<QberGate> gate;
  if (report.qber) gate = QberGate{*report.qber, config.check_tolerance};
  report.verdict =
      abort_decision(report.check_report, report.fidelity_used, config.security, min_samples, gate);

  report.rates.ghz_key_rate = ratio(report.generated_ghz_bits, report.ghz_rounds);
  report.rates.b92_sift_rate = ratio(report.generated_b92_bits, report.b92_rounds);
  report.rates.combined_bits_per_round = ratio(report.generated_bits(), rounds.size());

  if (report.verdict.aborted()) {
    report.ghz_key_bits.clear();
    report.b92_key = SiftedKey{};
  } else {
    report.combined_key = report.ghz_key_bits;
    report.combined_key.insert(report.combined_key.end(), report.b92_key.alice_bits.begin(),
                               report.b92_key.alice_bits.end());
  }
  return report;
}

SessionReport run_session(const SessionConfig& config, Execution exec) {
  config.validate();
  const auto rounds = exec == Execution::Parallel ? simulate_rounds_parallel(config)
                                                  : simulate_rounds_serial(config);
  return summarize_session(config, rounds);
}

std::vector<BatchCount> batch_key_counts(std::span<const RoundRecord> rounds, std::size_t batches) {
  if (batches < 1) throw std::invalid_argument("batches: must be >= 1");
  if (batches > rounds.size()) throw std::invalid_argument("batches: more batches than rounds");
  std::vector<BatchCount> out(batches);
  for (std::size_t b = 0; b < batches; ++b) {
    const std::size_t begin = b * rounds.size() / batches;
    const std::size_t end = (b + 1) * rounds.size() / batches;
    out[b].batch = b;
    out[b].rounds = end - begin;
    for (std::size_t i = begin; i < end; ++i) out[b].key_bits += generated_bits_of(rounds[i]);
  }
  return out;
}

std::vector<ComparisonRow> compare_protocols(std::span<const SessionConfig> configs,
                                             std::size_t trials) {
  if (trials < 1) throw std::invalid_argument("trials: must be >= 1");
  std::vector<ComparisonRow> rows;
  for (const auto& base : configs) {
    base.validate();
    ComparisonRow row;
    row.protocol = base.protocol_label();
    row.rounds = base.total_rounds;
    row.trials = trials;
    double total_bits = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
      SessionConfig cfg = base;
      cfg.seed = base.seed + t;
      const auto report = run_session(cfg);
      total_bits += static_cast<double>(report.generated_bits());
      row.aborted_trials += report.verdict.aborted() ? 1 : 0;
    }
    row.mean_key_bits = total_bits / static_cast<double>(trials);
    row.key_rate = row.mean_key_bits / static_cast<double>(base.total_rounds);

    const auto n = static_cast<double>(base.total_rounds);
    if (!base.protocol_override) {
      row.formula_bits = combined_key_length(n, 0.0);
      row.procedure_bits = combined_key_length_procedure(n, 0.0);
    } else if (*base.protocol_override == ProtocolChoice::GHZ) {
      row.formula_bits = row.procedure_bits = em_final({n, 0.0});
    } else {
      row.formula_bits = nem_final({n, 0.0});
      row.procedure_bits = n / 4.0;
    }
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const ComparisonRow& a, const ComparisonRow& b) {
    return a.mean_key_bits > b.mean_key_bits;
  });
  return rows;
}

}  // namespace hqkd
