#include "hqkd/cli.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "hqkd/report.hpp"
#include "hqkd/round_log.hpp"

namespace hqkd {

namespace {

// Flags shared by every session-driving command.
struct SessionFlags {
  std::uint64_t rounds = 1000;
  std::uint64_t seed = kDefaultSeed;
  std::string noise_scope = "all";
  std::string eve = "none";
  std::string coin = "shared";
  int key_n = 128;
  double check_tolerance = 0.25;
  std::size_t min_check_samples = 16;
  std::string channel_order = "noise-first";
  double qber_sample = 1.0;
  std::string format = "text";

  void attach(CLI::App& cmd) {
    cmd.add_option("--rounds", rounds, "Rounds (coin flips) per session")->check(CLI::PositiveNumber);
    cmd.add_option("--seed", seed, "Session seed");
    cmd.add_option("--noise-scope", noise_scope, "Depolarize all states or only the B92 channel qubit")
        ->check(CLI::IsMember({"all", "channel"}));
    cmd.add_option("--eve", eve, "none | intercept-resend-b92 | intercept-resend-ghz:<qubit>");
    cmd.add_option("--coin", coin, "Selection coin mode")->check(CLI::IsMember({"shared", "two-coin"}));
    cmd.add_option("--key-n", key_n, "Key length parameter n of the entropy bound")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--check-tolerance", check_tolerance,
                   "Allowed deviation of GHZ check means (also the QBER limit)");
    cmd.add_option("--min-check-samples", min_check_samples,
                   "Samples required per GHZ check combination");
    cmd.add_option("--channel-order", channel_order, "Whether Eve acts after or before the noise")
        ->check(CLI::IsMember({"noise-first", "eve-first"}));
    cmd.add_option("--qber-sample", qber_sample,
                   "Fraction of sifted bits disclosed for QBER estimation (1 = compare all)");
    cmd.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  }

  SessionConfig config(double p, int s) const {
    SessionConfig c;
    c.total_rounds = rounds;
    c.seed = seed;
    c.noise.p = p;
    c.noise.apply_to = noise_scope == "all" ? NoiseScope::AllQubits : NoiseScope::QuantumChannelOnly;
    try {
      c.eve = EveStrategy::parse(eve);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(std::string("--eve: ") + e.what());
    }
    c.coin_mode = coin == "shared" ? CoinMode::SharedCoin : CoinMode::TwoCoinDiscard;
    c.security = {s, key_n};
    c.check_tolerance = check_tolerance;
    c.min_check_samples = min_check_samples;
    c.channel_order = channel_order == "noise-first" ? ChannelOrder::NoiseThenEve
                                                     : ChannelOrder::EveThenNoise;
    c.qber_sample_fraction = qber_sample;
    try {
      c.validate();
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(std::string("--") + e.what());
    }
    return c;
  }
};

std::optional<ProtocolChoice> protocol_override(const std::string& name) {
  if (name == "ghz") return ProtocolChoice::GHZ;
  if (name == "b92") return ProtocolChoice::B92;
  return std::nullopt;
}

int cmd_run(const SessionFlags& flags, double noise, int s, const std::string& protocol,
            const std::string& log_path, std::ostream& out) {
  auto config = flags.config(noise, s);
  config.protocol_override = protocol_override(protocol);

  const auto rounds = simulate_rounds_parallel(config);
  if (!log_path.empty()) write_round_log(std::filesystem::path(log_path), config, rounds);
  const auto report = summarize_session(config, rounds);

  switch (output_format_from_string(flags.format)) {
    case OutputFormat::Json: out << to_json(report).dump(2) << '\n'; break;
    case OutputFormat::Csv: write_csv(out, report); break;
    case OutputFormat::Text: write_text(out, report); break;
  }
  return report.completed() ? kExitOk : kExitAborted;
}

int cmd_compare(const SessionFlags& flags, double noise, int s, std::size_t trials,
                std::ostream& out) {
  std::vector<SessionConfig> configs;
  for (const char* name : {"b92", "combined", "ghz"}) {
    auto c = flags.config(noise, s);
    c.protocol_override = protocol_override(name);
    configs.push_back(c);
  }
  const auto rows = compare_protocols(configs, trials);
  write_comparison(out, rows, output_format_from_string(flags.format));
  return kExitOk;
}

int cmd_sweep(const SessionFlags& flags, const std::string& noise_range,
              const std::string& s_range, const std::string& protocol, std::ostream& out) {
  const auto noise_values = parse_range(noise_range);
  const auto s_raw = parse_range(s_range);
  if (noise_values.size() > 1 && s_raw.size() > 1)
    throw std::invalid_argument("--noise/--security-s: sweep one parameter at a time");
  std::vector<int> s_values;
  for (double v : s_raw) {
    if (v != std::floor(v) || v < 1) throw std::invalid_argument("--security-s: values must be integers >= 1");
    s_values.push_back(static_cast<int>(v));
  }

  auto base = flags.config(noise_values.front(), s_values.front());
  base.protocol_override = protocol_override(protocol);
  const auto rows = s_values.size() > 1 ? sweep_security(base, s_values)
                                        : sweep_noise(base, noise_values);
  write_sweep(out, rows, output_format_from_string(flags.format));
  return kExitOk;
}

int cmd_batches(const SessionFlags& flags, double noise, int s, const std::vector<std::size_t>& counts,
                std::ostream& out) {
  const auto config = flags.config(noise, s);
  const auto rounds = simulate_rounds_parallel(config);
  std::vector<BatchSeries> series;
  for (auto b : counts) series.push_back({b, batch_key_counts(rounds, b)});
  write_batches(out, series, output_format_from_string(flags.format));
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hybrid GHZ/B92 quantum key distribution simulator", "hqkd"};
  app.require_subcommand(1);

  SessionFlags run_flags, cmp_flags, sweep_flags, batch_flags;
  double run_noise = 0.0, cmp_noise = 0.0, batch_noise = 0.0;
  int run_s = 20, cmp_s = 20, batch_s = 20;
  std::string run_protocol = "combined", sweep_protocol = "combined", log_path;
  std::string sweep_noise_range = "0", sweep_s_range = "20";
  std::size_t trials = 1;
  std::vector<std::size_t> batch_counts{5, 10};
  std::string paradox_format = "text";

  auto* run = app.add_subcommand("run", "Run one session and print its report");
  run_flags.attach(*run);
  run->add_option("--noise", run_noise, "Depolarizing probability p")->check(CLI::Range(0.0, 1.0));
  run->add_option("--security-s", run_s, "Security parameter s")->check(CLI::PositiveNumber);
  run->add_option("--protocol", run_protocol, "Run both protocols via the coin, or one alone")
      ->check(CLI::IsMember({"combined", "ghz", "b92"}));
  run->add_option("--log", log_path, "Write the round log (JSON lines) to this path");

  auto* compare = app.add_subcommand(
      "compare", "Compare B92-only, combined and GHZ-only key generation at equal budgets");
  cmp_flags.attach(*compare);
  compare->add_option("--noise", cmp_noise, "Depolarizing probability p")->check(CLI::Range(0.0, 1.0));
  compare->add_option("--security-s", cmp_s, "Security parameter s")->check(CLI::PositiveNumber);
  compare->add_option("--trials", trials, "Seeds per protocol (seed, seed+1, ...)")
      ->check(CLI::PositiveNumber);

  auto* sweep = app.add_subcommand("sweep", "Sweep noise p or security parameter s");
  sweep_flags.attach(*sweep);
  sweep->add_option("--noise", sweep_noise_range, "p value or start:end:step");
  sweep->add_option("--security-s", sweep_s_range, "s value or start:end:step");
  sweep->add_option("--protocol", sweep_protocol)->check(CLI::IsMember({"combined", "ghz", "b92"}));

  auto* batches = app.add_subcommand(
      "batches", "Key bits per batch when a fixed round budget is split into batches");
  batch_flags.attach(*batches);
  batches->add_option("--noise", batch_noise, "Depolarizing probability p")->check(CLI::Range(0.0, 1.0));
  batches->add_option("--security-s", batch_s, "Security parameter s")->check(CLI::PositiveNumber);
  batches->add_option("--counts", batch_counts, "Batch counts to report")
      ->delimiter(',')
      ->check(CLI::PositiveNumber);

  auto* paradox = app.add_subcommand("paradox", "Show the GHZ contradiction with local realism");
  paradox->add_option("--format", paradox_format)->check(CLI::IsMember({"text", "json", "csv"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (run->parsed()) return cmd_run(run_flags, run_noise, run_s, run_protocol, log_path, out);
    if (compare->parsed()) return cmd_compare(cmp_flags, cmp_noise, cmp_s, trials, out);
    if (sweep->parsed())
      return cmd_sweep(sweep_flags, sweep_noise_range, sweep_s_range, sweep_protocol, out);
    if (batches->parsed()) return cmd_batches(batch_flags, batch_noise, batch_s, batch_counts, out);
    if (paradox->parsed()) {
      write_paradox(out, ghz_paradox_report(), output_format_from_string(paradox_format));
      return kExitOk;
    }
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace hqkd
