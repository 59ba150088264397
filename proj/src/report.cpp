#include "hqkd/report.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "hqkd/round_log.hpp"

namespace hqkd {

using nlohmann::json;

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::string optional_cell(const std::optional<double>& v) { return v ? fmt::format("{}", *v) : ""; }

std::string verdict_string(const AbortDecision& d) {
  return d.aborted() ? fmt::format("aborted({})", to_string(*d.reason)) : "completed";
}

}  // namespace

OutputFormat output_format_from_string(const std::string& text) {
  if (text == "text") return OutputFormat::Text;
  if (text == "json") return OutputFormat::Json;
  if (text == "csv") return OutputFormat::Csv;
  throw std::invalid_argument("unknown format '" + text + "'");
}

std::string bits_to_string(std::span<const std::uint8_t> bits) {
  std::string s;
  s.reserve(bits.size());
  for (auto b : bits) s.push_back(b ? '1' : '0');
  return s;
}

// ---------------------------------------------------------------------------
// Session report

json to_json(const CheckReport& check) {
  json combos = json::array();
  for (const auto& c : check.combinations) {
    combos.push_back({{"combination", std::string(to_string(c.combination))},
                      {"samples", c.sample_count},
                      {"mean_product", c.sampled() ? json(c.mean_product) : json(nullptr)},
                      {"target", target_product(c.combination)}});
  }
  return {{"tolerance", check.tolerance}, {"passed", check.passed}, {"combinations", combos}};
}

json to_json(const SessionReport& r) {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["config"] = to_json(r.config);
  j["verdict"] = {{"status", r.completed() ? "completed" : "aborted"},
                  {"reason", r.verdict.reason ? json(std::string(to_string(*r.verdict.reason)))
                                              : json(nullptr)}};
  j["coin_counts"] = {{"ghz", r.ghz_rounds}, {"b92", r.b92_rounds}, {"discarded", r.coin_discards}};
  j["fidelity_used"] = r.fidelity_used;
  j["security_condition"] = security_condition(r.fidelity_used, r.config.security);
  j["entropy_bound"] = entropy_bound(r.config.security);
  j["qber"] = optional_number(r.qber);
  j["qber_sample_size"] = r.qber_sample_size;
  j["ghz_key_disagreement"] = optional_number(r.ghz_key_disagreement);
  j["check_report"] = to_json(r.check_report);
  j["generated_bits"] = {
      {"ghz", r.generated_ghz_bits}, {"b92", r.generated_b92_bits}, {"total", r.generated_bits()}};
  j["empirical_rates"] = {{"ghz_key_rate", r.rates.ghz_key_rate},
                          {"b92_sift_rate", r.rates.b92_sift_rate},
                          {"combined_bits_per_round", r.rates.combined_bits_per_round}};
  const auto n = static_cast<double>(r.config.total_rounds);
  j["analytic"] = {{"b92_conclusive_probability_formula", b92_conclusive_probability_analytic()},
                   {"b92_conclusive_probability_procedure", 0.25},
                   {"combined_formula_bits", combined_key_length(n, 0.0)},
                   {"combined_procedure_bits", combined_key_length_procedure(n, 0.0)}};
  j["keys"] = {{"ghz", bits_to_string(r.ghz_key_bits)},
               {"b92_alice", bits_to_string(r.b92_key.alice_bits)},
               {"b92_bob", bits_to_string(r.b92_key.bob_bits)},
               {"b92_source_rounds", r.b92_key.source_rounds},
               {"combined", bits_to_string(r.combined_key)}};
  return j;
}

void write_csv(std::ostream& out, const SessionReport& r) {
  auto row = [&](std::string_view protocol, std::string_view metric, const auto& value) {
    fmt::print(out, "{},{},{}\n", protocol, metric, value);
  };
  out << "protocol,metric,value\n";
  row("session", "rounds", r.config.total_rounds);
  row("session", "seed", r.config.seed);
  row("session", "noise_p", r.config.noise.p);
  row("session", "verdict", verdict_string(r.verdict));
  row("session", "fidelity_used", r.fidelity_used);
  row("session", "coin_discards", r.coin_discards);
  row("ghz", "rounds", r.ghz_rounds);
  row("ghz", "generated_bits", r.generated_ghz_bits);
  row("ghz", "key_rate", r.rates.ghz_key_rate);
  row("ghz", "key_disagreement", optional_cell(r.ghz_key_disagreement));
  for (const auto& c : r.check_report.combinations) {
    const auto name = to_string(c.combination);
    row("ghz", fmt::format("check_{}_samples", name), c.sample_count);
    row("ghz", fmt::format("check_{}_mean", name),
        c.sampled() ? fmt::format("{}", c.mean_product) : std::string{});
  }
  row("ghz", "check_passed", r.check_report.passed ? "true" : "false");
  row("b92", "rounds", r.b92_rounds);
  row("b92", "sifted_bits", r.generated_b92_bits);
  row("b92", "sift_rate", r.rates.b92_sift_rate);
  row("b92", "qber", optional_cell(r.qber));
  row("combined", "generated_bits", r.generated_bits());
  row("combined", "key_bits", r.combined_key.size());
  row("combined", "bits_per_round", r.rates.combined_bits_per_round);
}

void write_text(std::ostream& out, const SessionReport& r) {
  fmt::print(out, "Session: {} rounds, seed {}, protocol {}, noise p = {}, eve {}\n",
             r.config.total_rounds, r.config.seed, r.config.protocol_label(), r.config.noise.p,
             r.config.eve.to_string());
  fmt::print(out, "Coin: {} GHZ, {} B92, {} discarded\n", r.ghz_rounds, r.b92_rounds,
             r.coin_discards);
  fmt::print(out, "GHZ: {} key bits ({:.4f}/round)", r.generated_ghz_bits, r.rates.ghz_key_rate);
  if (r.ghz_key_disagreement)
    fmt::print(out, ", Alice/Bob disagreement {:.4f}", *r.ghz_key_disagreement);
  out << '\n';
  for (const auto& c : r.check_report.combinations) {
    if (c.sampled())
      fmt::print(out, "  check {}: {:5} samples, mean {:+.4f} (target {:+.0f})\n",
                 to_string(c.combination), c.sample_count, c.mean_product,
                 target_product(c.combination));
    else
      fmt::print(out, "  check {}: unsampled\n", to_string(c.combination));
  }
  fmt::print(out, "B92: {} sifted bits ({:.4f}/round)", r.generated_b92_bits, r.rates.b92_sift_rate);
  if (r.qber) fmt::print(out, ", QBER {:.4f} over {} bits", *r.qber, r.qber_sample_size);
  out << '\n';
  fmt::print(out, "Fidelity {:.6f} (F^2 {} 1 - 2^-{})\n", r.fidelity_used,
             security_condition(r.fidelity_used, r.config.security) ? ">" : "<=",
             r.config.security.s);
  fmt::print(out, "Verdict: {}\n", verdict_string(r.verdict));
  fmt::print(out, "Combined key: {} bits ({:.4f} generated bits/round)\n", r.combined_key.size(),
             r.rates.combined_bits_per_round);
}

// ---------------------------------------------------------------------------
// Comparison

void write_comparison(std::ostream& out, std::span<const ComparisonRow> rows, OutputFormat format) {
  switch (format) {
    case OutputFormat::Json: {
      json arr = json::array();
      for (const auto& r : rows)
        arr.push_back({{"protocol", r.protocol},
                       {"rounds", r.rounds},
                       {"trials", r.trials},
                       {"mean_key_bits", r.mean_key_bits},
                       {"key_rate", r.key_rate},
                       {"aborted_trials", r.aborted_trials},
                       {"formula_bits", r.formula_bits},
                       {"procedure_bits", r.procedure_bits}});
      out << json{{"schema_version", kSchemaVersion}, {"comparison", arr}}.dump(2) << '\n';
      break;
    }
    case OutputFormat::Csv:
      out << "protocol,rounds,trials,mean_key_bits,key_rate,aborted_trials,formula_bits,"
             "procedure_bits\n";
      for (const auto& r : rows)
        fmt::print(out, "{},{},{},{},{},{},{},{}\n", r.protocol, r.rounds, r.trials,
                   r.mean_key_bits, r.key_rate, r.aborted_trials, r.formula_bits,
                   r.procedure_bits);
      break;
    case OutputFormat::Text:
      fmt::print(out, "{:<10} {:>8} {:>7} {:>12} {:>9} {:>8} {:>10} {:>10}\n", "protocol",
                 "rounds", "trials", "key bits", "rate", "aborted", "formula", "procedure");
      for (const auto& r : rows)
        fmt::print(out, "{:<10} {:>8} {:>7} {:>12.1f} {:>9.4f} {:>8} {:>10.1f} {:>10.1f}\n",
                   r.protocol, r.rounds, r.trials, r.mean_key_bits, r.key_rate, r.aborted_trials,
                   r.formula_bits, r.procedure_bits);
      out << "formula: key-length formulas with n = rounds (1/2 B92 conclusive rate); "
             "procedure: 1/4 measured sift rate\n";
      break;
  }
}

// ---------------------------------------------------------------------------
// Sweeps

namespace {

SweepRow sweep_point(const SessionConfig& cfg) {
  const auto report = run_session(cfg);
  SweepRow row;
  row.p = cfg.noise.p;
  row.s = cfg.security.s;
  row.ghz_fidelity = ghz_fidelity(cfg.noise.p);
  row.b92_fidelity = b92_fidelity(cfg.noise.p);
  row.combined_fidelity = combined_fidelity(cfg.noise.p);
  row.security_condition = security_condition(row.combined_fidelity, cfg.security);
  row.entropy_bound = entropy_bound(cfg.security);
  row.verdict = verdict_string(report.verdict);
  row.qber = report.qber;
  row.generated_bits = report.generated_bits();
  row.key_bits = report.combined_key.size();
  return row;
}

}  // namespace

std::vector<SweepRow> sweep_noise(const SessionConfig& base, std::span<const double> noise_values) {
  std::vector<SweepRow> rows;
  for (double p : noise_values) {
    auto cfg = base;
    cfg.noise.p = p;
    cfg.validate();
    rows.push_back(sweep_point(cfg));
  }
  return rows;
}

std::vector<SweepRow> sweep_security(const SessionConfig& base, std::span<const int> s_values) {
  std::vector<SweepRow> rows;
  for (int s : s_values) {
    auto cfg = base;
    cfg.security.s = s;
    cfg.validate();
    rows.push_back(sweep_point(cfg));
  }
  return rows;
}

std::vector<double> parse_range(const std::string& text) {
  std::vector<double> parts;
  std::size_t start = 0;
  while (true) {
    const auto colon = text.find(':', start);
    const auto piece = text.substr(start, colon == std::string::npos ? colon : colon - start);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(piece, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("range '" + text + "': '" + piece + "' is not a number");
    }
    if (used != piece.size())
      throw std::invalid_argument("range '" + text + "': '" + piece + "' is not a number");
    parts.push_back(v);
    if (colon == std::string::npos) break;
    start = colon + 1;
  }
  if (parts.size() == 1) return parts;
  if (parts.size() != 3) throw std::invalid_argument("range '" + text + "' must be start:end:step");
  const double lo = parts[0], hi = parts[1], step = parts[2];
  if (!(step > 0.0)) throw std::invalid_argument("range '" + text + "': step must be > 0");
  if (lo > hi) throw std::invalid_argument("range '" + text + "': start must be <= end");
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> values(count);
  for (std::size_t i = 0; i < count; ++i) values[i] = std::min(lo + static_cast<double>(i) * step, hi);
  return values;
}

void write_sweep(std::ostream& out, std::span<const SweepRow> rows, OutputFormat format) {
  switch (format) {
    case OutputFormat::Json: {
      json arr = json::array();
      for (const auto& r : rows)
        arr.push_back({{"p", r.p},
                       {"s", r.s},
                       {"ghz_fidelity", r.ghz_fidelity},
                       {"b92_fidelity", r.b92_fidelity},
                       {"combined_fidelity", r.combined_fidelity},
                       {"security_condition", r.security_condition},
                       {"entropy_bound", r.entropy_bound},
                       {"verdict", r.verdict},
                       {"qber", optional_number(r.qber)},
                       {"generated_bits", r.generated_bits},
                       {"key_bits", r.key_bits}});
      out << json{{"schema_version", kSchemaVersion}, {"sweep", arr}}.dump(2) << '\n';
      break;
    }
    case OutputFormat::Csv:
      out << "p,s,ghz_fidelity,b92_fidelity,combined_fidelity,security_condition,entropy_bound,"
             "verdict,qber,generated_bits,key_bits\n";
      for (const auto& r : rows)
        fmt::print(out, "{},{},{},{},{},{},{},{},{},{},{}\n", r.p, r.s, r.ghz_fidelity,
                   r.b92_fidelity, r.combined_fidelity, r.security_condition, r.entropy_bound,
                   r.verdict, optional_cell(r.qber), r.generated_bits, r.key_bits);
      break;
    case OutputFormat::Text:
      fmt::print(out, "{:>6} {:>3} {:>9} {:>9} {:>9} {:>6} {:>11} {:>8} {:>9} {:>6}  {}\n", "p", "s",
                 "F_ghz", "F_b92", "F_comb", "secure", "S bound", "qber", "generated", "key",
                 "verdict");
      for (const auto& r : rows)
        fmt::print(out, "{:>6.3f} {:>3} {:>9.6f} {:>9.6f} {:>9.6f} {:>6} {:>11.4e} {:>8} {:>9} {:>6}  {}\n",
                   r.p, r.s, r.ghz_fidelity, r.b92_fidelity, r.combined_fidelity,
                   r.security_condition ? "yes" : "no", r.entropy_bound,
                   r.qber ? fmt::format("{:.4f}", *r.qber) : "-", r.generated_bits, r.key_bits,
                   r.verdict);
      break;
  }
}

void write_batches(std::ostream& out, std::span<const BatchSeries> series, OutputFormat format) {
  switch (format) {
    case OutputFormat::Json: {
      json arr = json::array();
      for (const auto& s : series) {
        json counts = json::array();
        for (const auto& c : s.counts)
          counts.push_back({{"batch", c.batch}, {"rounds", c.rounds}, {"key_bits", c.key_bits}});
        arr.push_back({{"batches", s.batches}, {"counts", counts}});
      }
      out << json{{"schema_version", kSchemaVersion}, {"batches", arr}}.dump(2) << '\n';
      break;
    }
    case OutputFormat::Csv:
      out << "batches,batch,rounds,key_bits\n";
      for (const auto& s : series)
        for (const auto& c : s.counts)
          fmt::print(out, "{},{},{},{}\n", s.batches, c.batch, c.rounds, c.key_bits);
      break;
    case OutputFormat::Text:
      for (const auto& s : series) {
        fmt::print(out, "{} batches:\n", s.batches);
        for (const auto& c : s.counts)
          fmt::print(out, "  batch {:>3}: {:>7} rounds, {:>6} key bits ({:.4f}/round)\n", c.batch,
                     c.rounds, c.key_bits,
                     c.rounds ? static_cast<double>(c.key_bits) / static_cast<double>(c.rounds)
                              : 0.0);
      }
      break;
  }
}

// ---------------------------------------------------------------------------
// Paradox

json to_json(const ParadoxReport& report) {
  json exps = json::array();
  for (const auto& [c, v] : report.quantum_expectations)
    exps.push_back({{"combination", std::string(to_string(c))}, {"expectation", v}});
  return {{"schema_version", kSchemaVersion},
          {"quantum_expectations", exps},
          {"quantum_product", report.quantum_product},
          {"lhv_product", report.lhv_product},
          {"contradiction", report.quantum_product != static_cast<double>(report.lhv_product)}};
}

void write_paradox(std::ostream& out, const ParadoxReport& report, OutputFormat format) {
  switch (format) {
    case OutputFormat::Json:
      out << to_json(report).dump(2) << '\n';
      break;
    case OutputFormat::Csv:
      out << "quantity,value\n";
      for (const auto& [c, v] : report.quantum_expectations)
        fmt::print(out, "<{}>,{:.1f}\n", to_string(c), v);
      fmt::print(out, "quantum_product,{:.1f}\n", report.quantum_product);
      fmt::print(out, "lhv_product,{:+d}\n", report.lhv_product);
      break;
    case OutputFormat::Text:
      out << "GHZ state (|000> + |111>)/sqrt(2)\n";
      for (const auto& [c, v] : report.quantum_expectations)
        fmt::print(out, "  <{}> = {:+.1f}\n", to_string(c), v);
      fmt::print(out, "quantum_product = {:.1f}\n", report.quantum_product);
      fmt::print(out, "lhv_product = {:+d}\n", report.lhv_product);
      out << "Predetermined +-1 values make every factor appear twice, so their product is +1;\n"
             "quantum mechanics gives -1. No local hidden variable model reproduces GHZ.\n";
      break;
  }
}

}  // namespace hqkd
