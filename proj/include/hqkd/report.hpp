#pragma once

// Machine- and human-readable renderings of session results, comparisons,
// parameter sweeps and the GHZ paradox.

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "hqkd/analytics.hpp"
#include "hqkd/session.hpp"

namespace hqkd {

enum class OutputFormat { Text, Json, Csv };

OutputFormat output_format_from_string(const std::string& text);

std::string bits_to_string(std::span<const std::uint8_t> bits);

nlohmann::json to_json(const CheckReport& check);
nlohmann::json to_json(const SessionReport& report);
/// protocol,metric,value rows.
void write_csv(std::ostream& out, const SessionReport& report);
void write_text(std::ostream& out, const SessionReport& report);

void write_comparison(std::ostream& out, std::span<const ComparisonRow> rows, OutputFormat format);

struct SweepRow {
  double p = 0.0;
  int s = 0;
  double ghz_fidelity = 0.0;
  double b92_fidelity = 0.0;
  double combined_fidelity = 0.0;
  bool security_condition = false;
  double entropy_bound = 0.0;
  std::string verdict;
  std::optional<double> qber;
  std::size_t generated_bits = 0;
  std::size_t key_bits = 0;
};

/// One session per grid point, all with the base config's seed.
std::vector<SweepRow> sweep_noise(const SessionConfig& base, std::span<const double> noise_values);
std::vector<SweepRow> sweep_security(const SessionConfig& base, std::span<const int> s_values);

/// start:end:step, inclusive of end up to rounding. Throws std::invalid_argument
/// unless start <= end and step > 0.
std::vector<double> parse_range(const std::string& text);

void write_sweep(std::ostream& out, std::span<const SweepRow> rows, OutputFormat format);

/// Key counts per batch for one choice of batch count over a fixed budget.
struct BatchSeries {
  std::size_t batches = 0;
  std::vector<BatchCount> counts;
};

void write_batches(std::ostream& out, std::span<const BatchSeries> series, OutputFormat format);

nlohmann::json to_json(const ParadoxReport& report);
void write_paradox(std::ostream& out, const ParadoxReport& report, OutputFormat format);

}  // namespace hqkd
