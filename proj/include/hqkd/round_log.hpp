#pragma once

// Line-delimited JSON round log. The first line is a header
//   {"schema_version":1,"kind":"hqkd-round-log","config":{...}}
// and every following line is one RoundRecord.

#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "hqkd/session.hpp"

namespace hqkd {

inline constexpr int kSchemaVersion = 1;

class RoundLogError : public std::runtime_error {
 public:
  RoundLogError(const std::string& what, std::size_t line)
      : std::runtime_error("round log line " + std::to_string(line) + ": " + what), line_(line) {}
  /// 1-based; 0 for errors not tied to a line (e.g. the file cannot be opened).
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct RoundLog {
  SessionConfig config;
  std::vector<RoundRecord> records;
};

nlohmann::json to_json(const SessionConfig& config);
SessionConfig session_config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const RoundRecord& record);
/// Throws std::invalid_argument if fields are missing or inconsistent (for
/// example a classification that does not match the bases).
RoundRecord round_record_from_json(const nlohmann::json& j);

void write_round_log(std::ostream& out, const SessionConfig& config,
                     std::span<const RoundRecord> records);
void write_round_log(const std::filesystem::path& path, const SessionConfig& config,
                     std::span<const RoundRecord> records);

RoundLog read_round_log(std::istream& in);
RoundLog read_round_log(const std::filesystem::path& path);

}  // namespace hqkd
