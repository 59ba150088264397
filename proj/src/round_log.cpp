#include "hqkd/round_log.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <string>

namespace hqkd {

using nlohmann::json;

namespace {

std::string bases_string(const std::array<PauliBasis, 3>& bases) {
  return {to_char(bases[0]), to_char(bases[1]), to_char(bases[2])};
}

ProtocolChoice protocol_from_string(const std::string& s) {
  if (s == "ghz") return ProtocolChoice::GHZ;
  if (s == "b92") return ProtocolChoice::B92;
  throw std::invalid_argument("unknown protocol '" + s + "'");
}

int pm_one(const json& j) {
  const int v = j.get<int>();
  if (v != 1 && v != -1) throw std::invalid_argument("outcome must be +1 or -1");
  return v;
}

int bit(const json& j) {
  const int v = j.get<int>();
  if (v != 0 && v != 1) throw std::invalid_argument("bit must be 0 or 1");
  return v;
}

}  // namespace

json to_json(const SessionConfig& c) {
  json j;
  j["total_rounds"] = c.total_rounds;
  j["seed"] = c.seed;
  j["noise"] = {{"p", c.noise.p},
                {"apply_to", c.noise.apply_to == NoiseScope::AllQubits ? "all" : "channel"}};
  j["eve"] = c.eve.to_string();
  j["security"] = {{"s", c.security.s}, {"n", c.security.n}};
  j["coin_mode"] = std::string(to_string(c.coin_mode));
  j["check_tolerance"] = c.check_tolerance;
  j["min_check_samples"] = c.min_check_samples;
  j["protocol"] = c.protocol_label();
  j["channel_order"] =
      c.channel_order == ChannelOrder::NoiseThenEve ? "noise-first" : "eve-first";
  j["qber_sample_fraction"] = c.qber_sample_fraction;
  return j;
}

SessionConfig session_config_from_json(const json& j) {
  SessionConfig c;
  c.total_rounds = j.at("total_rounds").get<std::uint64_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.noise.p = j.at("noise").at("p").get<double>();
  const auto scope = j.at("noise").at("apply_to").get<std::string>();
  if (scope != "all" && scope != "channel") throw std::invalid_argument("bad noise scope");
  c.noise.apply_to = scope == "all" ? NoiseScope::AllQubits : NoiseScope::QuantumChannelOnly;
  c.eve = EveStrategy::parse(j.at("eve").get<std::string>());
  c.security.s = j.at("security").at("s").get<int>();
  c.security.n = j.at("security").at("n").get<int>();
  const auto coin = j.at("coin_mode").get<std::string>();
  if (coin != "shared" && coin != "two-coin") throw std::invalid_argument("bad coin mode");
  c.coin_mode = coin == "shared" ? CoinMode::SharedCoin : CoinMode::TwoCoinDiscard;
  c.check_tolerance = j.at("check_tolerance").get<double>();
  c.min_check_samples = j.at("min_check_samples").get<std::size_t>();
  const auto protocol = j.at("protocol").get<std::string>();
  if (protocol != "combined") c.protocol_override = protocol_from_string(protocol);
  const auto order = j.at("channel_order").get<std::string>();
  if (order != "noise-first" && order != "eve-first") throw std::invalid_argument("bad channel order");
  c.channel_order = order == "noise-first" ? ChannelOrder::NoiseThenEve : ChannelOrder::EveThenNoise;
  c.qber_sample_fraction = j.at("qber_sample_fraction").get<double>();
  return c;
}

json to_json(const RoundRecord& r) {
  json j;
  j["round_index"] = r.round_index;
  if (const auto* g = r.ghz()) {
    j["protocol"] = "ghz";
    j["bases"] = bases_string(g->bases);
    j["outcomes"] = g->outcomes;
    j["classification"] = std::string(to_string(g->classification));
    if (g->combination) j["combination"] = std::string(to_string(*g->combination));
    if (g->key_bit) j["key_bit"] = *g->key_bit;
  } else if (const auto* b = r.b92()) {
    j["protocol"] = "b92";
    j["alice_bit"] = b->alice_bit;
    j["sent_state"] = b->sent_state == SignalState::Zero ? "zero" : "plus";
    j["bob_bit"] = b->bob_bit;
    j["bob_basis"] = std::string(1, to_char(b->bob_basis));
    j["bob_outcome"] = b->bob_outcome;
    j["conclusive"] = b->conclusive;
  } else {
    const auto& d = std::get<CoinDiscardRecord>(r.body);
    j["protocol"] = "coin-discard";
    j["alice_coin"] = std::string(to_string(d.alice_coin));
    j["bob_coin"] = std::string(to_string(d.bob_coin));
  }
  return j;
}

RoundRecord round_record_from_json(const json& j) {
  RoundRecord r;
  r.round_index = j.at("round_index").get<std::uint64_t>();
  const auto protocol = j.at("protocol").get<std::string>();

  if (protocol == "ghz") {
    const auto bases_text = j.at("bases").get<std::string>();
    if (bases_text.size() != 3) throw std::invalid_argument("bases must have three letters");
    std::array<PauliBasis, 3> bases{};
    for (int q = 0; q < 3; ++q) {
      bases[q] = pauli_from_char(bases_text[q]);
      if (bases[q] == PauliBasis::Z) throw std::invalid_argument("GHZ bases are X or Y");
    }
    const auto& outs = j.at("outcomes");
    if (!outs.is_array() || outs.size() != 3) throw std::invalid_argument("need three outcomes");
    const std::array<int, 3> outcomes{pm_one(outs[0]), pm_one(outs[1]), pm_one(outs[2])};

    const auto expected = GhzRoundRecord::classify(bases, outcomes);
    if (j.at("classification").get<std::string>() != to_string(expected.classification))
      throw std::invalid_argument("classification does not match bases");
    std::optional<CheckCombination> combination;
    if (j.contains("combination"))
      combination = check_combination_from_string(j["combination"].get<std::string>());
    std::optional<int> key_bit;
    if (j.contains("key_bit")) key_bit = bit(j["key_bit"]);
    if (combination != expected.combination) throw std::invalid_argument("combination mismatch");
    if (key_bit != expected.key_bit) throw std::invalid_argument("key_bit mismatch");
    r.body = expected;
  } else if (protocol == "b92") {
    B92RoundRecord b;
    b.alice_bit = bit(j.at("alice_bit"));
    const auto sent = j.at("sent_state").get<std::string>();
    if (sent != "zero" && sent != "plus") throw std::invalid_argument("bad sent_state");
    b.sent_state = sent == "zero" ? SignalState::Zero : SignalState::Plus;
    b.bob_bit = bit(j.at("bob_bit"));
    const auto basis = j.at("bob_basis").get<std::string>();
    if (basis != "Z" && basis != "X") throw std::invalid_argument("bob_basis must be Z or X");
    b.bob_basis = pauli_from_char(basis[0]);
    b.bob_outcome = pm_one(j.at("bob_outcome"));
    b.conclusive = j.at("conclusive").get<bool>();
    if ((b.sent_state == SignalState::Zero) != (b.alice_bit == 0))
      throw std::invalid_argument("sent_state does not match alice_bit");
    if ((b.bob_basis == PauliBasis::Z) != (b.bob_bit == 0))
      throw std::invalid_argument("bob_basis does not match bob_bit");
    if (b.conclusive != (b.bob_outcome == -1))
      throw std::invalid_argument("conclusive flag does not match outcome");
    r.body = b;
  } else if (protocol == "coin-discard") {
    CoinDiscardRecord d{protocol_from_string(j.at("alice_coin").get<std::string>()),
                        protocol_from_string(j.at("bob_coin").get<std::string>())};
    if (d.alice_coin == d.bob_coin) throw std::invalid_argument("discarded coins must disagree");
    r.body = d;
  } else {
    throw std::invalid_argument("unknown protocol tag '" + protocol + "'");
  }
  return r;
}

void write_round_log(std::ostream& out, const SessionConfig& config,
                     std::span<const RoundRecord> records) {
  const json header = {{"schema_version", kSchemaVersion},
                       {"kind", "hqkd-round-log"},
                       {"config", to_json(config)}};
  out << header.dump() << '\n';
  for (const auto& r : records) out << to_json(r).dump() << '\n';
}

void write_round_log(const std::filesystem::path& path, const SessionConfig& config,
                     std::span<const RoundRecord> records) {
  std::ofstream out(path);
  if (!out) throw RoundLogError("cannot open '" + path.string() + "' for writing", 0);
  write_round_log(out, config, records);
  out.flush();
  if (!out) throw RoundLogError("write to '" + path.string() + "' failed", 0);
}

RoundLog read_round_log(std::istream& in) {
  RoundLog log;
  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) throw RoundLogError("missing header", 1);
  ++line_no;
  try {
    const auto header = json::parse(line);
    const int version = header.at("schema_version").get<int>();
    if (version != kSchemaVersion)
      throw RoundLogError("unsupported schema_version " + std::to_string(version), line_no);
    log.config = session_config_from_json(header.at("config"));
  } catch (const RoundLogError&) {
    throw;
  } catch (const std::exception& e) {
    throw RoundLogError(std::string("malformed header: ") + e.what(), line_no);
  }

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      log.records.push_back(round_record_from_json(json::parse(line)));
    } catch (const std::exception& e) {
      throw RoundLogError(std::string("malformed record: ") + e.what(), line_no);
    }
  }
  return log;
}

RoundLog read_round_log(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw RoundLogError("cannot open '" + path.string() + "'", 0);
  return read_round_log(in);
}

}  // namespace hqkd
