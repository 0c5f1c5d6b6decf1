#pragma once

// JSON encoding of instances and campaign reports (schema version 1).

#include <string>

#include <nlohmann/json.hpp>

#include "opineq/harness.hpp"

namespace opineq {

inline constexpr int kReportSchemaVersion = 1;

nlohmann::json matrix_to_json(const Matrix& m);
// Throws ParseError (line 0) on malformed input.
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json verdict_to_json(const Verdict& v);
Verdict verdict_from_json(const nlohmann::json& j);

nlohmann::json instance_to_json(const Instance& inst);
Instance instance_from_json(const nlohmann::json& j);

nlohmann::json config_to_json(const CampaignConfig& cfg);
CampaignConfig config_from_json(const nlohmann::json& j);

/// The wall-time field is the only non-deterministic entry; leave it out to
/// compare reports byte for byte.
nlohmann::json report_to_json(const CampaignReport& report, bool include_timing = true);
std::string dump_report(const CampaignReport& report, bool include_timing = true);

struct ReplayEntry {
  std::uint64_t index = 0;
  Verdict recorded;
  Verdict replayed;
  bool identical = false;  // outcome and every number bit-for-bit equal
};

/// Re-evaluates every serialized instance of a report under its recorded
/// tolerance.  Throws ParseError or ConfigError on a malformed document.
std::vector<ReplayEntry> replay_report(const nlohmann::json& report);

bool same_verdict(const Verdict& a, const Verdict& b);

}  // namespace opineq
