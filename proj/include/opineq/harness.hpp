#pragma once

// Randomized verification campaigns: per-index instance generation,
// evaluation, and aggregation into a report.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "opineq/functions.hpp"
#include "opineq/generators.hpp"
#include "opineq/verdict.hpp"

namespace opineq {

enum class TheoremId { T1, T2, T3, T4, T5, T6, COR, LH, KF, EX1, CHAIN, MONO, MP, TM1 };

const char* to_string(TheoremId id);
// Throws ConfigError("unknown theorem '...'").
TheoremId parse_theorem(const std::string& name);
const std::vector<TheoremId>& all_theorems();

struct Range {
  std::int64_t lo = 1;
  std::int64_t hi = 1;
};

// Parses "a..b" or a single integer.  Throws ConfigError.
Range parse_range(const std::string& text);

struct CampaignConfig {
  TheoremId theorem = TheoremId::T2;
  std::size_t count = 100;
  Range dim{2, 6};
  Range arity{2, 4};
  std::uint64_t seed = kDefaultSeed;
  Tolerance tol;
  std::vector<std::string> functions;  // empty: every eligible library member
  std::size_t threads = 1;
  bool keep_instances = false;  // serialize every instance, not only failures

  // Throws ConfigError on zero count, empty ranges, dim < 1, arity < 1,
  // unknown functions or functions the theorem cannot use.
  void validate() const;
};

// Default instance counts and ranges for each theorem.
CampaignConfig default_config(TheoremId id);

/// Everything needed to re-evaluate one instance.  Matrix lists hold
/// tuples ("x", "y"), field atoms ("a"), tuple-field atoms ("tf0", "tf1",
/// ...), frames and vectors; `reals` holds weights, states and parameters.
struct Instance {
  TheoremId theorem = TheoremId::T2;
  std::uint64_t index = 0;
  std::string function;
  std::map<std::string, std::vector<Matrix>> matrices;
  std::map<std::string, std::vector<double>> reals;
};

Instance generate_instance(const CampaignConfig& cfg, std::uint64_t index);

/// Runs the theorem's check, plus the campaign-level side conditions
/// (affine equality, unit mass of mu_xi, agreement of the Mond-Pecaric
/// route with the trivial-field route, Ky Fan equality on top frames).
Verdict evaluate_instance(const Instance& inst, const Tolerance& tol = {});

struct InstanceRecord {
  std::uint64_t index = 0;
  std::string function;
  Eigen::Index dim = 0;
  std::size_t arity = 0;
  Verdict verdict;
  std::optional<Instance> instance;
};

struct FlagAuditRecord {
  std::string function;
  std::size_t arity = 0;
  bool control = false;
  bool ok = true;
  std::string witness;
};

struct CampaignSummary {
  std::size_t total = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t invalid = 0;
  std::size_t near_equality = 0;
  std::optional<double> min_gap;
  std::optional<std::uint64_t> min_gap_index;
  bool flags_ok = true;     // every library member passed its audit
  bool controls_ok = true;  // every control was rejected
};

struct CampaignReport {
  CampaignConfig config;
  std::vector<InstanceRecord> records;
  std::vector<FlagAuditRecord> flag_audit;
  CampaignSummary summary;
  double wall_seconds = 0.0;
};

CampaignReport run_campaign(const CampaignConfig& cfg);

// EX1 parameter triple for an instance index: index 0 is (1, 1.3, 3.4),
// later indices sweep t across (1, sqrt 2) with lambda 1% above c/(t - c).
struct ExampleParams {
  double c = 1.0;
  double t = 1.3;
  double lambda = 3.4;
};
ExampleParams example_params(std::uint64_t index, std::size_t count);

}  // namespace opineq
