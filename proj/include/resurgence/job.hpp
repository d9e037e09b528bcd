#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "resurgence/resurgence.hpp"

namespace resurgence {

inline constexpr const char* kToolVersion = "0.1.0";

/// A pattern factor: an ideal raised to ceil((num*n + add)/den), or a member of a family at n + offset.
struct FactorSpec {
  std::string ideal;
  std::int64_t num = 0;
  std::int64_t add = 1;
  std::int64_t den = 1;
  std::string member;  // "self" for the family being defined
  std::int64_t offset = 0;

  friend bool operator==(const FactorSpec&, const FactorSpec&) = default;
};

struct TailSpec {
  std::string kind = "none";  // none | constant | power
  std::string ideal;
  std::string exponent;       // sqrt | log2 | rational alpha

  friend bool operator==(const TailSpec&, const TailSpec&) = default;
};

struct FamilySpec {
  std::string kind;
  std::string ideal;
  Rational alpha = 1;
  std::vector<std::string> prefix;
  TailSpec tail;
  std::int64_t period = 1;
  std::vector<std::vector<std::vector<FactorSpec>>> residues;  // residue -> sum of products
  std::string family;
  std::int64_t k = 1;

  friend bool operator==(const FamilySpec&, const FamilySpec&) = default;
};

struct TaskSpec {
  std::string op;
  std::string a;
  std::string b;
  std::string family;
  std::string ideal;
  std::string prime;
  std::string property;
  std::string search = "auto";
  std::vector<std::int64_t> valuation;
  std::vector<std::int64_t> grid;
  std::optional<std::int64_t> s_max, r_max, cutoff, n, k, window, horizon, kmax, budget;
  Assertions assertions;

  friend bool operator==(const TaskSpec&, const TaskSpec&) = default;
};

struct Defaults {
  std::optional<std::int64_t> window, horizon, kmax, cutoff, budget, s_max, r_max;

  friend bool operator==(const Defaults&, const Defaults&) = default;
};

struct OutputSpec {
  std::string format = "json";
  std::string path;

  friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

struct JobConfig {
  std::size_t vars = 0;
  std::map<std::string, std::vector<std::vector<std::int64_t>>> ideals;
  std::map<std::string, FamilySpec> families;
  std::vector<TaskSpec> tasks;
  Defaults defaults;
  OutputSpec output;

  friend bool operator==(const JobConfig&, const JobConfig&) = default;
};

struct ParseResult {
  std::optional<JobConfig> config;
  std::vector<std::string> errors;
};

/// Validates the whole document and reports every schema error found.
ParseResult parse_config(const std::string& text);

/// Normalized form; parse_config(config_to_json(c).dump()) gives back c.
nlohmann::json config_to_json(const JobConfig& config);

/// FNV-1a 64 of the normalized config, as 16 hex digits.
std::string config_digest(const JobConfig& config);

/// Command-line values that take precedence over the config.
struct Overrides {
  std::optional<std::int64_t> window, cutoff, kmax, horizon;
};

struct Table {
  std::string name;
  std::vector<std::vector<std::string>> rows;  // index, value, tag
};

struct TaskOutcome {
  std::size_t index = 0;
  std::string op;
  bool ok = true;
  std::string error;
  nlohmann::json result;
  std::vector<Table> tables;
  double seconds = 0;
};

struct RunReport {
  std::string version = kToolVersion;
  std::string digest;
  std::vector<TaskOutcome> tasks;

  bool any_error() const;
};

RunReport run(const JobConfig& config, const Overrides& overrides = {});

std::string emit_json(const RunReport& report, bool include_timing = true);

/// One (file name, contents) pair per sequence table.
std::vector<std::pair<std::string, std::string>> emit_csv(const RunReport& report);

nlohmann::json to_json(const Rational& q);
nlohmann::json to_json(const ExtendedRational& x);
nlohmann::json to_json(const SequenceValue& v);
nlohmann::json to_json(const ResurgenceReport& report);
nlohmann::json to_json(const ValidationReport& report);

}  // namespace resurgence
