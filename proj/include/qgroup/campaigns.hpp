#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "qgroup/quantization.hpp"
#include "qgroup/skew_matrix.hpp"

namespace qgroup {

/// Thrown for anything that should end a run with exit status 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Campaign names in execution order.
const std::vector<std::string>& campaign_names();

/// Text describing what a campaign checks and which operations it exercises.
/// Throws ConfigError listing the valid names for an unknown one.
std::string describe(const std::string& name);

struct CampaignConfig {
  std::string j_path;
  SkewMatrix J = SkewMatrix::standard();
  std::vector<std::string> campaigns;
  QuantizationConfig quant;
  std::string output_dir = "out";
  std::uint64_t seed = 1;

  /// Relative paths inside the file resolve against its directory.
  static CampaignConfig load(const std::string& path);
  static CampaignConfig from_json(const nlohmann::json& j, const std::string& base_dir);
  /// Parses "a,b,c"; an empty string selects nothing.
  static std::vector<std::string> parse_campaign_list(const std::string& csv);
  void validate() const;
};

enum class Comparison { exact_zero, at_most, at_least, nonzero };

struct CheckRecord {
  std::string campaign;
  std::string name;
  std::string anchor;  // the identity being checked, in words
  Comparison comparison = Comparison::at_most;
  bool exact = false;     // exact arithmetic; residual counts nonzero terms
  double residual = 0;
  double tolerance = 0;
  bool pass = false;
  double seconds = 0;
};

struct Report {
  std::vector<CheckRecord> checks;
  std::map<std::string, std::string> tables;  // file name -> CSV text
  std::map<std::string, double> campaign_seconds;
  std::vector<std::string> campaigns;
  std::uint64_t seed = 0;
  SkewMatrix J = SkewMatrix::standard();

  int failed() const;
  /// Deterministic: wall times are left out.
  nlohmann::json to_json() const;
  nlohmann::json timings_json() const;
  /// report.json, timings.json and every table.
  void write(const std::string& dir) const;
};

Report run_campaigns(const CampaignConfig& config);

}  // namespace qgroup
