#ifndef RANDPOLY_EXPERIMENT_HPP
#define RANDPOLY_EXPERIMENT_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "randpoly/covariance.hpp"
#include "randpoly/kac_rice.hpp"

namespace randpoly {

inline constexpr const char* kToolVersion = "0.1.0";

/// Build a model from a CLI/config descriptor such as
/// {"kind": "exponential", "rho": 0.3} or {"kind": "tabulated",
/// "gamma": [1.0, 0.4, 0.1]}. Throws ConfigError on schema violations.
CovarianceModel model_from_json(const nlohmann::json& spec);

struct ComparisonFlags {
  bool kac_rice = true;
  bool monte_carlo = true;
  bool prediction = true;
  bool partition = false;
};

struct ExperimentConfig {
  std::vector<nlohmann::json> models;
  std::vector<long> degrees;
  long trials = 0;
  std::uint64_t master_seed = 0;
  std::string csv_path = "results.csv";
  std::string json_path = "manifest.json";
  double quad_tol = 1e-6;
  ComparisonFlags comparisons;
  int workers = 0;  // 0: RANDPOLY_WORKERS env, then hardware concurrency
};

ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig config_from_file(const std::string& path);

/// Canonical form with defaults filled in; hashing input.
nlohmann::json config_to_json(const ExperimentConfig& config);

/// FNV-1a 64 over the canonical serialized config; changes iff a config
/// field changes.
std::uint64_t config_hash(const ExperimentConfig& config);

struct ComparisonRow {
  std::string model_id;
  long n = 0;
  std::optional<double> kr_value;
  std::optional<double> mc_mean;
  std::optional<double> mc_stderr;
  std::optional<double> predicted;
  std::optional<double> ratio_kr_over_pred;
  std::optional<double> abs_gap_over_loglogn;
  std::string error;  // per-row capture; sweeps do not abort
};

struct RunResult {
  std::vector<ComparisonRow> rows;
  std::vector<PartitionReport> partitions;
  std::string csv_path;
  std::string json_path;
  std::uint64_t config_hash = 0;
};

/// Execute the sweep: per (model, n) a Kac-Rice total, optional Monte Carlo
/// summary, prediction and optional partition report; rows ordered by
/// (model_id, n), CSV and JSON manifest written once. Identical configs
/// byte-reproduce the CSV for any worker count.
RunResult run_experiment(const ExperimentConfig& config);

/// Render the rows of one or more result CSVs as an aligned table. Returns
/// 0, or 2 when any row shows |mc_mean - kr_value| > 4 * mc_stderr + 1e-5
/// (regression signal). Throws IoError / ParseError.
int compare_reports(const std::vector<std::string>& paths, std::ostream& out);

}  // namespace randpoly

#endif  // RANDPOLY_EXPERIMENT_HPP
