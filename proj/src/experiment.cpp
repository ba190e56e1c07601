#include "randpoly/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "randpoly/asymptotics.hpp"
#include "randpoly/errors.hpp"
#include "randpoly/simulation.hpp"

namespace randpoly {
namespace {

using nlohmann::json;

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string optional_field(const std::optional<double>& v) {
  return v ? format_value(*v) : std::string();
}

std::vector<double> number_array(const json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_array()) {
    throw ConfigError("model descriptor needs a numeric array \"" + key + "\"");
  }
  std::vector<double> out;
  for (const auto& v : j[key]) {
    if (!v.is_number()) throw ConfigError("\"" + key + "\" must contain numbers only");
    out.push_back(v.get<double>());
  }
  return out;
}

double number_field(const json& j, const std::string& key) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw ConfigError("model descriptor needs a numeric \"" + key + "\"");
  }
  return j[key].get<double>();
}

}  // namespace

CovarianceModel model_from_json(const json& spec) {
  if (!spec.is_object() || !spec.contains("kind") || !spec["kind"].is_string()) {
    throw ConfigError("model descriptor needs a string \"kind\"");
  }
  const std::string kind = spec["kind"].get<std::string>();
  try {
    if (kind == "independent") return CovarianceModel::independent();
    if (kind == "exponential") return CovarianceModel::exponential(number_field(spec, "rho"));
    if (kind == "constant") return CovarianceModel::constant(number_field(spec, "rho"));
    if (kind == "moving_average") {
      return CovarianceModel::moving_average(number_array(spec, "weights"));
    }
    if (kind == "tabulated") return CovarianceModel::tabulated(number_array(spec, "gamma"));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid model parameters: ") + e.what());
  }
  throw ConfigError("unknown model kind \"" + kind + "\"");
}

ExperimentConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");

  ExperimentConfig config;
  if (!j.contains("models") || !j["models"].is_array() || j["models"].empty()) {
    throw ConfigError("config needs a non-empty \"models\" array");
  }
  for (const auto& m : j["models"]) {
    model_from_json(m);  // validate the descriptor
    config.models.push_back(m);
  }

  if (!j.contains("degrees") || !j["degrees"].is_array() || j["degrees"].empty()) {
    throw ConfigError("config needs a non-empty \"degrees\" array");
  }
  for (const auto& d : j["degrees"]) {
    if (!d.is_number_integer() || d.get<long>() < 1) {
      throw ConfigError("\"degrees\" entries must be integers >= 1");
    }
    config.degrees.push_back(d.get<long>());
  }

  if (j.contains("trials")) {
    if (!j["trials"].is_number_integer() || j["trials"].get<long>() < 0) {
      throw ConfigError("\"trials\" must be an integer >= 0");
    }
    config.trials = j["trials"].get<long>();
  }
  if (j.contains("master_seed")) {
    if (!j["master_seed"].is_number_unsigned() && !j["master_seed"].is_number_integer()) {
      throw ConfigError("\"master_seed\" must be an integer");
    }
    config.master_seed = j["master_seed"].get<std::uint64_t>();
  }
  if (j.contains("outputs")) {
    const auto& outputs = j["outputs"];
    if (!outputs.is_object()) throw ConfigError("\"outputs\" must be an object");
    if (outputs.contains("csv_path")) config.csv_path = outputs["csv_path"].get<std::string>();
    if (outputs.contains("json_path")) config.json_path = outputs["json_path"].get<std::string>();
  }
  if (j.contains("quad_tol")) {
    if (!j["quad_tol"].is_number() || !(j["quad_tol"].get<double>() > 0.0)) {
      throw ConfigError("\"quad_tol\" must be > 0");
    }
    config.quad_tol = j["quad_tol"].get<double>();
  }
  if (j.contains("comparisons")) {
    const auto& c = j["comparisons"];
    if (!c.is_object()) throw ConfigError("\"comparisons\" must be an object");
    auto flag = [&c](const char* name, bool fallback) {
      return c.contains(name) ? c[name].get<bool>() : fallback;
    };
    config.comparisons.kac_rice = flag("kac_rice", true);
    config.comparisons.monte_carlo = flag("monte_carlo", true);
    config.comparisons.prediction = flag("prediction", true);
    config.comparisons.partition = flag("partition", false);
  }
  if (j.contains("workers")) {
    if (!j["workers"].is_number_integer() || j["workers"].get<int>() < 0) {
      throw ConfigError("\"workers\" must be an integer >= 0");
    }
    config.workers = j["workers"].get<int>();
  }
  return config;
}

ExperimentConfig config_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw ConfigError("config parse error in " + path + ": " + e.what());
  }
  return config_from_json(j);
}

json config_to_json(const ExperimentConfig& config) {
  json j;
  j["models"] = config.models;
  j["degrees"] = config.degrees;
  j["trials"] = config.trials;
  j["master_seed"] = config.master_seed;
  j["outputs"] = {{"csv_path", config.csv_path}, {"json_path", config.json_path}};
  j["quad_tol"] = config.quad_tol;
  j["comparisons"] = {{"kac_rice", config.comparisons.kac_rice},
                      {"monte_carlo", config.comparisons.monte_carlo},
                      {"prediction", config.comparisons.prediction},
                      {"partition", config.comparisons.partition}};
  return j;
}

std::uint64_t config_hash(const ExperimentConfig& config) {
  const std::string canonical = config_to_json(config).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

RunResult run_experiment(const ExperimentConfig& config) {
  if (config.degrees.empty()) throw ConfigError("config needs at least one degree");

  struct Job {
    std::string model_id;
    nlohmann::json descriptor;
    long n;
  };
  std::vector<Job> jobs;
  for (const auto& descriptor : config.models) {
    const CovarianceModel model = model_from_json(descriptor);
    for (long n : config.degrees) jobs.push_back({model.id(), descriptor, n});
  }
  std::sort(jobs.begin(), jobs.end(), [](const Job& a, const Job& b) {
    return a.model_id != b.model_id ? a.model_id < b.model_id : a.n < b.n;
  });

  RunResult result;
  result.csv_path = config.csv_path;
  result.json_path = config.json_path;
  result.config_hash = config_hash(config);

  for (const auto& job : jobs) {
    ComparisonRow row;
    row.model_id = job.model_id;
    row.n = job.n;
    try {
      const CovarianceModel model = model_from_json(job.descriptor);
      if (config.comparisons.kac_rice) {
        row.kr_value = expected_zeros_total(model, job.n, config.quad_tol).value;
      }
      if (config.comparisons.monte_carlo && config.trials > 0) {
        const SimulationSummary mc =
            simulate(model, job.n, config.trials, config.master_seed, config.workers);
        row.mc_mean = mc.mean_zeros;
        row.mc_stderr = mc.std_error;
      }
      if (config.comparisons.prediction && job.n >= 2) {
        const ModelClass model_class = model.kind() == CovarianceKind::constant && model.rho() > 0.0
                                           ? ModelClass::constant_covariance
                                           : ModelClass::nonvanishing_density;
        const double predicted = predicted_total(job.n, model_class).value;
        row.predicted = predicted;
        if (row.kr_value && predicted > 0.0) {
          row.ratio_kr_over_pred = *row.kr_value / predicted;
          const double loglogn = std::log(std::log(static_cast<double>(job.n)));
          if (loglogn > 0.0) {
            row.abs_gap_over_loglogn = std::fabs(*row.kr_value - predicted) / loglogn;
          }
        }
      }
      if (config.comparisons.partition && job.n >= 16) {
        result.partitions.push_back(partition_counts(model, job.n, config.quad_tol));
      }
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    result.rows.push_back(std::move(row));
  }

  std::ofstream csv(config.csv_path, std::ios::binary);
  if (!csv) throw IoError("cannot write " + config.csv_path);
  csv << "model_id,n,kr_value,mc_mean,mc_stderr,predicted,ratio_kr_over_pred,"
         "abs_gap_over_loglogn,error\n";
  for (const auto& row : result.rows) {
    csv << row.model_id << ',' << row.n << ',' << optional_field(row.kr_value) << ','
        << optional_field(row.mc_mean) << ',' << optional_field(row.mc_stderr) << ','
        << optional_field(row.predicted) << ',' << optional_field(row.ratio_kr_over_pred) << ','
        << optional_field(row.abs_gap_over_loglogn) << ',' << row.error << '\n';
  }
  csv.close();

  json manifest;
  manifest["tool"] = "randpoly";
  manifest["version"] = kToolVersion;
  char hash_hex[24];
  std::snprintf(hash_hex, sizeof(hash_hex), "%016llx",
                static_cast<unsigned long long>(result.config_hash));
  manifest["config_hash"] = hash_hex;
  manifest["config"] = config_to_json(config);
  manifest["rows"] = result.rows.size();
  json errors = json::array();
  for (const auto& row : result.rows) {
    if (!row.error.empty()) {
      errors.push_back({{"model_id", row.model_id}, {"n", row.n}, {"error", row.error}});
    }
  }
  manifest["errors"] = errors;
  if (!result.partitions.empty()) {
    json parts = json::array();
    for (const auto& p : result.partitions) {
      json intervals = json::array();
      for (const auto& piece : p.intervals) {
        intervals.push_back({{"lo", piece.lo},
                             {"hi", piece.hi},
                             {"value", piece.value},
                             {"quad_error", piece.quad_error}});
      }
      parts.push_back({{"n", p.n},
                       {"delta", p.delta},
                       {"eps", p.eps},
                       {"intervals", intervals},
                       {"total_unit", p.total_unit},
                       {"total_line", p.total_line}});
    }
    manifest["partitions"] = parts;
  }
  std::ofstream mj(config.json_path, std::ios::binary);
  if (!mj) throw IoError("cannot write " + config.json_path);
  mj << manifest.dump(2) << '\n';

  return result;
}

int compare_reports(const std::vector<std::string>& paths, std::ostream& out) {
  struct ParsedRow {
    std::string model_id;
    std::string n;
    std::optional<double> kr, mc, se;
    std::vector<std::string> raw;
  };
  std::vector<ParsedRow> rows;

  for (const auto& path : paths) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path + " is empty");
    if (line.rfind("model_id,", 0) != 0) throw ParseError(path + ": unexpected CSV header");
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::vector<std::string> fields;
      std::stringstream ss(line);
      std::string field;
      while (std::getline(ss, field, ',')) fields.push_back(field);
      fields.resize(9);
      ParsedRow row;
      row.model_id = fields[0];
      row.n = fields[1];
      auto parse = [](const std::string& s) -> std::optional<double> {
        if (s.empty()) return std::nullopt;
        return std::stod(s);
      };
      try {
        row.kr = parse(fields[2]);
        row.mc = parse(fields[3]);
        row.se = parse(fields[4]);
      } catch (const std::exception&) {
        throw ParseError(path + ": bad numeric field in row \"" + line + "\"");
      }
      row.raw = fields;
      rows.push_back(std::move(row));
    }
  }
  if (rows.empty()) throw ParseError("no data rows found");

  std::size_t id_width = 8;
  for (const auto& r : rows) id_width = std::max(id_width, r.model_id.size());

  out << std::left << std::setw(static_cast<int>(id_width + 2)) << "model_id" << std::right
      << std::setw(8) << "n" << std::setw(14) << "kac_rice" << std::setw(14) << "mc_mean"
      << std::setw(12) << "mc_stderr" << std::setw(14) << "predicted" << std::setw(10) << "flag"
      << '\n';

  int exit_code = 0;
  for (const auto& r : rows) {
    bool regression = false;
    if (r.kr && r.mc && r.se) {
      // absolute slack one decade above the default quadrature tolerance;
      // degree-1 rows have mc_stderr exactly 0
      regression = std::fabs(*r.mc - *r.kr) > 4.0 * (*r.se) + 1e-5;
    }
    if (regression) exit_code = 2;

    auto cell = [](const std::optional<double>& v) {
      if (!v) return std::string("-");
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.6f", *v);
      return std::string(buf);
    };
    std::optional<double> predicted;
    if (!r.raw[5].empty()) predicted = std::stod(r.raw[5]);
    out << std::left << std::setw(static_cast<int>(id_width + 2)) << r.model_id << std::right
        << std::setw(8) << r.n << std::setw(14) << cell(r.kr) << std::setw(14) << cell(r.mc)
        << std::setw(12) << cell(r.se) << std::setw(14) << cell(predicted) << std::setw(10)
        << (regression ? "MISMATCH" : (r.raw[8].empty() ? "ok" : "error")) << '\n';
  }
  return exit_code;
}

}  // namespace randpoly
