// randpoly: expected real zeros of random algebraic polynomials with
// stationary Gaussian coefficients, by Kac-Rice quadrature and Monte Carlo.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "randpoly/asymptotics.hpp"
#include "randpoly/errors.hpp"
#include "randpoly/experiment.hpp"
#include "randpoly/kac_rice.hpp"
#include "randpoly/moments.hpp"
#include "randpoly/rng.hpp"
#include "randpoly/simulation.hpp"

namespace {

using nlohmann::json;

randpoly::CovarianceModel parse_model(const std::string& arg) {
  // inline JSON first, then a path to a JSON file
  try {
    return randpoly::model_from_json(json::parse(arg));
  } catch (const json::parse_error&) {
    std::ifstream in(arg);
    if (!in) {
      throw randpoly::ConfigError("--model is neither valid JSON nor a readable file: " + arg);
    }
    json j;
    try {
      in >> j;
    } catch (const json::parse_error& e) {
      throw randpoly::ConfigError("cannot parse model file " + arg + ": " + e.what());
    }
    return randpoly::model_from_json(j);
  }
}

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void print_moment_row(std::ostream& out, const randpoly::MomentTriple& t) {
  out << randpoly::to_string(t.method) << ',' << t.n << ',' << num(t.x) << ',' << num(t.pp) << ','
      << num(t.pd) << ',' << num(t.dd) << ',' << num(t.cs_gap()) << '\n';
}

void print_estimate_row(std::ostream& out, const randpoly::ZeroCountEstimate& e) {
  out << num(e.lo) << ',' << num(e.hi) << ',' << num(e.value) << ',' << num(e.quad_error) << ','
      << randpoly::to_string(e.method) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"expected real zeros of random polynomials with stationary Gaussian coefficients"};
  app.require_subcommand(1);

  std::string model_arg, config_path, class_arg = "nonvanishing_density";
  std::string csv_path, json_path;
  std::vector<std::string> compare_paths;
  long n = 0, trials = 1000;
  double x = 0.0, a = -1.0, b = 1.0, tol = 1e-6;
  std::uint64_t seed = 0;
  int workers = 0;
  bool partition = false;

  auto* validate_cmd = app.add_subcommand("validate", "check a covariance model");
  validate_cmd->add_option("--model", model_arg, "model JSON or path")->required();

  auto* moments_cmd = app.add_subcommand("moments", "second moments of (P_n, P_n') at x");
  moments_cmd->add_option("--model", model_arg)->required();
  moments_cmd->add_option("--n", n)->required();
  moments_cmd->add_option("--x", x)->required();

  auto* expected_cmd = app.add_subcommand("expected", "Kac-Rice expected zero counts");
  expected_cmd->add_option("--model", model_arg)->required();
  expected_cmd->add_option("--n", n)->required();
  expected_cmd->add_flag("--partition", partition, "six-interval partition report");
  auto* opt_a = expected_cmd->add_option("--a", a, "interval start in [-1, 1]");
  expected_cmd->add_option("--b", b, "interval end in [-1, 1]")->needs(opt_a);
  expected_cmd->add_option("--tol", tol, "absolute quadrature tolerance");

  auto* predict_cmd = app.add_subcommand("predict", "closed-form asymptotic prediction");
  predict_cmd->add_option("--n", n)->required();
  predict_cmd->add_option("--class", class_arg,
                          "nonvanishing_density | constant_covariance");

  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo with exact zero counting");
  simulate_cmd->add_option("--model", model_arg)->required();
  simulate_cmd->add_option("--n", n)->required();
  simulate_cmd->add_option("--trials", trials)->required();
  simulate_cmd->add_option("--seed", seed)->required();
  simulate_cmd->add_option("--workers", workers, "0 = RANDPOLY_WORKERS env or all cores");
  simulate_cmd->add_option("--csv", csv_path, "write per-trial CSV here instead of stdout");
  simulate_cmd->add_option("--json", json_path, "write the JSON summary here");

  auto* run_cmd = app.add_subcommand("run", "config-driven sweep");
  run_cmd->add_option("--config", config_path, "experiment config JSON")->required();
  run_cmd->add_option("--workers", workers, "override config/env worker count");

  auto* compare_cmd = app.add_subcommand("compare", "render result CSVs; exit 2 on MC/KR mismatch");
  compare_cmd->add_option("paths", compare_paths, "result CSV files")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate_cmd) {
      const auto model = parse_model(model_arg);
      const auto report = randpoly::validate(model);
      std::cout << model.id() << '\n' << report.summary();
      return report.all_pass() ? 0 : 1;
    }

    if (*moments_cmd) {
      const auto model = parse_model(model_arg);
      std::cout << "method,n,x,A,B,C,AC_minus_B2\n";
      print_moment_row(std::cout, randpoly::moments_direct(model, n, x));
      print_moment_row(std::cout, randpoly::moments_diagonal(model, n, x));
      if (model.has_density() && std::abs(x) < 1.0) {
        print_moment_row(std::cout, randpoly::moments_spectral(model, n, x));
      }
      return 0;
    }

    if (*expected_cmd) {
      const auto model = parse_model(model_arg);
      std::cout << "interval_lo,interval_hi,value,quad_error,method\n";
      if (partition) {
        const auto report = randpoly::partition_counts(model, n, tol);
        for (const auto& piece : report.intervals) print_estimate_row(std::cout, piece);
        std::cout << "-1,1," << num(report.total_unit) << ',' << num(report.total_unit_error)
                  << ",kac_rice\n";
        std::cout << "-inf,inf," << num(report.total_line) << ','
                  << num(2.0 * report.total_unit_error) << ",kac_rice\n";
      } else if (opt_a->count() > 0) {
        print_estimate_row(std::cout, randpoly::expected_zeros(model, n, a, b, tol));
      } else {
        print_estimate_row(std::cout, randpoly::expected_zeros_total(model, n, tol));
      }
      return 0;
    }

    if (*predict_cmd) {
      randpoly::ModelClass mc;
      if (class_arg == "nonvanishing_density") {
        mc = randpoly::ModelClass::nonvanishing_density;
      } else if (class_arg == "constant_covariance") {
        mc = randpoly::ModelClass::constant_covariance;
      } else {
        throw randpoly::ConfigError("--class must be nonvanishing_density or constant_covariance");
      }
      const auto p = randpoly::predicted_total(n, mc);
      std::cout << "n,law,value,error_order\n"
                << p.n << ',' << randpoly::to_string(p.law) << ',' << num(p.value) << ','
                << randpoly::to_string(p.error_order) << '\n';
      return 0;
    }

    if (*simulate_cmd) {
      const auto model = parse_model(model_arg);
      const auto summary = randpoly::simulate(model, n, trials, seed, workers);

      std::ofstream csv_file;
      std::ostream* csv = &std::cout;
      if (!csv_path.empty()) {
        csv_file.open(csv_path, std::ios::binary);
        if (!csv_file) throw randpoly::IoError("cannot write " + csv_path);
        csv = &csv_file;
      }
      *csv << "trial,seed,count\n";
      for (long t = 0; t < summary.trials; ++t) {
        *csv << t << ',' << randpoly::derive_seed(seed, static_cast<std::uint64_t>(t)) << ','
             << summary.per_trial_counts[static_cast<std::size_t>(t)] << '\n';
      }

      json js{{"n", summary.n},
              {"trials", summary.trials},
              {"mean", summary.mean_zeros},
              {"std_error", summary.std_error},
              {"master_seed", summary.master_seed}};
      if (!summary.failures.empty()) {
        json failures = json::array();
        for (const auto& f : summary.failures) {
          failures.push_back({{"trial", f.trial}, {"message", f.message}});
        }
        js["failures"] = failures;
      }
      if (!json_path.empty()) {
        std::ofstream out(json_path, std::ios::binary);
        if (!out) throw randpoly::IoError("cannot write " + json_path);
        out << js.dump(2) << '\n';
      } else {
        // summary on stderr so stdout stays a clean CSV stream
        std::ostream& out = csv_path.empty() ? std::cerr : std::cout;
        out << js.dump() << '\n';
      }
      return 0;
    }

    if (*run_cmd) {
      auto config = randpoly::config_from_file(config_path);
      if (workers > 0) config.workers = workers;
      const auto result = randpoly::run_experiment(config);
      std::cout << "wrote " << result.csv_path << " (" << result.rows.size() << " rows) and "
                << result.json_path << '\n';
      long errors = 0;
      for (const auto& row : result.rows) {
        if (!row.error.empty()) ++errors;
      }
      if (errors > 0) std::cerr << errors << " row(s) recorded errors; see the manifest\n";
      return 0;
    }

    if (*compare_cmd) {
      return randpoly::compare_reports(compare_paths, std::cout);
    }
  } catch (const randpoly::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
