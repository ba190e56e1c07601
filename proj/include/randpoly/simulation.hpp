#ifndef RANDPOLY_SIMULATION_HPP
#define RANDPOLY_SIMULATION_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "randpoly/covariance.hpp"

namespace randpoly {

/// One draw of the coefficient vector X_0..X_n.
struct CoefficientSample {
  std::vector<double> values;  // length n + 1
  std::uint64_t seed = 0;
  std::string model_id;
};

/// Exact-law samplers per kind: i.i.d. normals (independent), the AR(1)
/// recursion X_k = rho X_{k-1} + sqrt(1-rho^2) W_k (exponential), the
/// shared-factor construction X_k = sqrt(rho) Z + sqrt(1-rho) W_k
/// (constant), and circulant embedding of the (n+1)-Toeplitz covariance for
/// the general kinds, with a jittered dense Cholesky fallback. Throws
/// SamplingFailure when both embedding and the fallback fail.
CoefficientSample sample_coefficients(const CovarianceModel& model, long n, std::uint64_t seed);

struct CountOptions {
  int edge_points_per_degree = 8;  // initial u-grid density near each of +-1
  int bulk_points = 1024;          // initial coarse grid on |x| <= 1 - eps(n)
  int max_doublings = 6;           // grid refinement budget
};

struct CountResult {
  long count = 0;
  bool converged = true;  // false marks BudgetExceeded (last count kept)
  int doublings = 0;
};

/// Counts real zeros by sign changes on a graded grid concentrated near
/// +-1 (uniform in u with x = +-(1 - e^{-u})) plus a coarse bulk grid;
/// zeros with |x| > 1 come from the degree-reversed polynomial. Each
/// sign-change bracket is confirmed by bisection, and the grid is doubled
/// until the count agrees twice in a row.
CountResult count_real_zeros(const std::vector<double>& coeffs, const CountOptions& opts = {});

struct TrialFailure {
  long trial = 0;
  std::string message;
};

struct SimulationSummary {
  long n = 0;
  long trials = 0;
  double mean_zeros = 0.0;
  double std_error = 0.0;              // sample std / sqrt(trials)
  std::vector<long> per_trial_counts;  // -1 marks a failed trial
  std::uint64_t master_seed = 0;
  std::vector<TrialFailure> failures;
};

/// Monte Carlo over independent trials. Per-trial seeds are a pure function
/// of (master_seed, trial index), so per_trial_counts is bit-identical for
/// any worker count. workers = 0 reads RANDPOLY_WORKERS, then falls back to
/// the hardware concurrency.
SimulationSummary simulate(const CovarianceModel& model, long n, long trials,
                           std::uint64_t master_seed, int workers = 0);

int default_worker_count();

}  // namespace randpoly

#endif  // RANDPOLY_SIMULATION_HPP
