#include "randpoly/simulation.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <thread>

#include "randpoly/asymptotics.hpp"
#include "randpoly/errors.hpp"
#include "randpoly/rng.hpp"
#include "randpoly/sturm.hpp"

namespace randpoly {
namespace {

using complexd = std::complex<double>;

/// In-place iterative radix-2 FFT; size must be a power of two.
/// inverse = true applies e^{+i...} without the 1/N scale.
void fft(std::vector<complexd>& a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double angle = (inverse ? 2.0 : -2.0) * std::numbers::pi / static_cast<double>(len);
    const complexd wl(std::cos(angle), std::sin(angle));
    for (std::size_t i = 0; i < n; i += len) {
      complexd w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const complexd u = a[i + j];
        const complexd v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

std::size_t next_pow2(std::size_t v) {
  std::size_t p = 1;
  while (p < v) p <<= 1;
  return p;
}

/// Circulant embedding of the stationary covariance on m points: first row
/// c_j = gamma(min(j, M-j)), eigenvalues by FFT, then one complex-normal
/// synthesis whose real part has the exact Toeplitz law.
bool sample_circulant(const CovarianceModel& model, std::size_t m, NormalSampler& normal,
                      std::vector<double>& out) {
  std::size_t size = next_pow2(2 * m);
  for (int attempt = 0; attempt < 5; ++attempt, size <<= 1) {
    const std::vector<double> gamma = model.gamma_values(size / 2 + 1);
    std::vector<complexd> row(size);
    for (std::size_t j = 0; j < size; ++j) {
      row[j] = gamma[std::min(j, size - j)];
    }
    fft(row, false);
    double max_eig = 0.0;
    double min_eig = 0.0;
    for (const auto& v : row) {
      max_eig = std::max(max_eig, v.real());
      min_eig = std::min(min_eig, v.real());
    }
    if (min_eig < -1e-9 * std::max(1.0, max_eig)) continue;  // not embeddable, double the size

    // real part of sum_k sqrt(lambda_k / M) (xi_k + i eta_k) e^{2 pi i jk/M}
    // has exactly the Toeplitz law gamma(|p - q|)
    std::vector<complexd> spectrum(size);
    for (std::size_t k = 0; k < size; ++k) {
      const double lambda = std::max(row[k].real(), 0.0);
      const double amp = std::sqrt(lambda / static_cast<double>(size));
      spectrum[k] = amp * complexd(normal(), normal());
    }
    fft(spectrum, true);
    out.resize(m);
    for (std::size_t j = 0; j < m; ++j) out[j] = spectrum[j].real();
    return true;
  }
  return false;
}

bool sample_cholesky(const CovarianceModel& model, std::size_t m, NormalSampler& normal,
                     std::vector<double>& out) {
  const std::vector<double> gamma = model.gamma_values(m);
  Eigen::MatrixXd cov(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      cov(static_cast<long>(i), static_cast<long>(j)) = gamma[i >= j ? i - j : j - i];
    }
  }
  cov.diagonal().array() += 1e-12;
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) return false;
  Eigen::VectorXd w(m);
  for (std::size_t j = 0; j < m; ++j) w(static_cast<long>(j)) = normal();
  const Eigen::VectorXd x = llt.matrixL() * w;
  out.resize(m);
  for (std::size_t j = 0; j < m; ++j) out[j] = x(static_cast<long>(j));
  return true;
}

double horner(const std::vector<double>& coeffs, double x) {
  double v = 0.0;
  for (std::size_t k = coeffs.size(); k-- > 0;) v = v * x + coeffs[k];
  return v;
}

int sign_of(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

/// Bisect a bracket with opposite end signs down to fine resolution; the
/// sign change must persist at every refinement step.
bool confirm_bracket(const std::vector<double>& coeffs, double lo, double hi) {
  int slo = sign_of(horner(coeffs, lo));
  int shi = sign_of(horner(coeffs, hi));
  if (slo == 0 || shi == 0 || slo == shi) return slo != shi;
  for (int iter = 0; iter < 64; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (!(lo < mid && mid < hi)) break;
    const int sm = sign_of(horner(coeffs, mid));
    if (sm == 0) return true;  // landed on a root
    if (sm == slo) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 1e-13 * (1.0 + std::fabs(lo))) break;
  }
  return true;
}

/// Grid over the open interval (-1, 1): coarse and uniform in the bulk,
/// uniform in u with |x| = 1 - e^{-u} near the endpoints where zeros
/// cluster.
std::vector<double> build_grid(long degree, const CountOptions& opts, int multiplier) {
  double eps_edge = 0.5;
  if (degree >= 16) eps_edge = std::min(window(degree).eps, 0.5);

  constexpr double kMinDistance = 1e-13;  // closest approach to +-1
  const double u_lo = -std::log(eps_edge);
  const double u_hi = -std::log(kMinDistance);
  const long edge_count =
      static_cast<long>(opts.edge_points_per_degree) * std::max(degree, 2L) * multiplier;
  const long bulk_count = static_cast<long>(opts.bulk_points) * multiplier;

  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(2 * edge_count + bulk_count + 4));
  for (long i = edge_count; i >= 0; --i) {
    const double u = u_lo + (u_hi - u_lo) * static_cast<double>(i) / static_cast<double>(edge_count);
    grid.push_back(-1.0 + std::exp(-u));
  }
  const double bulk_hi = 1.0 - eps_edge;
  for (long i = 1; i < bulk_count; ++i) {
    grid.push_back(-bulk_hi + 2.0 * bulk_hi * static_cast<double>(i) / static_cast<double>(bulk_count));
  }
  for (long i = 0; i <= edge_count; ++i) {
    const double u = u_lo + (u_hi - u_lo) * static_cast<double>(i) / static_cast<double>(edge_count);
    grid.push_back(1.0 - std::exp(-u));
  }
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

/// Sign-change count of the polynomial over the open interval (-1, 1).
long count_open_unit(const std::vector<double>& coeffs, const std::vector<double>& grid) {
  long count = 0;
  int prev_sign = 0;
  double prev_x = 0.0;
  for (const double x : grid) {
    const int s = sign_of(horner(coeffs, x));
    if (s == 0) {
      ++count;        // exact zero on a grid point
      prev_sign = 0;  // do not bracket across a root already counted
      continue;
    }
    if (prev_sign != 0 && s != prev_sign && confirm_bracket(coeffs, prev_x, x)) ++count;
    prev_sign = s;
    prev_x = x;
  }
  return count;
}

long count_once(const std::vector<double>& poly, const std::vector<double>& reversed,
                const CountOptions& opts, int multiplier) {
  const long degree = static_cast<long>(poly.size()) - 1;
  const std::vector<double> grid = build_grid(degree, opts, multiplier);
  long total = count_open_unit(poly, grid) + count_open_unit(reversed, grid);
  if (horner(poly, 1.0) == 0.0) ++total;
  if (horner(poly, -1.0) == 0.0) ++total;
  return total;
}

struct TrialOutcome {
  long count = -1;
  bool failed = false;
  std::string message;
};

TrialOutcome run_trial(const CovarianceModel& model, long n, std::uint64_t seed) {
  TrialOutcome out;
  try {
    const CoefficientSample sample = sample_coefficients(model, n, seed);
    const CountResult counted = count_real_zeros(sample.values);
    out.count = counted.count;
    if (!counted.converged) {
      out.message = "counter budget exceeded (count kept)";
    }
  } catch (const std::exception& e) {
    out.failed = true;
    out.message = e.what();
  }
  return out;
}

}  // namespace

CoefficientSample sample_coefficients(const CovarianceModel& model, long n, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("sample_coefficients needs n >= 0");
  const std::size_t m = static_cast<std::size_t>(n) + 1;

  CoefficientSample sample;
  sample.seed = seed;
  sample.model_id = model.id();
  NormalSampler normal(seed);

  switch (model.kind()) {
    case CovarianceKind::independent: {
      sample.values.resize(m);
      for (auto& v : sample.values) v = normal();
      break;
    }
    case CovarianceKind::exponential: {
      const double rho = model.rho();
      const double innovation = std::sqrt(1.0 - rho * rho);
      sample.values.resize(m);
      sample.values[0] = normal();
      for (std::size_t k = 1; k < m; ++k) {
        sample.values[k] = rho * sample.values[k - 1] + innovation * normal();
      }
      break;
    }
    case CovarianceKind::constant: {
      const double rho = model.rho();
      const double shared = std::sqrt(rho) * normal();
      const double own = std::sqrt(1.0 - rho);
      sample.values.resize(m);
      for (auto& v : sample.values) v = shared + own * normal();
      break;
    }
    case CovarianceKind::moving_average:
    case CovarianceKind::tabulated:
    case CovarianceKind::spectral: {
      if (!sample_circulant(model, m, normal, sample.values) &&
          !sample_cholesky(model, m, normal, sample.values)) {
        throw SamplingFailure("both circulant embedding and jittered Cholesky failed for " +
                              model.id());
      }
      break;
    }
  }
  return sample;
}

CountResult count_real_zeros(const std::vector<double>& coeffs, const CountOptions& opts) {
  std::size_t size = coeffs.size();
  while (size > 0 && coeffs[size - 1] == 0.0) --size;
  if (size == 0) throw ZeroPolynomial("count_real_zeros: zero polynomial");

  CountResult result;
  if (size == 1) return result;  // nonzero constant: no zeros
  if (size == 2) {               // degree 1: exactly one real zero
    result.count = 1;
    return result;
  }

  std::vector<double> poly(coeffs.begin(), coeffs.begin() + static_cast<long>(size));
  std::vector<double> reversed(poly.rbegin(), poly.rend());

  long last = -1;
  int agreements = 0;
  int multiplier = 1;
  for (int round = 0; round <= opts.max_doublings; ++round, multiplier *= 2) {
    const long current = count_once(poly, reversed, opts, multiplier);
    result.count = current;
    result.doublings = round;
    if (current == last) {
      if (++agreements == 2) return result;  // two successive doublings agree
    } else {
      agreements = 0;
    }
    last = current;
  }
  result.converged = false;  // budget exceeded; last count kept
  return result;
}

int default_worker_count() {
  if (const char* env = std::getenv("RANDPOLY_WORKERS")) {
    const int parsed = std::atoi(env);
    if (parsed >= 1) return parsed;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

SimulationSummary simulate(const CovarianceModel& model, long n, long trials,
                           std::uint64_t master_seed, int workers) {
  if (trials < 1) throw std::invalid_argument("simulate needs trials >= 1");
  if (workers <= 0) workers = default_worker_count();
  workers = static_cast<int>(std::min<long>(workers, trials));

  std::vector<TrialOutcome> outcomes(static_cast<std::size_t>(trials));
  auto work = [&](int worker_index) {
    for (long t = worker_index; t < trials; t += workers) {
      outcomes[static_cast<std::size_t>(t)] =
          run_trial(model, n, derive_seed(master_seed, static_cast<std::uint64_t>(t)));
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }

  SimulationSummary summary;
  summary.n = n;
  summary.trials = trials;
  summary.master_seed = master_seed;
  summary.per_trial_counts.resize(static_cast<std::size_t>(trials));

  double sum = 0.0;
  long successes = 0;
  for (long t = 0; t < trials; ++t) {
    const auto& o = outcomes[static_cast<std::size_t>(t)];
    summary.per_trial_counts[static_cast<std::size_t>(t)] = o.failed ? -1 : o.count;
    if (!o.message.empty()) summary.failures.push_back({t, o.message});
    if (!o.failed) {
      sum += static_cast<double>(o.count);
      ++successes;
    }
  }
  if (successes > 0) {
    summary.mean_zeros = sum / static_cast<double>(successes);
    double ss = 0.0;
    for (long t = 0; t < trials; ++t) {
      const long c = summary.per_trial_counts[static_cast<std::size_t>(t)];
      if (c >= 0) {
        const double d = static_cast<double>(c) - summary.mean_zeros;
        ss += d * d;
      }
    }
    if (successes > 1) {
      summary.std_error =
          std::sqrt(ss / static_cast<double>(successes - 1) / static_cast<double>(successes));
    }
  }
  return summary;
}

}  // namespace randpoly
