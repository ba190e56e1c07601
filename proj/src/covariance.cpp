#include "randpoly/covariance.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "randpoly/errors.hpp"
#include "randpoly/quadrature.hpp"

namespace randpoly {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::string format_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

double cosine_series(const std::vector<double>& gamma, std::size_t kmax, double phi) {
  double s = gamma[0];
  const std::size_t top = std::min(kmax, gamma.size() - 1);
  for (std::size_t k = 1; k <= top; ++k) {
    s += 2.0 * gamma[k] * std::cos(static_cast<double>(k) * phi);
  }
  return s / kTwoPi;
}

double scan_min(const std::function<double(double)>& f, int points = 4096) {
  // even function: scanning [0, pi] at the same density covers [-pi, pi]
  double m = f(0.0);
  for (int i = 1; i <= points; ++i) {
    m = std::min(m, f(kPi * static_cast<double>(i) / points));
  }
  return m;
}

}  // namespace

struct CovarianceModel::SpectralData {
  std::function<double(double)> density;  // normalized so the integral is 1
  Smoothness smoothness = Smoothness::unknown;
  mutable std::mutex mutex;
  mutable std::vector<double> gamma_cache;
};

CovarianceModel CovarianceModel::independent() {
  CovarianceModel m;
  m.kind_ = CovarianceKind::independent;
  m.id_ = "independent";
  return m;
}

CovarianceModel CovarianceModel::exponential(double rho) {
  if (!(rho > -1.0 && rho < 1.0)) {
    throw std::invalid_argument("exponential covariance needs rho in (-1, 1)");
  }
  CovarianceModel m;
  m.kind_ = CovarianceKind::exponential;
  m.rho_ = rho;
  m.id_ = "exponential(rho=" + format_num(rho) + ")";
  return m;
}

CovarianceModel CovarianceModel::constant(double rho) {
  if (!(rho >= 0.0 && rho < 1.0)) {
    throw std::invalid_argument("constant covariance needs rho in [0, 1)");
  }
  CovarianceModel m;
  m.kind_ = CovarianceKind::constant;
  m.rho_ = rho;
  m.id_ = "constant(rho=" + format_num(rho) + ")";
  return m;
}

CovarianceModel CovarianceModel::moving_average(std::vector<double> weights) {
  if (weights.empty()) throw std::invalid_argument("moving_average needs at least one weight");
  double norm = 0.0;
  for (double w : weights) norm += w * w;
  if (norm <= 0.0) throw std::invalid_argument("moving_average weights must not all be zero");

  CovarianceModel m;
  m.kind_ = CovarianceKind::moving_average;
  m.gamma_.assign(weights.size(), 0.0);
  for (std::size_t k = 0; k < weights.size(); ++k) {
    double acc = 0.0;
    for (std::size_t q = 0; q + k < weights.size(); ++q) acc += weights[q] * weights[q + k];
    m.gamma_[k] = acc / norm;
  }
  std::ostringstream oss;
  oss << "moving_average(weights=[";
  for (std::size_t i = 0; i < weights.size(); ++i) oss << (i ? " " : "") << format_num(weights[i]);
  oss << "])";
  m.id_ = oss.str();
  return m;
}

CovarianceModel CovarianceModel::tabulated(std::vector<double> gamma) {
  if (gamma.empty()) throw std::invalid_argument("tabulated covariance needs gamma(0)");
  if (!(gamma[0] > 0.0)) throw std::invalid_argument("tabulated covariance needs gamma(0) > 0");

  CovarianceModel m;
  m.kind_ = CovarianceKind::tabulated;
  m.gamma_ = std::move(gamma);
  const double g0 = m.gamma_[0];
  for (double& g : m.gamma_) g /= g0;  // unit variance
  std::ostringstream oss;
  oss << "tabulated(gamma=[";
  for (std::size_t i = 0; i < m.gamma_.size(); ++i) oss << (i ? " " : "") << format_num(m.gamma_[i]);
  oss << "])";
  m.id_ = oss.str();
  return m;
}

CovarianceModel CovarianceModel::spectral(std::function<double(double)> density,
                                          Smoothness smoothness) {
  if (!density) throw std::invalid_argument("spectral covariance needs a density evaluator");
  QuadratureOptions opts;
  opts.abs_tol = 1e-12;
  opts.rel_tol = 1e-10;
  for (int i = 1; i < 16; ++i) opts.breakpoints.push_back(-kPi + kTwoPi * i / 16.0);
  const auto total = integrate(density, -kPi, kPi, opts);
  if (!(total.value > 0.0) || !std::isfinite(total.value)) {
    throw std::invalid_argument("spectral density must have positive finite integral");
  }

  CovarianceModel m;
  m.kind_ = CovarianceKind::spectral;
  m.spectral_ = std::make_shared<SpectralData>();
  const double scale = 1.0 / total.value;
  m.spectral_->density = [f = std::move(density), scale](double phi) { return scale * f(phi); };
  m.spectral_->smoothness = smoothness;
  m.id_ = "spectral";
  return m;
}

bool CovarianceModel::has_density() const {
  return !(kind_ == CovarianceKind::constant && rho_ > 0.0);
}

double CovarianceModel::gamma(long k) const {
  const long a = std::labs(k);
  switch (kind_) {
    case CovarianceKind::independent:
      return a == 0 ? 1.0 : 0.0;
    case CovarianceKind::exponential:
      return std::pow(rho_, static_cast<double>(a));
    case CovarianceKind::constant:
      return a == 0 ? 1.0 : rho_;
    case CovarianceKind::moving_average:
    case CovarianceKind::tabulated:
      return static_cast<std::size_t>(a) < gamma_.size() ? gamma_[static_cast<std::size_t>(a)] : 0.0;
    case CovarianceKind::spectral:
      break;
  }

  // spectral kind: Gamma(k) = integral of cos(k phi) f(phi) over [-pi, pi]
  std::lock_guard<std::mutex> lock(spectral_->mutex);
  auto& cache = spectral_->gamma_cache;
  while (cache.size() <= static_cast<std::size_t>(a)) {
    const long kk = static_cast<long>(cache.size());
    QuadratureOptions opts;
    opts.abs_tol = 1e-12;
    opts.rel_tol = 1e-10;
    const int pieces = std::max<long>(8, kk + 1);
    for (int i = 1; i < pieces; ++i) opts.breakpoints.push_back(-kPi + kTwoPi * i / pieces);
    const auto& f = spectral_->density;
    const auto r = integrate(
        [&f, kk](double phi) { return std::cos(static_cast<double>(kk) * phi) * f(phi); }, -kPi,
        kPi, opts);
    cache.push_back(r.value);
  }
  return cache[static_cast<std::size_t>(a)];
}

std::vector<double> CovarianceModel::gamma_values(std::size_t count) const {
  std::vector<double> out(count, 0.0);
  switch (kind_) {
    case CovarianceKind::independent:
      if (count > 0) out[0] = 1.0;
      break;
    case CovarianceKind::exponential: {
      double p = 1.0;
      for (std::size_t k = 0; k < count; ++k, p *= rho_) out[k] = p;
      break;
    }
    case CovarianceKind::constant:
      std::fill(out.begin(), out.end(), rho_);
      if (count > 0) out[0] = 1.0;
      break;
    case CovarianceKind::moving_average:
    case CovarianceKind::tabulated:
      for (std::size_t k = 0; k < std::min(count, gamma_.size()); ++k) out[k] = gamma_[k];
      break;
    case CovarianceKind::spectral:
      for (std::size_t k = 0; k < count; ++k) out[k] = gamma(static_cast<long>(k));
      break;
  }
  return out;
}

SpectralDensity spectral_density(const CovarianceModel& model) {
  SpectralDensity d;
  switch (model.kind()) {
    case CovarianceKind::independent: {
      d.evaluator = [](double) { return 1.0 / kTwoPi; };
      d.smoothness = Smoothness::c1;
      break;
    }
    case CovarianceKind::exponential: {
      const double rho = model.rho();
      d.evaluator = [rho](double phi) {
        return (1.0 - rho * rho) / (kTwoPi * (1.0 - 2.0 * rho * std::cos(phi) + rho * rho));
      };
      d.smoothness = Smoothness::c1;
      break;
    }
    case CovarianceKind::constant: {
      if (model.rho() > 0.0) {
        throw NoDensity("constant covariance with rho=" + format_num(model.rho()) +
                        " has a spectral atom at 0 and no density");
      }
      d.evaluator = [](double) { return 1.0 / kTwoPi; };  // rho = 0 is the independent law
      d.smoothness = Smoothness::c1;
      break;
    }
    case CovarianceKind::moving_average:
    case CovarianceKind::tabulated: {
      const std::vector<double> gamma = model.stored_gamma();
      const std::size_t kmax = std::min<std::size_t>(200, gamma.size() - 1);
      d.evaluator = [gamma, kmax](double phi) { return cosine_series(gamma, kmax, phi); };
      d.smoothness = Smoothness::c1;
      break;
    }
    case CovarianceKind::spectral: {
      d.evaluator = model.spectral_->density;
      d.smoothness = model.spectral_->smoothness;
      break;
    }
  }
  d.f0 = d.evaluator(0.0);
  d.fpi = d.evaluator(kPi);
  d.min_value = scan_min(d.evaluator);
  return d;
}

SpectralDensity density_from_gamma(const std::vector<double>& gamma, std::size_t truncation) {
  if (gamma.empty()) throw std::invalid_argument("density_from_gamma needs gamma(0)");
  if (std::fabs(gamma[0] - 1.0) > 1e-9) {
    throw std::invalid_argument("density_from_gamma expects a normalized sequence, gamma(0) = 1");
  }
  SpectralDensity d;
  const std::size_t kmax = std::min(truncation, gamma.size() - 1);
  std::vector<double> g(gamma.begin(), gamma.begin() + static_cast<long>(kmax) + 1);
  d.evaluator = [g, kmax](double phi) { return cosine_series(g, kmax, phi); };
  d.smoothness = Smoothness::c1;
  d.f0 = d.evaluator(0.0);
  d.fpi = d.evaluator(kPi);
  d.min_value = scan_min(d.evaluator);
  return d;
}

bool ValidationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const ValidationCheck& c) { return c.pass; });
}

std::string ValidationReport::summary() const {
  std::ostringstream oss;
  for (const auto& c : checks) {
    oss << (c.pass ? "pass" : "FAIL") << "  " << c.name;
    if (!c.detail.empty()) oss << ": " << c.detail;
    oss << '\n';
  }
  oss << (within_theorem_hypotheses ? "model satisfies the nonvanishing-density hypotheses"
                                    : "model is outside the nonvanishing-density hypotheses")
      << '\n';
  return oss.str();
}

ValidationReport validate(const CovarianceModel& model) {
  ValidationReport report;

  const double g0 = model.gamma(0);
  report.checks.push_back({"gamma0_unit", std::fabs(g0 - 1.0) <= 1e-12,
                           "gamma(0) = " + format_num(g0)});

  bool even = true;
  for (long k = 1; k <= 16; ++k) {
    if (model.gamma(k) != model.gamma(-k)) even = false;
  }
  report.checks.push_back({"evenness", even, even ? "gamma(-k) = gamma(k), k <= 16" : "asymmetric"});

  if (model.has_density()) {
    const SpectralDensity f = spectral_density(model);
    report.density_min = f.min_value;
    const bool positive = f.min_value > 0.0;
    report.checks.push_back(
        {"density_positive", positive,
         positive ? "min f = " + format_num(f.min_value)
                  : "min f = " + format_num(f.min_value) + " <= 0, outside Theorem 1 hypotheses"});
    report.within_theorem_hypotheses = positive;
  } else {
    report.checks.push_back({"density_positive", true,
                             "no spectral density (atom at 0); check not applicable"});
    report.within_theorem_hypotheses = false;
  }

  constexpr int kOrder = 32;
  Eigen::MatrixXd toeplitz(kOrder, kOrder);
  const std::vector<double> g = model.gamma_values(kOrder);
  for (int i = 0; i < kOrder; ++i) {
    for (int j = 0; j < kOrder; ++j) toeplitz(i, j) = g[static_cast<std::size_t>(std::abs(i - j))];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(toeplitz, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  report.checks.push_back({"toeplitz_psd_32", min_eig >= -1e-9,
                           "min eigenvalue = " + format_num(min_eig)});

  return report;
}

}  // namespace randpoly
