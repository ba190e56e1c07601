#include "randpoly/kac_rice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "randpoly/asymptotics.hpp"
#include "randpoly/errors.hpp"
#include "randpoly/quadrature.hpp"

namespace randpoly {
namespace {

constexpr double kEndpointGuard = 1e-12;

ZeroCountEstimate integrate_interval(const CovarianceModel& model, long n, double a, double b,
                                     double abs_tol) {
  // guard the removable geometric-denominator singularities at |x| = 1
  const double lo = std::max(a, -1.0 + kEndpointGuard);
  const double hi = std::min(b, 1.0 - kEndpointGuard);

  ZeroCountEstimate est;
  est.lo = a;
  est.hi = b;
  est.method = EstimateMethod::kac_rice;
  if (!(lo < hi)) {
    est.converged = true;
    return est;
  }

  QuadratureOptions opts;
  opts.abs_tol = abs_tol;
  opts.max_depth = 40;
  if (n >= 16) {
    const Window w = window(n);
    for (double p : {-(1.0 - w.delta), -(1.0 - w.eps), 1.0 - w.eps, 1.0 - w.delta}) {
      if (p > lo && p < hi) opts.breakpoints.push_back(p);
    }
  }

  const auto r = integrate(
      [&model, n](double x) { return integrand(moments_diagonal(model, n, x)); }, lo, hi, opts);
  est.value = std::max(r.value, 0.0);
  est.quad_error = r.error;
  est.converged = r.converged;
  return est;
}

}  // namespace

const char* to_string(EstimateMethod m) {
  switch (m) {
    case EstimateMethod::kac_rice: return "kac_rice";
    case EstimateMethod::asymptotic: return "asymptotic";
    case EstimateMethod::monte_carlo: return "monte_carlo";
  }
  return "?";
}

double integrand(const MomentTriple& t) {
  if (!(t.pp > 0.0)) {
    throw DegenerateMoment("Kac-Rice integrand needs E[P^2] > 0 (got " + std::to_string(t.pp) +
                           ")");
  }
  const double gap = std::max(t.cs_gap(), 0.0);
  return std::sqrt(gap) / (std::numbers::pi * t.pp);
}

ZeroCountEstimate expected_zeros(const CovarianceModel& model, long n, double a, double b,
                                 double abs_tol) {
  if (!(a < b) || a < -1.0 || b > 1.0) {
    throw std::invalid_argument("expected_zeros needs -1 <= a < b <= 1");
  }
  if (n < 0) throw std::invalid_argument("expected_zeros needs n >= 0");
  return integrate_interval(model, n, a, b, abs_tol);
}

ZeroCountEstimate expected_zeros_total(const CovarianceModel& model, long n, double abs_tol) {
  if (n < 0) throw std::invalid_argument("expected_zeros_total needs n >= 0");
  ZeroCountEstimate unit = integrate_interval(model, n, -1.0, 1.0, abs_tol);
  ZeroCountEstimate total;
  total.lo = -std::numeric_limits<double>::infinity();
  total.hi = std::numeric_limits<double>::infinity();
  total.value = 2.0 * unit.value;
  total.quad_error = 2.0 * unit.quad_error;
  total.method = EstimateMethod::kac_rice;
  total.converged = unit.converged;
  return total;
}

PartitionReport partition_counts(const CovarianceModel& model, long n, double abs_tol) {
  const Window w = window(n);  // throws BadDegree for n < 16 or delta >= eps

  PartitionReport report;
  report.n = n;
  report.delta = w.delta;
  report.eps = w.eps;

  const double edges[7] = {-1.0,           -1.0 + w.delta, -1.0 + w.eps, 0.0,
                           1.0 - w.eps,    1.0 - w.delta,  1.0};
  const double piece_tol = abs_tol / 6.0;
  for (int i = 0; i < 6; ++i) {
    report.intervals[static_cast<std::size_t>(i)] =
        integrate_interval(model, n, edges[i], edges[i + 1], piece_tol);
  }

  for (const auto& piece : report.intervals) {
    report.total_unit += piece.value;
    report.total_unit_error += piece.quad_error;
  }
  report.total_line = 2.0 * report.total_unit;
  return report;
}

}  // namespace randpoly
