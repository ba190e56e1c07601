#ifndef RANDPOLY_KAC_RICE_HPP
#define RANDPOLY_KAC_RICE_HPP

#include <array>

#include "randpoly/covariance.hpp"
#include "randpoly/moments.hpp"

namespace randpoly {

enum class EstimateMethod { kac_rice, asymptotic, monte_carlo };

const char* to_string(EstimateMethod m);

struct ZeroCountEstimate {
  double lo = 0.0;
  double hi = 0.0;
  double value = 0.0;       // expected count, >= 0
  double quad_error = 0.0;  // absolute error estimate
  EstimateMethod method = EstimateMethod::kac_rice;
  bool converged = true;    // false marks a quadrature failure (best estimate kept)
};

/// Kac-Rice integrand sqrt(max(pp*dd - pd^2, 0)) / (pi * pp); the clamp
/// absorbs negative rounding residue. Throws DegenerateMoment for pp <= 0.
double integrand(const MomentTriple& t);

/// Expected number of real zeros in (a, b), -1 <= a < b <= 1, by adaptive
/// Gauss-Kronrod quadrature of integrand(moments_diagonal(..)) with forced
/// subdivision at +-(1 - eps(n)) and +-(1 - delta(n)). Endpoints are guarded
/// away from +-1 by eta = 1e-12; the integrand is bounded by ~n/pi there,
/// so the guard's contribution is below 2 n eta / pi.
ZeroCountEstimate expected_zeros(const CovarianceModel& model, long n, double a, double b,
                                 double abs_tol = 1e-6);

/// Expected total over the whole line: 2 x expected_zeros(model, n, -1, 1),
/// using the reversal map between zeros in (-1,1) and outside.
ZeroCountEstimate expected_zeros_total(const CovarianceModel& model, long n,
                                       double abs_tol = 1e-6);

/// Per-interval estimates over the six-piece partition of (-1, 1) at the
/// window (delta, eps): the near-endpoint bands carry the dominant
/// (1/2pi) log n share each, the four outer pieces O(log log n).
struct PartitionReport {
  long n = 0;
  double delta = 0.0;
  double eps = 0.0;
  std::array<ZeroCountEstimate, 6> intervals{};
  double total_unit = 0.0;        // sum over (-1, 1)
  double total_unit_error = 0.0;
  double total_line = 0.0;        // 2 x total_unit
};

PartitionReport partition_counts(const CovarianceModel& model, long n, double abs_tol = 1e-6);

}  // namespace randpoly

#endif  // RANDPOLY_KAC_RICE_HPP
