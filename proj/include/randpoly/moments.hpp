#ifndef RANDPOLY_MOMENTS_HPP
#define RANDPOLY_MOMENTS_HPP

#include "randpoly/covariance.hpp"

namespace randpoly {

enum class MomentMethod { direct, diagonal, spectral, asymptotic_pos, asymptotic_neg };

const char* to_string(MomentMethod m);

/// Second moments of (P_n(x), P_n'(x)):
///   pp = E[P_n(x)^2], pd = E[P_n(x) P_n'(x)], dd = E[P_n'(x)^2].
struct MomentTriple {
  double x = 0.0;
  long n = 0;
  double pp = 0.0;
  double pd = 0.0;
  double dd = 0.0;
  MomentMethod method = MomentMethod::direct;

  /// Cauchy-Schwarz gap pp*dd - pd^2; nonnegative up to rounding.
  double cs_gap() const { return pp * dd - pd * pd; }
};

/// Exact double sums over Gamma(k-j); O(n^2). The brute-force reference for
/// every other method. The k = j = 0 term of pd at x = 0 is defined as 0.
MomentTriple moments_direct(const CovarianceModel& model, long n, double x);

/// Exact sums regrouped by lag d = k-j with closed-form inner sums in
/// u = x^2; O(n). Inner sums are accumulated termwise (all terms carry
/// u^j >= 0), which stays exact at u = 1 and avoids the cancellation the
/// geometric closed forms suffer near |x| = 1. The default production path.
MomentTriple moments_diagonal(const CovarianceModel& model, long n, double x);

/// Spectral-integral forms over [-pi, pi] built from the kernel
/// h(phi) = (1 - x^{n+1} e^{-i(n+1)phi}) / (1 - x e^{-i phi}) and its
/// derivatives; adaptive complex quadrature. Requires a density and |x| < 1.
/// The imaginary residue of each integral must stay below
/// 1e-9 * max(1, |real part|) and is discarded.
MomentTriple moments_spectral(const CovarianceModel& model, long n, double x,
                              double rel_tol = 1e-9);

enum class AxisSide { positive, negative };

/// Inputs for the near-endpoint approximations at x = +-(1 - y).
struct AsymptoticContext {
  double y = 0.0;       // distance 1 - |x|, in (0, 1)
  long n = 0;           // degree
  double cutoff = 0.0;  // phi-integration cutoff y * ln n / ln ln n
  double f_end = 0.0;   // f(0) on the positive axis, f(pi) on the negative
};

AsymptoticContext make_asymptotic_context(const CovarianceModel& model, long n, double y,
                                          AxisSide side);

/// Near-endpoint moment approximations:
///   pp = (2 f_end / y)  * arctan(cutoff / y)
///   pd = +-(f_end / y^2) * arctan(cutoff / y)   (minus on the negative side)
///   dd = (f_end / y^3)  * arctan(cutoff / y)
/// Valid in the window y in (delta(n), eps(n)); throws OutsideWindow
/// elsewhere, where the formulas are extrapolations.
MomentTriple moments_asymptotic(const AsymptoticContext& ctx, AxisSide side);

}  // namespace randpoly

#endif  // RANDPOLY_MOMENTS_HPP
