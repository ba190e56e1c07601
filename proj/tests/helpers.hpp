#ifndef RANDPOLY_TESTS_HELPERS_HPP
#define RANDPOLY_TESTS_HELPERS_HPP

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "randpoly/covariance.hpp"
#include "randpoly/rng.hpp"

namespace testing_oracles {

/// Closed-form Kac-Rice integrand for independent standard normal
/// coefficients, derived from the geometric-sum moments:
///   sqrt( (1-x^2)^{-2} - (n+1)^2 x^{2n} (1-x^{2n+2})^{-2} ) / pi.
/// Kept independent of the library's moment code on purpose.
inline double kac_density_independent(double x, long n) {
  const double x2 = x * x;
  const double one_minus = 1.0 - x2;
  const double t1 = 1.0 / (one_minus * one_minus);
  const double xn = std::pow(std::fabs(x), static_cast<double>(n));
  const double r = static_cast<double>(n + 1) * xn / (1.0 - std::pow(x2, static_cast<double>(n + 1)));
  return std::sqrt(std::max(t1 - r * r, 0.0)) / std::numbers::pi;
}

namespace detail {
inline double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                          double fm, double fb, double whole, double tol, int depth, int force) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || (force <= 0 && std::fabs(delta) <= 15.0 * tol)) {
    return left + right + delta / 15.0;
  }
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, force - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, force - 1);
}
}  // namespace detail

/// Adaptive Simpson; the test-side integrator, independent of the library's
/// Gauss-Kronrod path. The first `force` levels always subdivide, so
/// integrands aliased on dyadic grids (cos(k phi) on [-pi, pi]) cannot
/// trigger early acceptance.
inline double integrate_simpson(const std::function<double(double)>& f, double a, double b,
                                double tol = 1e-10, int depth = 52, int force = 7) {
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return detail::simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth, force);
}

inline double uniform_in(randpoly::Xoshiro256pp& gen, double lo, double hi) {
  return lo + (hi - lo) * randpoly::uniform01(gen);
}

/// Catalog model pool for randomized property tests. Tabulated entries are
/// derived from moving-average weights so they stay positive semidefinite.
inline randpoly::CovarianceModel random_catalog_model(randpoly::Xoshiro256pp& gen, int index,
                                                      bool density_required) {
  using randpoly::CovarianceModel;
  const int family = index % (density_required ? 4 : 5);
  switch (family) {
    case 0:
      return CovarianceModel::independent();
    case 1:
      return CovarianceModel::exponential(uniform_in(gen, -0.9, 0.9));
    case 2: {
      std::vector<double> weights{1.0, uniform_in(gen, -0.8, 0.8), uniform_in(gen, -0.5, 0.5)};
      return CovarianceModel::moving_average(weights);
    }
    case 3: {
      const double w1 = uniform_in(gen, -0.7, 0.7);
      const double w2 = uniform_in(gen, -0.4, 0.4);
      const double norm = 1.0 + w1 * w1 + w2 * w2;
      std::vector<double> gamma{1.0, (w1 + w1 * w2) / norm, w2 / norm};
      return CovarianceModel::tabulated(gamma);
    }
    default:
      return CovarianceModel::constant(uniform_in(gen, 0.1, 0.9));
  }
}

}  // namespace testing_oracles

#endif  // RANDPOLY_TESTS_HELPERS_HPP
