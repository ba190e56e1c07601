#ifndef RANDPOLY_QUADRATURE_HPP
#define RANDPOLY_QUADRATURE_HPP

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace randpoly {

struct QuadratureOptions {
  double abs_tol = 1e-6;
  double rel_tol = 0.0;   // converged when error <= max(abs_tol, rel_tol*|value|)
  int max_depth = 40;     // panel bisection depth limit
  std::size_t max_panels = 200000;
  std::vector<double> breakpoints;  // forced interior subdivision points
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // absolute error estimate
  bool converged = false;
  std::size_t evaluations = 0;
};

struct ComplexQuadratureResult {
  std::complex<double> value{0.0, 0.0};
  double error = 0.0;
  bool converged = false;
  std::size_t evaluations = 0;
};

/// Adaptive bisection with 15-point Gauss-Kronrod panels. Panels are refined
/// worst-error-first and summed in left-to-right interval order, so results
/// are deterministic for a given integrand and option set.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opts = {});

ComplexQuadratureResult integrate_complex(const std::function<std::complex<double>(double)>& f,
                                          double a, double b, const QuadratureOptions& opts = {});

}  // namespace randpoly

#endif  // RANDPOLY_QUADRATURE_HPP
