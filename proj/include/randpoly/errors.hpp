#ifndef RANDPOLY_ERRORS_HPP
#define RANDPOLY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace randpoly {

/// Base class for all library-specific failures.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// The covariance function has a spectral atom and no density
/// (e.g. constant covariance with rho > 0).
class NoDensity : public Error {
 public:
  using Error::Error;
};

/// Asymptotic moment formulas requested outside the (delta(n), eps(n)) window.
class OutsideWindow : public Error {
 public:
  using Error::Error;
};

/// Kac-Rice integrand requested for a triple with E[P^2] <= 0.
class DegenerateMoment : public Error {
 public:
  using Error::Error;
};

/// Degree too small for the near-endpoint window (needs log log n > 0, delta < eps).
class BadDegree : public Error {
 public:
  using Error::Error;
};

class DegreeTooLarge : public Error {
 public:
  using Error::Error;
};

class ZeroPolynomial : public Error {
 public:
  using Error::Error;
};

/// Both circulant embedding and jittered Cholesky failed.
class SamplingFailure : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace randpoly

#endif  // RANDPOLY_ERRORS_HPP
