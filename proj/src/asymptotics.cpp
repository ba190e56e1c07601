#include "randpoly/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "randpoly/errors.hpp"

namespace randpoly {

const char* to_string(ModelClass c) {
  switch (c) {
    case ModelClass::nonvanishing_density: return "nonvanishing_density";
    case ModelClass::constant_covariance: return "constant_covariance";
  }
  return "?";
}

const char* to_string(PredictionLaw l) {
  switch (l) {
    case PredictionLaw::two_over_pi_log_n: return "two_over_pi_log_n";
    case PredictionLaw::one_over_pi_log_n: return "one_over_pi_log_n";
  }
  return "?";
}

const char* to_string(ErrorOrder e) {
  switch (e) {
    case ErrorOrder::small_o_log_n: return "o(log n)";
    case ErrorOrder::big_o_log_log_n: return "O(log log n)";
  }
  return "?";
}

Prediction predicted_total(long n, ModelClass model_class, bool c1_density) {
  if (n < 2) throw std::invalid_argument("predicted_total needs n >= 2");
  Prediction p;
  p.n = n;
  p.error_order = c1_density ? ErrorOrder::big_o_log_log_n : ErrorOrder::small_o_log_n;
  const double logn = std::log(static_cast<double>(n));
  if (model_class == ModelClass::nonvanishing_density) {
    p.law = PredictionLaw::two_over_pi_log_n;
    p.value = 2.0 / std::numbers::pi * logn;
  } else {
    p.law = PredictionLaw::one_over_pi_log_n;
    p.value = 1.0 / std::numbers::pi * logn;
  }
  return p;
}

Window window(long n) {
  if (n < 16) {
    throw BadDegree("window needs n >= 16 (got n = " + std::to_string(n) + ")");
  }
  const double logn = std::log(static_cast<double>(n));
  const double loglogn = std::log(logn);
  Window w;
  w.delta = loglogn / static_cast<double>(n);
  w.eps = loglogn * loglogn / logn;
  if (!(w.delta < w.eps)) {
    throw BadDegree("degenerate window: delta >= eps at n = " + std::to_string(n));
  }
  return w;
}

double phase_cutoff(double y, long n) {
  if (!(y > 0.0)) throw std::invalid_argument("phase_cutoff needs y > 0");
  if (n < 16) {
    throw BadDegree("phase_cutoff needs n >= 16 (got n = " + std::to_string(n) + ")");
  }
  const double logn = std::log(static_cast<double>(n));
  return y * logn / std::log(logn);
}

}  // namespace randpoly
