#ifndef RANDPOLY_ASYMPTOTICS_HPP
#define RANDPOLY_ASYMPTOTICS_HPP

namespace randpoly {

enum class ModelClass { nonvanishing_density, constant_covariance };
enum class PredictionLaw { two_over_pi_log_n, one_over_pi_log_n };
enum class ErrorOrder { small_o_log_n, big_o_log_log_n };

const char* to_string(ModelClass c);
const char* to_string(PredictionLaw l);
const char* to_string(ErrorOrder e);

struct Prediction {
  long n = 0;
  PredictionLaw law = PredictionLaw::two_over_pi_log_n;
  double value = 0.0;
  ErrorOrder error_order = ErrorOrder::big_o_log_log_n;
};

/// Closed-form predicted total count of real zeros over the whole line:
/// (2/pi) ln n for laws with a nonvanishing density, (1/pi) ln n for the
/// constant-covariance law. Natural log throughout. error_order defaults to
/// the C^1 case; pass c1_density = false for densities that are merely
/// continuous.
Prediction predicted_total(long n, ModelClass model_class, bool c1_density = true);

/// Near-endpoint window of |x| = 1 - y: y in (delta, eps) with
/// delta = ln ln n / n and eps = (ln ln n)^2 / ln n. Needs n >= 16 so that
/// ln ln n > 0 and delta < eps; throws BadDegree otherwise.
struct Window {
  double delta = 0.0;
  double eps = 0.0;
};

Window window(long n);

/// The phi-integration cutoff y * ln n / ln ln n governing where the
/// Kac-Rice integrand behaves like 1/(2y); the ratio cutoff/y is
/// independent of y.
double phase_cutoff(double y, long n);

}  // namespace randpoly

#endif  // RANDPOLY_ASYMPTOTICS_HPP
