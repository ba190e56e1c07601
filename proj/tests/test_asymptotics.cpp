#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "randpoly/asymptotics.hpp"
#include "randpoly/errors.hpp"

using namespace randpoly;

TEST_CASE("predicted_total: values and halving") {
  const auto dense = predicted_total(1000000, ModelClass::nonvanishing_density);
  CHECK(dense.value == doctest::Approx(2.0 / std::numbers::pi * std::log(1e6)).epsilon(1e-12));
  CHECK(dense.value == doctest::Approx(8.7952).epsilon(1e-4));
  CHECK(dense.law == PredictionLaw::two_over_pi_log_n);

  const auto flat = predicted_total(1000000, ModelClass::constant_covariance);
  CHECK(flat.value == doctest::Approx(4.3976).epsilon(1e-4));
  CHECK(flat.law == PredictionLaw::one_over_pi_log_n);

  for (long n : {2L, 10L, 4096L, 1000000L}) {
    CHECK(predicted_total(n, ModelClass::nonvanishing_density).value ==
          doctest::Approx(2.0 * predicted_total(n, ModelClass::constant_covariance).value));
    CHECK(predicted_total(n, ModelClass::nonvanishing_density).value > 0.0);
  }
  CHECK_THROWS_AS(predicted_total(1, ModelClass::nonvanishing_density), std::invalid_argument);
}

TEST_CASE("predicted_total: error order by smoothness") {
  CHECK(predicted_total(100, ModelClass::nonvanishing_density, true).error_order ==
        ErrorOrder::big_o_log_log_n);
  CHECK(predicted_total(100, ModelClass::nonvanishing_density, false).error_order ==
        ErrorOrder::small_o_log_n);
}

TEST_CASE("window: values and domain guard") {
  SUBCASE("n = 2^14") {
    const long n = 1L << 14;
    const auto w = window(n);
    const double logn = std::log(static_cast<double>(n));
    const double loglogn = std::log(logn);
    CHECK(w.delta == doctest::Approx(loglogn / static_cast<double>(n)).epsilon(1e-15));
    CHECK(w.eps == doctest::Approx(loglogn * loglogn / logn).epsilon(1e-15));
    CHECK(w.delta < w.eps);
  }
  SUBCASE("n = 16 still has delta < eps") {
    const auto w = window(16);
    CHECK(w.delta < w.eps);
  }
  SUBCASE("small degrees are rejected") {
    CHECK_THROWS_AS(window(4), BadDegree);
    CHECK_THROWS_AS(window(15), BadDegree);
  }
}

TEST_CASE("window: monotonicity of delta and n*delta") {
  double prev_delta = 1.0;
  double prev_ndelta = 0.0;
  for (long n = 16; n <= (1L << 20); n *= 2) {
    const auto w = window(n);
    CHECK(w.delta < prev_delta);
    const double ndelta = static_cast<double>(n) * w.delta;  // = log log n
    CHECK(ndelta > prev_ndelta);
    prev_delta = w.delta;
    prev_ndelta = ndelta;
  }
}

TEST_CASE("phase_cutoff: definition and consistency identities") {
  const long n = 1L << 14;
  const double logn = std::log(static_cast<double>(n));
  const double loglogn = std::log(logn);

  SUBCASE("cutoff/y is independent of y") {
    const double r1 = phase_cutoff(0.001, n) / 0.001;
    const double r2 = phase_cutoff(0.37, n) / 0.37;
    CHECK(r1 == doctest::Approx(r2).epsilon(1e-12));
    CHECK(r1 == doctest::Approx(logn / loglogn).epsilon(1e-12));
  }
  SUBCASE("at y = delta, 1/(y*cutoff) = n^2/(log n log log n)") {
    const auto w = window(n);
    const double cutoff = phase_cutoff(w.delta, n);
    CHECK(1.0 / (w.delta * cutoff) ==
          doctest::Approx(static_cast<double>(n) * static_cast<double>(n) / (logn * loglogn))
              .epsilon(1e-12));
  }
  SUBCASE("y = 1 gives ln n / ln ln n") {
    CHECK(phase_cutoff(1.0, n) == doctest::Approx(logn / loglogn).epsilon(1e-15));
  }
  SUBCASE("guards") {
    CHECK_THROWS_AS(phase_cutoff(0.0, n), std::invalid_argument);
    CHECK_THROWS_AS(phase_cutoff(0.1, 8), BadDegree);
  }
}

TEST_CASE("arctan saturation at large n") {
  const long n = 1L << 20;
  const double factor = std::atan(phase_cutoff(0.01, n) / 0.01);
  CHECK(factor > std::numbers::pi / 2.0 - 0.3);
  CHECK(factor < std::numbers::pi / 2.0);
}
