#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "helpers.hpp"
#include "randpoly/asymptotics.hpp"
#include "randpoly/errors.hpp"
#include "randpoly/kac_rice.hpp"

using namespace randpoly;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("integrand: hand values and clamp") {
  SUBCASE("independent degree 1 gives 1/(pi (1 + x^2))") {
    for (double x : {0.0, 0.4, -0.8}) {
      const auto t = moments_diagonal(CovarianceModel::independent(), 1, x);
      CHECK(integrand(t) == doctest::Approx(1.0 / (kPi * (1.0 + x * x))).epsilon(1e-13));
    }
  }
  SUBCASE("constant rho = 0.5 at n = 1, x = 1") {
    const auto t = moments_diagonal(CovarianceModel::constant(0.5), 1, 1.0);
    CHECK(integrand(t) == doctest::Approx(std::sqrt(0.75) / (3.0 * kPi)).epsilon(1e-13));
  }
  SUBCASE("negative rounding residue clamps to zero") {
    MomentTriple t;
    t.pp = 1.0;
    t.pd = 1.0 + 5e-16;
    t.dd = 1.0;
    REQUIRE(t.cs_gap() < 0.0);
    CHECK(integrand(t) == 0.0);
  }
  SUBCASE("degenerate moments throw") {
    MomentTriple t;
    t.pp = 0.0;
    CHECK_THROWS_AS(integrand(t), DegenerateMoment);
  }
}

TEST_CASE("integrand matches the closed-form Kac density for the independent model") {
  for (long n : {1L, 5L, 40L, 300L}) {
    for (double x : {0.0, 0.35, -0.77, 0.995, -0.9999}) {
      const auto t = moments_diagonal(CovarianceModel::independent(), n, x);
      CHECK(integrand(t) ==
            doctest::Approx(testing_oracles::kac_density_independent(x, n)).epsilon(1e-10));
    }
  }
}

TEST_CASE("expected_zeros: degree-1 polynomials have exactly one real zero") {
  SUBCASE("independent") {
    const auto est = expected_zeros_total(CovarianceModel::independent(), 1);
    CHECK(std::fabs(est.value - 1.0) <= 1e-6);
    CHECK(est.converged);
  }
  SUBCASE("exponential rho = 0.3") {
    const auto est = expected_zeros_total(CovarianceModel::exponential(0.3), 1);
    CHECK(std::fabs(est.value - 1.0) <= 1e-6);
  }
  SUBCASE("degree 0 has none") {
    const auto est = expected_zeros(CovarianceModel::independent(), 0, -0.9, 0.9);
    CHECK(est.value == 0.0);
  }
}

TEST_CASE("expected_zeros: interval additivity") {
  const auto model = CovarianceModel::exponential(0.45);
  const long n = 20;
  const auto whole = expected_zeros(model, n, -0.5, 0.9);
  const auto left = expected_zeros(model, n, -0.5, 0.3);
  const auto right = expected_zeros(model, n, 0.3, 0.9);
  CHECK(std::fabs(whole.value - (left.value + right.value)) <=
        whole.quad_error + left.quad_error + right.quad_error + 1e-9);
}

TEST_CASE("expected_zeros: positive/negative symmetry for the flat density") {
  const long n = 64;
  const auto pos = expected_zeros(CovarianceModel::independent(), n, 0.0, 1.0, 1e-9);
  const auto neg = expected_zeros(CovarianceModel::independent(), n, -1.0, 0.0, 1e-9);
  CHECK(std::fabs(pos.value - neg.value) <= 1e-8);
}

TEST_CASE("expected_zeros_total agrees with the closed-form oracle integral") {
  for (long n : {4L, 32L, 256L}) {
    const double oracle =
        4.0 * testing_oracles::integrate_simpson(
                  [n](double x) { return testing_oracles::kac_density_independent(x, n); }, 0.0,
                  1.0 - 1e-12, 1e-10);
    const auto est = expected_zeros_total(CovarianceModel::independent(), n);
    CHECK(est.value == doctest::Approx(oracle).epsilon(1e-6));
  }
}

TEST_CASE("property: scale invariance of the integrand quotient") {
  Xoshiro256pp gen(0x77ULL);
  for (int i = 0; i < 30; ++i) {
    MomentTriple t;
    t.pp = 0.1 + uniform01(gen) * 10.0;
    t.dd = 0.1 + uniform01(gen) * 10.0;
    t.pd = (uniform01(gen) - 0.5) * 2.0 * std::sqrt(t.pp * t.dd);
    const double c = 1e-6 + uniform01(gen) * 1e7;
    MomentTriple scaled = t;
    scaled.pp *= c;
    scaled.pd *= c;
    scaled.dd *= c;
    CHECK(integrand(scaled) == doctest::Approx(integrand(t)).epsilon(1e-12));
  }
}

TEST_CASE("property: totals are non-decreasing in n for the independent model") {
  double previous = 0.0;
  for (long n = 2; n <= (1L << 12); n *= 2) {
    const double value = expected_zeros_total(CovarianceModel::independent(), n).value;
    CAPTURE(n);
    CHECK(value >= previous - 1e-6);
    previous = value;
  }
}

TEST_CASE("partition_counts: structure and additivity") {
  const long n = 1L << 10;
  const auto model = CovarianceModel::exponential(0.3);
  const auto report = partition_counts(model, n);

  CHECK(report.delta == doctest::Approx(std::log(std::log(1024.0)) / 1024.0));
  CHECK(report.delta < report.eps);

  double sum = 0.0;
  for (const auto& piece : report.intervals) {
    CHECK(piece.value >= 0.0);
    sum += piece.value;
  }
  CHECK(std::fabs(sum - report.total_unit) <= 1e-12);  // stored as the sum
  CHECK(report.total_line == doctest::Approx(2.0 * report.total_unit));

  // the same quadrature over the whole interval agrees within tolerances
  const auto whole = expected_zeros(model, n, -1.0, 1.0);
  CHECK(std::fabs(whole.value - report.total_unit) <=
        whole.quad_error + report.total_unit_error + 1e-5);

  CHECK_THROWS_AS(partition_counts(model, 8), BadDegree);
}

TEST_CASE("property: integrand collapse to 1/(2y) inside the window") {
  const long n = 1L << 14;
  const auto w = window(n);
  const auto model = CovarianceModel::independent();
  for (int i = 1; i <= 10; ++i) {
    const double y = w.delta * std::pow(w.eps / w.delta, static_cast<double>(i) / 11.0);
    const double value = integrand(moments_diagonal(model, n, 1.0 - y));
    const double collapsed = kPi * value * 2.0 * y;
    CAPTURE(y);
    CHECK(collapsed >= 0.85);
    CHECK(collapsed <= 1.15);
  }
}
