#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "helpers.hpp"
#include "randpoly/covariance.hpp"
#include "randpoly/errors.hpp"
#include "randpoly/quadrature.hpp"

using namespace randpoly;

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Eq.-style quadrature of cos(k phi) f(phi) with the test-side integrator.
double gamma_by_quadrature(const SpectralDensity& f, long k) {
  return testing_oracles::integrate_simpson(
      [&](double phi) { return std::cos(static_cast<double>(k) * phi) * f(phi); }, -kPi, kPi,
      1e-12);
}
}  // namespace

TEST_CASE("gamma: independent") {
  const auto m = CovarianceModel::independent();
  CHECK(m.gamma(0) == 1.0);
  CHECK(m.gamma(3) == 0.0);
  CHECK(m.gamma(-3) == 0.0);
}

TEST_CASE("gamma: exponential powers") {
  const auto m = CovarianceModel::exponential(0.3);
  CHECK(m.gamma(2) == doctest::Approx(0.09).epsilon(1e-14));
  CHECK(m.gamma(-2) == m.gamma(2));
  CHECK(m.gamma(0) == 1.0);
}

TEST_CASE("gamma: spectral kind via quadrature, Fourier orthogonality") {
  // f = (1 + cos phi) / 2pi integrates to 1 and has first coefficient 1/2
  const auto m = CovarianceModel::spectral(
      [](double phi) { return (1.0 + std::cos(phi)) / kTwoPi; }, Smoothness::c1);
  CHECK(m.gamma(0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(m.gamma(1) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(m.gamma(2) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("gamma: tabulated beyond range is zero") {
  const auto m = CovarianceModel::tabulated({1.0, 0.4, 0.1});
  CHECK(m.gamma(1) == 0.4);
  CHECK(m.gamma(5) == 0.0);
}

TEST_CASE("tabulated normalization enforces gamma(0) = 1") {
  const auto m = CovarianceModel::tabulated({2.0, 0.8});
  CHECK(m.gamma(0) == 1.0);
  CHECK(m.gamma(1) == doctest::Approx(0.4).epsilon(1e-15));
}

TEST_CASE("spectral_density: independent is flat 1/2pi") {
  const auto f = spectral_density(CovarianceModel::independent());
  CHECK(f(0.0) == doctest::Approx(1.0 / kTwoPi).epsilon(1e-15));
  CHECK(f(2.0) == doctest::Approx(1.0 / kTwoPi).epsilon(1e-15));
  CHECK(f.min_value == doctest::Approx(1.0 / kTwoPi).epsilon(1e-15));
}

TEST_CASE("spectral_density: exponential closed form vs geometric-series oracle") {
  const double rho = 0.5;
  const auto f = spectral_density(CovarianceModel::exponential(rho));
  CHECK(f(0.0) == doctest::Approx(3.0 / kTwoPi).epsilon(1e-14));

  // oracle: truncated sum (1/2pi) sum_{|k|<=K} rho^{|k|} cos(k phi)
  for (double phi : {0.0, 0.7, 1.9, kPi}) {
    double series = 1.0;
    double p = 1.0;
    for (int k = 1; k <= 200; ++k) {
      p *= rho;
      series += 2.0 * p * std::cos(k * phi);
    }
    series /= kTwoPi;
    CHECK(f(phi) == doctest::Approx(series).epsilon(1e-12));
  }
}

TEST_CASE("spectral_density: constant kind has no density") {
  CHECK_THROWS_AS(spectral_density(CovarianceModel::constant(0.5)), NoDensity);
  // rho = 0 degenerates to the independent law and has one
  const auto f = spectral_density(CovarianceModel::constant(0.0));
  CHECK(f(1.0) == doctest::Approx(1.0 / kTwoPi));
}

TEST_CASE("density_from_gamma examples") {
  SUBCASE("single entry is flat") {
    const auto f = density_from_gamma({1.0});
    CHECK(f(0.3) == doctest::Approx(1.0 / kTwoPi).epsilon(1e-15));
  }
  SUBCASE("gamma(1) = 0.5 gives (1 + cos)/2pi with minimum 0 at pi") {
    const auto f = density_from_gamma({1.0, 0.5});
    for (double phi : {0.0, 1.0, 2.5}) {
      CHECK(f(phi) == doctest::Approx((1.0 + std::cos(phi)) / kTwoPi).epsilon(1e-13));
    }
    CHECK(f.fpi == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(f.min_value == doctest::Approx(0.0).epsilon(1e-7));
    CHECK(f.nonnegative(1e-7));
  }
  SUBCASE("gamma(1) = 0.9 is flagged NotPSD") {
    const auto f = density_from_gamma({1.0, 0.9});
    CHECK(f.fpi == doctest::Approx(-0.8 / kTwoPi).epsilon(1e-13));
    CHECK(f.min_value < -1e-3);
    CHECK_FALSE(f.nonnegative());
  }
}

TEST_CASE("validate: catalog examples") {
  SUBCASE("independent passes everything") {
    const auto report = validate(CovarianceModel::independent());
    CHECK(report.all_pass());
    CHECK(report.within_theorem_hypotheses);
    CHECK(report.density_min == doctest::Approx(1.0 / kTwoPi).epsilon(1e-14));
  }
  SUBCASE("exponential rho = 0.99 passes with closed-form minimum") {
    const auto report = validate(CovarianceModel::exponential(0.99));
    CHECK(report.all_pass());
    // oracle: minimum of the closed form sits at phi = pi
    const double expected_min = (1.0 - 0.99) / ((1.0 + 0.99) * kTwoPi);
    CHECK(report.density_min == doctest::Approx(expected_min).epsilon(1e-6));
  }
  SUBCASE("tabulated gamma(1) = 0.9 is flagged") {
    const auto report = validate(CovarianceModel::tabulated({1.0, 0.9}));
    CHECK_FALSE(report.all_pass());
    CHECK_FALSE(report.within_theorem_hypotheses);
  }
  SUBCASE("constant kind is outside the hypotheses but not broken") {
    const auto report = validate(CovarianceModel::constant(0.5));
    CHECK(report.all_pass());
    CHECK_FALSE(report.within_theorem_hypotheses);
  }
}

TEST_CASE("construction guards") {
  CHECK_THROWS_AS(CovarianceModel::exponential(1.0), std::invalid_argument);
  CHECK_THROWS_AS(CovarianceModel::constant(-0.1), std::invalid_argument);
  CHECK_THROWS_AS(CovarianceModel::constant(1.0), std::invalid_argument);
  CHECK_THROWS_AS(CovarianceModel::tabulated({}), std::invalid_argument);
  CHECK_THROWS_AS(CovarianceModel::tabulated({-1.0, 0.2}), std::invalid_argument);
  CHECK_THROWS_AS(CovarianceModel::moving_average({0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(density_from_gamma({0.7, 0.1}), std::invalid_argument);
}

TEST_CASE("property: density round trip for moving_average and tabulated") {
  const std::vector<CovarianceModel> models = {
      CovarianceModel::moving_average({1.0, 0.5}),
      CovarianceModel::moving_average({0.8, -0.4, 0.2}),
      CovarianceModel::tabulated({1.0, 0.4, 0.1}),
  };
  for (const auto& model : models) {
    const auto f = spectral_density(model);
    for (long k = 0; k <= 16; ++k) {
      CHECK(std::fabs(gamma_by_quadrature(f, k) - model.gamma(k)) <= 1e-8);
    }
  }
}

TEST_CASE("property: evenness of every catalog density") {
  const std::vector<CovarianceModel> models = {
      CovarianceModel::independent(),
      CovarianceModel::exponential(0.6),
      CovarianceModel::exponential(-0.35),
      CovarianceModel::moving_average({1.0, 0.5}),
      CovarianceModel::tabulated({1.0, 0.4, 0.1}),
      CovarianceModel::spectral([](double phi) { return (1.0 + std::cos(phi)) / kTwoPi; }),
  };
  for (const auto& model : models) {
    const auto f = spectral_density(model);
    for (double phi : {0.1, 0.9, 1.7, 2.8, kPi}) {
      CHECK(f(phi) == f(-phi));
    }
  }
}

TEST_CASE("property: densities integrate to 1") {
  const std::vector<CovarianceModel> models = {
      CovarianceModel::independent(),
      CovarianceModel::exponential(0.6),
      CovarianceModel::exponential(-0.35),
      CovarianceModel::moving_average({1.0, 0.5}),
      CovarianceModel::tabulated({1.0, 0.4, 0.1}),
      CovarianceModel::spectral([](double phi) { return 0.21 * (1.3 + std::cos(phi)); }),
  };
  for (const auto& model : models) {
    const auto f = spectral_density(model);
    const double total =
        testing_oracles::integrate_simpson([&](double phi) { return f(phi); }, -kPi, kPi, 1e-12);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-8));
  }
}

TEST_CASE("property: exponential closed form equals truncated series at K = 200") {
  for (double rho : {0.1, 0.5, 0.9}) {
    const auto closed = spectral_density(CovarianceModel::exponential(rho));
    std::vector<double> gamma(201);
    double p = 1.0;
    for (int k = 0; k <= 200; ++k, p *= rho) gamma[static_cast<std::size_t>(k)] = p;
    const auto truncated = density_from_gamma(gamma, 200);
    double worst = 0.0;
    for (int i = 0; i < 1024; ++i) {
      const double phi = -kPi + kTwoPi * (static_cast<double>(i) + 0.5) / 1024.0;
      worst = std::max(worst, std::fabs(closed(phi) - truncated(phi)));
    }
    CHECK(worst <= 1e-8);
  }
}
