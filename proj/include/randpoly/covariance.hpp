#ifndef RANDPOLY_COVARIANCE_HPP
#define RANDPOLY_COVARIANCE_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace randpoly {

enum class Smoothness { c0, c1, unknown };

/// A spectral density on [-pi, pi]: even, nonnegative, integrating to
/// Gamma(0) = 1.
struct SpectralDensity {
  std::function<double(double)> evaluator;
  double f0 = 0.0;         // value at phi = 0
  double fpi = 0.0;        // value at phi = pi
  double min_value = 0.0;  // infimum estimate from a dense scan
  Smoothness smoothness = Smoothness::unknown;

  double operator()(double phi) const { return evaluator(phi); }
  /// False marks the NotPSD condition (the scan found f < -tol somewhere).
  bool nonnegative(double tol = 1e-12) const { return min_value >= -tol; }
};

enum class CovarianceKind { independent, exponential, constant, moving_average, tabulated, spectral };

/// A stationary unit-variance Gaussian coefficient law. Immutable after
/// construction; all operations are safe to call concurrently.
///
/// Gamma(0) = 1 is enforced by normalization at construction (the Kac-Rice
/// integrand is invariant under covariance scaling, so nothing is lost).
class CovarianceModel {
 public:
  static CovarianceModel independent();
  static CovarianceModel exponential(double rho);      // rho in (-1, 1)
  static CovarianceModel constant(double rho);         // rho in [0, 1)
  static CovarianceModel moving_average(std::vector<double> weights);
  static CovarianceModel tabulated(std::vector<double> gamma);  // one-sided, zero beyond range
  static CovarianceModel spectral(std::function<double(double)> density,
                                  Smoothness smoothness = Smoothness::unknown);

  CovarianceKind kind() const { return kind_; }
  const std::string& id() const { return id_; }
  double rho() const { return rho_; }  // exponential / constant kinds

  /// False only for the constant kind with rho > 0 (spectral atom at 0).
  bool has_density() const;

  /// Gamma(|k|); zero beyond range for tabulated kinds; computed by adaptive
  /// quadrature of the density (and cached) for the spectral kind.
  double gamma(long k) const;

  /// Gamma(0..count-1) in one call; the cheap path for the moment sums.
  std::vector<double> gamma_values(std::size_t count) const;

  /// One-sided stored sequence for moving_average/tabulated kinds.
  const std::vector<double>& stored_gamma() const { return gamma_; }

 private:
  CovarianceModel() = default;

  CovarianceKind kind_ = CovarianceKind::independent;
  double rho_ = 0.0;
  std::vector<double> gamma_;  // one-sided, normalized (moving_average/tabulated)
  std::string id_;

  struct SpectralData;
  std::shared_ptr<SpectralData> spectral_;  // spectral kind only

  friend SpectralDensity spectral_density(const CovarianceModel&);
};

/// Density of the model's covariance function. Closed form for the
/// exponential kind, finite cosine series for moving_average/tabulated.
/// Throws NoDensity for the constant kind with rho > 0.
SpectralDensity spectral_density(const CovarianceModel& model);

/// Truncated series (1/2pi) sum_{|k|<=K} gamma(|k|) e^{ik phi} as a real
/// cosine sum; gamma is one-sided with gamma[0] = 1. min_value comes from a
/// dense scan; a negative min marks the sequence as not positive
/// semidefinite (the NotPSD condition).
SpectralDensity density_from_gamma(const std::vector<double>& gamma, std::size_t truncation = 200);

struct ValidationCheck {
  std::string name;
  bool pass;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationCheck> checks;
  bool within_theorem_hypotheses = false;  // density exists and min f > 0
  double density_min = 0.0;                // valid when a density exists

  bool all_pass() const;
  std::string summary() const;
};

/// Report-valued checks: Gamma(0) = 1, evenness, density positivity where a
/// density exists, and a PSD check of the order-32 Toeplitz matrix built
/// from Gamma (eigenvalue estimates >= -1e-9).
ValidationReport validate(const CovarianceModel& model);

}  // namespace randpoly

#endif  // RANDPOLY_COVARIANCE_HPP
