#include "randpoly/moments.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "randpoly/asymptotics.hpp"
#include "randpoly/errors.hpp"
#include "randpoly/quadrature.hpp"

namespace randpoly {
namespace {

constexpr double kPi = std::numbers::pi;
using complexd = std::complex<double>;

/// Kahan compensated accumulator; the moment sums mix 10^4..10^8 terms of
/// both signs and the method-agreement contracts are at 1e-9 relative.
class Accumulator {
 public:
  void add(double term) {
    const double y = term - compensation_;
    const double t = sum_ + y;
    compensation_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const { return sum_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

}  // namespace

const char* to_string(MomentMethod m) {
  switch (m) {
    case MomentMethod::direct: return "direct";
    case MomentMethod::diagonal: return "diagonal";
    case MomentMethod::spectral: return "spectral";
    case MomentMethod::asymptotic_pos: return "asymptotic_pos";
    case MomentMethod::asymptotic_neg: return "asymptotic_neg";
  }
  return "?";
}

MomentTriple moments_direct(const CovarianceModel& model, long n, double x) {
  if (n < 0) throw std::invalid_argument("moments need n >= 0");
  const std::size_t m = static_cast<std::size_t>(n) + 1;
  const std::vector<double> gamma = model.gamma_values(m);

  // x^0 .. x^{2n}
  std::vector<double> pw(2 * m - 1);
  pw[0] = 1.0;
  for (std::size_t p = 1; p < pw.size(); ++p) pw[p] = pw[p - 1] * x;

  Accumulator pp, pd, dd;
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t j = 0; j < m; ++j) {
      const double g = gamma[k >= j ? k - j : j - k];
      pp.add(g * pw[k + j]);
      if (k >= 1) pd.add(g * static_cast<double>(k) * pw[k + j - 1]);
      if (k >= 1 && j >= 1) dd.add(g * static_cast<double>(k * j) * pw[k + j - 2]);
    }
  }
  return MomentTriple{x, n, pp.value(), pd.value(), dd.value(), MomentMethod::direct};
}

MomentTriple moments_diagonal(const CovarianceModel& model, long n, double x) {
  if (n < 0) throw std::invalid_argument("moments need n >= 0");
  const std::size_t m = static_cast<std::size_t>(n) + 1;
  const std::vector<double> gamma = model.gamma_values(m);

  std::vector<double> pwx(m);
  pwx[0] = 1.0;
  for (std::size_t p = 1; p < m; ++p) pwx[p] = pwx[p - 1] * x;

  const double u = x * x;

  // Running inner sums at level q = n - d, swept upward as d decreases:
  //   s0(q) = sum_{j=0}^{q} u^j
  //   s1(q) = sum_{j=1}^{q} j u^{j-1}
  //   s2(q) = sum_{j=1}^{q} j^2 u^{j-1}
  // Per-lag contributions (w_d = 1 for d = 0, else 2; q = n - d):
  //   pp += w_d gamma(d) x^d s0(q)
  //   pd += gamma(0) x s1(n)            for d = 0
  //   pd += gamma(d) x^{d-1} (2 u s1(q) + d s0(q))   for d >= 1
  //   dd += gamma(0) s2(n)              for d = 0
  //   dd += 2 gamma(d) x^d (s2(q) + d s1(q))         for d >= 1
  double s0 = 1.0, s1 = 0.0, s2 = 0.0;
  double upow = 1.0;  // u^q while updating to level q
  Accumulator pp, pd, dd;
  for (std::size_t q = 0; q <= static_cast<std::size_t>(n); ++q) {
    if (q > 0) {
      const double jq = static_cast<double>(q);
      s1 += jq * upow;        // j u^{j-1} at j = q
      s2 += jq * jq * upow;   // j^2 u^{j-1} at j = q
      upow *= u;
      s0 += upow;             // u^j at j = q
    }
    const std::size_t d = static_cast<std::size_t>(n) - q;
    const double g = gamma[d];
    if (d == 0) {
      pp.add(g * s0);
      pd.add(g * x * s1);
      dd.add(g * s2);
    } else {
      const double dd_ = static_cast<double>(d);
      pp.add(2.0 * g * pwx[d] * s0);
      pd.add(g * pwx[d - 1] * (2.0 * u * s1 + dd_ * s0));
      dd.add(2.0 * g * pwx[d] * (s2 + dd_ * s1));
    }
  }
  return MomentTriple{x, n, pp.value(), pd.value(), dd.value(), MomentMethod::diagonal};
}

MomentTriple moments_spectral(const CovarianceModel& model, long n, double x, double rel_tol) {
  if (n < 0) throw std::invalid_argument("moments need n >= 0");
  if (!(std::fabs(x) < 1.0)) {
    throw std::invalid_argument("moments_spectral needs |x| < 1");
  }
  const SpectralDensity density = spectral_density(model);  // throws NoDensity

  const double xp1 = std::pow(x, static_cast<double>(n + 1));
  const double xpn = std::pow(x, static_cast<double>(n));
  const double np1 = static_cast<double>(n + 1);

  // h(phi)  = (1 - x^{n+1} e^{-i(n+1)phi}) / (1 - x e^{-i phi})
  // dh(phi) = d/dy [ (1 - y^{n+1} e^{i(n+1)phi}) / (1 - y e^{i phi}) ] at y = x
  // pp integrand: h conj(h) f;  pd: h dh f;  dd: conj(dh) dh f.
  auto kernel = [&](double phi, complexd& h, complexd& dh) {
    const complexd em(std::cos(phi), -std::sin(phi));  // e^{-i phi}
    const complexd ep = std::conj(em);
    const complexd em_n1(std::cos(np1 * phi), -std::sin(np1 * phi));  // e^{-i(n+1)phi}
    const complexd ep_n1 = std::conj(em_n1);
    const complexd den_m = 1.0 - x * em;
    const complexd den_p = 1.0 - x * ep;
    h = (1.0 - xp1 * em_n1) / den_m;
    dh = (-np1 * xpn * ep_n1 * den_p + (1.0 - xp1 * ep_n1) * ep) / (den_p * den_p);
  };

  QuadratureOptions opts;
  opts.abs_tol = 1e-12;
  opts.rel_tol = rel_tol;
  const long pieces = std::max<long>(8, n + 1);
  for (long i = 1; i < pieces; ++i) {
    opts.breakpoints.push_back(-kPi + 2.0 * kPi * static_cast<double>(i) / static_cast<double>(pieces));
  }

  auto moment_integral = [&](int which) {
    const auto r = integrate_complex(
        [&](double phi) -> complexd {
          complexd h, dh;
          kernel(phi, h, dh);
          const double f = density(phi);
          switch (which) {
            case 0: return h * std::conj(h) * f;
            case 1: return h * dh * f;
            default: return std::conj(dh) * dh * f;
          }
        },
        -kPi, kPi, opts);
    if (!r.converged) {
      throw Error("moments_spectral: quadrature failure (error estimate " +
                  std::to_string(r.error) + ")");
    }
    if (std::fabs(r.value.imag()) > 1e-9 * std::max(1.0, std::fabs(r.value.real()))) {
      throw Error("moments_spectral: imaginary residue " + std::to_string(r.value.imag()) +
                  " exceeds tolerance");
    }
    return r.value.real();
  };

  return MomentTriple{x, n, moment_integral(0), moment_integral(1), moment_integral(2),
                      MomentMethod::spectral};
}

AsymptoticContext make_asymptotic_context(const CovarianceModel& model, long n, double y,
                                          AxisSide side) {
  if (!(y > 0.0 && y < 1.0)) {
    throw std::invalid_argument("asymptotic context needs y in (0, 1)");
  }
  const SpectralDensity density = spectral_density(model);
  AsymptoticContext ctx;
  ctx.y = y;
  ctx.n = n;
  ctx.cutoff = phase_cutoff(y, n);
  ctx.f_end = side == AxisSide::positive ? density.f0 : density.fpi;
  return ctx;
}

MomentTriple moments_asymptotic(const AsymptoticContext& ctx, AxisSide side) {
  if (!(ctx.y > 0.0 && ctx.y < 1.0) || !(ctx.cutoff > 0.0)) {
    throw std::invalid_argument("asymptotic context needs y in (0, 1) and a positive cutoff");
  }
  if (!(ctx.f_end > 0.0)) {
    throw std::invalid_argument("asymptotic moments need f_end > 0");
  }
  const Window w = window(ctx.n);  // throws BadDegree below n = 16
  if (!(ctx.y > w.delta && ctx.y < w.eps)) {
    throw OutsideWindow("y = " + std::to_string(ctx.y) + " outside (" + std::to_string(w.delta) +
                        ", " + std::to_string(w.eps) + "); values there are extrapolations");
  }

  const double arc = std::atan(ctx.cutoff / ctx.y);
  const double y = ctx.y;
  const double pp = 2.0 * ctx.f_end / y * arc;
  const double pd = ctx.f_end / (y * y) * arc;
  const double dd = ctx.f_end / (y * y * y) * arc;
  if (side == AxisSide::positive) {
    return MomentTriple{1.0 - y, ctx.n, pp, pd, dd, MomentMethod::asymptotic_pos};
  }
  return MomentTriple{-1.0 + y, ctx.n, pp, -pd, dd, MomentMethod::asymptotic_neg};
}

}  // namespace randpoly
