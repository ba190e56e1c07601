#include "randpoly/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace randpoly {
namespace {

// 15-point Kronrod abscissae (positive half) and weights, with the embedded
// 7-point Gauss weights; standard QUADPACK dqk15 constants.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double mag(double v) { return std::fabs(v); }
inline double mag(const std::complex<double>& v) { return std::abs(v); }

template <class T>
struct Panel {
  double a, b;
  T value;
  double err;
  int depth;
};

template <class T, class F>
Panel<T> evaluate_panel(const F& f, double a, double b, int depth, std::size_t& evals) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);

  T fv1[7], fv2[7];
  const T fc = f(c);
  T resk = kWgk[7] * fc;
  T resg = kWg[3] * fc;
  double resabs = kWgk[7] * mag(fc);
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    fv1[j] = f(c - dx);
    fv2[j] = f(c + dx);
    const T sum = fv1[j] + fv2[j];
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (mag(fv1[j]) + mag(fv2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * sum;
  }
  evals += 15;

  const T reskh = resk * 0.5;
  double resasc = kWgk[7] * mag(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (mag(fv1[j] - reskh) + mag(fv2[j] - reskh));
  }
  resabs *= h;
  resasc *= h;

  double err = mag(resk - resg) * h;
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  const double round_floor = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
  if (round_floor > std::numeric_limits<double>::min()) err = std::max(err, round_floor);

  return Panel<T>{a, b, resk * h, err, depth};
}

template <class T>
struct AdaptiveResult {
  T value;
  double error;
  bool converged;
  std::size_t evaluations;
};

template <class T, class F>
AdaptiveResult<T> adaptive(const F& f, double a, double b, const QuadratureOptions& opts) {
  AdaptiveResult<T> out{T{}, 0.0, false, 0};
  if (!(a < b)) {
    out.converged = true;
    return out;
  }

  std::vector<double> edges;
  edges.push_back(a);
  for (double p : opts.breakpoints) {
    if (p > a && p < b) edges.push_back(p);
  }
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::vector<Panel<T>> panels;
  panels.reserve(256);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    panels.push_back(evaluate_panel<T>(f, edges[i], edges[i + 1], 0, out.evaluations));
  }

  auto total_error = [&panels] {
    double e = 0.0;
    for (const auto& p : panels) e += p.err;
    return e;
  };
  auto total_value = [&panels] {
    T v{};
    for (const auto& p : panels) v += p.value;
    return v;
  };

  while (panels.size() < opts.max_panels) {
    const double err = total_error();
    const double target = std::max(opts.abs_tol, opts.rel_tol * mag(total_value()));
    if (err <= target) break;

    // worst splittable panel; ties broken by left endpoint for determinism
    std::size_t worst = panels.size();
    for (std::size_t i = 0; i < panels.size(); ++i) {
      if (panels[i].depth >= opts.max_depth) continue;
      if (worst == panels.size() || panels[i].err > panels[worst].err ||
          (panels[i].err == panels[worst].err && panels[i].a < panels[worst].a)) {
        worst = i;
      }
    }
    if (worst == panels.size()) break;  // nothing left to split

    const Panel<T> p = panels[worst];
    const double mid = 0.5 * (p.a + p.b);
    if (!(p.a < mid && mid < p.b)) {  // interval exhausted at double resolution
      panels[worst].depth = opts.max_depth;
      continue;
    }
    panels[worst] = evaluate_panel<T>(f, p.a, mid, p.depth + 1, out.evaluations);
    panels.push_back(evaluate_panel<T>(f, mid, p.b, p.depth + 1, out.evaluations));
  }

  std::sort(panels.begin(), panels.end(),
            [](const Panel<T>& x, const Panel<T>& y) { return x.a < y.a; });
  T value{};
  double error = 0.0;
  for (const auto& p : panels) {
    value += p.value;
    error += p.err;
  }
  out.value = value;
  out.error = error;
  out.converged = error <= std::max(opts.abs_tol, opts.rel_tol * mag(value));
  return out;
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opts) {
  const auto r = adaptive<double>(f, a, b, opts);
  return QuadratureResult{r.value, r.error, r.converged, r.evaluations};
}

ComplexQuadratureResult integrate_complex(const std::function<std::complex<double>(double)>& f,
                                          double a, double b, const QuadratureOptions& opts) {
  const auto r = adaptive<std::complex<double>>(f, a, b, opts);
  return ComplexQuadratureResult{r.value, r.error, r.converged, r.evaluations};
}

}  // namespace randpoly
