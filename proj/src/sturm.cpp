#include "randpoly/sturm.hpp"

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>

#include "randpoly/errors.hpp"

namespace randpoly {
namespace {

// Integer polynomials, ascending coefficients, nonzero leading coefficient.
using Poly = std::vector<mpz_class>;

int sgn(const mpz_class& v) { return mpz_sgn(v.get_mpz_t()); }

void trim(Poly& p) {
  while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

/// Divide by the content (gcd of coefficients, positive), keeping signs.
void make_primitive(Poly& p) {
  mpz_class content = 0;
  for (const auto& c : p) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
  if (content > 1) {
    for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), content.get_mpz_t());
  }
}

Poly derivative(const Poly& p) {
  Poly d;
  d.reserve(p.size() > 0 ? p.size() - 1 : 0);
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(static_cast<long>(k) * p[k]);
  return d;
}

/// Pseudo-remainder of a by b, scaled by a positive multiple of lc(b)^t so
/// the sign sequence of the Sturm chain stays valid.
Poly pseudo_remainder(Poly r, const Poly& b) {
  const mpz_class& lead = b.back();
  long iterations = 0;
  while (r.size() >= b.size()) {
    const std::size_t shift = r.size() - b.size();
    const mpz_class top = r.back();
    for (auto& c : r) c *= lead;
    for (std::size_t i = 0; i < b.size(); ++i) r[i + shift] -= top * b[i];
    trim(r);
    ++iterations;
    if (r.empty()) break;
  }
  // each iteration multiplied by lc(b); flip back if that was an odd number
  // of negative factors
  if (sgn(lead) < 0 && (iterations % 2) == 1) {
    for (auto& c : r) c = -c;
  }
  return r;
}

std::vector<Poly> sturm_chain(Poly p) {
  std::vector<Poly> chain;
  make_primitive(p);
  chain.push_back(p);
  Poly d = derivative(p);
  trim(d);
  if (d.empty()) return chain;  // degree 0
  make_primitive(d);
  chain.push_back(std::move(d));

  while (chain.back().size() > 1) {
    Poly r = pseudo_remainder(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    make_primitive(r);
    chain.push_back(std::move(r));
  }
  return chain;
}

/// Sign of p(num/den) via q^deg * p(p/q), all in integers.
int sign_at(const Poly& p, const mpz_class& num, const mpz_class& den) {
  mpz_class value = p.back();
  mpz_class den_pow = 1;
  for (std::size_t k = p.size() - 1; k-- > 0;) {
    den_pow *= den;
    value = value * num + p[k] * den_pow;
  }
  return sgn(value);
}

long sign_variations(const std::vector<Poly>& chain, const mpz_class& num, const mpz_class& den) {
  long variations = 0;
  int prev = 0;
  for (const auto& p : chain) {
    const int s = sign_at(p, num, den);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++variations;
    prev = s;
  }
  return variations;
}

void rational_from_double(double v, mpz_class& num, mpz_class& den) {
  mpq_class q(v);  // exact: doubles are dyadic rationals
  q.canonicalize();
  num = q.get_num();
  den = q.get_den();
}

}  // namespace

long sturm_count(const std::vector<double>& coeffs, double a, double b) {
  if (!(a < b)) throw std::invalid_argument("sturm_count needs a < b");

  // exact conversion: scale the dyadic rationals to integers
  std::size_t degree = coeffs.size();
  while (degree > 0 && coeffs[degree - 1] == 0.0) --degree;
  if (degree == 0) throw ZeroPolynomial("sturm_count: zero polynomial");
  if (degree - 1 > 64) {
    throw DegreeTooLarge("sturm_count supports degree <= 64 (got " + std::to_string(degree - 1) +
                         ")");
  }
  for (std::size_t k = 0; k < degree; ++k) {
    if (!std::isfinite(coeffs[k])) {
      throw std::invalid_argument("sturm_count needs finite coefficients");
    }
  }

  mpz_class common_den = 1;
  std::vector<mpq_class> rational(degree);
  for (std::size_t k = 0; k < degree; ++k) {
    rational[k] = mpq_class(coeffs[k]);
    rational[k].canonicalize();
    // denominators are powers of two, so the lcm is the largest one
    if (rational[k].get_den() > common_den) common_den = rational[k].get_den();
  }
  Poly p(degree);
  for (std::size_t k = 0; k < degree; ++k) {
    mpq_class scaled = rational[k] * common_den;
    p[k] = scaled.get_num();  // denominator is 1 by construction
  }

  if (p.size() == 1) return 0;  // nonzero constant

  const std::vector<Poly> chain = sturm_chain(p);

  // perturb endpoints inward while the polynomial vanishes there
  mpz_class num, den;
  double lo = a;
  rational_from_double(lo, num, den);
  while (sign_at(chain[0], num, den) == 0 && lo < b) {
    lo = std::nextafter(lo, b);
    rational_from_double(lo, num, den);
  }
  const long va = sign_variations(chain, num, den);

  double hi = b;
  rational_from_double(hi, num, den);
  while (sign_at(chain[0], num, den) == 0 && hi > lo) {
    hi = std::nextafter(hi, lo);
    rational_from_double(hi, num, den);
  }
  const long vb = sign_variations(chain, num, den);

  return va - vb;
}

}  // namespace randpoly
