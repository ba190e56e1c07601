#ifndef RANDPOLY_STURM_HPP
#define RANDPOLY_STURM_HPP

#include <vector>

namespace randpoly {

/// Exact count of distinct real roots of the polynomial with ascending
/// coefficients `coeffs` in the open interval (a, b), by the sign-variation
/// difference of the Sturm chain in exact rational arithmetic (the double
/// coefficients are dyadic and convert exactly).
///
/// If the polynomial vanishes at an endpoint, the endpoint is perturbed
/// inward by 1 ulp at a time until it does not. Throws DegreeTooLarge above
/// degree 64 (after trimming leading zeros) and ZeroPolynomial for the zero
/// polynomial.
long sturm_count(const std::vector<double>& coeffs, double a, double b);

}  // namespace randpoly

#endif  // RANDPOLY_STURM_HPP
