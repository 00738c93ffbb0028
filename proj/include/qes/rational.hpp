#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qes {

// All coefficients in the library are exact rationals. mpq_class keeps values
// reduced with a positive denominator, which is the canonical form assumed by
// equality tests and by serialization.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw std::invalid_argument("rational: zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Parses "p" or "p/q" in base 10.
inline Rational rational_from_string(const std::string& s) {
  Rational r;
  try {
    r = Rational(s, 10);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("bad rational literal: '" + s + "'");
  }
  if (r.get_den() == 0)
    throw std::invalid_argument("bad rational literal: '" + s + "'");
  r.canonicalize();
  return r;
}

/// "p" when the value is integral, "p/q" otherwise.
inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer b;
  mpz_bin_uiui(b.get_mpz_t(), n, k);
  return b;
}

inline Integer factorial(unsigned long n) {
  Integer f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

// n (n-1) ... (n-k+1)
inline Integer falling_factorial(long n, unsigned long k) {
  Integer f = 1;
  for (unsigned long i = 0; i < k; ++i) f *= Integer(n - static_cast<long>(i));
  return f;
}

inline std::uint64_t to_u64(const Integer& z) {
  if (z < 0 || !z.fits_ulong_p()) throw std::overflow_error("integer out of u64 range");
  return z.get_ui();
}

}  // namespace qes
