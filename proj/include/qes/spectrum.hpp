#pragma once

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qes/verify.hpp"

namespace qes {

struct RationalEigenvalue {
  Rational value;
  int multiplicity = 0;
};

/// Conjugate pair center +- half * sqrt(radicand) from an irreducible
/// quadratic factor; radicand is a positive non-square integer for real pairs
/// and negative for complex pairs.
struct QuadraticEigenvaluePair {
  Rational center;
  Rational half;
  Integer radicand;
};

struct SpectrumResult {
  int dim = 0;
  UniPoly charpoly;  // monic, det(tI - M)
  std::vector<RationalEigenvalue> rational;
  std::vector<QuadraticEigenvaluePair> quadratic;
  UniPoly unresolved;       // factor whose roots were not extracted exactly
  bool exact_complete = false;
};

namespace detail {

inline std::vector<Integer> divisors(Integer n, std::size_t cap = 100000) {
  n = abs(n);
  std::vector<std::pair<Integer, int>> fac;
  if (n > 1) {
    Integer d = 2;
    while (d * d <= n && d < 1000000) {
      if (n % d == 0) {
        int e = 0;
        while (n % d == 0) {
          n /= d;
          ++e;
        }
        fac.emplace_back(d, e);
      }
      d += (d == 2) ? 1 : 2;
    }
    if (n > 1) fac.emplace_back(n, 1);
  }
  std::vector<Integer> out{Integer(1)};
  for (const auto& [p, e] : fac) {
    std::size_t base = out.size();
    Integer pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) {
        if (out.size() >= cap) return out;
        out.push_back(out[i] * pk);
      }
    }
  }
  return out;
}

/// Rational roots with multiplicity; deflates the polynomial in place.
inline std::vector<RationalEigenvalue> extract_rational_roots(UniPoly& p) {
  std::vector<RationalEigenvalue> out;
  if (p.degree() < 1) return out;

  // roots at zero
  int zero_mult = 0;
  while (p.degree() >= 1 && p.coeff(0) == 0) {
    p = p.divide_exact(UniPoly::linear(Rational(0), Rational(1)));
    ++zero_mult;
  }
  if (zero_mult > 0) out.push_back({Rational(0), zero_mult});
  if (p.degree() < 1) return out;

  // integer-scale: candidates num/den with num | a0, den | an
  Integer scale = 1;
  for (const auto& c : p.coeffs()) {
    Integer den = c.get_den();
    Integer g;
    mpz_gcd(g.get_mpz_t(), scale.get_mpz_t(), den.get_mpz_t());
    scale = scale / g * den;
  }
  Integer a0 = Rational(p.coeff(0) * Rational(scale)).get_num();
  Integer an = Rational(p.coeff(p.degree()) * Rational(scale)).get_num();
  auto nums = divisors(a0);
  auto dens = divisors(an);
  for (const auto& num : nums) {
    for (const auto& den : dens) {
      for (int sign : {1, -1}) {
        if (p.degree() < 1) break;
        Rational r(sign > 0 ? num : -num, den);
        r.canonicalize();
        int mult = 0;
        while (p.degree() >= 1 && p.eval(r) == 0) {
          p = p.divide_exact(UniPoly::linear(-r, Rational(1)));
          ++mult;
        }
        if (mult > 0) out.push_back({r, mult});
      }
    }
  }
  std::sort(out.begin(), out.end(),
            [](const RationalEigenvalue& x, const RationalEigenvalue& y) {
              return x.value < y.value;
            });
  return out;
}

inline std::optional<Rational> rational_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  Integer num = r.get_num(), den = r.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    return std::nullopt;
  Integer sn, sd;
  mpz_sqrt(sn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), den.get_mpz_t());
  Rational s(sn, sd);
  s.canonicalize();
  return s;
}

}  // namespace detail

/// Exact spectral data from an already-computed matrix.
inline SpectrumResult spectrum_of_matrix(const RMatrix& m) {
  SpectrumResult res;
  res.dim = m.rows();
  res.charpoly = charpoly(m);
  UniPoly rem = res.charpoly;
  res.rational = detail::extract_rational_roots(rem);

  if (rem.degree() == 2) {
    // one quadratic factor: roots -b/2a +- sqrt(b^2-4ac)/2a
    Rational a = rem.coeff(2), b = rem.coeff(1), c = rem.coeff(0);
    Rational disc = b * b - Rational(4) * a * c;
    if (auto s = detail::rational_sqrt(disc)) {
      // perfect square discriminants are caught by the candidate search; this
      // branch only fires when the candidate list was truncated
      Rational r1 = (-b + *s) / (Rational(2) * a);
      Rational r2 = (-b - *s) / (Rational(2) * a);
      res.rational.push_back({r1, 1});
      if (r2 != r1)
        res.rational.push_back({r2, 1});
      else
        res.rational.back().multiplicity = 2;
    } else {
      QuadraticEigenvaluePair pair;
      pair.center = -b / (Rational(2) * a);
      // sqrt(num/den) = sqrt(num*den)/den
      Rational q = disc / (Rational(4) * a * a);
      Integer rad = q.get_num() * q.get_den();
      pair.half = Rational(1, q.get_den());
      pair.half.canonicalize();
      pair.radicand = rad;
      res.quadratic.push_back(pair);
    }
    rem = UniPoly::constant(Rational(1));
  }

  int found = 0;
  for (const auto& e : res.rational) found += e.multiplicity;
  found += 2 * static_cast<int>(res.quadratic.size());
  res.exact_complete = (found == res.dim) && rem.degree() <= 0;
  res.unresolved = rem.degree() >= 1 ? rem : UniPoly();
  return res;
}

inline SpectrumResult spectrum(const DiffOp& op, const SpaceSpec& spec) {
  return spectrum_of_matrix(matrix_of(op, spec).mat);
}
inline SpectrumResult spectrum(const GradedOp& op, const SpaceSpec& spec) {
  return spectrum_of_matrix(matrix_of(op, spec).mat);
}

}  // namespace qes
