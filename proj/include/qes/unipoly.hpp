#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "qes/rational.hpp"

namespace qes {

/// Dense univariate polynomial with rational coefficients, ascending powers.
/// Used for the alpha-coefficient solver and for exact characteristic
/// polynomials.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  static UniPoly constant(const Rational& a) { return UniPoly({a}); }
  // a0 + a1 t
  static UniPoly linear(const Rational& a0, const Rational& a1) {
    return UniPoly({a0, a1});
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int i) const {
    if (i < 0 || i >= static_cast<int>(c_.size())) return Rational(0);
    return c_[i];
  }
  Rational leading() const {
    if (is_zero()) throw std::domain_error("leading coefficient of zero polynomial");
    return c_.back();
  }

  UniPoly& operator+=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  UniPoly& operator-=(const UniPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  UniPoly operator-() const {
    UniPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return UniPoly();
    std::vector<Rational> out(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return UniPoly(std::move(out));
  }
  UniPoly scaled(const Rational& s) const {
    if (s == 0) return UniPoly();
    UniPoly r = *this;
    for (auto& c : r.c_) c *= s;
    return r;
  }
  bool operator==(const UniPoly& o) const { return c_ == o.c_; }

  Rational eval(const Rational& t) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
    return acc;
  }

  UniPoly derivative() const {
    if (c_.size() <= 1) return UniPoly();
    std::vector<Rational> out(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return UniPoly(std::move(out));
  }

  /// Exact division; throws std::domain_error if the remainder is nonzero.
  UniPoly divide_exact(const UniPoly& d) const {
    if (d.is_zero()) throw std::domain_error("division by zero polynomial");
    UniPoly rem = *this;
    if (rem.degree() < d.degree()) {
      if (rem.is_zero()) return UniPoly();
      throw std::domain_error("inexact polynomial division");
    }
    std::vector<Rational> q(rem.degree() - d.degree() + 1, Rational(0));
    while (!rem.is_zero() && rem.degree() >= d.degree()) {
      int k = rem.degree() - d.degree();
      Rational f = rem.leading() / d.leading();
      q[k] = f;
      for (int i = 0; i <= d.degree(); ++i) rem.c_[i + k] -= f * d.c_[i];
      rem.trim();
    }
    if (!rem.is_zero()) throw std::domain_error("inexact polynomial division");
    return UniPoly(std::move(q));
  }

 private:
  std::vector<Rational> c_;
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
};

}  // namespace qes
