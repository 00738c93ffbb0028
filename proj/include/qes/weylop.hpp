#pragma once

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qes/polyspace.hpp"

namespace qes {

/// Derivative multi-order, one entry per variable.
using DerivMulti = std::vector<int>;

struct OpTermKey {
  Monomial mono;
  DerivMulti deriv;
  bool operator==(const OpTermKey& o) const { return mono == o.mono && deriv == o.deriv; }
};

struct OpTermLess {
  bool operator()(const OpTermKey& x, const OpTermKey& y) const {
    GradedLexLess lt;
    if (x.deriv != y.deriv) return lt(x.deriv, y.deriv);
    return lt(x.mono, y.mono);
  }
};

/// Scalar linear differential operator with polynomial coefficients, kept in
/// normal form: every stored term is x^m * d^a with the multiplication part on
/// the left. Equality of operators is equality of normal forms.
class DiffOp {
 public:
  using TermMap = std::map<OpTermKey, Rational, OpTermLess>;

  explicit DiffOp(int vars) : V_(vars) {
    if (vars < 1) throw std::invalid_argument("DiffOp: V must be >= 1");
  }

  static DiffOp zero(int vars) { return DiffOp(vars); }
  static DiffOp identity(int vars) {
    DiffOp op(vars);
    op.add_term({Monomial(vars, 0), DerivMulti(vars, 0)}, Rational(1));
    return op;
  }
  /// d/dx_j with 1-based variable index.
  static DiffOp partial(int vars, int j) {
    if (j < 1 || j > vars) throw std::out_of_range("DiffOp::partial: bad index");
    DerivMulti d(vars, 0);
    d[j - 1] = 1;
    DiffOp op(vars);
    op.add_term({Monomial(vars, 0), std::move(d)}, Rational(1));
    return op;
  }
  /// Euler operator D = sum_j x_j d/dx_j.
  static DiffOp euler(int vars) {
    DiffOp op(vars);
    for (int j = 1; j <= vars; ++j) {
      Monomial m(vars, 0);
      DerivMulti d(vars, 0);
      m[j - 1] = 1;
      d[j - 1] = 1;
      op.add_term({std::move(m), std::move(d)}, Rational(1));
    }
    return op;
  }
  /// Multiplication operator by a polynomial.
  static DiffOp from_poly(const Poly& p) {
    DiffOp op(p.vars());
    for (const auto& [m, c] : p.terms()) op.add_term({m, DerivMulti(p.vars(), 0)}, c);
    return op;
  }
  static DiffOp term(Monomial m, DerivMulti d, const Rational& c) {
    if (m.size() != d.size()) throw std::invalid_argument("DiffOp::term: size mismatch");
    DiffOp op(static_cast<int>(m.size()));
    op.add_term({std::move(m), std::move(d)}, c);
    return op;
  }

  int vars() const { return V_; }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }

  void add_term(OpTermKey key, const Rational& c) {
    if (static_cast<int>(key.mono.size()) != V_ || static_cast<int>(key.deriv.size()) != V_)
      throw std::invalid_argument("DiffOp::add_term: variable count mismatch");
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(std::move(key), c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  DiffOp& operator+=(const DiffOp& o) {
    check_vars(o);
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  DiffOp& operator-=(const DiffOp& o) {
    check_vars(o);
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
  }
  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
  DiffOp operator-() const {
    DiffOp r(V_);
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
  }
  DiffOp scaled(const Rational& s) const {
    DiffOp r(V_);
    if (s == 0) return r;
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, c * s);
    return r;
  }
  bool operator==(const DiffOp& o) const { return V_ == o.V_ && terms_ == o.terms_; }
  bool operator!=(const DiffOp& o) const { return !(*this == o); }

  /// Exact image of a polynomial.
  Poly apply(const Poly& p) const {
    if (p.vars() != V_) throw std::invalid_argument("DiffOp::apply: variable count mismatch");
    Poly out(V_);
    for (const auto& [key, oc] : terms_) {
      for (const auto& [e, pc] : p.terms()) {
        Rational c = oc * pc;
        Monomial img(V_);
        bool killed = false;
        for (int j = 0; j < V_; ++j) {
          if (e[j] < key.deriv[j]) {
            killed = true;
            break;
          }
          c *= Rational(falling_factorial(e[j], key.deriv[j]));
          img[j] = e[j] - key.deriv[j] + key.mono[j];
        }
        if (!killed) out.add_term(std::move(img), c);
      }
    }
    return out;
  }

  /// Normal form of f.g via the Leibniz expansion
  /// d^a x^m = sum_g C(a,g) (d^g x^m) d^(a-g).
  friend DiffOp compose(const DiffOp& f, const DiffOp& g) {
    f.check_vars(g);
    const int V = f.V_;
    DiffOp out(V);
    for (const auto& [fk, fc] : f.terms_) {
      for (const auto& [gk, gc] : g.terms_) {
        // gamma runs over 0 <= gamma_j <= min(f.deriv_j, g.mono_j)
        std::vector<int> lim(V);
        for (int j = 0; j < V; ++j) lim[j] = std::min(fk.deriv[j], gk.mono[j]);
        std::vector<int> gamma(V, 0);
        while (true) {
          Rational c = fc * gc;
          OpTermKey key{Monomial(V), DerivMulti(V)};
          for (int j = 0; j < V; ++j) {
            c *= Rational(binomial(fk.deriv[j], gamma[j]) *
                          falling_factorial(gk.mono[j], gamma[j]));
            key.mono[j] = fk.mono[j] + gk.mono[j] - gamma[j];
            key.deriv[j] = fk.deriv[j] - gamma[j] + gk.deriv[j];
          }
          out.add_term(std::move(key), c);
          int j = 0;
          while (j < V && gamma[j] == lim[j]) gamma[j++] = 0;
          if (j == V) break;
          ++gamma[j];
        }
      }
    }
    return out;
  }

  friend DiffOp commutator(const DiffOp& f, const DiffOp& g) {
    return compose(f, g) - compose(g, f);
  }
  friend DiffOp anticommutator(const DiffOp& f, const DiffOp& g) {
    return compose(f, g) + compose(g, f);
  }

 private:
  int V_;
  TermMap terms_;
  void check_vars(const DiffOp& o) const {
    if (V_ != o.V_) throw std::invalid_argument("DiffOp: variable count mismatch");
  }
};

inline std::string diffop_to_string(const DiffOp& op) {
  if (op.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : op.terms()) {
    if (!first) os << " + ";
    os << to_string(c) << "*" << monomial_to_string(k.mono) << "*d[";
    for (std::size_t j = 0; j < k.deriv.size(); ++j) {
      if (j) os << ",";
      os << k.deriv[j];
    }
    os << "]";
    first = false;
  }
  return os.str();
}

}  // namespace qes
