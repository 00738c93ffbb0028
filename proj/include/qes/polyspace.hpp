#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qes/rational.hpp"

namespace qes {

/// Exponent vector of a monomial, one entry per variable x_1..x_V.
/// Index 0 of a *generator* label refers to the affine slot (x_0 == 1) and is
/// never stored here.
using Monomial = std::vector<int>;

inline int total_degree(const Monomial& m) {
  return std::accumulate(m.begin(), m.end(), 0);
}

/// Graded-lexicographic order: lower total degree first; within a degree the
/// lexicographically larger exponent vector comes first, so the basis of
/// P(2,2) reads 1, x1, x2, x1^2, x1*x2, x2^2.
struct GradedLexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  }
};

/// All non-decreasing tuples of the given length with entries in 0..max_value,
/// in ascending lexicographic order. Shared by the multi-index enumerations.
inline std::vector<std::vector<int>> nondecreasing_tuples(int length, int max_value) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(length);
  auto rec = [&](auto&& self, int pos, int low) -> void {
    if (pos == length) {
      out.push_back(cur);
      return;
    }
    for (int v = low; v <= max_value; ++v) {
      cur[pos] = v;
      self(self, pos + 1, v);
    }
  };
  if (length == 0) {
    out.push_back({});
    return out;
  }
  rec(rec, 0, 0);
  return out;
}

/// The polynomial space P(N,V); an optional delta selects the graded sum
/// P(N-delta,V) + P(N,V).
struct SpaceSpec {
  int V = 1;
  int N = 0;
  std::optional<int> delta;

  void validate() const {
    if (V < 1) throw std::invalid_argument("SpaceSpec: V must be >= 1");
    if (N < 0) throw std::invalid_argument("SpaceSpec: N must be >= 0");
    if (delta && (*delta < 0 || *delta > N))
      throw std::invalid_argument("SpaceSpec: need 0 <= delta <= N");
  }
};

class Poly {
 public:
  using TermMap = std::map<Monomial, Rational, GradedLexLess>;

  explicit Poly(int vars) : V_(vars) {
    if (vars < 1) throw std::invalid_argument("Poly: V must be >= 1");
  }

  static Poly zero(int vars) { return Poly(vars); }
  static Poly constant(int vars, const Rational& c) {
    Poly p(vars);
    p.add_term(Monomial(vars, 0), c);
    return p;
  }
  static Poly one(int vars) { return constant(vars, Rational(1)); }
  /// x_j with 1-based variable index.
  static Poly variable(int vars, int j) {
    if (j < 1 || j > vars) throw std::out_of_range("Poly::variable: bad index");
    Monomial m(vars, 0);
    m[j - 1] = 1;
    Poly p(vars);
    p.add_term(m, Rational(1));
    return p;
  }
  static Poly monomial(Monomial exps, const Rational& c = Rational(1)) {
    Poly p(static_cast<int>(exps.size()));
    p.add_term(std::move(exps), c);
    return p;
  }

  int vars() const { return V_; }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  /// Total degree; -1 for the zero polynomial.
  int degree() const {
    if (terms_.empty()) return -1;
    return total_degree(terms_.rbegin()->first);
  }

  Rational coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(Monomial m, const Rational& c) {
    if (static_cast<int>(m.size()) != V_)
      throw std::invalid_argument("Poly::add_term: variable count mismatch");
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(std::move(m), c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    check_vars(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check_vars(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  Poly operator-() const {
    Poly r(V_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
  }
  Poly scaled(const Rational& s) const {
    Poly r(V_);
    if (s == 0) return r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, c * s);
    return r;
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check_vars(b);
    Poly r(a.V_);
    for (const auto& [m1, c1] : a.terms_)
      for (const auto& [m2, c2] : b.terms_) {
        Monomial m(a.V_);
        for (int j = 0; j < a.V_; ++j) m[j] = m1[j] + m2[j];
        r.add_term(std::move(m), c1 * c2);
      }
    return r;
  }

  /// d/dx_j with 1-based variable index.
  Poly derivative(int j) const {
    if (j < 1 || j > V_) throw std::out_of_range("Poly::derivative: bad index");
    Poly r(V_);
    for (const auto& [m, c] : terms_) {
      if (m[j - 1] == 0) continue;
      Monomial d = m;
      d[j - 1] -= 1;
      r.add_term(std::move(d), c * Rational(m[j - 1]));
    }
    return r;
  }

  bool operator==(const Poly& o) const { return V_ == o.V_ && terms_ == o.terms_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

 private:
  int V_;
  TermMap terms_;
  void check_vars(const Poly& o) const {
    if (V_ != o.V_) throw std::invalid_argument("Poly: variable count mismatch");
  }
};

inline std::string monomial_to_string(const Monomial& m) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (m[j] == 0) continue;
    if (!first) os << "*";
    os << "x" << (j + 1);
    if (m[j] > 1) os << "^" << m[j];
    first = false;
  }
  if (first) os << "1";
  return os.str();
}

inline std::string poly_to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    if (!first) os << " + ";
    os << to_string(c) << "*" << monomial_to_string(m);
    first = false;
  }
  return os.str();
}

/// Monomials of total degree <= N in V variables, graded-lex order.
inline std::vector<Monomial> monomial_basis(int V, int N) {
  if (V < 1 || N < 0) throw std::invalid_argument("monomial_basis: bad V or N");
  std::vector<Monomial> out;
  Monomial cur(V, 0);
  auto level = [&](auto&& self, int pos, int rest) -> void {
    if (pos == V - 1) {
      cur[pos] = rest;
      out.push_back(cur);
      cur[pos] = 0;
      return;
    }
    for (int e = rest; e >= 0; --e) {
      cur[pos] = e;
      self(self, pos + 1, rest - e);
    }
    cur[pos] = 0;
  };
  for (int d = 0; d <= N; ++d) level(level, 0, d);
  return out;
}

/// Basis of the space: for a plain spec the monomials of P(N,V); for a graded
/// spec the upper block P(N-delta,V) followed by the lower block P(N,V).
inline std::vector<Monomial> basis(const SpaceSpec& spec) {
  spec.validate();
  if (!spec.delta) return monomial_basis(spec.V, spec.N);
  std::vector<Monomial> out = monomial_basis(spec.V, spec.N - *spec.delta);
  std::vector<Monomial> low = monomial_basis(spec.V, spec.N);
  out.insert(out.end(), low.begin(), low.end());
  return out;
}

inline std::uint64_t dimension(const SpaceSpec& spec) {
  spec.validate();
  Integer d = binomial(spec.N + spec.V, spec.V);
  if (spec.delta) d += binomial(spec.N - *spec.delta + spec.V, spec.V);
  return to_u64(d);
}

inline bool member(const Poly& p, const SpaceSpec& spec) {
  spec.validate();
  if (p.vars() != spec.V) throw std::invalid_argument("member: variable count mismatch");
  return p.degree() <= spec.N;  // zero polynomial has degree -1
}

}  // namespace qes
