#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qes/rational.hpp"
#include "qes/symm.hpp"

namespace qes {

/// One word of the formal Jacobi expansion: a Kronecker slot W(label), the
/// symmetric Q index multiset, and the ordered lower labels of the J-chain.
/// The upper chain indices are fixed distinct spectators and stay implicit.
/// Labels are slots 0..delta-1 for a_1..a_delta and delta..2*delta-1 for
/// c_1..c_delta.
struct FormalTerm {
  int w_slot = 0;
  std::vector<int> q_slots;  // sorted, size delta
  std::vector<int> v_slots;  // ordered, size delta-1

  bool operator<(const FormalTerm& o) const {
    if (w_slot != o.w_slot) return w_slot < o.w_slot;
    if (q_slots != o.q_slots) return q_slots < o.q_slots;
    return v_slots < o.v_slots;
  }
  bool operator==(const FormalTerm& o) const {
    return w_slot == o.w_slot && q_slots == o.q_slots && v_slots == o.v_slots;
  }
};

using FormalSum = std::map<FormalTerm, Rational>;

namespace detail {

struct BaseTerm {
  FormalTerm term;
  long long coeff;
};

inline FormalTerm substituted(const Perm& g, const FormalTerm& t) {
  FormalTerm out;
  out.w_slot = g[t.w_slot];
  out.q_slots.resize(t.q_slots.size());
  for (std::size_t i = 0; i < t.q_slots.size(); ++i) out.q_slots[i] = g[t.q_slots[i]];
  std::sort(out.q_slots.begin(), out.q_slots.end());
  out.v_slots.resize(t.v_slots.size());
  for (std::size_t i = 0; i < t.v_slots.size(); ++i) out.v_slots[i] = g[t.v_slots[i]];
  return out;
}

inline FormalSum expand(const std::vector<BaseTerm>& base, int delta, int p) {
  const GroupAlgebra sy = YoungElement(delta, p).element();
  std::map<FormalTerm, long long> acc;
  for (const auto& [g, c] : sy.terms()) {
    const long long gc = static_cast<long long>(c.get_num().get_si());
    for (const auto& bt : base) acc[substituted(g, bt.term)] += gc * bt.coeff;
  }
  FormalSum out;
  for (auto& [t, c] : acc)
    if (c != 0) out.emplace(t, Rational(static_cast<long>(c)));
  return out;
}

inline std::vector<std::vector<int>> orderings(std::vector<int> slots) {
  std::vector<std::vector<int>> out;
  std::sort(slots.begin(), slots.end());
  do {
    out.push_back(slots);
  } while (std::next_permutation(slots.begin(), slots.end()));
  return out;
}

}  // namespace detail

/// X = -S_Y sum_{i,j} W(a_i) Q_[c_j, A-hat_i] S[C-hat_j] V[C-hat_j], fully
/// expanded over the symmetric groups.
inline FormalSum build_X(int delta, int p) {
  if (delta < 1 || p < 0 || 2 * p > delta)
    throw std::invalid_argument("build_X: need delta >= 1 and 0 <= 2p <= delta");
  std::vector<detail::BaseTerm> base;
  for (int i = 0; i < delta; ++i) {
    for (int j = 0; j < delta; ++j) {
      std::vector<int> q;
      q.push_back(c_slot(delta, j));
      for (int m = 0; m < delta; ++m)
        if (m != i) q.push_back(a_slot(delta, m));
      std::sort(q.begin(), q.end());
      std::vector<int> rem;
      for (int m = 0; m < delta; ++m)
        if (m != j) rem.push_back(c_slot(delta, m));
      for (auto& order : detail::orderings(rem))
        base.push_back({FormalTerm{a_slot(delta, i), q, order}, -1});
    }
  }
  return detail::expand(base, delta, p);
}

/// Y = S_Y sum_j W(c_j) Q_[A] S[C-hat_j] V[C-hat_j].
inline FormalSum build_Y(int delta, int p) {
  if (delta < 1 || p < 0 || 2 * p > delta)
    throw std::invalid_argument("build_Y: need delta >= 1 and 0 <= 2p <= delta");
  std::vector<int> q;
  for (int m = 0; m < delta; ++m) q.push_back(a_slot(delta, m));
  std::vector<detail::BaseTerm> base;
  for (int j = 0; j < delta; ++j) {
    std::vector<int> rem;
    for (int m = 0; m < delta; ++m)
      if (m != j) rem.push_back(c_slot(delta, m));
    for (auto& order : detail::orderings(rem))
      base.push_back({FormalTerm{c_slot(delta, j), q, order}, 1});
  }
  return detail::expand(base, delta, p);
}

/// The canonical operators of the expansion. O1 takes its Kronecker label
/// from the second tableau row and exists only for p >= 1; O2 takes it from
/// the first row and exists only for delta > 2p. Both carry Q_[A] and the
/// remaining c-labels in natural order.
inline FormalTerm canonical_o1(int delta, int p) {
  if (p < 1) throw std::invalid_argument("canonical_o1: undefined for p = 0");
  FormalTerm t;
  t.w_slot = c_slot(delta, 0);
  for (int m = 0; m < delta; ++m) t.q_slots.push_back(a_slot(delta, m));
  for (int m = 1; m < delta; ++m) t.v_slots.push_back(c_slot(delta, m));
  return t;
}

inline FormalTerm canonical_o2(int delta, int p) {
  if (delta == 2 * p) throw std::invalid_argument("canonical_o2: undefined for delta = 2p");
  FormalTerm t;
  t.w_slot = c_slot(delta, delta - 1);
  for (int m = 0; m < delta; ++m) t.q_slots.push_back(a_slot(delta, m));
  for (int m = 0; m < delta - 1; ++m) t.v_slots.push_back(c_slot(delta, m));
  return t;
}

struct JacobiReport {
  int delta = 0;
  int p = 0;
  std::optional<Rational> X1, Y1, X2, Y2;  // absent when O1/O2 is undefined
  std::vector<Rational> admissible_k;      // empty, or a single value
};

/// Solution set of "coefficient-wise X + kY = 0" over the union of all terms:
/// the strongest reading of the condition, used to cross-check the canonical
/// extraction.
struct TermSystemSolution {
  bool unconstrained = false;  // X = Y = 0
  std::vector<Rational> k;     // empty or single value
};

inline TermSystemSolution solve_term_system(const FormalSum& x, const FormalSum& y) {
  TermSystemSolution sol;
  std::optional<Rational> k;
  bool empty = false;
  auto visit = [&](const Rational& xc, const Rational& yc) {
    if (xc == 0 && yc == 0) return;
    if (yc == 0) {
      empty = true;
      return;
    }
    Rational cand = -xc / yc;
    if (!k)
      k = cand;
    else if (*k != cand)
      empty = true;
  };
  std::set<FormalTerm> keys;
  for (const auto& [t, c] : x) keys.insert(t);
  for (const auto& [t, c] : y) keys.insert(t);
  for (const auto& t : keys) {
    auto xi = x.find(t);
    auto yi = y.find(t);
    visit(xi == x.end() ? Rational(0) : xi->second,
          yi == y.end() ? Rational(0) : yi->second);
  }
  if (empty) return sol;
  if (!k) {
    sol.unconstrained = true;
    return sol;
  }
  sol.k.push_back(*k);
  return sol;
}

/// Reads the coefficients of the canonical operators out of the expanded sums
/// and intersects the linear conditions X_i + k Y_i = 0 that are defined.
inline JacobiReport extract_coefficients(const FormalSum& x, const FormalSum& y,
                                         int delta, int p) {
  if (delta < 1 || p < 0 || 2 * p > delta)
    throw std::invalid_argument("extract_coefficients: bad delta or p");
  JacobiReport rep;
  rep.delta = delta;
  rep.p = p;
  auto coeff = [](const FormalSum& s, const FormalTerm& t) {
    auto it = s.find(t);
    return it == s.end() ? Rational(0) : it->second;
  };
  std::vector<std::pair<Rational, Rational>> conditions;
  if (p >= 1) {
    FormalTerm o1 = canonical_o1(delta, p);
    rep.X1 = coeff(x, o1);
    rep.Y1 = coeff(y, o1);
    conditions.emplace_back(*rep.X1, *rep.Y1);
  }
  if (delta > 2 * p) {
    FormalTerm o2 = canonical_o2(delta, p);
    rep.X2 = coeff(x, o2);
    rep.Y2 = coeff(y, o2);
    conditions.emplace_back(*rep.X2, *rep.Y2);
  }
  std::optional<Rational> k;
  bool empty = false;
  for (const auto& [xc, yc] : conditions) {
    if (xc == 0 && yc == 0) continue;
    if (yc == 0) {
      empty = true;
      break;
    }
    Rational cand = -xc / yc;
    if (!k)
      k = cand;
    else if (*k != cand)
      empty = true;
  }
  if (!empty && k) rep.admissible_k.push_back(*k);
  return rep;
}

inline JacobiReport jacobi_report(int delta, int p) {
  return extract_coefficients(build_X(delta, p), build_Y(delta, p), delta, p);
}

/// All (delta, p) reports for delta = 1..delta_max, p = 0..floor(delta/2).
inline std::vector<JacobiReport> classify(int delta_max) {
  if (delta_max < 1) throw std::invalid_argument("classify: delta_max must be >= 1");
  std::vector<JacobiReport> out;
  for (int delta = 1; delta <= delta_max; ++delta)
    for (int p = 0; 2 * p <= delta; ++p) out.push_back(jacobi_report(delta, p));
  return out;
}

/// The two-case closure pattern: {delta} at p = 0, {-1} at delta = 2p, empty
/// otherwise.
inline std::vector<Rational> expected_admissible_k(int delta, int p) {
  if (p == 0) return {Rational(delta)};
  if (delta == 2 * p) return {Rational(-1)};
  return {};
}

}  // namespace qes
