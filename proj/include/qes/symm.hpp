#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qes/linalg.hpp"
#include "qes/parallel.hpp"
#include "qes/polyspace.hpp"

namespace qes {

/// Permutation of n slots, stored as the image table.
using Perm = std::vector<int>;

inline Perm perm_identity(int n) {
  Perm p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  return p;
}

// (f o g)(i) = f[g[i]]
inline Perm perm_compose(const Perm& f, const Perm& g) {
  Perm out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[g[i]];
  return out;
}

inline Perm transposition(int n, int i, int j) {
  Perm p = perm_identity(n);
  std::swap(p[i], p[j]);
  return p;
}

/// Formal linear combination of permutations with rational coefficients.
class GroupAlgebra {
 public:
  using TermMap = std::map<Perm, Rational>;

  explicit GroupAlgebra(int n) : n_(n) {}
  static GroupAlgebra identity(int n) {
    GroupAlgebra g(n);
    g.add(perm_identity(n), Rational(1));
    return g;
  }

  int slots() const { return n_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  void add(const Perm& p, const Rational& c) {
    if (static_cast<int>(p.size()) != n_)
      throw std::invalid_argument("GroupAlgebra::add: slot count mismatch");
    if (c == 0) return;
    auto [it, fresh] = terms_.emplace(p, c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  GroupAlgebra& operator+=(const GroupAlgebra& o) {
    check(o);
    for (const auto& [p, c] : o.terms_) add(p, c);
    return *this;
  }
  GroupAlgebra scaled(const Rational& s) const {
    GroupAlgebra out(n_);
    if (s == 0) return out;
    for (const auto& [p, c] : terms_) out.terms_.emplace(p, c * s);
    return out;
  }
  /// Convolution product; (a*b) applies b first when group elements act by
  /// label substitution.
  friend GroupAlgebra operator*(const GroupAlgebra& a, const GroupAlgebra& b) {
    a.check(b);
    GroupAlgebra out(a.n_);
    for (const auto& [p, cp] : a.terms_)
      for (const auto& [q, cq] : b.terms_) out.add(perm_compose(p, q), cp * cq);
    return out;
  }
  bool operator==(const GroupAlgebra& o) const { return n_ == o.n_ && terms_ == o.terms_; }

 private:
  int n_;
  TermMap terms_;
  void check(const GroupAlgebra& o) const {
    if (n_ != o.n_) throw std::invalid_argument("GroupAlgebra: slot count mismatch");
  }
};

/// S[slots]: the sum of all permutations of the listed slots.
inline GroupAlgebra symmetrizer(int n, const std::vector<int>& slots) {
  for (int s : slots)
    if (s < 0 || s >= n) throw std::out_of_range("symmetrizer: slot out of range");
  std::vector<int> sorted = slots;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("symmetrizer: duplicate slot");
  GroupAlgebra out(n);
  std::vector<int> arrangement = sorted;
  do {
    Perm p = perm_identity(n);
    for (std::size_t i = 0; i < sorted.size(); ++i) p[sorted[i]] = arrangement[i];
    out.add(p, Rational(1));
  } while (std::next_permutation(arrangement.begin(), arrangement.end()));
  return out;
}

/// Slot labels of the concatenated index list [A, C]: a_i is slot i-1,
/// c_j is slot delta+j-1.
inline int a_slot(int /*delta*/, int i) { return i; }
inline int c_slot(int delta, int j) { return delta + j; }

/// E_x = prod_{k=1}^{2p} (E - (a_k, c_k)) over the 2*delta slots.
inline GroupAlgebra exchange_operator(int delta, int p) {
  if (delta < 0 || p < 0 || 2 * p > delta)
    throw std::invalid_argument("exchange_operator: need 0 <= 2p <= delta");
  const int n = 2 * delta;
  GroupAlgebra out = GroupAlgebra::identity(n);
  for (int k = 0; k < 2 * p; ++k) {
    GroupAlgebra factor = GroupAlgebra::identity(n);
    factor.add(transposition(n, a_slot(delta, k), c_slot(delta, k)), Rational(-1));
    out = out * factor;
  }
  return out;
}

/// Two-row Young tableau on the 2*delta slots: row one holds
/// a_1..a_delta, c_{2p+1}..c_delta and row two holds c_1..c_{2p}.
struct YoungElement {
  int delta;
  int p;

  YoungElement(int delta_, int p_) : delta(delta_), p(p_) {
    if (delta < 0 || p < 0 || 2 * p > delta)
      throw std::invalid_argument("YoungElement: need 0 <= 2p <= delta");
  }

  std::vector<int> row1() const {
    std::vector<int> r;
    for (int i = 0; i < delta; ++i) r.push_back(a_slot(delta, i));
    for (int j = 2 * p; j < delta; ++j) r.push_back(c_slot(delta, j));
    return r;
  }
  std::vector<int> row2() const {
    std::vector<int> r;
    for (int j = 0; j < 2 * p; ++j) r.push_back(c_slot(delta, j));
    return r;
  }

  /// S_Y = S[row1] S[row2] E_x; the exchange operator acts first.
  GroupAlgebra element() const {
    const int n = 2 * delta;
    return symmetrizer(n, row1()) * symmetrizer(n, row2()) * exchange_operator(delta, p);
  }
};

/// Canonical unordered pair of sorted value multisets: the free symbol for the
/// anticommutator of two Q's.
struct AnticommSymbol {
  std::vector<int> first, second;  // sorted; first <= second

  AnticommSymbol(std::vector<int> x, std::vector<int> y) {
    std::sort(x.begin(), x.end());
    std::sort(y.begin(), y.end());
    if (y < x) std::swap(x, y);
    first = std::move(x);
    second = std::move(y);
  }
  bool operator<(const AnticommSymbol& o) const {
    if (first != o.first) return first < o.first;
    return second < o.second;
  }
  bool operator==(const AnticommSymbol& o) const {
    return first == o.first && second == o.second;
  }
};

/// Image of S_Y {Q_[A], Q_[C]} for a concrete assignment of index values to
/// the 2*delta slots (first the a-slots, then the c-slots).
inline std::map<AnticommSymbol, Rational> apply_young(const YoungElement& y,
                                                      const std::vector<int>& values) {
  const int n = 2 * y.delta;
  if (static_cast<int>(values.size()) != n)
    throw std::invalid_argument("apply_young: need one value per slot");
  std::map<AnticommSymbol, Rational> out;
  const GroupAlgebra sy = y.element();
  for (const auto& [g, c] : sy.terms()) {
    std::vector<int> a(y.delta), b(y.delta);
    for (int i = 0; i < y.delta; ++i) a[i] = values[g[i]];
    for (int j = 0; j < y.delta; ++j) b[j] = values[g[y.delta + j]];
    AnticommSymbol sym(std::move(a), std::move(b));
    auto [it, fresh] = out.emplace(std::move(sym), c);
    if (!fresh) {
      it->second += c;
      if (it->second == 0) out.erase(it);
    }
  }
  return out;
}

namespace detail {

/// Indexes the unknowns u{M1, M2} where M1, M2 are value multisets of size
/// delta over 0..V; also maps any raw tuple code to its sorted multiset id.
class PairIndexer {
 public:
  PairIndexer(int V, int delta) {
    auto multisets = nondecreasing_tuples(delta, V);
    n_ = static_cast<int>(multisets.size());
    std::map<std::vector<int>, int> id;
    for (int i = 0; i < n_; ++i) id.emplace(multisets[i], i);
    long long codes = 1;
    for (int i = 0; i < delta; ++i) codes *= (V + 1);
    code_to_id_.assign(static_cast<std::size_t>(codes), -1);
    std::vector<int> tup(delta, 0);
    for (long long code = 0; code < codes; ++code) {
      std::vector<int> sorted = tup;
      std::sort(sorted.begin(), sorted.end());
      code_to_id_[static_cast<std::size_t>(code)] = id.at(sorted);
      int j = 0;
      while (j < delta && tup[j] == V) tup[j++] = 0;
      if (j < delta) ++tup[j];
    }
  }

  int multiset_count() const { return n_; }
  long long unknowns() const { return static_cast<long long>(n_) * (n_ + 1) / 2; }

  /// Sorted-multiset id from the raw base-(V+1) digit code of a tuple.
  int id_from_code(long long code) const { return code_to_id_[static_cast<std::size_t>(code)]; }

  /// Column of the unordered pair (i, j).
  long long pair_col(int i, int j) const {
    if (i > j) std::swap(i, j);
    return static_cast<long long>(i) * n_ - static_cast<long long>(i) * (i - 1) / 2 +
           (j - i);
  }

 private:
  int n_ = 0;
  std::vector<int> code_to_id_;
};

/// Builds the constraint rows of S_Y {Q,Q} = 0 over every assignment of
/// values to the 2*delta slots, deduplicated.
inline std::vector<std::vector<std::pair<int, long long>>> young_constraint_rows(
    int V, int delta, int p) {
  const int n = 2 * delta;
  const YoungElement young(delta, p);
  const GroupAlgebra sy = young.element();
  // Flatten the group algebra for fast access; coefficients are +-1 sums and
  // stay far below 2^63.
  struct Term {
    Perm g;
    long long c;
  };
  std::vector<Term> terms;
  terms.reserve(sy.size());
  for (const auto& [g, c] : sy.terms()) {
    if (c.get_den() != 1) throw std::logic_error("young element: non-integer coefficient");
    terms.push_back({g, static_cast<long long>(c.get_num().get_si())});
  }
  const PairIndexer idx(V, delta);
  long long assignments = 1;
  for (int i = 0; i < n; ++i) assignments *= (V + 1);
  std::vector<long long> pow(n, 1);
  for (int i = 1; i < delta; ++i) pow[i] = pow[i - 1] * (V + 1);

  using SparseRow = std::vector<std::pair<int, long long>>;
  auto build = [&](long long begin, long long end, std::vector<SparseRow>& out) {
    std::vector<int> v(n);
    std::vector<long long> dense(idx.unknowns(), 0);
    for (long long a = begin; a < end; ++a) {
      long long rest = a;
      for (int i = 0; i < n; ++i) {
        v[i] = static_cast<int>(rest % (V + 1));
        rest /= (V + 1);
      }
      std::fill(dense.begin(), dense.end(), 0);
      for (const auto& t : terms) {
        long long code1 = 0, code2 = 0;
        for (int i = 0; i < delta; ++i) code1 += v[t.g[i]] * pow[i];
        for (int j = 0; j < delta; ++j) code2 += v[t.g[delta + j]] * pow[j];
        dense[idx.pair_col(idx.id_from_code(code1), idx.id_from_code(code2))] += t.c;
      }
      SparseRow row;
      for (std::size_t col = 0; col < dense.size(); ++col)
        if (dense[col] != 0) row.emplace_back(static_cast<int>(col), dense[col]);
      if (row.empty()) continue;
      // Normalize sign so duplicate detection also catches negated rows.
      if (row.front().second < 0)
        for (auto& [c, val] : row) val = -val;
      out.push_back(std::move(row));
    }
  };

  auto chunks = chunked_run<std::vector<SparseRow>>(assignments, build);
  std::set<SparseRow> dedup;
  std::vector<SparseRow> rows;
  for (auto& chunk : chunks)
    for (auto& row : chunk)
      if (dedup.insert(row).second) rows.push_back(std::move(row));
  return rows;
}

inline int rank_of_rows(const std::vector<std::vector<std::pair<int, long long>>>& rows) {
  RowReducer red;
  for (const auto& row : rows) {
    RowReducer::Row r;
    for (const auto& [col, val] : row) r.emplace_hint(r.end(), col, Integer(static_cast<long>(val)));
    red.add(std::move(r));
  }
  return red.rank();
}

/// Deduplicated difference rows of the permutation-invariance relations
/// u(v) = u(v o sigma). Transpositions generate the full span because every
/// intermediate assignment is itself enumerated.
inline std::set<std::pair<long long, long long>> perm_invariance_edges(int V, int delta) {
  const int n = 2 * delta;
  const PairIndexer idx(V, delta);
  std::vector<long long> pow(std::max(delta, 1), 1);
  for (int i = 1; i < delta; ++i) pow[i] = pow[i - 1] * (V + 1);
  long long assignments = 1;
  for (int i = 0; i < n; ++i) assignments *= (V + 1);

  auto build = [&](long long begin, long long end,
                   std::set<std::pair<long long, long long>>& out) {
    std::vector<int> v(n);
    auto col_of = [&](const std::vector<int>& w) {
      long long code1 = 0, code2 = 0;
      for (int i = 0; i < delta; ++i) code1 += w[i] * pow[i];
      for (int j = 0; j < delta; ++j) code2 += w[delta + j] * pow[j];
      return idx.pair_col(idx.id_from_code(code1), idx.id_from_code(code2));
    };
    for (long long a = begin; a < end; ++a) {
      long long rest = a;
      for (int i = 0; i < n; ++i) {
        v[i] = static_cast<int>(rest % (V + 1));
        rest /= (V + 1);
      }
      long long col0 = col_of(v);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          if (v[i] == v[j]) continue;
          std::swap(v[i], v[j]);
          long long col = col_of(v);
          std::swap(v[i], v[j]);
          if (col != col0) out.emplace(std::min(col0, col), std::max(col0, col));
        }
    }
  };
  auto chunks = chunked_run<std::set<std::pair<long long, long long>>>(assignments, build);
  std::set<std::pair<long long, long long>> edges;
  for (auto& chunk : chunks) edges.insert(chunk.begin(), chunk.end());
  return edges;
}

inline int rank_of_edges(const std::set<std::pair<long long, long long>>& edges) {
  RowReducer red;
  for (const auto& [i, j] : edges)
    red.add({{static_cast<int>(i), Integer(1)}, {static_cast<int>(j), Integer(-1)}});
  return red.rank();
}

}  // namespace detail

inline long long constraint_unknowns(int V, int delta) {
  detail::PairIndexer idx(V, delta);
  return idx.unknowns();
}

/// Number of independent relations among the anticommutator symbols. Case 1
/// is the one-row tableau S[A,C]{Q,Q} = 0. Case 2 (delta even) is the
/// invariance of {Q,Q} under every permutation of the 2*delta indices, the
/// form in which the square-tableau condition is counted; for delta >= 4 the
/// single square tableau spans strictly less (see check_case2_reformulation).
/// Both are exact ranks, never read off a closed form.
inline long long count_constraints(int case_, int V, int delta) {
  if (V < 1 || delta < 0) throw std::invalid_argument("count_constraints: bad V or delta");
  if (case_ == 1)
    return detail::rank_of_rows(detail::young_constraint_rows(V, delta, 0));
  if (case_ == 2) {
    if (delta % 2 != 0)
      throw std::invalid_argument("count_constraints: case 2 requires even delta");
    return detail::rank_of_edges(detail::perm_invariance_edges(V, delta));
  }
  throw std::invalid_argument("count_constraints: case must be 1 or 2");
}

struct Case2Reformulation {
  bool equal = false;
  long long young_rank = 0;
  long long perm_rank = 0;
  long long joint_rank = 0;
};

/// Compares the span of the square-tableau constraints with the span of the
/// permutation-invariance relations of the anticommutator symbols, over every
/// assignment and every permutation of the 2*delta indices.
inline Case2Reformulation check_case2_reformulation(int V, int delta) {
  if (delta % 2 != 0 || delta <= 0)
    throw std::invalid_argument("case2 reformulation: delta must be even and positive");
  const int n = 2 * delta;
  auto young_rows = detail::young_constraint_rows(V, delta, delta / 2);

  const detail::PairIndexer idx(V, delta);
  std::vector<long long> pow(delta, 1);
  for (int i = 1; i < delta; ++i) pow[i] = pow[i - 1] * (V + 1);
  long long assignments = 1;
  for (int i = 0; i < n; ++i) assignments *= (V + 1);

  auto build = [&](long long begin, long long end,
                   std::set<std::pair<long long, long long>>& out) {
    std::vector<int> v(n);
    for (long long a = begin; a < end; ++a) {
      long long rest = a;
      for (int i = 0; i < n; ++i) {
        v[i] = static_cast<int>(rest % (V + 1));
        rest /= (V + 1);
      }
      long long base1 = 0, base2 = 0;
      for (int i = 0; i < delta; ++i) base1 += v[i] * pow[i];
      for (int j = 0; j < delta; ++j) base2 += v[delta + j] * pow[j];
      long long col0 = idx.pair_col(idx.id_from_code(base1), idx.id_from_code(base2));
      Perm sigma = perm_identity(n);
      do {
        long long code1 = 0, code2 = 0;
        for (int i = 0; i < delta; ++i) code1 += v[sigma[i]] * pow[i];
        for (int j = 0; j < delta; ++j) code2 += v[sigma[delta + j]] * pow[j];
        long long col = idx.pair_col(idx.id_from_code(code1), idx.id_from_code(code2));
        if (col != col0) out.emplace(std::min(col0, col), std::max(col0, col));
      } while (std::next_permutation(sigma.begin(), sigma.end()));
    }
  };
  auto chunks = chunked_run<std::set<std::pair<long long, long long>>>(assignments, build);
  std::set<std::pair<long long, long long>> edges;
  for (auto& chunk : chunks) edges.insert(chunk.begin(), chunk.end());

  RowReducer young_red, perm_red, joint_red;
  for (const auto& row : young_rows) {
    RowReducer::Row r1, r2;
    for (const auto& [col, val] : row) {
      r1.emplace_hint(r1.end(), col, Integer(static_cast<long>(val)));
      r2.emplace_hint(r2.end(), col, Integer(static_cast<long>(val)));
    }
    young_red.add(std::move(r1));
    joint_red.add(std::move(r2));
  }
  for (const auto& [i, j] : edges) {
    RowReducer::Row r1{{static_cast<int>(i), Integer(1)}, {static_cast<int>(j), Integer(-1)}};
    RowReducer::Row r2 = r1;
    perm_red.add(std::move(r1));
    joint_red.add(std::move(r2));
  }

  Case2Reformulation rep;
  rep.young_rank = young_red.rank();
  rep.perm_rank = perm_red.rank();
  rep.joint_rank = joint_red.rank();
  rep.equal = rep.young_rank == rep.perm_rank && rep.perm_rank == rep.joint_rank;
  return rep;
}

inline bool case2_reformulation_check(int V, int delta) {
  return check_case2_reformulation(V, delta).equal;
}

}  // namespace qes
