#pragma once

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qes/gradedop.hpp"
#include "qes/unipoly.hpp"

namespace qes {

/// Ambient data of the graded construction: the space P(N-delta,V) + P(N,V).
struct GenContext {
  int V = 1;
  int N = 0;
  int delta = 0;

  void validate() const {
    if (V < 1) throw std::invalid_argument("GenContext: V must be >= 1");
    if (N < 0) throw std::invalid_argument("GenContext: N must be >= 0");
    if (delta < 0 || delta > N)
      throw std::invalid_argument("GenContext: need 0 <= delta <= N");
  }
  SpaceSpec space() const { return SpaceSpec{V, N, delta}; }
};

/// Sorted multiset of delta indices in 0..V; the symmetric index sets [A].
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries) : e_(std::move(entries)) {
    for (int v : e_)
      if (v < 0) throw std::invalid_argument("MultiIndex: negative entry");
    std::sort(e_.begin(), e_.end());
  }

  int size() const { return static_cast<int>(e_.size()); }
  const std::vector<int>& entries() const { return e_; }
  int operator[](int pos) const { return e_.at(pos); }

  /// [A] with the entry at the given position removed.
  MultiIndex removed(int pos) const {
    std::vector<int> out = e_;
    out.erase(out.begin() + pos);
    return MultiIndex(std::move(out));
  }
  /// [A-hat_pos, value]: entry at pos replaced, multiset re-sorted.
  MultiIndex replaced(int pos, int value) const {
    std::vector<int> out = e_;
    out.at(pos) = value;
    return MultiIndex(std::move(out));
  }

  int count_zero() const {
    return static_cast<int>(std::count(e_.begin(), e_.end(), 0));
  }
  int count_nonzero() const { return size() - count_zero(); }

  bool operator==(const MultiIndex& o) const { return e_ == o.e_; }
  bool operator<(const MultiIndex& o) const { return e_ < o.e_; }

  std::string to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < e_.size(); ++i) {
      if (i) os << ",";
      os << e_[i];
    }
    os << "]";
    return os.str();
  }

 private:
  std::vector<int> e_;
};

/// All multisets of the given size over {0..V}; there are C(V+delta, delta).
inline std::vector<MultiIndex> all_multi_indices(int delta, int V) {
  if (delta < 0 || V < 1) throw std::invalid_argument("all_multi_indices: bad arguments");
  std::vector<MultiIndex> out;
  for (auto& t : nondecreasing_tuples(delta, V)) out.emplace_back(std::move(t));
  return out;
}

namespace detail {
inline void check_gen_index(int a, int V, const char* what) {
  if (a < 0 || a > V) throw std::out_of_range(std::string(what) + ": index out of 0..V");
}
}  // namespace detail

/// Scalar generator with lower index a and upper index b:
///   (0,0) -> D - N,   (0,k) -> d_k,   (k,0) -> -x_k (D - N),   (k,l) -> -x_k d_l.
inline DiffOp j_scalar(int a, int b, int N, int V) {
  detail::check_gen_index(a, V, "j_scalar(a)");
  detail::check_gen_index(b, V, "j_scalar(b)");
  if (N < 0) throw std::invalid_argument("j_scalar: N must be >= 0");
  if (a == 0 && b == 0)
    return DiffOp::euler(V) - DiffOp::identity(V).scaled(Rational(N));
  if (a == 0) return DiffOp::partial(V, b);
  DiffOp neg_xa = DiffOp::from_poly(-Poly::variable(V, a));
  if (b == 0) return compose(neg_xa, DiffOp::euler(V) - DiffOp::identity(V).scaled(Rational(N)));
  return compose(neg_xa, DiffOp::partial(V, b));
}

/// Traceless shift: the first Casimir acts as the scalar -N, so the shifted
/// generators carry + N/(V+1) on the diagonal and sum to zero.
inline DiffOp j_sl(int a, int b, int N, int V) {
  DiffOp op = j_scalar(a, b, N, V);
  if (a == b) op += DiffOp::identity(V).scaled(make_rational(N, V + 1));
  return op;
}

/// Diagonal graded generator: diag(J(N-delta), J(N)) - diag(1+delta, 1-delta)/2
/// on the diagonal indices, which makes the (0,0) generator proportional to
/// the unit matrix.
inline GradedOp j_graded(int a, int b, const GenContext& ctx) {
  ctx.validate();
  DiffOp up = j_scalar(a, b, ctx.N - ctx.delta, ctx.V);
  DiffOp low = j_scalar(a, b, ctx.N, ctx.V);
  if (a == b) {
    up -= DiffOp::identity(ctx.V).scaled(make_rational(1 + ctx.delta, 2));
    low -= DiffOp::identity(ctx.V).scaled(make_rational(1 - ctx.delta, 2));
  }
  return GradedOp::diagonal(std::move(up), std::move(low));
}

/// Q_[A] = (-1)^deg x_{a_1} ... x_{a_delta} sigma_-, with x_0 == 1 and deg the
/// number of nonzero entries.
inline GradedOp q_gen(const MultiIndex& A, const GenContext& ctx) {
  ctx.validate();
  if (A.size() != ctx.delta) throw std::invalid_argument("q_gen: index length != delta");
  Poly mono = Poly::one(ctx.V);
  for (int v : A.entries()) {
    detail::check_gen_index(v, ctx.V, "q_gen");
    if (v > 0) mono = mono * Poly::variable(ctx.V, v);
  }
  if (A.count_nonzero() % 2 == 1) mono = -mono;
  return GradedOp::lowering(DiffOp::from_poly(mono));
}

/// Qbar^[B] = qbar^[B] sigma_+ where, with z zeros among the sorted entries,
/// qbar = (D-N+delta-1)(D-N+delta-2)...(D-N+delta-z) d_{b_{z+1}} ... d_{b_delta}.
inline GradedOp qbar_gen(const MultiIndex& B, const GenContext& ctx) {
  ctx.validate();
  if (B.size() != ctx.delta) throw std::invalid_argument("qbar_gen: index length != delta");
  const int V = ctx.V;
  DerivMulti d(V, 0);
  int z = 0;
  for (int v : B.entries()) {
    detail::check_gen_index(v, V, "qbar_gen");
    if (v == 0)
      ++z;
    else
      ++d[v - 1];
  }
  DiffOp op = DiffOp::term(Monomial(V, 0), std::move(d), Rational(1));
  DiffOp euler = DiffOp::euler(V);
  for (int m = z; m >= 1; --m) {
    DiffOp factor = euler + DiffOp::identity(V).scaled(Rational(ctx.delta - ctx.N - m));
    op = compose(factor, op);
  }
  return GradedOp::raising(std::move(op));
}

/// Grading operator T = sum_a J_a^a(N, delta).
inline GradedOp grading_t(const GenContext& ctx) {
  ctx.validate();
  GradedOp t = GradedOp::zero(ctx.V);
  for (int a = 0; a <= ctx.V; ++a) t += j_graded(a, a, ctx);
  return t;
}

/// Casimir C_p: cyclic chain of p generators with each lower index contracted
/// against the next factor's upper index. This linking (and not its
/// transpose, which differs from p = 3 on) acts on P(N,V) as the scalar
/// (-1)^p N (N+V)^(p-1).
inline DiffOp casimir(int p, int N, int V) {
  if (p < 1) throw std::invalid_argument("casimir: p must be >= 1");
  if (V < 1 || N < 0) throw std::invalid_argument("casimir: bad N or V");
  DiffOp sum = DiffOp::zero(V);
  std::vector<int> tup(p, 0);
  while (true) {
    DiffOp chain = DiffOp::identity(V);
    for (int m = 0; m < p; ++m)
      chain = compose(chain, j_scalar(tup[m], tup[(m + 1) % p], N, V));
    sum += chain;
    int j = 0;
    while (j < p && tup[j] == V) tup[j++] = 0;
    if (j == p) break;
    ++tup[j];
  }
  return sum;
}

/// W_[A]^[B](k): symmetrization over both index sets of the length-k chain of
/// graded generators padded with Kronecker deltas, scaled by 1/(delta!)^2.
/// The symmetrizers run over all delta! slot permutations even when an index
/// set has repeated entries.
inline GradedOp w_tensor(const MultiIndex& A, const MultiIndex& B, int k,
                         const GenContext& ctx) {
  ctx.validate();
  const int delta = ctx.delta;
  if (A.size() != delta || B.size() != delta)
    throw std::invalid_argument("w_tensor: index length != delta");
  if (k < 0 || k > delta) throw std::out_of_range("w_tensor: need 0 <= k <= delta");

  GradedOp sum = GradedOp::zero(ctx.V);
  std::vector<int> pa(delta), pb(delta);
  for (int i = 0; i < delta; ++i) pa[i] = pb[i] = i;
  do {
    std::vector<int> qb = pb;
    do {
      bool nonzero = true;
      for (int m = k; m < delta; ++m) {
        if (A[pa[m]] != B[qb[m]]) {
          nonzero = false;
          break;
        }
      }
      if (!nonzero) continue;
      GradedOp chain = GradedOp::identity(ctx.V);
      for (int m = 0; m < k; ++m)
        chain = gcompose(chain, j_graded(A[pa[m]], B[qb[m]], ctx));
      sum += chain;
    } while (std::next_permutation(qb.begin(), qb.end()));
  } while (std::next_permutation(pa.begin(), pa.end()));

  Integer fac = factorial(delta);
  Rational scale(1);
  scale /= Rational(fac * fac);
  return sum.scaled(scale);
}

/// Expansion coefficients of the Q-Qbar anticommutator in the W tensors,
/// ascending in k; alpha_delta = 1 and alpha_k = 0 whenever delta-k is odd.
struct AlphaCoefficients {
  int delta = 0;
  std::vector<Rational> values;  // size delta+1, index k

  bool operator==(const AlphaCoefficients& o) const {
    return delta == o.delta && values == o.values;
  }
};

/// Re-expands prod_{j=0}^{delta-1} (y+j) around the shifted center
/// y + (delta-1)/2; the coefficients of the recentered polynomial are the
/// alpha_k.
inline AlphaCoefficients solve_alpha(int delta) {
  if (delta < 0) throw std::invalid_argument("solve_alpha: delta must be >= 0");
  Rational center = make_rational(delta - 1, 2);
  UniPoly prod = UniPoly::constant(Rational(1));
  for (int j = 0; j < delta; ++j)
    prod = prod * UniPoly::linear(Rational(j) - center, Rational(1));
  std::vector<Rational> vals(delta + 1, Rational(0));
  for (int i = 0; i <= prod.degree(); ++i) vals[i] = prod.coeff(i);
  return AlphaCoefficients{delta, std::move(vals)};
}

}  // namespace qes
