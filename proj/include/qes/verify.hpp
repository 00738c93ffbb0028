#pragma once

#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qes/gens.hpp"
#include "qes/linalg.hpp"

namespace qes {

/// Raised when an operator maps a basis element outside the space. Carries
/// the first offending basis element in canonical order.
struct NotInvariantError : std::runtime_error {
  std::string basis_element;
  std::string offending_monomial;
  NotInvariantError(std::string basis, std::string offending)
      : std::runtime_error("operator does not preserve the space: image of " + basis +
                           " contains " + offending),
        basis_element(std::move(basis)),
        offending_monomial(std::move(offending)) {}
};

/// Raised when the W-tensor family is rank-deficient on the sampled pairs.
struct DegenerateFitError : std::runtime_error {
  int rank;
  int unknowns;
  DegenerateFitError(int rank_, int unknowns_)
      : std::runtime_error("anticommutator fit is rank-deficient: rank " +
                           std::to_string(rank_) + " of " + std::to_string(unknowns_)),
        rank(rank_),
        unknowns(unknowns_) {}
};

/// Exact matrix of an operator in the canonical basis of the space; columns
/// index the input basis. For graded spaces the basis is the upper block
/// followed by the lower block.
struct OpMatrix {
  SpaceSpec spec;
  int dim = 0;
  RMatrix mat{0, 0};
};

namespace detail {

class BasisIndex {
 public:
  BasisIndex(int V, int N) : N_(N) {
    auto b = monomial_basis(V, N);
    for (int i = 0; i < static_cast<int>(b.size()); ++i) index_.emplace(std::move(b[i]), i);
  }
  int size() const { return static_cast<int>(index_.size()); }
  /// Index of a monomial, or -1 when it lies outside the space.
  int find(const Monomial& m) const {
    auto it = index_.find(m);
    return it == index_.end() ? -1 : it->second;
  }

 private:
  int N_;
  std::map<Monomial, int, GradedLexLess> index_;
};

inline void expand_into_column(const Poly& img, const BasisIndex& idx, RMatrix& mat,
                               int col, int row_offset, const std::string& basis_name) {
  for (const auto& [mono, c] : img.terms()) {
    int row = idx.find(mono);
    if (row < 0) throw NotInvariantError(basis_name, monomial_to_string(mono));
    mat.at(row_offset + row, col) = c;
  }
}

}  // namespace detail

inline OpMatrix matrix_of(const DiffOp& op, const SpaceSpec& spec) {
  spec.validate();
  if (spec.delta)
    throw std::invalid_argument("matrix_of: scalar operator on a graded space");
  if (op.vars() != spec.V) throw std::invalid_argument("matrix_of: variable count mismatch");
  const auto b = monomial_basis(spec.V, spec.N);
  const detail::BasisIndex idx(spec.V, spec.N);
  OpMatrix out{spec, static_cast<int>(b.size()), RMatrix(static_cast<int>(b.size()),
                                                         static_cast<int>(b.size()))};
  for (int j = 0; j < out.dim; ++j) {
    Poly img = op.apply(Poly::monomial(b[j]));
    detail::expand_into_column(img, idx, out.mat, j, 0, monomial_to_string(b[j]));
  }
  return out;
}

inline OpMatrix matrix_of(const GradedOp& op, const SpaceSpec& spec) {
  spec.validate();
  if (!spec.delta)
    throw std::invalid_argument("matrix_of: graded operator needs a graded space");
  if (op.vars() != spec.V) throw std::invalid_argument("matrix_of: variable count mismatch");
  const int M = spec.N - *spec.delta;
  const auto upper = monomial_basis(spec.V, M);
  const auto lower = monomial_basis(spec.V, spec.N);
  const detail::BasisIndex up_idx(spec.V, M), low_idx(spec.V, spec.N);
  const int du = static_cast<int>(upper.size());
  const int dl = static_cast<int>(lower.size());
  OpMatrix out{spec, du + dl, RMatrix(du + dl, du + dl)};
  for (int j = 0; j < du; ++j) {
    const std::string name = "upper:" + monomial_to_string(upper[j]);
    GradedVector img = op.gapply({Poly::monomial(upper[j]), Poly::zero(spec.V)});
    detail::expand_into_column(img.upper, up_idx, out.mat, j, 0, name);
    detail::expand_into_column(img.lower, low_idx, out.mat, j, du, name);
  }
  for (int j = 0; j < dl; ++j) {
    const std::string name = "lower:" + monomial_to_string(lower[j]);
    GradedVector img = op.gapply({Poly::zero(spec.V), Poly::monomial(lower[j])});
    detail::expand_into_column(img.upper, up_idx, out.mat, du + j, 0, name);
    detail::expand_into_column(img.lower, low_idx, out.mat, du + j, du, name);
  }
  return out;
}

/// Outcome of one relation or invariance check. A failing report always
/// carries the first counterexample in canonical order.
struct CheckReport {
  std::string relation;
  std::vector<std::pair<std::string, std::string>> params;
  bool pass = true;
  std::string counterexample;
};

namespace detail {

inline void fail(CheckReport& rep, const std::string& counterexample) {
  if (rep.pass) {
    rep.pass = false;
    rep.counterexample = counterexample;
  }
}

inline std::string first_term_of(const DiffOp& op) {
  if (op.is_zero()) return "0";
  const auto& [k, c] = *op.terms().begin();
  std::ostringstream os;
  os << to_string(c) << "*" << monomial_to_string(k.mono) << "*d[";
  for (std::size_t j = 0; j < k.deriv.size(); ++j) {
    if (j) os << ",";
    os << k.deriv[j];
  }
  os << "]";
  return os.str();
}

inline std::string first_term_of(const GradedOp& op) {
  if (!op.ee().is_zero()) return "ee:" + first_term_of(op.ee());
  if (!op.ef().is_zero()) return "ef:" + first_term_of(op.ef());
  if (!op.fe().is_zero()) return "fe:" + first_term_of(op.fe());
  if (!op.ff().is_zero()) return "ff:" + first_term_of(op.ff());
  return "0";
}

}  // namespace detail

/// Every scalar generator maps every basis element of P(N,V) into the space.
inline CheckReport check_invariance_scalar(int N, int V) {
  CheckReport rep;
  rep.relation = "invariance_scalar";
  rep.params = {{"V", std::to_string(V)}, {"N", std::to_string(N)}};
  const SpaceSpec spec{V, N, std::nullopt};
  for (int a = 0; a <= V && rep.pass; ++a)
    for (int b = 0; b <= V && rep.pass; ++b) {
      try {
        matrix_of(j_scalar(a, b, N, V), spec);
      } catch (const NotInvariantError& e) {
        detail::fail(rep, "J(a=" + std::to_string(a) + ",b=" + std::to_string(b) +
                              "): " + e.what());
      }
    }
  return rep;
}

/// Every graded generator preserves P(N-delta,V) + P(N,V).
inline CheckReport check_invariance_graded(const GenContext& ctx) {
  ctx.validate();
  CheckReport rep;
  rep.relation = "invariance_graded";
  rep.params = {{"V", std::to_string(ctx.V)},
                {"N", std::to_string(ctx.N)},
                {"delta", std::to_string(ctx.delta)}};
  const SpaceSpec spec = ctx.space();
  auto try_op = [&](const GradedOp& op, const std::string& name) {
    if (!rep.pass) return;
    try {
      matrix_of(op, spec);
    } catch (const NotInvariantError& e) {
      detail::fail(rep, name + ": " + e.what());
    }
  };
  for (int a = 0; a <= ctx.V; ++a)
    for (int b = 0; b <= ctx.V; ++b)
      try_op(j_graded(a, b, ctx),
             "J(a=" + std::to_string(a) + ",b=" + std::to_string(b) + ")");
  for (const auto& A : all_multi_indices(ctx.delta, ctx.V)) {
    try_op(q_gen(A, ctx), "Q" + A.to_string());
    try_op(qbar_gen(A, ctx), "Qbar" + A.to_string());
  }
  return rep;
}

enum class Relation { gl_comm, adjoint_q, adjoint_qbar, grading, nilpotent, anticomm };

inline const char* relation_name(Relation r) {
  switch (r) {
    case Relation::gl_comm: return "gl_comm";
    case Relation::adjoint_q: return "adjoint_q";
    case Relation::adjoint_qbar: return "adjoint_qbar";
    case Relation::grading: return "grading";
    case Relation::nilpotent: return "nilpotent";
    case Relation::anticomm: return "anticomm";
  }
  return "?";
}

inline Relation relation_from_name(const std::string& s) {
  for (Relation r : {Relation::gl_comm, Relation::adjoint_q, Relation::adjoint_qbar,
                     Relation::grading, Relation::nilpotent, Relation::anticomm})
    if (s == relation_name(r)) return r;
  throw std::invalid_argument("unknown relation: " + s);
}

namespace detail {

// [J^b_a, J^d_c] = d(a,d) J^b_c - d(c,b) J^d_a, checked as normal forms.
inline void check_gl_comm_scalar(CheckReport& rep, int N, int V) {
  for (int a = 0; a <= V; ++a)
    for (int b = 0; b <= V; ++b)
      for (int c = 0; c <= V; ++c)
        for (int d = 0; d <= V; ++d) {
          DiffOp lhs = commutator(j_scalar(a, b, N, V), j_scalar(c, d, N, V));
          DiffOp rhs = DiffOp::zero(V);
          if (a == d) rhs += j_scalar(c, b, N, V);
          if (c == b) rhs -= j_scalar(a, d, N, V);
          if (lhs != rhs) {
            fail(rep, "a=" + std::to_string(a) + " b=" + std::to_string(b) +
                          " c=" + std::to_string(c) + " d=" + std::to_string(d) +
                          " differs by " + first_term_of(lhs - rhs));
            return;
          }
        }
}

inline void check_gl_comm_graded(CheckReport& rep, const GenContext& ctx) {
  for (int a = 0; a <= ctx.V; ++a)
    for (int b = 0; b <= ctx.V; ++b)
      for (int c = 0; c <= ctx.V; ++c)
        for (int d = 0; d <= ctx.V; ++d) {
          GradedOp lhs = gcommutator(j_graded(a, b, ctx), j_graded(c, d, ctx));
          GradedOp rhs = GradedOp::zero(ctx.V);
          if (a == d) rhs += j_graded(c, b, ctx);
          if (c == b) rhs -= j_graded(a, d, ctx);
          if (lhs != rhs) {
            fail(rep, "a=" + std::to_string(a) + " b=" + std::to_string(b) +
                          " c=" + std::to_string(c) + " d=" + std::to_string(d) +
                          " differs by " + first_term_of(lhs - rhs));
            return;
          }
        }
}

}  // namespace detail

/// Extracts the adjoint-action weight k from [J^0_0, Q_[A]] by rearranging the
/// multiplet relation; the construction gives k = delta.
inline std::optional<Rational> extract_adjoint_k(const MultiIndex& A, const GenContext& ctx) {
  GradedOp q = q_gen(A, ctx);
  GradedOp lhs = gcommutator(j_graded(0, 0, ctx), q);
  for (int pos = 0; pos < A.size(); ++pos)
    if (A[pos] == 0) lhs += q_gen(A.replaced(pos, 0), ctx);
  // lhs should now equal k * Q_[A]
  if (lhs.is_zero()) return Rational(0);
  if (q.is_zero() || lhs.fe().is_zero() || q.fe().is_zero()) return std::nullopt;
  const auto& [key, qc] = *q.fe().terms().begin();
  auto it = lhs.fe().terms().find(key);
  if (it == lhs.fe().terms().end()) return std::nullopt;
  Rational k = it->second / qc;
  if (lhs != q.scaled(k)) return std::nullopt;
  return k;
}

/// Exact operator-level check of one of the structural relations.
inline CheckReport check_relation(Relation rel, const GenContext& ctx) {
  ctx.validate();
  CheckReport rep;
  rep.relation = relation_name(rel);
  rep.params = {{"V", std::to_string(ctx.V)},
                {"N", std::to_string(ctx.N)},
                {"delta", std::to_string(ctx.delta)}};
  const int V = ctx.V;
  const int delta = ctx.delta;
  const auto indices = all_multi_indices(delta, V);

  switch (rel) {
    case Relation::gl_comm: {
      detail::check_gl_comm_scalar(rep, ctx.N, V);
      if (rep.pass) detail::check_gl_comm_graded(rep, ctx);
      break;
    }
    case Relation::adjoint_q: {
      // [J^b_a, Q_[A]] = delta d(a,b) Q_[A] - sum_m d(b, a_m) Q_[A-hat_m, a]
      for (const auto& A : indices) {
        for (int a = 0; a <= V && rep.pass; ++a)
          for (int b = 0; b <= V && rep.pass; ++b) {
            GradedOp lhs = gcommutator(j_graded(a, b, ctx), q_gen(A, ctx));
            GradedOp rhs = GradedOp::zero(V);
            if (a == b) rhs += q_gen(A, ctx).scaled(Rational(delta));
            for (int m = 0; m < A.size(); ++m)
              if (A[m] == b) rhs -= q_gen(A.replaced(m, a), ctx);
            if (lhs != rhs)
              detail::fail(rep, "A=" + A.to_string() + " a=" + std::to_string(a) +
                                    " b=" + std::to_string(b) + " differs by " +
                                    detail::first_term_of(lhs - rhs));
          }
        if (!rep.pass) break;
        auto k = extract_adjoint_k(A, ctx);
        if (!k || *k != Rational(delta))
          detail::fail(rep, "A=" + A.to_string() + ": extracted k != delta");
      }
      break;
    }
    case Relation::adjoint_qbar: {
      // [J^b_a, Qbar^[B]] = -delta d(a,b) Qbar^[B] + sum_m d(a, b_m) Qbar^[B-hat_m, b]
      for (const auto& B : indices)
        for (int a = 0; a <= V && rep.pass; ++a)
          for (int b = 0; b <= V && rep.pass; ++b) {
            GradedOp lhs = gcommutator(j_graded(a, b, ctx), qbar_gen(B, ctx));
            GradedOp rhs = GradedOp::zero(V);
            if (a == b) rhs -= qbar_gen(B, ctx).scaled(Rational(delta));
            for (int m = 0; m < B.size(); ++m)
              if (B[m] == a) rhs += qbar_gen(B.replaced(m, b), ctx);
            if (lhs != rhs)
              detail::fail(rep, "B=" + B.to_string() + " a=" + std::to_string(a) +
                                    " b=" + std::to_string(b) + " differs by " +
                                    detail::first_term_of(lhs - rhs));
          }
      break;
    }
    case Relation::grading: {
      const GradedOp t = grading_t(ctx);
      for (int a = 0; a <= V && rep.pass; ++a)
        for (int b = 0; b <= V && rep.pass; ++b) {
          GradedOp c = gcommutator(t, j_graded(a, b, ctx));
          if (!c.is_zero())
            detail::fail(rep, "[T, J(a=" + std::to_string(a) + ",b=" + std::to_string(b) +
                                  ")] != 0");
        }
      const Rational weight(delta * V);
      for (const auto& A : indices) {
        if (!rep.pass) break;
        GradedOp q = q_gen(A, ctx);
        if (gcommutator(t, q) != q.scaled(weight))
          detail::fail(rep, "[T, Q" + A.to_string() + "] != delta*V*Q");
        GradedOp qb = qbar_gen(A, ctx);
        if (gcommutator(t, qb) != qb.scaled(-weight))
          detail::fail(rep, "[T, Qbar" + A.to_string() + "] != -delta*V*Qbar");
      }
      break;
    }
    case Relation::nilpotent: {
      for (const auto& A : indices) {
        for (const auto& B : indices) {
          if (!gcompose(q_gen(A, ctx), q_gen(B, ctx)).is_zero())
            detail::fail(rep, "Q" + A.to_string() + " Q" + B.to_string() + " != 0");
          if (!gcompose(qbar_gen(A, ctx), qbar_gen(B, ctx)).is_zero())
            detail::fail(rep, "Qbar" + A.to_string() + " Qbar" + B.to_string() + " != 0");
          if (!rep.pass) break;
        }
        if (!rep.pass) break;
      }
      break;
    }
    case Relation::anticomm: {
      const AlphaCoefficients alpha = solve_alpha(delta);
      for (const auto& A : indices) {
        for (const auto& B : indices) {
          GradedOp lhs = ganticommutator(q_gen(A, ctx), qbar_gen(B, ctx));
          GradedOp rhs = GradedOp::zero(V);
          for (int k = 0; k <= delta; ++k) {
            if (alpha.values[k] == 0) continue;
            rhs += w_tensor(A, B, k, ctx).scaled(alpha.values[k]);
          }
          if (lhs != rhs) {
            detail::fail(rep, "A=" + A.to_string() + " B=" + B.to_string() +
                                  " differs by " + detail::first_term_of(lhs - rhs));
            break;
          }
        }
        if (!rep.pass) break;
      }
      break;
    }
  }
  return rep;
}

/// Inverse problem for the anticommutator expansion: solve the exact linear
/// system for the alpha coefficients over all (A,B) pairs. Throws
/// DegenerateFitError when the W family is rank-deficient there.
inline AlphaCoefficients fit_anticommutator(const GenContext& ctx) {
  ctx.validate();
  const int delta = ctx.delta;
  const auto indices = all_multi_indices(delta, ctx.V);
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  for (const auto& A : indices)
    for (const auto& B : indices) {
      std::vector<GradedOp> w;
      w.reserve(delta + 1);
      for (int k = 0; k <= delta; ++k) w.push_back(w_tensor(A, B, k, ctx));
      const GradedOp target = ganticommutator(q_gen(A, ctx), qbar_gen(B, ctx));
      auto emit = [&](const DiffOp& tgt, auto entry) {
        std::set<OpTermKey, OpTermLess> keys;
        for (const auto& [key, c] : tgt.terms()) keys.insert(key);
        for (int k = 0; k <= delta; ++k)
          for (const auto& [key, c] : entry(w[k]).terms()) keys.insert(key);
        for (const auto& key : keys) {
          std::vector<Rational> row(delta + 1, Rational(0));
          bool nonzero = false;
          for (int k = 0; k <= delta; ++k) {
            auto it = entry(w[k]).terms().find(key);
            if (it != entry(w[k]).terms().end()) {
              row[k] = it->second;
              nonzero = true;
            }
          }
          auto it = tgt.terms().find(key);
          Rational b = it == tgt.terms().end() ? Rational(0) : it->second;
          if (nonzero || b != 0) {
            rows.push_back(std::move(row));
            rhs.push_back(b);
          }
        }
      };
      emit(target.ee(), [](const GradedOp& op) -> const DiffOp& { return op.ee(); });
      emit(target.ff(), [](const GradedOp& op) -> const DiffOp& { return op.ff(); });
    }
  const LinSolveReport sol = solve_linear(std::move(rows), std::move(rhs));
  if (sol.rank < delta + 1) throw DegenerateFitError(sol.rank, delta + 1);
  if (!sol.consistent)
    throw std::logic_error("fit_anticommutator: inconsistent system");
  AlphaCoefficients out;
  out.delta = delta;
  out.values = sol.solution;
  return out;
}

}  // namespace qes
