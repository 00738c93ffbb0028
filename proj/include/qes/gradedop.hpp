#pragma once

#include <stdexcept>
#include <string>

#include "qes/weylop.hpp"

namespace qes {

/// Element of P(M,V) + P(N,V): upper component in the smaller block.
struct GradedVector {
  Poly upper;
  Poly lower;

  GradedVector(Poly up, Poly low) : upper(std::move(up)), lower(std::move(low)) {
    if (upper.vars() != lower.vars())
      throw std::invalid_argument("GradedVector: variable count mismatch");
  }
  static GradedVector zero(int vars) { return {Poly::zero(vars), Poly::zero(vars)}; }
  int vars() const { return upper.vars(); }
  bool operator==(const GradedVector& o) const {
    return upper == o.upper && lower == o.lower;
  }
};

/// 2x2 matrix [[ee, ef], [fe, ff]] of scalar operators acting on the column
/// (upper, lower). Diagonal entries are the bosonic part, off-diagonal entries
/// the fermionic part; sigma_- multiples live in fe, sigma_+ multiples in ef.
class GradedOp {
 public:
  explicit GradedOp(int vars)
      : V_(vars), ee_(vars), ef_(vars), fe_(vars), ff_(vars) {
    if (vars < 1) throw std::invalid_argument("GradedOp: V must be >= 1");
  }
  GradedOp(DiffOp ee, DiffOp ef, DiffOp fe, DiffOp ff)
      : V_(ee.vars()),
        ee_(std::move(ee)),
        ef_(std::move(ef)),
        fe_(std::move(fe)),
        ff_(std::move(ff)) {
    if (ef_.vars() != V_ || fe_.vars() != V_ || ff_.vars() != V_)
      throw std::invalid_argument("GradedOp: variable count mismatch among entries");
  }

  static GradedOp zero(int vars) { return GradedOp(vars); }
  static GradedOp identity(int vars) {
    GradedOp op(vars);
    op.ee_ = DiffOp::identity(vars);
    op.ff_ = DiffOp::identity(vars);
    return op;
  }
  static GradedOp diagonal(DiffOp up, DiffOp low) {
    GradedOp op(up.vars());
    if (low.vars() != op.V_)
      throw std::invalid_argument("GradedOp::diagonal: variable count mismatch");
    op.ee_ = std::move(up);
    op.ff_ = std::move(low);
    return op;
  }
  static GradedOp sigma_minus(int vars) {
    GradedOp op(vars);
    op.fe_ = DiffOp::identity(vars);
    return op;
  }
  static GradedOp sigma_plus(int vars) {
    GradedOp op(vars);
    op.ef_ = DiffOp::identity(vars);
    return op;
  }
  /// q * sigma_-  (maps the upper block into the lower one)
  static GradedOp lowering(DiffOp q) {
    GradedOp op(q.vars());
    op.fe_ = std::move(q);
    return op;
  }
  /// qbar * sigma_+  (maps the lower block into the upper one)
  static GradedOp raising(DiffOp qbar) {
    GradedOp op(qbar.vars());
    op.ef_ = std::move(qbar);
    return op;
  }
  /// Embeds a scalar operator as diag(s, s).
  static GradedOp scalar(const DiffOp& s) { return diagonal(s, s); }

  int vars() const { return V_; }
  const DiffOp& ee() const { return ee_; }
  const DiffOp& ef() const { return ef_; }
  const DiffOp& fe() const { return fe_; }
  const DiffOp& ff() const { return ff_; }

  bool is_zero() const {
    return ee_.is_zero() && ef_.is_zero() && fe_.is_zero() && ff_.is_zero();
  }
  bool is_bosonic() const { return ef_.is_zero() && fe_.is_zero(); }
  bool is_fermionic() const { return ee_.is_zero() && ff_.is_zero(); }

  GradedOp& operator+=(const GradedOp& o) {
    check_vars(o);
    ee_ += o.ee_;
    ef_ += o.ef_;
    fe_ += o.fe_;
    ff_ += o.ff_;
    return *this;
  }
  GradedOp& operator-=(const GradedOp& o) {
    check_vars(o);
    ee_ -= o.ee_;
    ef_ -= o.ef_;
    fe_ -= o.fe_;
    ff_ -= o.ff_;
    return *this;
  }
  friend GradedOp operator+(GradedOp a, const GradedOp& b) { return a += b; }
  friend GradedOp operator-(GradedOp a, const GradedOp& b) { return a -= b; }
  GradedOp operator-() const { return GradedOp(-ee_, -ef_, -fe_, -ff_); }
  GradedOp scaled(const Rational& s) const {
    return GradedOp(ee_.scaled(s), ef_.scaled(s), fe_.scaled(s), ff_.scaled(s));
  }
  bool operator==(const GradedOp& o) const {
    return V_ == o.V_ && ee_ == o.ee_ && ef_ == o.ef_ && fe_ == o.fe_ && ff_ == o.ff_;
  }
  bool operator!=(const GradedOp& o) const { return !(*this == o); }

  GradedVector gapply(const GradedVector& v) const {
    if (v.vars() != V_) throw std::invalid_argument("GradedOp::gapply: variable count mismatch");
    return {ee_.apply(v.upper) + ef_.apply(v.lower),
            fe_.apply(v.upper) + ff_.apply(v.lower)};
  }

  friend GradedOp gcompose(const GradedOp& f, const GradedOp& g) {
    f.check_vars(g);
    return GradedOp(compose(f.ee_, g.ee_) + compose(f.ef_, g.fe_),
                    compose(f.ee_, g.ef_) + compose(f.ef_, g.ff_),
                    compose(f.fe_, g.ee_) + compose(f.ff_, g.fe_),
                    compose(f.fe_, g.ef_) + compose(f.ff_, g.ff_));
  }
  friend GradedOp gcommutator(const GradedOp& f, const GradedOp& g) {
    return gcompose(f, g) - gcompose(g, f);
  }
  friend GradedOp ganticommutator(const GradedOp& f, const GradedOp& g) {
    return gcompose(f, g) + gcompose(g, f);
  }

 private:
  int V_;
  DiffOp ee_, ef_, fe_, ff_;
  void check_vars(const GradedOp& o) const {
    if (V_ != o.V_) throw std::invalid_argument("GradedOp: variable count mismatch");
  }
};

/// Membership of a graded vector in P(N-delta,V) + P(N,V).
inline bool member(const GradedVector& v, const SpaceSpec& spec) {
  spec.validate();
  if (!spec.delta) throw std::invalid_argument("member: graded vector needs a graded spec");
  if (v.vars() != spec.V) throw std::invalid_argument("member: variable count mismatch");
  return v.upper.degree() <= spec.N - *spec.delta && v.lower.degree() <= spec.N;
}

inline std::string gradedop_to_string(const GradedOp& op) {
  return "[[" + diffop_to_string(op.ee()) + ", " + diffop_to_string(op.ef()) + "], [" +
         diffop_to_string(op.fe()) + ", " + diffop_to_string(op.ff()) + "]]";
}

}  // namespace qes
