#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qes/rational.hpp"
#include "qes/unipoly.hpp"

namespace qes {

/// Dense matrix of exact rationals.
class RMatrix {
 public:
  RMatrix(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<std::size_t>(rows) * cols) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("RMatrix: negative size");
  }
  static RMatrix identity(int n) {
    RMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Rational(1);
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }
  Rational& at(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }
  const Rational& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }

  friend RMatrix operator*(const RMatrix& x, const RMatrix& y) {
    if (x.c_ != y.r_) throw std::invalid_argument("RMatrix: shape mismatch");
    RMatrix out(x.r_, y.c_);
    for (int i = 0; i < x.r_; ++i)
      for (int k = 0; k < x.c_; ++k) {
        if (x.at(i, k) == 0) continue;
        for (int j = 0; j < y.c_; ++j) out.at(i, j) += x.at(i, k) * y.at(k, j);
      }
    return out;
  }
  friend RMatrix operator-(const RMatrix& x, const RMatrix& y) {
    if (x.r_ != y.r_ || x.c_ != y.c_) throw std::invalid_argument("RMatrix: shape mismatch");
    RMatrix out(x.r_, x.c_);
    for (std::size_t i = 0; i < x.a_.size(); ++i) out.a_[i] = x.a_[i] - y.a_[i];
    return out;
  }
  RMatrix scaled(const Rational& s) const {
    RMatrix out(r_, c_);
    for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] * s;
    return out;
  }
  bool operator==(const RMatrix& o) const {
    return r_ == o.r_ && c_ == o.c_ && a_ == o.a_;
  }
  bool is_zero() const {
    for (const auto& v : a_)
      if (v != 0) return false;
    return true;
  }

 private:
  int r_, c_;
  std::vector<Rational> a_;
};

/// det(tI - M), computed by fraction-free Bareiss elimination over the
/// polynomial ring Q[t]; all divisions are exact.
inline UniPoly charpoly(const RMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("charpoly: square matrix required");
  const int n = m.rows();
  if (n == 0) return UniPoly::constant(Rational(1));
  std::vector<std::vector<UniPoly>> a(n, std::vector<UniPoly>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      a[i][j] = (i == j) ? UniPoly::linear(-m.at(i, j), Rational(1))
                         : UniPoly::constant(-m.at(i, j));
  UniPoly prev = UniPoly::constant(Rational(1));
  int sign = 1;
  for (int k = 0; k + 1 < n; ++k) {
    if (a[k][k].is_zero()) {
      int piv = -1;
      for (int i = k + 1; i < n; ++i)
        if (!a[i][k].is_zero()) {
          piv = i;
          break;
        }
      if (piv < 0) return UniPoly();  // cannot happen for tI - M; zero determinant
      std::swap(a[k], a[piv]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]).divide_exact(prev);
    prev = a[k][k];
  }
  UniPoly det = a[n - 1][n - 1];
  return sign < 0 ? -det : det;
}

/// Incremental exact rank over the rationals. Rows are handled fraction-free:
/// integer content is divided out after every combination step.
class RowReducer {
 public:
  using Row = std::map<int, Integer>;

  /// Returns true if the row enlarged the span.
  bool add(Row row) {
    normalize(row);
    while (!row.empty()) {
      const int lead = row.begin()->first;
      auto it = pivots_.find(lead);
      if (it == pivots_.end()) {
        pivots_.emplace(lead, std::move(row));
        return true;
      }
      const Row& piv = it->second;
      Integer pl = piv.begin()->second;
      Integer rl = row.begin()->second;
      Row next;
      auto ri = row.begin();
      auto pi = piv.begin();
      while (ri != row.end() || pi != piv.end()) {
        if (pi == piv.end() || (ri != row.end() && ri->first < pi->first)) {
          Integer v = ri->second * pl;
          if (v != 0) next.emplace_hint(next.end(), ri->first, std::move(v));
          ++ri;
        } else if (ri == row.end() || pi->first < ri->first) {
          Integer v = -pi->second * rl;
          if (v != 0) next.emplace_hint(next.end(), pi->first, std::move(v));
          ++pi;
        } else {
          Integer v = ri->second * pl - pi->second * rl;
          if (v != 0) next.emplace_hint(next.end(), ri->first, std::move(v));
          ++ri;
          ++pi;
        }
      }
      row = std::move(next);
      normalize(row);
    }
    return false;
  }

  int rank() const { return static_cast<int>(pivots_.size()); }

  /// Divides out the gcd of the entries and makes the leading entry positive.
  static void normalize(Row& row) {
    for (auto it = row.begin(); it != row.end();)
      it = (it->second == 0) ? row.erase(it) : std::next(it);
    if (row.empty()) return;
    Integer g = 0;
    for (const auto& [c, v] : row) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
      if (g == 1) break;
    }
    bool flip = row.begin()->second < 0;
    if (g == 1 && !flip) return;
    for (auto& [c, v] : row) {
      if (g != 1) v /= g;
      if (flip) v = -v;
    }
  }

 private:
  std::map<int, Row> pivots_;  // leading column -> reduced row
};

struct LinSolveReport {
  int rank = 0;
  bool consistent = false;
  bool unique = false;
  std::vector<Rational> solution;  // valid when consistent && unique
};

/// Exact Gaussian elimination for A x = b (possibly overdetermined).
inline LinSolveReport solve_linear(std::vector<std::vector<Rational>> a,
                                   std::vector<Rational> b) {
  const int rows = static_cast<int>(a.size());
  if (static_cast<int>(b.size()) != rows)
    throw std::invalid_argument("solve_linear: shape mismatch");
  const int cols = rows == 0 ? 0 : static_cast<int>(a[0].size());
  for (const auto& r : a)
    if (static_cast<int>(r.size()) != cols)
      throw std::invalid_argument("solve_linear: ragged matrix");

  std::vector<int> pivot_col;
  int row = 0;
  for (int col = 0; col < cols && row < rows; ++col) {
    int sel = -1;
    for (int i = row; i < rows; ++i)
      if (a[i][col] != 0) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(a[sel], a[row]);
    std::swap(b[sel], b[row]);
    Rational inv = Rational(1) / a[row][col];
    for (int j = col; j < cols; ++j) a[row][j] *= inv;
    b[row] *= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == row || a[i][col] == 0) continue;
      Rational f = a[i][col];
      for (int j = col; j < cols; ++j) a[i][j] -= f * a[row][j];
      b[i] -= f * b[row];
    }
    pivot_col.push_back(col);
    ++row;
  }

  LinSolveReport rep;
  rep.rank = row;
  rep.consistent = true;
  for (int i = row; i < rows; ++i)
    if (b[i] != 0) rep.consistent = false;
  rep.unique = rep.consistent && rep.rank == cols;
  if (rep.unique) {
    rep.solution.assign(cols, Rational(0));
    for (int i = 0; i < row; ++i) rep.solution[pivot_col[i]] = b[i];
  }
  return rep;
}

}  // namespace qes
