#include <catch2/catch_amalgamated.hpp>

#include "qes/gens.hpp"
#include "qes/unipoly.hpp"

using namespace qes;

TEST_CASE("scalar generators match their closed forms", "[gens]") {
  // J with a = b = 0 is D - N
  CHECK(j_scalar(0, 0, 3, 2) ==
        DiffOp::euler(2) - DiffOp::identity(2).scaled(Rational(3)));
  // upper index k on the affine row gives the derivative
  CHECK(j_scalar(0, 1, 3, 2) == DiffOp::partial(2, 1));
  CHECK(j_scalar(0, 2, 3, 2) == DiffOp::partial(2, 2));
  // J(1,1) at N=1, V=1 is -x d/dx
  CHECK(j_scalar(1, 1, 1, 1) == DiffOp::term({1}, {1}, Rational(-1)));
  // J(k,0) is -x_k (D - N)
  DiffOp expected = compose(DiffOp::from_poly(-Poly::variable(1, 1)),
                            DiffOp::euler(1) - DiffOp::identity(1).scaled(Rational(2)));
  CHECK(j_scalar(1, 0, 2, 1) == expected);
  CHECK_THROWS_AS(j_scalar(3, 0, 2, 2), std::out_of_range);
}

TEST_CASE("traceless shift recovers the familiar one-variable generators", "[gens]") {
  const int N = 4, V = 1;
  // -Jt(1,0) = x(x d/dx - N)
  DiffOp jplus = -j_sl(1, 0, N, V);
  DiffOp expected_plus =
      compose(DiffOp::from_poly(Poly::variable(1, 1)),
              DiffOp::euler(1) - DiffOp::identity(1).scaled(Rational(N)));
  CHECK(jplus == expected_plus);
  // -Jt(1,1) = x d/dx - N/2
  DiffOp jzero = -j_sl(1, 1, N, V);
  CHECK(jzero == DiffOp::euler(1) - DiffOp::identity(1).scaled(make_rational(N, 2)));
  // Jt(0,1) = d/dx
  CHECK(j_sl(0, 1, N, V) == DiffOp::partial(1, 1));
}

TEST_CASE("shifted generators are traceless", "[gens]") {
  for (int V = 1; V <= 3; ++V)
    for (int N = 0; N <= 4; ++N) {
      DiffOp trace = DiffOp::zero(V);
      for (int a = 0; a <= V; ++a) trace += j_sl(a, a, N, V);
      CHECK(trace.is_zero());
    }
}

TEST_CASE("diagonal graded generator examples", "[gens]") {
  // a=b=0, N=2, delta=2: both entries equal D - 3/2
  GenContext c1{1, 2, 2};
  GradedOp j00 = j_graded(0, 0, c1);
  DiffOp want = DiffOp::euler(1) - DiffOp::identity(1).scaled(make_rational(3, 2));
  CHECK(j00.ee() == want);
  CHECK(j00.ff() == want);
  CHECK(j00.ee() == j00.ff());

  // off-diagonal label: both blocks identical, no shift
  GenContext c2{2, 3, 1};
  GradedOp j12 = j_graded(1, 2, c2);
  CHECK(j12.ee() == j12.ff());
  CHECK(j12.ee() == j_scalar(1, 2, 0, 2));  // independent of N

  // a=b=1, N=1, delta=1: diag(-x d - 1, -x d)
  GenContext c3{1, 1, 1};
  GradedOp j11 = j_graded(1, 1, c3);
  CHECK(j11.ee() == DiffOp::term({1}, {1}, Rational(-1)) - DiffOp::identity(1));
  CHECK(j11.ff() == DiffOp::term({1}, {1}, Rational(-1)));
}

TEST_CASE("Q generator sign and support", "[gens]") {
  GenContext c1{1, 1, 0};
  CHECK(q_gen(MultiIndex(std::vector<int>{}), c1) == GradedOp::sigma_minus(1));

  GenContext c2{1, 1, 1};
  CHECK(q_gen(MultiIndex({0}), c2) == GradedOp::sigma_minus(1));
  CHECK(q_gen(MultiIndex({1}), c2) ==
        GradedOp::lowering(DiffOp::from_poly(-Poly::variable(1, 1))));

  GenContext c3{2, 2, 2};
  CHECK(q_gen(MultiIndex({1, 2}), c3) ==
        GradedOp::lowering(
            DiffOp::from_poly(Poly::variable(2, 1) * Poly::variable(2, 2))));
  CHECK_THROWS_AS(q_gen(MultiIndex({1}), c3), std::invalid_argument);
}

TEST_CASE("Qbar generator closed forms", "[gens]") {
  GenContext c1{1, 3, 1};
  CHECK(qbar_gen(MultiIndex({1}), c1) == GradedOp::raising(DiffOp::partial(1, 1)));
  CHECK(qbar_gen(MultiIndex({0}), c1) ==
        GradedOp::raising(DiffOp::euler(1) - DiffOp::identity(1).scaled(Rational(3))));

  // mixed zero/nonzero entries: (D - N + 1) d_2
  GenContext c2{2, 3, 2};
  DiffOp dn1 = DiffOp::euler(2) - DiffOp::identity(2).scaled(Rational(2));
  CHECK(qbar_gen(MultiIndex({0, 2}), c2) ==
        GradedOp::raising(compose(dn1, DiffOp::partial(2, 2))));

  // all zeros: the full falling product (D-N+delta-1)...(D-N)
  GenContext c3{1, 2, 2};
  DiffOp d = DiffOp::euler(1);
  DiffOp prod = compose(d - DiffOp::identity(1).scaled(Rational(1)),
                        d - DiffOp::identity(1).scaled(Rational(2)));
  CHECK(qbar_gen(MultiIndex({0, 0}), c3) == GradedOp::raising(prod));
  CHECK(qbar_gen(MultiIndex(std::vector<int>{}), GenContext{1, 1, 0}) == GradedOp::sigma_plus(1));
}

TEST_CASE("grading operator commutes with every diagonal generator", "[gens]") {
  for (int V = 1; V <= 2; ++V)
    for (int delta = 0; delta <= 2; ++delta) {
      GenContext ctx{V, delta + 2, delta};
      GradedOp t = grading_t(ctx);
      for (int a = 0; a <= V; ++a)
        for (int b = 0; b <= V; ++b)
          CHECK(gcommutator(t, j_graded(a, b, ctx)).is_zero());
      Rational weight(delta * V);
      for (const auto& A : all_multi_indices(delta, V)) {
        GradedOp q = q_gen(A, ctx);
        GradedOp qb = qbar_gen(A, ctx);
        CHECK(gcommutator(t, q) == q.scaled(weight));
        CHECK(gcommutator(t, qb) == qb.scaled(-weight));
      }
    }
}

TEST_CASE("casimir examples", "[gens]") {
  // p=1: the operator itself collapses to the constant -N
  CHECK(casimir(1, 3, 2) == DiffOp::identity(2).scaled(Rational(-3)));
  CHECK(casimir(1, 0, 3).is_zero());

  // p=2 at N=2, V=1 acts as 2*(2+1) = 6 on P(2,1); brute-force application
  DiffOp c2 = casimir(2, 2, 1);
  for (const auto& m : monomial_basis(1, 2)) {
    Poly pm = Poly::monomial(m);
    CHECK(c2.apply(pm) == pm.scaled(Rational(6)));
  }
}

TEST_CASE("W tensor basic instances", "[gens]") {
  GenContext c1{1, 2, 1};
  CHECK(w_tensor(MultiIndex({0}), MultiIndex({0}), 0, c1) == GradedOp::identity(1));
  CHECK(w_tensor(MultiIndex({0}), MultiIndex({1}), 0, c1).is_zero());
  CHECK(w_tensor(MultiIndex({1}), MultiIndex({0}), 1, c1) == j_graded(1, 0, c1));

  // delta = 2, k = 1, A = B = [0,1] at V=1: quarter of the four permutation
  // pairs, expanded by hand
  GenContext c2{1, 3, 2};
  GradedOp byhand = (j_graded(0, 0, c2) + j_graded(1, 1, c2)).scaled(make_rational(1, 4));
  CHECK(w_tensor(MultiIndex({0, 1}), MultiIndex({0, 1}), 1, c2) == byhand);

  CHECK_THROWS_AS(w_tensor(MultiIndex({0}), MultiIndex({0}), 2, c1), std::out_of_range);
}

TEST_CASE("alpha coefficients reproduce the full table", "[gens]") {
  auto val = [](const AlphaCoefficients& a, int k) { return a.values.at(k); };

  auto a1 = solve_alpha(1);
  CHECK(val(a1, 1) == 1);
  CHECK(val(a1, 0) == 0);

  auto a2 = solve_alpha(2);
  CHECK(val(a2, 2) == 1);
  CHECK(val(a2, 1) == 0);
  CHECK(val(a2, 0) == make_rational(-1, 4));

  auto a3 = solve_alpha(3);
  CHECK(val(a3, 3) == 1);
  CHECK(val(a3, 1) == -1);

  auto a4 = solve_alpha(4);
  CHECK(val(a4, 4) == 1);
  CHECK(val(a4, 2) == make_rational(-5, 2));
  CHECK(val(a4, 0) == make_rational(9, 16));

  auto a5 = solve_alpha(5);
  CHECK(val(a5, 5) == 1);
  CHECK(val(a5, 3) == -5);
  CHECK(val(a5, 1) == 4);

  auto a6 = solve_alpha(6);
  CHECK(val(a6, 6) == 1);
  CHECK(val(a6, 4) == make_rational(-35, 4));
  CHECK(val(a6, 2) == make_rational(259, 16));
  CHECK(val(a6, 0) == make_rational(-225, 64));

  // parity zeros and normalization
  for (int delta = 0; delta <= 6; ++delta) {
    auto a = solve_alpha(delta);
    CHECK(a.values.size() == static_cast<std::size_t>(delta + 1));
    CHECK(val(a, delta) == 1);
    for (int k = 0; k <= delta; ++k)
      if ((delta - k) % 2 == 1) CHECK(val(a, k) == 0);
  }

  // degenerate case
  auto a0 = solve_alpha(0);
  CHECK(a0.values == std::vector<Rational>{Rational(1)});
}

TEST_CASE("alpha round-trip: recentering reproduces the falling product", "[gens]") {
  for (int delta = 0; delta <= 6; ++delta) {
    auto a = solve_alpha(delta);
    // substitute t = y + (delta-1)/2 into sum alpha_k t^k
    UniPoly shift = UniPoly::linear(make_rational(delta - 1, 2), Rational(1));
    UniPoly sum;
    UniPoly power = UniPoly::constant(Rational(1));
    for (int k = 0; k <= delta; ++k) {
      sum += power.scaled(a.values[k]);
      power = power * shift;
    }
    UniPoly prod = UniPoly::constant(Rational(1));
    for (int j = 0; j < delta; ++j)
      prod = prod * UniPoly::linear(Rational(j), Rational(1));
    CHECK(sum == prod);
  }
}

TEST_CASE("multiplet counts", "[gens]") {
  for (int V = 1; V <= 3; ++V)
    for (int delta = 0; delta <= 4; ++delta)
      CHECK(all_multi_indices(delta, V).size() == to_u64(binomial(V + delta, delta)));
}

TEST_CASE("multi-index canonical form and edits", "[gens]") {
  MultiIndex a({2, 0, 1});
  CHECK(a.entries() == std::vector<int>{0, 1, 2});
  CHECK(a.removed(1).entries() == std::vector<int>{0, 2});
  CHECK(a.replaced(0, 2).entries() == std::vector<int>{1, 2, 2});
  CHECK(a.count_zero() == 1);
  CHECK(a.count_nonzero() == 2);
}
