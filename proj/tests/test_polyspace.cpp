#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qes/polyspace.hpp"

using namespace qes;

namespace {

Poly random_poly(std::mt19937& rng, int V, int max_deg, int max_terms) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 5);
  std::uniform_int_distribution<int> nterms(0, max_terms);
  Poly p(V);
  int terms = nterms(rng);
  for (int t = 0; t < terms; ++t) {
    Monomial m(V);
    for (int j = 0; j < V; ++j) m[j] = deg(rng);
    p.add_term(std::move(m), make_rational(num(rng), den(rng)));
  }
  return p;
}

}  // namespace

TEST_CASE("basis of P(2,1) is 1, x, x^2", "[polyspace]") {
  auto b = basis(SpaceSpec{1, 2, std::nullopt});
  REQUIRE(b == std::vector<Monomial>{{0}, {1}, {2}});
}

TEST_CASE("basis of P(0,2) is the constant", "[polyspace]") {
  auto b = basis(SpaceSpec{2, 0, std::nullopt});
  REQUIRE(b == std::vector<Monomial>{{0, 0}});
}

TEST_CASE("basis of P(2,2) enumerates six monomials in graded-lex order", "[polyspace]") {
  auto b = basis(SpaceSpec{2, 2, std::nullopt});
  std::vector<Monomial> want = {{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  REQUIRE(b == want);
}

TEST_CASE("dimension formula", "[polyspace]") {
  CHECK(dimension(SpaceSpec{1, 5, std::nullopt}) == 6);
  CHECK(dimension(SpaceSpec{2, 2, std::nullopt}) == 6);
  // graded: C(4,1) + C(3,1)
  CHECK(dimension(SpaceSpec{1, 3, 1}) == 7);
}

TEST_CASE("basis length equals dimension on the full grid", "[polyspace]") {
  for (int V = 1; V <= 4; ++V)
    for (int N = 0; N <= 8; ++N) {
      SpaceSpec spec{V, N, std::nullopt};
      CHECK(basis(spec).size() == dimension(spec));
    }
  for (int V = 1; V <= 3; ++V)
    for (int N = 0; N <= 6; ++N)
      for (int d = 0; d <= N && d <= 3; ++d) {
        SpaceSpec spec{V, N, d};
        CHECK(basis(spec).size() == dimension(spec));
      }
}

TEST_CASE("basis enumeration is deterministic", "[polyspace]") {
  SpaceSpec spec{3, 4, std::nullopt};
  REQUIRE(basis(spec) == basis(spec));
}

TEST_CASE("membership", "[polyspace]") {
  SpaceSpec spec{2, 2, std::nullopt};
  CHECK(member(Poly::variable(2, 1) * Poly::variable(2, 2), spec));
  Poly cube = Poly::variable(2, 1) * Poly::variable(2, 1) * Poly::variable(2, 1);
  CHECK_FALSE(member(cube, spec));
  CHECK(member(Poly::zero(2), spec));
  CHECK(member(Poly::zero(2), SpaceSpec{2, 0, std::nullopt}));
  CHECK_THROWS_AS(member(Poly::zero(3), spec), std::invalid_argument);
}

TEST_CASE("space spec validation", "[polyspace]") {
  CHECK_THROWS_AS(SpaceSpec({0, 1, std::nullopt}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(SpaceSpec({1, -1, std::nullopt}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(SpaceSpec({1, 2, 3}).validate(), std::invalid_argument);
  CHECK_NOTHROW(SpaceSpec({1, 2, 2}).validate());
}

TEST_CASE("polynomial arithmetic is exact on random inputs", "[polyspace]") {
  std::mt19937 rng(20240811);
  for (int trial = 0; trial < 50; ++trial) {
    int V = 1 + trial % 3;
    Poly p = random_poly(rng, V, 4, 6);
    Poly q = random_poly(rng, V, 4, 6);
    Poly r = random_poly(rng, V, 3, 4);
    CHECK((p + q) - q == p);
    CHECK((p * q) == (q * p));
    CHECK(((p + q) * r) == (p * r + q * r));
    CHECK(p.scaled(make_rational(3, 7)).scaled(make_rational(7, 3)) == p);
  }
}

TEST_CASE("no zero coefficients are stored", "[polyspace]") {
  Poly p(2);
  p.add_term({1, 0}, Rational(2));
  p.add_term({1, 0}, Rational(-2));
  CHECK(p.is_zero());
  CHECK(p.term_count() == 0);
}

TEST_CASE("derivative", "[polyspace]") {
  Poly p = Poly::monomial({2, 1}, Rational(3));  // 3 x1^2 x2
  CHECK(p.derivative(1) == Poly::monomial({1, 1}, Rational(6)));
  CHECK(p.derivative(2) == Poly::monomial({2, 0}, Rational(3)));
}

TEST_CASE("rational helpers", "[polyspace]") {
  CHECK(to_string(make_rational(-10, 4)) == "-5/2");
  CHECK(to_string(rational_from_string("6/3")) == "2");
  CHECK(rational_from_string("-5/2") == make_rational(-5, 2));
  CHECK_THROWS_AS(rational_from_string("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(rational_from_string("abc"), std::invalid_argument);
  CHECK(binomial(6, 2) == 15);
  CHECK(falling_factorial(5, 3) == 60);
}
