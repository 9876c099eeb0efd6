#include <doctest.h>

#include "milnor/groebner.hpp"
#include "milnor/quotient.hpp"
#include "support.hpp"

using namespace testing_support;

namespace {

GroebnerBasis gb_of(const std::string& gens, const std::vector<std::string>& vars = xy()) {
  return groebner_basis(IdealRecord{M(gens, vars)});
}

std::vector<Monomial> leading_monomials(const GroebnerBasis& gb) {
  std::vector<Monomial> out;
  for (const auto& g : gb.elements()) out.push_back(leading_monomial(g, MonomialOrder::grevlex));
  return out;
}

bool in_leading_ideal(const Monomial& m, const std::vector<Monomial>& gens) {
  for (const auto& g : gens)
    if (g.divides(m)) return true;
  return false;
}

// Textbook Buchberger: every S-polynomial is reduced by plain division, no
// criteria, no interreduction.
std::vector<Polynomial> naive_buchberger(std::vector<Polynomial> G) {
  auto lt = [](const Polynomial& p) { return p.leading_term(); };
  auto reduce = [&](Polynomial p) {
    Polynomial r(p.arity());
    while (!p.is_zero()) {
      bool divided = false;
      for (const auto& g : G) {
        if (lt(g).monomial.divides(lt(p).monomial)) {
          Polynomial q = Polynomial::monomial(p.arity(), lt(p).monomial / lt(g).monomial, lt(p).coeff / lt(g).coeff);
          p -= q * g;
          divided = true;
          break;
        }
      }
      if (!divided) {
        Polynomial head = Polynomial::monomial(p.arity(), lt(p).monomial, lt(p).coeff);
        r += head;
        p -= head;
      }
    }
    return r;
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < G.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < G.size() && !changed; ++j) {
        Monomial l = lcm(lt(G[i]).monomial, lt(G[j]).monomial);
        Polynomial s = Polynomial::monomial(G[i].arity(), l / lt(G[i]).monomial, Rational(1) / lt(G[i]).coeff) * G[i] -
                       Polynomial::monomial(G[j].arity(), l / lt(G[j]).monomial, Rational(1) / lt(G[j]).coeff) * G[j];
        Polynomial r = reduce(s);
        if (!r.is_zero()) {
          G.push_back(r);
          changed = true;
        }
      }
  }
  return G;
}

}  // namespace

TEST_CASE("groebner: principal ideal") {
  GroebnerBasis gb = gb_of("x^2-1", {"x"});
  REQUIRE(gb.size() == 1);
  CHECK(gb.elements()[0] == P("x^2-1", {"x"}));
}

TEST_CASE("groebner: monic reduction") {
  GroebnerBasis gb = gb_of("2*x, -2*y");
  REQUIRE(gb.size() == 2);
  CHECK(normal_form(P("x"), gb).is_zero());
  CHECK(normal_form(P("y"), gb).is_zero());
  for (const auto& g : gb.elements()) CHECK(g.leading_term().coeff == 1);
}

TEST_CASE("groebner: leading ideal matches naive Buchberger") {
  GroebnerBasis gb = gb_of("y - x^2, x*y - 1");
  auto naive = naive_buchberger(M("y - x^2, x*y - 1").components());
  std::vector<Monomial> ours = leading_monomials(gb), theirs;
  for (const auto& g : naive) theirs.push_back(g.leading_term().monomial);
  for (const auto& m : ours) CHECK(in_leading_ideal(m, theirs));
  for (const auto& m : theirs) CHECK(in_leading_ideal(m, ours));
}

TEST_CASE("normal forms") {
  CHECK(normal_form(P("x^2"), gb_of("x, y")).is_zero());
  GroebnerBasis u = gb_of("x^2-1", {"x"});
  CHECK(normal_form(P("x+1", {"x"}), u) == P("x+1", {"x"}));
  CHECK(normal_form(P("x^3", {"x"}), u) == P("x", {"x"}));
}

TEST_CASE("normal form agrees with univariate long division") {
  std::mt19937 gen(3);
  GroebnerBasis u = gb_of("x^3 - 2*x + 5", {"x"});
  for (int trial = 0; trial < 30; ++trial) {
    Polynomial p = random_polynomial(gen, 1, 6);
    // long division by hand: repeatedly cancel the leading term.
    Polynomial r = p;
    const Polynomial d = P("x^3 - 2*x + 5", {"x"});
    while (!r.is_zero() && r.total_degree() >= 3) {
      const Term& t = r.leading_term();
      r -= Polynomial::monomial(1, Monomial::variable(0, t.monomial.degree() - 3), t.coeff) * d;
    }
    CHECK(normal_form(p, u) == r);
  }
}

TEST_CASE("quotient basis") {
  QuotientAlgebra a = quotient_algebra(gb_of("x, y"));
  CHECK(a.dimension() == 1);

  QuotientAlgebra b = quotient_algebra(gb_of("x^2-1", {"x"}));
  REQUIRE(b.dimension() == 2);
  RationalMatrix mx = b.multiplication_matrix(P("x", {"x"}));
  RationalMatrix expected(2, 2);
  expected << Rational(0), Rational(1), Rational(1), Rational(0);
  CHECK(mx == expected);

  CHECK_THROWS_AS(quotient_algebra(gb_of("x*y")), NotZeroDimensionalError);
  CHECK(std::holds_alternative<NotZeroDimensional>(quotient_basis(gb_of("x*y"))));
}

TEST_CASE("multiplication matrices") {
  QuotientAlgebra b = quotient_algebra(gb_of("x^2-1", {"x"}));
  CHECK(b.multiplication_matrix(Polynomial::constant(1, Rational(1))) == RationalMatrix::Identity(2, 2));
  QuotientAlgebra c = quotient_algebra(gb_of("x^2", {"x"}));
  RationalMatrix mx = c.multiplication_matrix(P("x", {"x"}));
  RationalMatrix nil(2, 2);
  nil << Rational(0), Rational(0), Rational(1), Rational(0);
  CHECK(mx == nil);
}

TEST_CASE("origin is the only zero") {
  CHECK(quotient_algebra(gb_of("x, y")).origin_is_only_zero());
  CHECK_FALSE(quotient_algebra(gb_of("x^2-1", {"x"})).origin_is_only_zero());
  QuotientAlgebra a = quotient_algebra(gb_of("x^2, x*y, y^2"));
  CHECK(a.origin_is_only_zero());
  CHECK(a.dimension() == 3);
}

TEST_CASE("property: Buchberger criterion and idempotent normal forms") {
  std::mt19937 gen(29);
  const std::vector<std::string> ideals = {"x^2+y^2-1, x*y-1/2", "x^3-y, y^2-x*y+1", "x^2-2*y, y^3-x",
                                           "3*x^2-3*y^2, -6*x*y", "x^2*y-1, x*y^2-x"};
  for (const auto& text : ideals) {
    GroebnerBasis gb = gb_of(text);
    CHECK(is_groebner_basis(gb));
    for (int trial = 0; trial < 20; ++trial) {
      Polynomial p = random_polynomial(gen, 2, 6);
      Polynomial r = normal_form(p, gb);
      CHECK(normal_form(r, gb) == r);
      CHECK(normal_form(p - r, gb).is_zero());
    }
    for (const auto& g : M(text)) CHECK(normal_form(g, gb).is_zero());
  }
}

TEST_CASE("property: multiplication matrices commute") {
  for (const std::string text : {"x^2+y^2-1, x*y-1/2", "x^3-y, y^2-x*y+1", "x^2-2*y, y^3-x"}) {
    QuotientAlgebra a = quotient_algebra(gb_of(text));
    CHECK(a.matrices_commute());
    RationalMatrix X = a.variable_matrix(0), Y = a.variable_matrix(1);
    CHECK(X * Y == Y * X);
  }
}

TEST_CASE("property: Milnor numbers as quotient dimensions") {
  CHECK(quotient_algebra(gb_of("z^2", {"z"})).dimension() == 2);
  CHECK(quotient_algebra(gb_of("3*z^2-3", {"z"})).dimension() == 2);
  CHECK(quotient_algebra(gb_of("2*z1, 2*z2", {"z1", "z2"})).dimension() == 1);
  // A_k: z^(k+1) has mu = k.
  for (unsigned k = 1; k <= 6; ++k)
    CHECK(quotient_algebra(groebner_basis(IdealRecord{gradient(pow(P("z", {"z"}), k + 1))})).dimension() == k);
  // E_6 = x^3 + y^4: mu = 6.
  CHECK(quotient_algebra(groebner_basis(IdealRecord{gradient(P("x^3 + y^4"))})).dimension() == 6);
}
