#include <doctest.h>

#include "support.hpp"

using namespace testing_support;

TEST_CASE("parse: sum of squares") {
  Polynomial p = P("x^2 + y^2");
  CHECK(p.size() == 2);
  CHECK(p.coefficient(Monomial::variable(0, 2)) == 1);
  CHECK(p.coefficient(Monomial::variable(1, 2)) == 1);
}

TEST_CASE("parse: Broughton polynomial") {
  Polynomial p = P("x + x^2*y");
  Monomial x2y = Monomial::variable(0, 2) * Monomial::variable(1);
  CHECK(p.size() == 2);
  CHECK(p.coefficient(x2y) == 1);
  CHECK(p.coefficient(Monomial::variable(0)) == 1);
}

TEST_CASE("parse: zero terms vanish and constants reduce") {
  Polynomial p = P("0*x + 3/3", {"x"});
  CHECK(p.size() == 1);
  CHECK(p.is_constant());
  CHECK(p.constant_term() == 1);
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(P("x +"), ParseError);
  CHECK_THROWS_AS(P("x + w"), ParseError);
  try {
    P("x ^ y");
    FAIL("no throw");
  } catch (const ParseError& e) {
    CHECK(e.position() > 0);
  }
}

TEST_CASE("arithmetic") {
  CHECK(P("(x+y)*(x-y)") == P("x^2-y^2"));
  CHECK(pow(P("x^3 - 7*y + 2"), 0) == Polynomial::constant(2, Rational(1)));
  CHECK(pow(build_omega(2), 2) == P("1 + x^2 + y^2 + 1/4*x^4 + 1/2*x^2*y^2 + 1/4*y^4"));
  Polynomial p = P("x - 2*y");
  p *= Q(3, 2);
  CHECK(p == P("3/2*x - 3*y"));
}

TEST_CASE("omega squared against dense expansion") {
  // Expand (1 + x^2/2 + y^2/2)^2 as a dense coefficient grid.
  Rational grid[5][5];
  const Rational base[3][3] = {{Q(1), 0, Q(1, 2)}, {0, 0, 0}, {Q(1, 2), 0, 0}};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) grid[a + c][b + d] += base[a][b] * base[c][d];
  Polynomial w2 = pow(build_omega(2), 2);
  for (unsigned i = 0; i < 5; ++i)
    for (unsigned j = 0; j < 5; ++j) {
      Monomial m;
      m.set(0, i);
      m.set(1, j);
      CHECK(w2.coefficient(m) == grid[i][j]);
    }
}

TEST_CASE("derivatives") {
  CHECK(differentiate(P("x^3 - 3*x*y^2"), 0) == P("3*x^2 - 3*y^2"));
  PolyMap g = gradient(build_rho(3));
  CHECK(g[0] == P("2*x", xyz()));
  CHECK(g[1] == P("2*y", xyz()));
  CHECK(g[2] == P("2*z", xyz()));
  PolyMap w = gradient(build_omega(3));
  for (std::size_t i = 0; i < 3; ++i) CHECK(w[i] == Polynomial::variable(3, i));
}

TEST_CASE("evaluation") {
  std::vector<Rational> p12 = {Q(1), Q(2)};
  CHECK(P("x^2+y^2").evaluate(std::span<const Rational>(p12)) == 5);
  std::vector<Rational> origin(4, Q(0));
  CHECK(build_omega(4).evaluate(std::span<const Rational>(origin)) == 1);
  std::vector<Rational> ones = {Q(1), Q(1)};
  CHECK(P("x + x^2*y").evaluate(std::span<const Rational>(ones)) == 2);
}

TEST_CASE("standard builders") {
  CHECK(build_rho(2) == P("x^2+y^2"));
  CHECK(build_omega(1) == P("1 + 1/2*x^2", {"x"}));
  CHECK(build_sum_of_squares(M("x, y-1")) == P("x^2 + y^2 - 2*y + 1"));
}

TEST_CASE("jacobian minors") {
  auto gamma = jacobian_minors(M("x^2-y^2"), PolyMap({build_omega(2)}), 2);
  REQUIRE(gamma.size() == 1);
  CHECK((gamma[0] == P("4*x*y") || gamma[0] == P("-4*x*y")));
  CHECK(jacobian_determinant(gradient(P("x^2+y^2"))) == Polynomial::constant(2, Q(4)));
  auto id = jacobian_minors(M("x, y"), std::nullopt, 2);
  REQUIRE(id.size() == 1);
  CHECK(id[0] == Polynomial::constant(2, Q(1)));
}

TEST_CASE("translation and embedding") {
  std::vector<Rational> s = {Q(2), Q(-1)};
  CHECK(P("x*y").translate(s) == P("(x+2)*(y-1)"));
  std::vector<std::size_t> target = {2, 0};
  CHECK(P("x + y^2").embed(3, target) == P("z + x^2", xyz()));
}

TEST_CASE("property: ring axioms on fuzzed polynomials") {
  std::mt19937 gen(7);
  for (int trial = 0; trial < 200; ++trial) {
    Polynomial a = random_polynomial(gen, 3), b = random_polynomial(gen, 3), c = random_polynomial(gen, 3);
    CHECK((a + b) - b == a);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("property: print then parse is the identity") {
  std::mt19937 gen(11);
  auto vars = xyz();
  for (int trial = 0; trial < 200; ++trial) {
    Polynomial a = random_polynomial(gen, 3, 6);
    CHECK(parse_polynomial(to_string(a, vars), vars) == a);
  }
}

TEST_CASE("property: evaluation is a ring homomorphism") {
  std::mt19937 gen(13);
  for (int trial = 0; trial < 200; ++trial) {
    Polynomial a = random_polynomial(gen, 3), b = random_polynomial(gen, 3);
    auto v = random_point(gen, 3);
    std::span<const Rational> pt(v);
    CHECK((a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt));
    CHECK((a + b).evaluate(pt) == a.evaluate(pt) + b.evaluate(pt));
  }
}

TEST_CASE("property: gradient of omega is the identity") {
  std::mt19937 gen(17);
  for (std::size_t n = 1; n <= 5; ++n) {
    PolyMap g = gradient(build_omega(n));
    for (int trial = 0; trial < 20; ++trial) {
      auto v = random_point(gen, n);
      CHECK(g.evaluate(std::span<const Rational>(v)) == v);
    }
  }
}
