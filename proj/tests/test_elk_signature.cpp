#include <doctest.h>

#include "milnor/degree_oracle.hpp"
#include "milnor/elk.hpp"
#include "milnor/formulas.hpp"
#include "support.hpp"

using namespace testing_support;

namespace {

RationalMatrix diag(std::initializer_list<long> d) {
  RationalMatrix m = RationalMatrix::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (long v : d) {
    m(i, i) = Rational(v);
    ++i;
  }
  return m;
}

SignatureTriple sig(const RationalMatrix& m) { return signature_of_form(BilinearFormRecord{{}, m, "test"}); }

const std::vector<std::string> kLocalCorpus = {"2*x, 2*y", "2*x, -2*y", "3*x^2-3*y^2, -6*x*y", "x^2-y^2, 2*x*y",
                                               "x^3, y", "x^2+y^3, x*y"};

}  // namespace

TEST_CASE("signatures") {
  SignatureTriple a = sig(diag({1, 1, 1}));
  CHECK((a.positive == 3 && a.negative == 0 && a.zero == 0));
  SignatureTriple b = sig(diag({1, -1, 0}));
  CHECK((b.positive == 1 && b.negative == 1 && b.zero == 1));
  RationalMatrix h(2, 2);
  h << Rational(0), Rational(1), Rational(1), Rational(0);
  SignatureTriple c = sig(h);
  CHECK((c.positive == 1 && c.negative == 1 && c.zero == 0));
}

TEST_CASE("signature: congruence invariance") {
  std::mt19937 gen(5);
  std::uniform_int_distribution<int> num(-5, 5);
  for (int trial = 0; trial < 20; ++trial) {
    RationalMatrix d = diag({3, -1, 0, 2});
    RationalMatrix p(4, 4);
    for (Eigen::Index i = 0; i < 4; ++i)
      for (Eigen::Index j = 0; j < 4; ++j) p(i, j) = Rational(num(gen)) + (i == j ? Rational(11) : Rational(0));
    SignatureTriple s = sig(p.transpose() * d * p);
    CHECK((s.positive == 2 && s.negative == 1 && s.zero == 1));
  }
}

TEST_CASE("local degrees") {
  CHECK(local_degree_elk(gradient(P("x^2+y^2"))).degree == 1);
  CHECK(local_degree_elk(gradient(P("x^2-y^2"))).degree == -1);
  CHECK(local_degree_elk(gradient(P("x^3-3*x*y^2"))).degree == -2);
}

TEST_CASE("local degree: not isolated") {
  CHECK_THROWS_AS(local_degree_elk(gradient(P("x^2"))), OriginNotIsolated);
}

TEST_CASE("degrees at infinity") {
  CHECK(degree_at_infinity_elk(M("x, y")).degree == 1);
  CHECK(degree_at_infinity_elk(M("x^2, y")).degree == 0);
  CHECK(degree_at_infinity_elk(M("x^2-y^2, 2*x*y")).degree == 2);
  CHECK(degree_at_infinity_elk(M("x^2 + y^2 - 1, x - y")).degree == 0);
}

TEST_CASE("positive rescaling") {
  // grad g_- for f = x, k = 1 rescales to (omega^2 + x, y), whatever the origin shift.
  InfinityMaps m = build_infinity_maps(P("x"), 1, std::nullopt, 0);
  PolyMap r = positive_rescale_reduction(m.g_minus.gradient());
  const Polynomial w = build_omega(2);
  CHECK(r == PolyMap({w * w + P("x"), P("y")}));
  PolyMap id = M("x^3, y - x");
  CHECK(positive_rescale_reduction(RationalFunctionMap{id, 0}) == id);
  // grad(1/omega) = -x / omega^2.
  OmegaFraction inv{Polynomial::constant(2, Q(1)), 1};
  CHECK(positive_rescale_reduction(inv.gradient()) == M("-x, -y"));
  CHECK(degree_at_infinity_elk(M("-x, -y")).degree == 1);
  CHECK(degree_at_infinity_elk(M("-x, -y, -z", xyz())).degree == -1);
}

TEST_CASE("property: functional independence") {
  for (const auto& text : kLocalCorpus) {
    PolyMap F = M(text);
    auto sigs = random_functional_signatures(F, 5, 101);
    const long deg = local_degree_elk(F).degree;
    for (long s : sigs) CHECK(s == deg);
  }
}

TEST_CASE("property: symbolic and oracle degrees agree") {
  for (const auto& text : kLocalCorpus) {
    PolyMap F = M(text);
    CHECK(local_degree_elk(F).degree == oracle_local_degree(F).degree);
  }
  for (const std::string text : {"x, y", "x^2, y", "x^2-y^2, 2*x*y", "x^3 - 3*x*y^2 + y, 3*x^2*y - y^3 - x"}) {
    PolyMap F = M(text);
    CHECK(degree_at_infinity_elk(F).degree == oracle_degree_at_infinity(F).degree);
  }
  PolyMap G = M("x, y^3 - y, z^2 - 1/4 + x", xyz());
  CHECK(degree_at_infinity_elk(G).degree == oracle_degree_at_infinity(G).degree);
}

TEST_CASE("property: multiplicativity on block maps") {
  // (F(x,y), G(z)) with F and G in separate variables.
  const std::vector<std::pair<std::string, long>> planar = {
      {"2*x, 2*y", 1}, {"2*x, -2*y", -1}, {"3*x^2-3*y^2, -6*x*y", -2}, {"x^2-y^2, 2*x*y", 2}};
  const std::vector<std::pair<std::string, long>> line = {{"z", 1}, {"-z", -1}, {"z^3", 1}, {"z^2", 0}};
  for (const auto& [F, dF] : planar)
    for (const auto& [G, dG] : line) {
      PolyMap H = M(F + ", " + G, xyz());
      CHECK(local_degree_elk(H).degree == dF * dG);
    }
}

TEST_CASE("property: rescale invariance against the oracle") {
  for (unsigned k = 1; k <= 2; ++k) {
    InfinityMaps m = build_infinity_maps(P("x"), k, std::nullopt, 0);
    for (const auto* g : {&m.g_minus, &m.g_plus}) {
      PolyMap r = positive_rescale_reduction(g->gradient());
      CHECK(degree_at_infinity_elk(r).degree == oracle_degree_at_infinity(r).degree);
    }
  }
}
