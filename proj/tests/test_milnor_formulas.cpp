#include <doctest.h>

#include "milnor/formulas.hpp"
#include "milnor/groebner.hpp"
#include "support.hpp"

using namespace testing_support;

namespace {

FormulaOptions named(const std::vector<std::string>& vars) {
  FormulaOptions o;
  o.variables = vars;
  return o;
}

bool gate_passed(const FormulaReport& r, const std::string& prefix) {
  for (const auto& g : r.gates)
    if (g.name.rfind(prefix, 0) == 0) return g.passed;
  return false;
}

bool has_gate(const FormulaReport& r, const std::string& prefix) {
  for (const auto& g : r.gates)
    if (g.name.rfind(prefix, 0) == 0) return true;
  return false;
}

}  // namespace

TEST_CASE("verdicts") {
  FormulaReport r;
  r.lhs = 2;
  r.rhs = 2;
  r.finalize();
  CHECK(r.verdict == Verdict::verified);
  r.add_gate(Gate::Kind::stability, "s", false);
  r.finalize();
  CHECK(r.verdict == Verdict::unstable);
  r.rhs = 3;
  r.finalize();
  CHECK(r.verdict == Verdict::conflict);
  FormulaReport s;
  s.lhs = 1;
  s.rhs = 1;
  s.symbolic_failed = true;
  s.finalize();
  CHECK(s.verdict == Verdict::unsupported_symbolic);
  s.add_gate(Gate::Kind::consistency, "c", false);
  s.finalize();
  CHECK(s.verdict == Verdict::conflict);
  FormulaReport t;
  t.lhs = 1;
  t.finalize();
  CHECK(t.verdict == Verdict::unstable);
  CHECK(to_string(Verdict::unsupported_symbolic) == "UNSUPPORTED-SYMBOLIC");
}

TEST_CASE("critical loci") {
  CriticalLociReport a = critical_loci_ideals(M("x^2+y^2"));
  CHECK(a.sigma_F.generators == M("2*x, 2*y"));
  CriticalLociReport b = critical_loci_ideals(M("x"));
  REQUIRE(b.gamma_f_omega.generators.size() == 1);
  CHECK(b.gamma_f_omega.generators[0] == P("y"));
  CriticalLociReport c = critical_loci_ideals(M("x, y"));
  REQUIRE(c.sigma_F.generators.size() == 1);
  CHECK(c.sigma_F.generators[0] == Polynomial::constant(2, Q(1)));
  CHECK(c.sampled_diagnostics.size() >= 3);
}

TEST_CASE("property: Milnor set ideal inside the critical ideal") {
  // Each (p+1)-minor of [grad rho; grad F] expands along the rho row into
  // p-minors of grad F, so M(F) generators lie in the ideal of Sigma_F.
  const std::vector<std::pair<std::string, std::vector<std::string>>> cases = {
      {"x^2-y^2", xy()},        {"x^3-3*x*y^2", xy()}, {"x*y*z", xyz()},
      {"x^2+y^2-z^2, z", xyz()}, {"x^2*y, y+z^3", xyz()}};
  for (const auto& [text, vars] : cases) {
    CriticalLociReport r = critical_loci_ideals(M(text, vars));
    GroebnerBasis gb = groebner_basis(r.sigma_F);
    for (const auto& m : r.milnor_set.generators) CHECK(normal_form(m, gb).is_zero());
  }
}

TEST_CASE("Milnor numbers") {
  MilnorNumber a = milnor_number_chi("z^2", {"z"});
  CHECK(a.mu == 1);
  CHECK(a.chi == 2);
  MilnorNumber b = milnor_number_chi("z^3-3*z", {"z"});
  CHECK(b.mu == 2);
  CHECK(b.chi == 3);
  MilnorNumber c = milnor_number_chi("z1^2+z2^2", {"z1", "z2"});
  CHECK(c.mu == 1);
  CHECK(c.chi == 0);
  CHECK(c.report.verdict == Verdict::verified);
  CHECK_THROWS_AS(milnor_number_chi("z1^2", {"z1", "z2"}), NotZeroDimensionalError);
}

TEST_CASE("Szafraniec lift schedule") {
  SzafraniecLift a = szafraniec_lift(M("x"));
  CHECK(a.c == Q(1, 2));
  CHECK(a.k == 1);
  CHECK(a.g == P("1/2*x^2 - 1/2*y^2"));
  CHECK(a.degree == -1);
  SzafraniecLift b = szafraniec_lift(M("x, y"));
  CHECK(b.degree == 1);
  SzafraniecLift c = szafraniec_lift(M("x*y"));
  CHECK(c.k >= 2);
  CHECK(c.degree == c.next_degree);
  FormulaOptions fixed;
  fixed.c = Q(1);
  fixed.k = 1;
  CHECK_THROWS_AS(szafraniec_lift(M("x"), fixed), ScheduleExhausted);
  CHECK_THROWS_AS(szafraniec_lift(M("x+1")), std::invalid_argument);
}

TEST_CASE("links at the origin") {
  FormulaReport a = chi_link_origin(M("x"), named(xy()));
  CHECK(a.lhs == 2);
  CHECK(a.rhs == 2);
  CHECK(a.verdict == Verdict::verified);
  FormulaReport b = chi_link_origin(M("x, y"));
  CHECK(b.lhs == 0);
  CHECK(b.verdict == Verdict::verified);
  FormulaReport c = chi_link_origin(M("x", xyz()));
  CHECK(c.lhs == 0);
  CHECK(c.rhs == 0);
  CHECK(c.parameters.at("deg0_grad_g") == "1");
}

TEST_CASE("tube fibers") {
  FormulaReport a = chi_tube_fiber(M("x^2+y^2"), TubeMode::khimshiashvili);
  CHECK(a.lhs == 0);
  CHECK(a.rhs == 0);
  FormulaReport b = chi_tube_fiber(M("x^2-y^2"), TubeMode::khimshiashvili);
  CHECK(b.lhs == 2);
  CHECK(b.rhs == 2);
  FormulaReport c = chi_tube_fiber(M("x, y", xyz()), TubeMode::isolated_map);
  CHECK(c.lhs == 1);
  CHECK(c.rhs == 1);
  CHECK(c.verdict == Verdict::verified);
  FormulaOptions o;
  o.assume_milnor_ab = true;
  FormulaReport d = chi_tube_fiber(M("x*y"), TubeMode::nonisolated, o);
  CHECK(d.formula_id == FormulaId::NONISOLATED_TUBE_CHI);
  CHECK(d.assumptions.size() == 1);
  CHECK(d.lhs == d.rhs);
  // 3 variables, odd n: x^2 + y^2 - z^2 has a two-sheeted fiber on one side.
  FormulaReport e = chi_tube_fiber(M("x^2+y^2-z^2", xyz()), TubeMode::khimshiashvili);
  CHECK(e.lhs == e.rhs);
  FormulaOptions neg;
  neg.delta = Q(-1, 64);
  FormulaReport f = chi_tube_fiber(M("x^2+y^2-z^2", xyz()), TubeMode::khimshiashvili, neg);
  CHECK(f.lhs == f.rhs);
  CHECK(e.lhs != f.lhs);
}

TEST_CASE("origin candidates") {
  auto a = origin_candidates(P("x"));
  REQUIRE(!a.empty());
  CHECK(a[0] == std::vector<Rational>{Q(2), Q(0)});
  auto b = origin_candidates(P("(x^2+y^2-4)^2"));
  CHECK(b[0] == std::vector<Rational>{Q(0), Q(0)});
  CHECK(origin_candidates(P("-x^2-y^2")).empty());
}

TEST_CASE("infinity maps") {
  InfinityMaps m = build_infinity_maps(P("x"), 1);
  CHECK(m.shifted);
  const Polynomial w = build_omega(2);
  const Polynomial f = P("x+2");
  CHECK(m.f == f);
  CHECK(m.G_minus == w * f - Polynomial::constant(2, Q(1)));
  REQUIRE(m.L_minus.size() == 3);
  CHECK(m.L_minus.arity() == 3);
  // (lambda x + dG/dx, lambda y + dG/dy, G) in variables (lambda, x, y)
  const auto lxy = std::vector<std::string>{"l", "x", "y"};
  const Polynomial G = parse_polynomial("(1 + 1/2*x^2 + 1/2*y^2)*(x+2) - 1", lxy);
  CHECK(m.L_minus[0] == parse_polynomial("l*x", lxy) + G.derivative(1));
  CHECK(m.L_minus[1] == parse_polynomial("l*y", lxy) + G.derivative(2));
  CHECK(m.L_minus[2] == G);

  InfinityMaps c = build_infinity_maps(P("(x^2+y^2-4)^2"), 1, 1);
  CHECK_FALSE(c.shifted);
  REQUIRE(c.Phi);
  CHECK(*c.Phi == w * P("(x^2+y^2-4)^2"));
  CHECK(c.G_plus == w * *c.Phi + Polynomial::constant(2, Q(1)));
}

TEST_CASE("links at infinity") {
  FormulaReport a = chi_link_infinity(P("x"), LinkMode::le);
  CHECK(a.lhs == 1);
  CHECK(a.rhs == 1);
  CHECK(a.verdict == Verdict::verified);
  CHECK(gate_passed(a, "Mayer-Vietoris"));
  FormulaReport b = chi_link_infinity(P("x"), LinkMode::eq);
  CHECK(b.lhs == 2);
  CHECK(gate_passed(b, "parity"));
  for (auto mode : {LinkMode::le, LinkMode::ge, LinkMode::eq}) {
    FormulaReport c = chi_link_infinity(P("x^2+y^2-1"), mode);
    CHECK(c.lhs == 0);
    CHECK(c.rhs == 0);
  }
  FormulaReport d = chi_link_infinity(P("(x^2+y^2-4)^2"), LinkMode::closed_set);
  CHECK(d.lhs == 0);
  CHECK(d.parameters.at("deg_inf_L_plus") == "0");
  CHECK(d.verdict == Verdict::verified);
}

TEST_CASE("semitame and closed-set identities") {
  auto rs = semitame_identities(P("x"), Q(-1), Q(1));
  REQUIRE(rs.size() == 3);
  for (const auto& r : rs) {
    CHECK(r.verdict == Verdict::verified);
    CHECK(r.parameters.at("deg_inf_grad_g_minus") == "0");
  }
  CHECK_THROWS_AS(semitame_identities(P("x"), Q(1), Q(2)), std::invalid_argument);
  FormulaReport g = global_sza(P("(x^2+y^2-4)^2"));
  CHECK(g.lhs == 0);
  CHECK(g.parameters.at("deg_inf_grad_g_minus") == "1");
  CHECK(g.parameters.at("deg_inf_grad_g_plus") == "1");
  CHECK(g.verdict == Verdict::verified);
}

TEST_CASE("global sphere fiber") {
  auto rs = chi_sphere_fiber_global(M("x, y"));
  REQUIRE(rs.size() == 2);
  CHECK(rs[0].lhs == 1);
  CHECK(rs[0].parameters.at("deg_inf_grad_g_plus") == "-1");
  CHECK(rs[1].lhs == 2);
  CHECK(rs[1].rhs == 2);
  auto line = chi_sphere_fiber_global(M("x"));
  CHECK(line[0].lhs == 1);
  CHECK(line[0].rhs == 1);
}

TEST_CASE("suites") {
  CHECK(verify_formula_suite({}).empty());
  CorpusEntry wrong{"wrong", "chi-link0", "x,y", "x", {}, 3};
  auto rs = verify_formula_suite({wrong});
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].verdict == Verdict::conflict);
  CorpusEntry bad{"bad", "nonsense", "x,y", "x", {}, std::nullopt};
  auto bs = verify_formula_suite({bad});
  REQUIRE(bs.size() == 1);
  CHECK(bs[0].verdict == Verdict::unstable);
  CHECK_THROWS(builtin_corpus("nope"));
}

TEST_CASE("property: gates on every local report") {
  for (const auto& e : builtin_corpus("local-basics")) {
    for (const auto& r : run_corpus_entry(e)) {
      for (const auto& g : r.gates) CHECK_MESSAGE(g.passed, e.name << ": " << g.name);
      if (r.formula_id == FormulaId::SZAFRANIEC_LINK0) {
        CHECK(has_gate(r, "k stabilization"));
        CHECK(r.parameters.at("deg0_grad_g") == r.parameters.at("deg0_grad_g_next_k"));
        if (r.parameters.at("n") == "2") CHECK(gate_passed(r, "parity"));
      }
    }
  }
}
