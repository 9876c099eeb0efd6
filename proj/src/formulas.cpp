#include "milnor/formulas.hpp"

#include "milnor/degree_oracle.hpp"
#include "milnor/parser.hpp"
#include "milnor/quotient.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

namespace milnor {

std::string to_string(FormulaId id) {
  switch (id) {
    case FormulaId::MILNOR_CHI: return "MILNOR_CHI";
    case FormulaId::KHIMSHIASHVILI: return "KHIMSHIASHVILI";
    case FormulaId::MAP_ISOLATED_CHI: return "MAP_ISOLATED_CHI";
    case FormulaId::SZAFRANIEC_LINK0: return "SZAFRANIEC_LINK0";
    case FormulaId::NONISOLATED_TUBE_CHI: return "NONISOLATED_TUBE_CHI";
    case FormulaId::LINK_INF_LE: return "LINK_INF_LE";
    case FormulaId::LINK_INF_GE: return "LINK_INF_GE";
    case FormulaId::LINK_INF_EQ: return "LINK_INF_EQ";
    case FormulaId::CLOSED_SET_LINK_INF: return "CLOSED_SET_LINK_INF";
    case FormulaId::SEMITAME_LEVELS: return "SEMITAME_LEVELS";
    case FormulaId::GLOBAL_SZA: return "GLOBAL_SZA";
    case FormulaId::GLOBAL_SPHERE_FIBER: return "GLOBAL_SPHERE_FIBER";
    case FormulaId::LINK_INF_COMPONENT_RELATION: return "LINK_INF_COMPONENT_RELATION";
  }
  return "UNKNOWN";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::verified: return "VERIFIED";
    case Verdict::conflict: return "CONFLICT";
    case Verdict::unsupported_symbolic: return "UNSUPPORTED-SYMBOLIC";
    case Verdict::unstable: return "UNSTABLE";
  }
  return "UNSTABLE";
}

void FormulaReport::add_gate(Gate::Kind kind, std::string name, bool passed, std::string detail) {
  gates.push_back({kind, std::move(name), passed, std::move(detail)});
}

bool FormulaReport::gates_passed(Gate::Kind kind) const {
  return std::all_of(gates.begin(), gates.end(), [&](const Gate& g) { return g.kind != kind || g.passed; });
}

void FormulaReport::finalize() {
  if (!gates_passed(Gate::Kind::consistency)) {
    verdict = Verdict::conflict;
  } else if (lhs && rhs) {
    if (*lhs != *rhs)
      verdict = Verdict::conflict;
    else if (!gates_passed(Gate::Kind::stability))
      verdict = Verdict::unstable;
    else
      verdict = symbolic_failed ? Verdict::unsupported_symbolic : Verdict::verified;
  } else {
    verdict = Verdict::unstable;
  }
}

namespace {

using Kind = Gate::Kind;

long minus_one_pow(std::size_t n) { return n % 2 == 0 ? 1 : -1; }

long sphere_chi(std::size_t n) { return n % 2 == 0 ? 0 : 2; }  // chi(S^{n-1})

std::vector<std::string> names_for(const FormulaOptions& o, std::size_t n) {
  if (o.variables.size() == n) return o.variables;
  return default_variable_names(n);
}

std::string show(const Polynomial& p, const FormulaOptions& o) {
  auto names = names_for(o, p.arity());
  return to_string(p, names);
}

std::vector<std::string> show_all(const PolyMap& F, const FormulaOptions& o) {
  std::vector<std::string> out;
  for (const auto& c : F) out.push_back(show(c, o));
  return out;
}

std::string show_vector(const std::vector<Rational>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s + ")";
}

struct DegreeAttempt {
  std::optional<DegreeResult> symbolic, oracle;
  std::string symbolic_error, oracle_error;

  std::optional<long> value() const {
    if (symbolic) return symbolic->degree;
    if (oracle) return oracle->degree;
    return std::nullopt;
  }
};

bool oracle_dimension(std::size_t n) { return n == 2 || n == 3; }

DegreeAttempt local_degree_attempt(const PolyMap& F, const FormulaOptions& o) {
  DegreeAttempt a;
  try {
    a.symbolic = local_degree_elk(F, o.budget);
  } catch (const std::exception& e) {
    a.symbolic_error = e.what();
  }
  if (o.run_oracles && oracle_dimension(F.arity())) {
    try {
      a.oracle = oracle_local_degree(F);
    } catch (const std::exception& e) {
      a.oracle_error = e.what();
    }
  }
  return a;
}

DegreeAttempt infinity_oracle_attempt(const PolyMap& F, const FormulaOptions& o) {
  DegreeAttempt a;
  if (o.run_oracles && oracle_dimension(F.arity())) {
    try {
      a.oracle = oracle_degree_at_infinity(F);
    } catch (const std::exception& e) {
      a.oracle_error = e.what();
    }
  }
  return a;
}

// Records both values and the symbolic/oracle agreement gate.
void record_degree(FormulaReport& r, const std::string& label, const DegreeAttempt& a) {
  if (a.symbolic) {
    r.parameters[label] = std::to_string(a.symbolic->degree);
    r.parameters[label + "_method"] = to_string(a.symbolic->method);
  } else if (!a.symbolic_error.empty()) {
    r.diagnostics.push_back(label + " symbolic: " + a.symbolic_error);
  }
  if (a.oracle) {
    r.parameters[label + "_oracle"] = std::to_string(a.oracle->degree);
    auto it = a.oracle->parameters.find("radius");
    if (it != a.oracle->parameters.end()) r.parameters[label + "_oracle_radius"] = it->second;
  } else if (!a.oracle_error.empty()) {
    r.diagnostics.push_back(label + " oracle: " + a.oracle_error);
  }
  if (a.symbolic && a.oracle)
    r.add_gate(Kind::consistency, label + " symbolic = oracle", a.symbolic->degree == a.oracle->degree,
               std::to_string(a.symbolic->degree) + " vs " + std::to_string(a.oracle->degree));
}

void parity_gate(FormulaReport& r, std::size_t n, const std::string& what, std::optional<long> value) {
  if (n % 2 != 0 || !value) return;
  r.add_gate(Kind::consistency, "parity " + what, *value % 2 == 0, std::to_string(*value));
}

std::vector<SignConstraint> all_equal(const PolyMap& F, const std::vector<Rational>& levels) {
  std::vector<SignConstraint> cs;
  for (std::size_t i = 0; i < F.size(); ++i) cs.push_back({F[i], Relation::eq, levels[i]});
  return cs;
}

void check_vanishes_at_origin(const PolyMap& F) {
  for (const auto& f : F)
    if (!f.constant_term().is_zero()) throw std::invalid_argument("input must vanish at the origin");
}

}  // namespace

// ---- critical loci ---------------------------------------------------------

namespace {

std::vector<std::vector<double>> sample_directions(std::size_t n) {
  std::vector<std::vector<double>> out;
  if (n == 1) return {{1.0}, {-1.0}};
  if (n == 2) {
    for (int i = 0; i < 64; ++i) {
      double t = 2 * 3.14159265358979323846 * (i + 0.5) / 64;
      out.push_back({std::cos(t), std::sin(t)});
    }
    return out;
  }
  std::mt19937 gen(20240607);
  std::normal_distribution<double> normal;
  for (int i = 0; i < 256; ++i) {
    std::vector<double> v(n);
    double norm = 0;
    for (auto& x : v) {
      x = normal(gen);
      norm += x * x;
    }
    for (auto& x : v) x /= std::sqrt(norm);
    out.push_back(v);
  }
  return out;
}

double max_abs(const PolyMap& F, std::span<const double> p) {
  double m = 0;
  for (double v : F.evaluate(p)) m = std::max(m, std::abs(v));
  return m;
}

PolyMap as_map(std::vector<Polynomial> gens, std::size_t n) {
  if (gens.empty()) gens.push_back(Polynomial(n));
  return PolyMap(std::move(gens));
}

}  // namespace

CriticalLociReport critical_loci_ideals(const PolyMap& F) {
  const std::size_t n = F.arity(), p = F.size();
  if (p > n) throw std::invalid_argument("critical loci need at most as many components as variables");
  PolyMap rho({build_rho(n)});
  PolyMap omega({build_omega(n)});
  PolyMap first({F[0]});
  CriticalLociReport out{
      {as_map(jacobian_minors(F, std::nullopt, p), n)},
      {as_map(p + 1 <= n ? jacobian_minors(rho, F, p + 1) : std::vector<Polynomial>{}, n)},
      {as_map(jacobian_minors(first, omega, 2), n)},
      {}};
  if (p + 1 > n) out.sampled_diagnostics.push_back("M(F) is the whole space: no (p+1)-minors exist");
  const auto dirs = sample_directions(n);
  for (double R : {10.0, 100.0, 1000.0}) {
    double min_f = INFINITY, min_m = INFINITY, min_g = INFINITY;
    for (const auto& d : dirs) {
      std::vector<double> x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = R * d[i];
      min_f = std::min(min_f, max_abs(F, x));
      min_m = std::min(min_m, max_abs(out.milnor_set.generators, x));
      min_g = std::min(min_g, max_abs(out.gamma_f_omega.generators, x));
    }
    std::ostringstream s;
    s.precision(3);
    s << "R=" << R << ": over " << dirs.size() << " sample points min max|F| = " << min_f
      << ", min max|M(F) minors| = " << min_m << ", min max|Gamma minors| = " << min_g << " (heuristic only)";
    out.sampled_diagnostics.push_back(s.str());
  }
  return out;
}

// ---- Milnor number ---------------------------------------------------------

MilnorNumber milnor_number_chi(const std::string& text, const std::vector<std::string>& complex_variables,
                               const FormulaOptions& o) {
  const std::size_t m = complex_variables.size();
  const Polynomial f = parse_polynomial(text, complex_variables);
  MilnorNumber out;
  FormulaReport& r = out.report;
  r.formula_id = FormulaId::MILNOR_CHI;
  r.method = "quotient dimension of the gradient ideal";
  r.inputs = {text};
  const std::size_t n = m - 1;
  r.parameters["m"] = std::to_string(m);
  r.parameters["n"] = std::to_string(n);
  const PolyMap grad = gradient(f);
  try {
    QuotientAlgebra a = quotient_algebra(groebner_basis({grad}, o.budget));
    out.mu = static_cast<long>(a.dimension());
    out.chi = 1 + minus_one_pow(n) * out.mu;
    r.lhs = out.chi;
    r.lhs_method = "1 + (-1)^n mu, mu = dim Q[z]/(grad f)";
    r.parameters["mu"] = std::to_string(out.mu);
  } catch (const NotZeroDimensionalError&) {
    throw;
  } catch (const ResourceLimitExceeded& e) {
    r.diagnostics.push_back(e.what());
  }
  try {
    out.local_mu = static_cast<long>(local_algebra(grad, o.budget).dimension());
    r.parameters["mu_local"] = std::to_string(*out.local_mu);
  } catch (const std::exception& e) {
    r.diagnostics.push_back(std::string("local Milnor number: ") + e.what());
  }
  RealifiedPolynomial real = parse_complex_polynomial(text, complex_variables);
  if (m == 1) {
    // The generic fiber of a one-variable polynomial is deg f points.
    try {
      DegreeResult d = oracle_degree_at_infinity(PolyMap({real.real_part, real.imaginary_part}));
      r.rhs = d.degree;
      r.rhs_method = "winding degree at infinity of f";
      r.parameters["oracle_radius"] = d.parameters["radius"];
    } catch (const std::exception& e) {
      r.diagnostics.push_back(std::string("oracle: ") + e.what());
      r.add_gate(Kind::stability, "oracle refinement", false, e.what());
    }
  } else {
    // grad of Re f is the conjugate of the complex gradient: degree (-1)^m mu.
    try {
      DegreeResult d = degree_at_infinity_elk(gradient(real.real_part), o.budget);
      const long mu2 = minus_one_pow(m) * d.degree;
      r.rhs = 1 + minus_one_pow(n) * mu2;
      r.rhs_method = "degree at infinity of the realified gradient";
      r.parameters["realified_gradient_degree"] = std::to_string(d.degree);
    } catch (const std::exception& e) {
      r.diagnostics.push_back(std::string("realified gradient: ") + e.what());
    }
  }
  r.finalize();
  return out;
}

// ---- Szafraniec ------------------------------------------------------------

SzafraniecLift szafraniec_lift(const PolyMap& h, const FormulaOptions& o) {
  check_vanishes_at_origin(h);
  const std::size_t n = h.arity();
  const Polynomial S = build_sum_of_squares(h);
  if (S.is_zero()) throw std::invalid_argument("all components are zero");
  const Polynomial rho = build_rho(n);
  const unsigned k0 = std::max(1u, (S.order() + 1) / 2);
  std::vector<unsigned> ks;
  if (o.k) ks = {*o.k};
  else
    for (unsigned k = k0; k < k0 + 5; ++k) ks.push_back(k);
  std::vector<Rational> cs;
  if (o.c) cs = {*o.c};
  else
    for (long d = 1; d <= 64; d *= 2) cs.push_back(make_rational(1, d));
  SzafraniecLift out;
  // Exact degree, else the oracle when the zero is only isolated over R.
  auto degree_of = [&](const Rational& c, unsigned k, bool& symbolic) {
    const PolyMap grad = gradient(S - c * pow(rho, k));
    try {
      return local_degree_elk(grad, o.budget).degree;
    } catch (const OriginNotIsolated&) {
      if (!o.run_oracles || !oracle_dimension(n)) throw;
    } catch (const ResourceLimitExceeded&) {
      if (!o.run_oracles || !oracle_dimension(n)) throw;
    }
    symbolic = false;
    return oracle_local_degree(grad).degree;
  };
  for (unsigned k : ks) {
    for (const Rational& c : cs) {
      const std::string at = "(c,k)=(" + to_string(c) + "," + std::to_string(k) + ")";
      bool symbolic = true, next_symbolic = true;
      long d, d1;
      try {
        d = degree_of(c, k, symbolic);
      } catch (const std::exception& e) {
        out.diagnostics.push_back(at + ": " + e.what());
        continue;
      }
      try {
        d1 = degree_of(c, k + 1, next_symbolic);
      } catch (const std::exception& e) {
        out.diagnostics.push_back(at + " next k: " + e.what());
        continue;
      }
      if (d != d1) {
        out.diagnostics.push_back(at + ": degree " + std::to_string(d) + " changes to " + std::to_string(d1) +
                                  " at k+1");
        continue;
      }
      out.g = S - c * pow(rho, k);
      out.c = c;
      out.k = k;
      out.degree = d;
      out.next_degree = d1;
      out.symbolic = symbolic;
      if (!next_symbolic) out.diagnostics.push_back(at + ": degree at k+1 taken from the oracle");
      return out;
    }
  }
  std::string msg = "no (c,k) in the schedule gave a stable isolated critical point";
  if (!out.diagnostics.empty()) msg += "; last: " + out.diagnostics.back();
  throw ScheduleExhausted(msg);
}

namespace {

// Fills lhs from the lift and attaches the shared gates.
std::optional<SzafraniecLift> attach_lift(FormulaReport& r, const PolyMap& h, const FormulaOptions& o) {
  try {
    SzafraniecLift lift = szafraniec_lift(h, o);
    r.parameters["c"] = to_string(lift.c);
    r.parameters["k"] = std::to_string(lift.k);
    r.parameters["g"] = show(lift.g, o);
    r.parameters["deg0_grad_g"] = std::to_string(lift.degree);
    r.parameters["deg0_grad_g_next_k"] = std::to_string(lift.next_degree);
    r.add_gate(Kind::stability, "k stabilization", lift.degree == lift.next_degree,
               "k=" + std::to_string(lift.k) + ": " + std::to_string(lift.degree) + ", k+1: " +
                   std::to_string(lift.next_degree));
    for (const auto& d : lift.diagnostics) r.diagnostics.push_back("schedule " + d);
    if (!lift.symbolic) {
      r.symbolic_failed = true;
      r.diagnostics.push_back("origin not isolated over C; degree taken from the oracle");
    }
    if (o.run_oracles && oracle_dimension(h.arity())) {
      DegreeAttempt a;
      a.symbolic = DegreeResult{lift.degree, DegreeMethod::local_signature, {}, {}};
      try {
        a.oracle = oracle_local_degree(gradient(lift.g));
      } catch (const std::exception& e) {
        a.oracle_error = e.what();
      }
      record_degree(r, "deg0_grad_g", a);
    }
    return lift;
  } catch (const ScheduleExhausted& e) {
    r.symbolic_failed = true;
    r.diagnostics.push_back(e.what());
    return std::nullopt;
  }
}

}  // namespace

FormulaReport chi_link_origin(const PolyMap& h, const FormulaOptions& o) {
  const std::size_t n = h.arity();
  FormulaReport r;
  r.formula_id = FormulaId::SZAFRANIEC_LINK0;
  r.method = "local ELK signature of grad g, g = sum h_i^2 - c rho^k";
  r.inputs = show_all(h, o);
  r.parameters["n"] = std::to_string(n);
  if (auto lift = attach_lift(r, h, o)) {
    r.lhs = 1 - lift->degree;
    r.lhs_method = "1 - deg0 grad g";
  }
  if (o.run_oracles && n <= 3) {
    try {
      ChiResult c = chi_link_origin_oracle(all_equal(h, std::vector<Rational>(h.size(), Rational(0))));
      r.rhs = c.chi;
      r.rhs_method = c.method;
      r.parameters["oracle_radius"] = c.parameters["radius"];
      r.parameters["oracle_radius_values"] = c.parameters["radius_values"];
      r.add_gate(Kind::stability, "oracle refinement", true, c.parameters["radius_values"]);
    } catch (const std::exception& e) {
      r.add_gate(Kind::stability, "oracle refinement", false, e.what());
    }
  } else {
    r.diagnostics.push_back("no oracle for n > 3");
  }
  parity_gate(r, n, "of the link (formula)", r.lhs);
  parity_gate(r, n, "of the link (oracle)", r.rhs);
  r.finalize();
  return r;
}

// ---- tube fibers -----------------------------------------------------------

namespace {

std::vector<Rational> unit_direction(std::size_t p) {
  switch (p) {
    case 1: return {Rational(1)};
    case 2: return {make_rational(3, 5), make_rational(4, 5)};
    case 3: return {make_rational(2, 7), make_rational(3, 7), make_rational(6, 7)};
    default: throw std::invalid_argument("tube fiber oracle supports at most 3 components");
  }
}

// chi of {F = delta u} inside the ball of radius eps, for (eps, delta) pairs
// that must agree.
void tube_oracle(FormulaReport& r, const PolyMap& F, const Rational& delta0, const FormulaOptions& o) {
  const std::size_t n = F.arity();
  if (!o.run_oracles) return;
  if (n < 2 || n > 3) {
    r.diagnostics.push_back("no fiber oracle for n = " + std::to_string(n));
    return;
  }
  const auto u = unit_direction(F.size());
  const std::vector<std::pair<Rational, Rational>> pairs = {{make_rational(1, 2), delta0},
                                                            {make_rational(1, 2), delta0 / 2},
                                                            {make_rational(1, 4), delta0 / 4},
                                                            {make_rational(1, 4), delta0 / 8}};
  std::string trail;
  for (std::size_t i = 0; i + 1 < pairs.size(); i += 2) {
    try {
      std::vector<ChiResult> res;
      for (std::size_t j = i; j < i + 2; ++j) {
        std::vector<Rational> levels;
        for (const auto& ui : u) levels.push_back(pairs[j].second * ui);
        RegionShape ball;
        ball.outer = pairs[j].first;
        res.push_back(chi_region_grid(all_equal(F, levels), ball));
      }
      trail += (trail.empty() ? "" : "; ") + std::to_string(res[0].chi) + "," + std::to_string(res[1].chi);
      if (res[0].chi == res[1].chi) {
        r.rhs = res[1].chi;
        r.rhs_method = "grid oracle on the fiber";
        r.parameters["epsilon"] = to_string(pairs[i + 1].first);
        r.parameters["delta"] = to_string(pairs[i].second) + "," + to_string(pairs[i + 1].second);
        r.parameters["grid_resolution"] = res[1].parameters["resolution"];
        r.add_gate(Kind::stability, "delta stabilization", true, trail);
        r.add_gate(Kind::stability, "oracle refinement", true, res[1].parameters["resolution_values"]);
        return;
      }
    } catch (const std::exception& e) {
      trail += (trail.empty() ? "" : "; ") + std::string("error: ") + e.what();
    }
  }
  r.add_gate(Kind::stability, "delta stabilization", false, trail);
}

}  // namespace

FormulaReport chi_tube_fiber(const PolyMap& F, TubeMode mode, const FormulaOptions& o) {
  check_vanishes_at_origin(F);
  const std::size_t n = F.arity(), p = F.size();
  const Rational delta0 = o.delta.value_or(make_rational(1, 64));
  if (delta0.is_zero()) throw std::invalid_argument("delta must be non-zero");
  FormulaReport r;
  r.inputs = show_all(F, o);
  r.parameters["n"] = std::to_string(n);
  r.parameters["p"] = std::to_string(p);
  switch (mode) {
    case TubeMode::khimshiashvili: {
      if (p != 1) throw std::invalid_argument("the Khimshiashvili branch needs a single function");
      r.formula_id = FormulaId::KHIMSHIASHVILI;
      r.method = "local ELK signature of grad f";
      DegreeAttempt a = local_degree_attempt(gradient(F[0]), o);
      record_degree(r, "deg0_grad_f", a);
      if (auto d = a.value()) {
        const long s = n % 2 == 0 ? 1 : -delta0.sign();  // sign(-delta)^n
        r.lhs = 1 - s * *d;
        r.lhs_method = "1 - sign(-delta)^n deg0 grad f";
        r.symbolic_failed = !a.symbolic;
      }
      break;
    }
    case TubeMode::isolated_map: {
      if (p >= n) throw std::invalid_argument("need fewer components than variables");
      r.formula_id = FormulaId::MAP_ISOLATED_CHI;
      r.method = "local ELK signatures of grad f_i";
      try {
        std::vector<Polynomial> gens = F.components();
        for (auto& m : jacobian_minors(F, std::nullopt, p)) gens.push_back(m);
        auto a = local_algebra(PolyMap(std::move(gens)), o.budget);
        r.diagnostics.push_back("isolated critical point certified (local dimension " +
                                std::to_string(a.dimension()) + ")");
      } catch (const std::exception& e) {
        if (o.assume_milnor_ab) r.assumptions.push_back("isolated critical point asserted by --assume-milnor-ab");
        else r.diagnostics.push_back(std::string("isolated critical point not certified: ") + e.what());
      }
      std::vector<std::optional<long>> degs;
      bool symbolic = true;
      for (std::size_t i = 0; i < p; ++i) {
        DegreeAttempt a = local_degree_attempt(gradient(F[i]), o);
        record_degree(r, "deg0_grad_f" + std::to_string(i + 1), a);
        degs.push_back(a.value());
        symbolic = symbolic && a.symbolic.has_value();
      }
      const bool all_known = std::all_of(degs.begin(), degs.end(), [](auto& d) { return d.has_value(); });
      if (all_known) {
        if (n % 2 == 0) {
          bool equal = std::all_of(degs.begin(), degs.end(), [&](auto& d) { return *d == *degs[0]; });
          r.add_gate(Kind::consistency, "component degrees agree", equal);
          r.lhs = 1 - *degs[0];
          r.lhs_method = "1 - deg0 grad f_1";
        } else {
          bool zero = std::all_of(degs.begin(), degs.end(), [](auto& d) { return *d == 0; });
          r.add_gate(Kind::consistency, "component degrees vanish", zero);
          r.lhs = 1;
          r.lhs_method = "1 (n odd)";
        }
        r.symbolic_failed = !symbolic;
      }
      break;
    }
    case TubeMode::nonisolated: {
      r.formula_id = FormulaId::NONISOLATED_TUBE_CHI;
      r.method = "local ELK signature of grad g, g = f_1^2 - c rho^k";
      if (o.assume_milnor_ab) r.assumptions.push_back("Milnor conditions (a),(b) asserted by --assume-milnor-ab");
      else r.diagnostics.push_back("Milnor conditions (a),(b) not asserted");
      if (auto lift = attach_lift(r, PolyMap({F[0]}), o)) {
        const long twice = n % 2 == 0 ? 1 - lift->degree : 1 + lift->degree;
        r.add_gate(Kind::consistency, "integrality", twice % 2 == 0, std::to_string(twice) + "/2");
        r.lhs = twice / 2;
        r.lhs_method = n % 2 == 0 ? "(1 - deg0 grad g)/2" : "(1 + deg0 grad g)/2";
      }
      break;
    }
  }
  tube_oracle(r, F, delta0, o);
  r.finalize();
  return r;
}

// ---- infinity --------------------------------------------------------------

std::vector<std::vector<Rational>> origin_candidates(const Polynomial& f, std::size_t limit) {
  const std::size_t n = f.arity();
  const long L = static_cast<long>(limit);
  std::vector<std::vector<long>> pts;
  std::vector<long> cur(n, -L);
  for (;;) {
    pts.push_back(cur);
    std::size_t i = 0;
    while (i < n && cur[i] == L) cur[i++] = -L;
    if (i == n) break;
    ++cur[i];
  }
  auto norm = [](const std::vector<long>& v) {
    long s = 0;
    for (long x : v) s += x * x;
    return s;
  };
  std::stable_sort(pts.begin(), pts.end(), [&](const auto& a, const auto& b) {
    long na = norm(a), nb = norm(b);
    return na != nb ? na < nb : a < b;
  });
  std::vector<std::vector<Rational>> out;
  for (const auto& p : pts) {
    std::vector<Rational> q;
    for (long x : p) q.push_back(Rational(x));
    if (f.evaluate(std::span<const Rational>(q)) > 1) out.push_back(std::move(q));
  }
  return out;
}

InfinityMaps build_infinity_maps(const Polynomial& f, unsigned k, std::optional<unsigned> K, std::size_t shift_index) {
  if (f.is_constant()) throw std::invalid_argument("f must be non-constant");
  if (k == 0) throw std::invalid_argument("k must be positive");
  const std::size_t n = f.arity();
  auto cands = origin_candidates(f);
  if (shift_index >= cands.size()) throw ScheduleExhausted("translation search exhausted");
  InfinityMaps m;
  m.k = k;
  m.K = K;
  m.shift = cands[shift_index];
  m.shifted = std::any_of(m.shift.begin(), m.shift.end(), [](const Rational& a) { return !a.is_zero(); });
  m.f = m.shifted ? f.translate(m.shift) : f;
  const Polynomial omega = build_omega(n);
  Polynomial base = m.f;
  if (K) {
    m.Phi = pow(omega, *K) * m.f;
    base = *m.Phi;
  }
  const Polynomial wk = pow(omega, k);
  const Polynomial one = Polynomial::constant(n, Rational(1));
  m.G_minus = wk * base - one;
  m.G_plus = wk * base + one;
  m.g_minus = {m.G_minus, k};
  m.g_plus = {m.G_plus, k};

  std::vector<std::size_t> target;
  for (std::size_t i = 0; i < n; ++i) target.push_back(i + 1);
  const Polynomial lambda = Polynomial::variable(n + 1, 0);
  const Polynomial omega_up = omega.embed(n + 1, target);
  auto augmented = [&](const Polynomial& G, const OmegaFraction& g, PolyMap& L, AugmentedRationalMap& H) {
    const Polynomial Ge = G.embed(n + 1, target);
    std::vector<Polynomial> lc, hc;
    const RationalFunctionMap grad = g.gradient();
    const Polynomial denom = pow(omega_up, k + 1);
    for (std::size_t i = 0; i < n; ++i) {
      const Polynomial xi = Polynomial::variable(n + 1, i + 1);
      lc.push_back(lambda * xi + Ge.derivative(i + 1));
      hc.push_back(lambda * xi * denom + grad.numerators[i].embed(n + 1, target));
    }
    lc.push_back(Ge);
    hc.push_back(Ge * omega_up);
    L = PolyMap(std::move(lc));
    H = {PolyMap(std::move(hc)), denom};
  };
  augmented(m.G_minus, m.g_minus, m.L_minus, m.H_minus);
  augmented(m.G_plus, m.g_plus, m.L_plus, m.H_plus);
  return m;
}

namespace {

struct Selection {
  InfinityMaps maps;
  std::vector<long> values, next_values;
  std::string next_label;
};

// Walks origin shifts, then the k (or K) schedule, until the degrees returned
// by eval are available and agree with the successor parameter.
std::optional<Selection> select_parameters(const Polynomial& f, bool K_schedule, const FormulaOptions& o,
                                           const std::function<std::vector<long>(const InfinityMaps&)>& eval,
                                           std::vector<std::string>& diagnostics) {
  constexpr std::size_t kShifts = 4;
  const unsigned k_fixed = o.k.value_or(1);
  std::vector<unsigned> schedule;
  const auto fixed = K_schedule ? o.K : o.k;
  if (fixed) schedule = {*fixed};
  else
    for (unsigned v = 1; v <= (K_schedule ? 4u : 5u); ++v) schedule.push_back(v);
  for (std::size_t s = 0; s < kShifts; ++s) {
    for (unsigned v : schedule) {
      const unsigned k = K_schedule ? k_fixed : v;
      const std::optional<unsigned> K = K_schedule ? std::optional<unsigned>(v) : o.K;
      const std::string at = std::string("shift #") + std::to_string(s) + (K_schedule ? ", K=" : ", k=") +
                             std::to_string(v);
      try {
        InfinityMaps maps = build_infinity_maps(f, k, K, s);
        std::vector<long> now = eval(maps);
        InfinityMaps next = K_schedule ? build_infinity_maps(f, k, v + 1, s) : build_infinity_maps(f, k + 1, K, s);
        std::vector<long> after = eval(next);
        if (now == after) return Selection{std::move(maps), now, after, K_schedule ? "K+1" : "k+1"};
        diagnostics.push_back(at + ": value changes at the successor parameter");
      } catch (const ScheduleExhausted& e) {
        diagnostics.push_back(at + ": " + e.what());
        return std::nullopt;
      } catch (const NotZeroDimensionalError& e) {
        diagnostics.push_back(at + ": " + e.what() + "; trying another origin");
        break;
      } catch (const ResourceLimitExceeded& e) {
        diagnostics.push_back(at + ": " + e.what() + "; trying another origin");
        break;
      } catch (const std::exception& e) {
        diagnostics.push_back(at + ": " + e.what());
      }
    }
  }
  return std::nullopt;
}

std::string join(const std::vector<long>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

void record_selection(FormulaReport& r, const Selection& sel, const FormulaOptions& o, const std::string& what) {
  r.parameters["k"] = std::to_string(sel.maps.k);
  if (sel.maps.K) r.parameters["K"] = std::to_string(*sel.maps.K);
  r.parameters["origin_shift"] = show_vector(sel.maps.shift);
  r.parameters["shifted"] = sel.maps.shifted ? "true" : "false";
  r.parameters["f_shifted"] = show(sel.maps.f, o);
  r.add_gate(Kind::stability, std::string(sel.maps.K && o.K == std::nullopt && what == "K" ? "K" : what) +
                                  " stabilization",
             sel.values == sel.next_values, join(sel.values) + " then " + join(sel.next_values) + " at " +
                                                sel.next_label);
}

ChiResult link_oracle(const Polynomial& f, Relation rel, const Rational& level = Rational(0)) {
  return chi_link_infinity_oracle({SignConstraint{f, rel, level}});
}

void mayer_vietoris_gate(FormulaReport& r, const Polynomial& f, const Rational& level, const std::string& label) {
  try {
    long le = link_oracle(f, Relation::le, level).chi;
    long ge = link_oracle(f, Relation::ge, level).chi;
    long eq = link_oracle(f, Relation::eq, level).chi;
    const long want = sphere_chi(f.arity());
    r.add_gate(Kind::consistency, "Mayer-Vietoris " + label, ge + le - eq == want,
               std::to_string(ge) + " + " + std::to_string(le) + " - " + std::to_string(eq) + " vs " +
                   std::to_string(want));
  } catch (const std::exception& e) {
    r.add_gate(Kind::stability, "Mayer-Vietoris " + label, false, e.what());
  }
}

FormulaId link_id(LinkMode mode) {
  switch (mode) {
    case LinkMode::le: return FormulaId::LINK_INF_LE;
    case LinkMode::ge: return FormulaId::LINK_INF_GE;
    case LinkMode::eq: return FormulaId::LINK_INF_EQ;
    case LinkMode::closed_set: return FormulaId::CLOSED_SET_LINK_INF;
  }
  return FormulaId::LINK_INF_LE;
}

long link_formula(LinkMode mode, std::size_t n, long dm, long dp) {
  const bool even = n % 2 == 0;
  switch (mode) {
    case LinkMode::le:
    case LinkMode::closed_set: return dm;
    case LinkMode::ge: return even ? dp : 2 - dp;
    case LinkMode::eq: return even ? dm + dp : dm - dp;
  }
  return 0;
}

}  // namespace

FormulaReport chi_link_infinity(const Polynomial& f, LinkMode mode, const FormulaOptions& o) {
  const std::size_t n = f.arity();
  FormulaReport r;
  r.formula_id = link_id(mode);
  r.method = "ELK degree at infinity of L_- and L_+";
  r.inputs = {show(f, o)};
  r.parameters["n"] = std::to_string(n);
  if (mode == LinkMode::closed_set) r.assumptions.push_back("f >= 0 with X = {f = 0} (closed-set mode)");

  auto eval = [&](const InfinityMaps& m) {
    return std::vector<long>{degree_at_infinity_elk(m.L_minus, o.budget).degree,
                             degree_at_infinity_elk(m.L_plus, o.budget).degree};
  };
  std::optional<Selection> sel = select_parameters(f, false, o, eval, r.diagnostics);
  std::optional<long> dm, dp;
  std::optional<InfinityMaps> maps;
  if (sel) {
    record_selection(r, *sel, o, "k");
    dm = sel->values[0];
    dp = sel->values[1];
    maps = sel->maps;
    r.parameters["deg_inf_L_minus"] = std::to_string(*dm);
    r.parameters["deg_inf_L_plus"] = std::to_string(*dp);
  } else {
    r.symbolic_failed = true;
    try {
      maps = build_infinity_maps(f, o.k.value_or(1), o.K, 0);
    } catch (const std::exception& e) {
      r.diagnostics.push_back(e.what());
    }
  }
  if (maps && o.run_oracles && oracle_dimension(n + 1)) {
    DegreeAttempt am = infinity_oracle_attempt(maps->L_minus, o);
    DegreeAttempt ap = infinity_oracle_attempt(maps->L_plus, o);
    if (dm) am.symbolic = DegreeResult{*dm, DegreeMethod::infinity_signature, {}, {}};
    if (dp) ap.symbolic = DegreeResult{*dp, DegreeMethod::infinity_signature, {}, {}};
    record_degree(r, "deg_inf_L_minus", am);
    record_degree(r, "deg_inf_L_plus", ap);
    if (!sel && am.oracle && ap.oracle) {
      dm = am.oracle->degree;
      dp = ap.oracle->degree;
    }
  }
  if (dm && dp) {
    r.lhs = link_formula(mode, n, *dm, *dp);
    r.lhs_method = mode == LinkMode::ge ? (n % 2 == 0 ? "deg L_+" : "2 - deg L_+")
                   : mode == LinkMode::eq ? (n % 2 == 0 ? "deg L_- + deg L_+" : "deg L_- - deg L_+")
                                          : "deg L_-";
    if (mode == LinkMode::closed_set)
      r.add_gate(Kind::consistency, "deg L_+ = 0 for f >= 0", *dp == 0, std::to_string(*dp));
  }
  if (o.run_oracles && n <= 3) {
    const Relation rel = mode == LinkMode::le   ? Relation::le
                         : mode == LinkMode::ge ? Relation::ge
                                                : Relation::eq;
    try {
      ChiResult c = link_oracle(f, rel);
      r.rhs = c.chi;
      r.rhs_method = c.method;
      r.parameters["oracle_radius"] = c.parameters["radius"];
      r.add_gate(Kind::stability, "oracle refinement", true, c.parameters["radius_values"]);
    } catch (const std::exception& e) {
      r.add_gate(Kind::stability, "oracle refinement", false, e.what());
    }
    mayer_vietoris_gate(r, f, Rational(0), "at level 0");
  } else if (n > 3) {
    r.diagnostics.push_back("no oracle for n > 3");
  }
  if (mode == LinkMode::eq || mode == LinkMode::closed_set) {
    parity_gate(r, n, "of the link (formula)", r.lhs);
    parity_gate(r, n, "of the link (oracle)", r.rhs);
  }
  r.finalize();
  return r;
}

namespace {

PolyMap rescaled_gradient(const OmegaFraction& g) { return positive_rescale_reduction(g.gradient()); }

}  // namespace

std::vector<FormulaReport> semitame_identities(const Polynomial& f, const Rational& alpha_minus,
                                               const Rational& alpha_plus, const FormulaOptions& o) {
  if (!(alpha_minus < 0 && alpha_plus > 0)) throw std::invalid_argument("need alpha_- < 0 < alpha_+");
  const std::size_t n = f.arity();
  std::vector<std::string> diagnostics;
  auto eval = [&](const InfinityMaps& m) {
    return std::vector<long>{degree_at_infinity_elk(rescaled_gradient(m.g_minus), o.budget).degree,
                             degree_at_infinity_elk(rescaled_gradient(m.g_plus), o.budget).degree};
  };
  std::optional<Selection> sel = select_parameters(f, false, o, eval, diagnostics);
  std::optional<long> dm, dp;
  DegreeAttempt am, ap;
  std::optional<InfinityMaps> maps;
  if (sel) {
    dm = sel->values[0];
    dp = sel->values[1];
    maps = sel->maps;
    am.symbolic = DegreeResult{*dm, DegreeMethod::infinity_signature, {}, {}};
    ap.symbolic = DegreeResult{*dp, DegreeMethod::infinity_signature, {}, {}};
  } else {
    try {
      maps = build_infinity_maps(f, o.k.value_or(1), o.K, 0);
    } catch (const std::exception& e) {
      diagnostics.push_back(e.what());
    }
  }
  if (maps && o.run_oracles && oracle_dimension(n)) {
    am.oracle = infinity_oracle_attempt(rescaled_gradient(maps->g_minus), o).oracle;
    ap.oracle = infinity_oracle_attempt(rescaled_gradient(maps->g_plus), o).oracle;
    if (!sel && am.oracle && ap.oracle) {
      dm = am.oracle->degree;
      dp = ap.oracle->degree;
    }
  }
  // Oracle chi values per relation and level.
  std::map<std::pair<int, int>, std::optional<long>> chi;
  std::vector<std::string> oracle_errors;
  const std::vector<Rational> levels = {alpha_minus, Rational(0), alpha_plus};
  const std::vector<Relation> relations = {Relation::le, Relation::ge, Relation::eq};
  if (o.run_oracles && n <= 3) {
    for (int ri = 0; ri < 3; ++ri)
      for (int li = 0; li < 3; ++li) {
        try {
          chi[{ri, li}] = link_oracle(f, relations[ri], levels[li]).chi;
        } catch (const std::exception& e) {
          chi[{ri, li}] = std::nullopt;
          oracle_errors.push_back(e.what());
        }
      }
  }
  std::vector<FormulaReport> out;
  for (int ri = 0; ri < 3; ++ri) {
    FormulaReport r;
    r.formula_id = FormulaId::SEMITAME_LEVELS;
    r.method = "ELK degree at infinity of the rescaled gradients of g_-, g_+";
    r.inputs = {show(f, o)};
    r.parameters["n"] = std::to_string(n);
    r.parameters["relation"] = to_string(relations[ri]);
    r.parameters["alpha_minus"] = to_string(alpha_minus);
    r.parameters["alpha_plus"] = to_string(alpha_plus);
    r.diagnostics = diagnostics;
    r.diagnostics.push_back("semi-tameness of f is assumed, not certified");
    if (sel) record_selection(r, *sel, o, "k");
    else r.symbolic_failed = true;
    record_degree(r, "deg_inf_grad_g_minus", am);
    record_degree(r, "deg_inf_grad_g_plus", ap);
    if (dm && dp) {
      const long s = minus_one_pow(n);
      switch (relations[ri]) {
        case Relation::le:
          r.lhs = 1 - *dm;
          r.lhs_method = "1 - deg grad g_-";
          break;
        case Relation::ge:
          r.lhs = 1 - s * *dp;
          r.lhs_method = "1 - (-1)^n deg grad g_+";
          break;
        case Relation::eq:
          r.lhs = 2 - sphere_chi(n) - (*dm + s * *dp);
          r.lhs_method = "2 - chi(S^{n-1}) - (deg grad g_- + (-1)^n deg grad g_+)";
          break;
      }
    }
    if (o.run_oracles && n <= 3) {
      auto a = chi[{ri, 0}], z = chi[{ri, 1}], b = chi[{ri, 2}];
      if (a && z && b) {
        r.rhs = *a + *b - *z;
        r.rhs_method = "oracle chi(Lk(alpha_-)) + chi(Lk(alpha_+)) - chi(Lk(0))";
        r.parameters["oracle_terms"] = std::to_string(*a) + "," + std::to_string(*b) + "," + std::to_string(*z);
        r.add_gate(Kind::stability, "oracle refinement", true);
      } else {
        r.add_gate(Kind::stability, "oracle refinement", false,
                   oracle_errors.empty() ? std::string() : oracle_errors.front());
      }
      for (int li = 0; li < 3; ++li) {
        auto le = chi[{0, li}], ge = chi[{1, li}], eq = chi[{2, li}];
        if (le && ge && eq)
          r.add_gate(Kind::consistency, "Mayer-Vietoris at level " + to_string(levels[li]),
                     *ge + *le - *eq == sphere_chi(n));
      }
      if (relations[ri] == Relation::eq)
        for (int li = 0; li < 3; ++li) parity_gate(r, n, "of the level link " + to_string(levels[li]), chi[{2, li}]);
    }
    r.finalize();
    out.push_back(std::move(r));
  }
  return out;
}

FormulaReport global_sza(const Polynomial& f, const FormulaOptions& o) {
  const std::size_t n = f.arity();
  FormulaReport r;
  r.formula_id = FormulaId::GLOBAL_SZA;
  r.method = "ELK degree at infinity of the rescaled gradients of Phi -+ omega^-k, Phi = omega^K f";
  r.inputs = {show(f, o)};
  r.parameters["n"] = std::to_string(n);
  r.assumptions.push_back("f >= 0 with X = {f = 0} (closed-set mode)");
  auto eval = [&](const InfinityMaps& m) {
    return std::vector<long>{degree_at_infinity_elk(rescaled_gradient(m.g_minus), o.budget).degree,
                             degree_at_infinity_elk(rescaled_gradient(m.g_plus), o.budget).degree};
  };
  std::optional<Selection> sel = select_parameters(f, true, o, eval, r.diagnostics);
  std::optional<long> dm, dp;
  DegreeAttempt am, ap;
  std::optional<InfinityMaps> maps;
  if (sel) {
    record_selection(r, *sel, o, "K");
    dm = sel->values[0];
    dp = sel->values[1];
    maps = sel->maps;
    am.symbolic = DegreeResult{*dm, DegreeMethod::infinity_signature, {}, {}};
    ap.symbolic = DegreeResult{*dp, DegreeMethod::infinity_signature, {}, {}};
  } else {
    r.symbolic_failed = true;
    try {
      maps = build_infinity_maps(f, o.k.value_or(1), o.K.value_or(1), 0);
    } catch (const std::exception& e) {
      r.diagnostics.push_back(e.what());
    }
  }
  if (maps && o.run_oracles && oracle_dimension(n)) {
    am.oracle = infinity_oracle_attempt(rescaled_gradient(maps->g_minus), o).oracle;
    ap.oracle = infinity_oracle_attempt(rescaled_gradient(maps->g_plus), o).oracle;
    if (!sel && am.oracle && ap.oracle) {
      dm = am.oracle->degree;
      dp = ap.oracle->degree;
    }
  }
  record_degree(r, "deg_inf_grad_g_minus", am);
  record_degree(r, "deg_inf_grad_g_plus", ap);
  if (dm && dp) {
    r.lhs = 1 - *dp;
    r.lhs_method = "1 - deg grad g_+";
    r.add_gate(Kind::consistency, "deg grad g_- = 1", *dm == 1, std::to_string(*dm));
  }
  if (o.run_oracles && n <= 3) {
    try {
      ChiResult c = link_oracle(f, Relation::eq);
      r.rhs = c.chi;
      r.rhs_method = c.method;
      r.parameters["oracle_radius"] = c.parameters["radius"];
      r.add_gate(Kind::stability, "oracle refinement", true, c.parameters["radius_values"]);
    } catch (const std::exception& e) {
      r.add_gate(Kind::stability, "oracle refinement", false, e.what());
    }
  }
  r.finalize();
  return r;
}

std::vector<FormulaReport> chi_sphere_fiber_global(const PolyMap& F, const FormulaOptions& o) {
  const std::size_t n = F.arity(), p = F.size();
  if (p < 1 || p > n) throw std::invalid_argument("need 1 <= p <= n components");
  FormulaReport r;
  r.formula_id = FormulaId::GLOBAL_SPHERE_FIBER;
  r.method = "ELK degree at infinity of the rescaled gradient of omega^K f_1^2 + omega^-k";
  r.inputs = show_all(F, o);
  r.parameters["n"] = std::to_string(n);
  r.parameters["p"] = std::to_string(p);
  if (o.assume_cond_ab) r.assumptions.push_back("Conditions (A),(B) asserted by --assume-cond-ab");
  else r.diagnostics.push_back("Conditions (A),(B) not asserted");
  for (const auto& d : critical_loci_ideals(F).sampled_diagnostics) r.diagnostics.push_back(d);

  // Origin with f_1 > 1; g_+ = (omega^(K+k) f_1^2 + 1) / omega^k.
  const unsigned k = o.k.value_or(1);
  const Polynomial omega = build_omega(n);
  auto cands = origin_candidates(F[0]);
  auto g_plus = [&](std::size_t s, unsigned K) {
    const Polynomial f1 = F[0].translate(cands[s]);
    return OmegaFraction{pow(omega, K + k) * f1 * f1 + Polynomial::constant(n, Rational(1)), k};
  };
  std::vector<unsigned> Ks;
  if (o.K) Ks = {*o.K};
  else Ks = {1, 2, 3, 4};
  std::optional<long> deg;
  std::optional<OmegaFraction> chosen;
  for (std::size_t s = 0; s < std::min<std::size_t>(cands.size(), 4) && !deg; ++s) {
    for (unsigned K : Ks) {
      const std::string at = "shift #" + std::to_string(s) + ", K=" + std::to_string(K);
      try {
        long d = degree_at_infinity_elk(rescaled_gradient(g_plus(s, K)), o.budget).degree;
        long d1 = degree_at_infinity_elk(rescaled_gradient(g_plus(s, K + 1)), o.budget).degree;
        if (d != d1) {
          r.diagnostics.push_back(at + ": value changes at K+1");
          continue;
        }
        deg = d;
        chosen = g_plus(s, K);
        r.parameters["K"] = std::to_string(K);
        r.parameters["k"] = std::to_string(k);
        r.parameters["origin_shift"] = show_vector(cands[s]);
        r.parameters["deg_inf_grad_g_plus"] = std::to_string(d);
        r.add_gate(Kind::stability, "K stabilization", true,
                   std::to_string(d) + " then " + std::to_string(d1) + " at K+1");
        break;
      } catch (const NotZeroDimensionalError& e) {
        r.diagnostics.push_back(at + ": " + e.what() + "; trying another origin");
        break;
      } catch (const std::exception& e) {
        r.diagnostics.push_back(at + ": " + e.what());
        if (dynamic_cast<const ResourceLimitExceeded*>(&e)) break;
      }
    }
  }
  if (cands.empty()) r.diagnostics.push_back("translation search exhausted: no origin with f_1 > 1");
  if (!deg) {
    r.symbolic_failed = true;
    if (!cands.empty() && o.run_oracles && oracle_dimension(n)) {
      DegreeAttempt a = infinity_oracle_attempt(rescaled_gradient(g_plus(0, o.K.value_or(1))), o);
      if (a.oracle) deg = a.oracle->degree;
      record_degree(r, "deg_inf_grad_g_plus", a);
    }
  } else if (o.run_oracles && oracle_dimension(n)) {
    DegreeAttempt a = infinity_oracle_attempt(rescaled_gradient(*chosen), o);
    a.symbolic = DegreeResult{*deg, DegreeMethod::infinity_signature, {}, {}};
    record_degree(r, "deg_inf_grad_g_plus", a);
  }
  if (deg) {
    const long twice = n % 2 == 0 ? 1 - *deg : 1 + *deg;
    r.add_gate(Kind::consistency, "integrality", twice % 2 == 0, std::to_string(twice) + "/2");
    r.lhs = twice / 2;
    r.lhs_method = n % 2 == 0 ? "(1 - deg grad g_+)/2" : "(1 + deg grad g_+)/2";
  }

  FormulaReport rel;
  rel.formula_id = FormulaId::LINK_INF_COMPONENT_RELATION;
  rel.method = "component link relation";
  rel.inputs = r.inputs;
  rel.parameters["n"] = r.parameters["n"];
  rel.parameters["p"] = r.parameters["p"];
  rel.assumptions = r.assumptions;
  rel.symbolic_failed = r.symbolic_failed;
  if (r.lhs) {
    rel.lhs = n % 2 == 0 ? 2 * *r.lhs : 2 - 2 * *r.lhs;
    rel.lhs_method = n % 2 == 0 ? "2 chi(M^S)" : "2 - 2 chi(M^S)";
  }
  if (o.run_oracles && n <= 3) {
    std::vector<long> fiber_chi;
    for (std::size_t j = 0; j < p; ++j) {
      try {
        ChiResult c = link_oracle(F[j], Relation::eq);
        const std::string label = "chi_link_inf_f" + std::to_string(j + 1);
        rel.parameters[label] = std::to_string(c.chi);
        r.parameters[label] = std::to_string(c.chi);
        parity_gate(rel, n, "of Lk(f_" + std::to_string(j + 1) + " = 0)", c.chi);
        parity_gate(r, n, "of Lk(f_" + std::to_string(j + 1) + " = 0)", c.chi);
        if (j == 0) {
          rel.rhs = c.chi;
          rel.rhs_method = c.method;
        }
        const long twice = n % 2 == 0 ? c.chi : 2 - c.chi;
        fiber_chi.push_back(twice / 2);
      } catch (const std::exception& e) {
        rel.add_gate(Kind::stability, "oracle refinement", false, e.what());
        r.add_gate(Kind::stability, "oracle refinement", false, e.what());
      }
    }
    if (fiber_chi.size() == p) {
      r.rhs = fiber_chi[0];
      r.rhs_method = "component link relation with oracle chi(Lk(f_1 = 0))";
      bool same = std::all_of(fiber_chi.begin(), fiber_chi.end(), [&](long v) { return v == fiber_chi[0]; });
      r.add_gate(Kind::consistency, "components agree", same);
      rel.add_gate(Kind::consistency, "components agree", same);
      r.add_gate(Kind::stability, "oracle refinement", true);
      rel.add_gate(Kind::stability, "oracle refinement", true);
    }
  } else {
    r.diagnostics.push_back("no oracle for n > 3");
    rel.diagnostics.push_back("no oracle for n > 3");
  }
  r.finalize();
  rel.finalize();
  return {r, rel};
}

// ---- suites ----------------------------------------------------------------

std::vector<std::string> builtin_corpus_names() { return {"local-basics", "infinity-basics"}; }

std::vector<CorpusEntry> builtin_corpus(const std::string& name) {
  if (name == "local-basics") {
    return {
        {"kh-saddle", "chi-fiber-tube", "x,y", "x^2-y^2", {{"mode", "khimshiashvili"}}, 2},
        {"kh-saddle-neg", "chi-fiber-tube", "x,y", "x^2-y^2", {{"mode", "khimshiashvili"}, {"delta", "-1/64"}}, 2},
        {"kh-min", "chi-fiber-tube", "x,y", "x^2+y^2", {{"mode", "khimshiashvili"}}, 0},
        {"kh-min-neg", "chi-fiber-tube", "x,y", "x^2+y^2", {{"mode", "khimshiashvili"}, {"delta", "-1/64"}}, 0},
        {"map-plane-pair", "chi-fiber-tube", "x,y,z", "x,y", {{"mode", "isolated"}}, 1},
        {"link0-line", "chi-link0", "x,y", "x", {}, 2},
        {"link0-point", "chi-link0", "x,y", "x,y", {}, 0},
        {"link0-plane", "chi-link0", "x,y,z", "x", {}, 0},
        {"link0-cross", "chi-link0", "x,y", "x*y", {}, 4},
        {"milnor-double-point", "milnor-number", "z", "z^2", {}, 2},
        {"milnor-cubic", "milnor-number", "z", "z^3-3*z", {}, 3},
        {"milnor-node", "milnor-number", "z1,z2", "z1^2+z2^2", {}, 0},
    };
  }
  if (name == "infinity-basics") {
    return {
        {"inf-halfplane", "chi-link-inf", "x,y", "x", {{"relation", "le"}}, 1},
        {"inf-line", "chi-link-inf", "x,y", "x", {{"relation", "eq"}}, 2},
        {"inf-circle-eq", "chi-link-inf", "x,y", "x^2+y^2-1", {{"relation", "eq"}}, 0},
        {"inf-circle-le", "chi-link-inf", "x,y", "x^2+y^2-1", {{"relation", "le"}}, 0},
        {"inf-circle-ge", "chi-link-inf", "x,y", "x^2+y^2-1", {{"relation", "ge"}}, 0},
        {"inf-compact", "chi-link-inf", "x,y", "(x^2+y^2-4)^2", {{"relation", "closed"}}, 0},
        {"semitame-line", "semitame", "x,y", "x", {{"alpha-", "-1"}, {"alpha+", "1"}}, 1},
        {"global-sza-compact", "global-sza", "x,y", "(x^2+y^2-4)^2", {}, 0},
        {"sphere-fiber-plane", "chi-global-fiber", "x,y", "x,y", {}, 1},
        {"sphere-fiber-line", "chi-global-fiber", "x,y", "x", {}, 1},
    };
  }
  throw std::invalid_argument("unknown suite '" + name + "'");
}

namespace {

FormulaId id_for_command(const CorpusEntry& e) {
  if (e.command == "chi-link0") return FormulaId::SZAFRANIEC_LINK0;
  if (e.command == "milnor-number") return FormulaId::MILNOR_CHI;
  if (e.command == "semitame") return FormulaId::SEMITAME_LEVELS;
  if (e.command == "global-sza") return FormulaId::GLOBAL_SZA;
  if (e.command == "chi-global-fiber") return FormulaId::GLOBAL_SPHERE_FIBER;
  if (e.command == "chi-fiber-tube") {
    auto it = e.options.find("mode");
    std::string mode = it == e.options.end() ? "khimshiashvili" : it->second;
    return mode == "isolated" ? FormulaId::MAP_ISOLATED_CHI
           : mode == "nonisolated" ? FormulaId::NONISOLATED_TUBE_CHI
                                   : FormulaId::KHIMSHIASHVILI;
  }
  if (e.command == "chi-link-inf") {
    auto it = e.options.find("relation");
    std::string rel = it == e.options.end() ? "le" : it->second;
    return rel == "closed" ? FormulaId::CLOSED_SET_LINK_INF
           : rel == "eq"   ? FormulaId::LINK_INF_EQ
           : rel == "ge"   ? FormulaId::LINK_INF_GE
                           : FormulaId::LINK_INF_LE;
  }
  throw std::invalid_argument("unknown corpus command '" + e.command + "'");
}

std::string option_or(const CorpusEntry& e, const std::string& key, const std::string& fallback) {
  auto it = e.options.find(key);
  return it == e.options.end() ? fallback : it->second;
}

}  // namespace

LinkMode parse_link_mode(const std::string& text);

std::vector<FormulaReport> run_corpus_entry(const CorpusEntry& e, const FormulaOptions& base) {
  FormulaOptions o = base;
  const auto vars = parse_variable_list(e.vars);
  o.variables = vars;
  if (auto it = e.options.find("delta"); it != e.options.end()) o.delta = parse_rational(it->second);
  std::vector<FormulaReport> out;
  if (e.command == "chi-link0") {
    out.push_back(chi_link_origin(parse_map(e.input, vars), o));
  } else if (e.command == "chi-fiber-tube") {
    const std::string mode = option_or(e, "mode", "khimshiashvili");
    TubeMode m = mode == "isolated"      ? TubeMode::isolated_map
                 : mode == "nonisolated" ? TubeMode::nonisolated
                 : mode == "khimshiashvili"
                     ? TubeMode::khimshiashvili
                     : throw std::invalid_argument("unknown tube mode '" + mode + "'");
    out.push_back(chi_tube_fiber(parse_map(e.input, vars), m, o));
  } else if (e.command == "chi-link-inf") {
    out.push_back(chi_link_infinity(parse_polynomial(e.input, vars), parse_link_mode(option_or(e, "relation", "le")), o));
  } else if (e.command == "semitame") {
    out = semitame_identities(parse_polynomial(e.input, vars), parse_rational(option_or(e, "alpha-", "-1")),
                              parse_rational(option_or(e, "alpha+", "1")), o);
  } else if (e.command == "global-sza") {
    out.push_back(global_sza(parse_polynomial(e.input, vars), o));
  } else if (e.command == "chi-global-fiber") {
    out = chi_sphere_fiber_global(parse_map(e.input, vars), o);
  } else if (e.command == "milnor-number") {
    out.push_back(milnor_number_chi(e.input, vars, o).report);
  } else {
    throw std::invalid_argument("unknown corpus command '" + e.command + "'");
  }
  return out;
}

LinkMode parse_link_mode(const std::string& text) {
  if (text == "closed" || text == "closed-set") return LinkMode::closed_set;
  switch (parse_relation(text)) {
    case Relation::le: return LinkMode::le;
    case Relation::ge: return LinkMode::ge;
    case Relation::eq: return LinkMode::eq;
  }
  return LinkMode::le;
}

std::vector<FormulaReport> verify_formula_suite(const std::vector<CorpusEntry>& corpus, const FormulaOptions& o) {
  std::vector<FormulaReport> out;
  for (const auto& e : corpus) {
    std::vector<FormulaReport> reports;
    try {
      reports = run_corpus_entry(e, o);
    } catch (const std::exception& ex) {
      FormulaReport r;
      try {
        r.formula_id = id_for_command(e);
      } catch (const std::exception&) {
      }
      r.inputs = {e.input};
      r.diagnostics.push_back(std::string("failed: ") + ex.what());
      r.verdict = Verdict::unstable;
      reports.push_back(std::move(r));
    }
    for (auto& r : reports) {
      r.parameters["entry"] = e.name;
      if (e.expected && &r == &reports.front()) {
        r.parameters["expected"] = std::to_string(*e.expected);
        const bool ok = r.lhs && *r.lhs == *e.expected;
        r.add_gate(Kind::consistency, "expected value", ok,
                   "expected " + std::to_string(*e.expected) + ", got " + (r.lhs ? std::to_string(*r.lhs) : "none"));
        if (!ok) r.verdict = Verdict::conflict;
      }
      out.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace milnor
