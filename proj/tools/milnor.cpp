#include "milnor/chi_oracle.hpp"
#include "milnor/degree_oracle.hpp"
#include "milnor/elk.hpp"
#include "milnor/formulas.hpp"
#include "milnor/parser.hpp"
#include "milnor/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace milnor;

namespace {

struct Args {
  std::string vars, map, poly, zeros, input;
  std::string relation = "le", mode = "khimshiashvili", level = "0", at = "origin";
  std::string radius, delta, c, alpha_minus = "-1", alpha_plus = "1";
  std::optional<unsigned> k, K;
  bool assume_milnor_ab = false, assume_cond_ab = false, complex = false, strict = false, deterministic = false;
  std::string format = "text";
  std::size_t budget = 20000;
  std::string suite, corpus;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Input {
  std::vector<std::string> vars;
  std::vector<std::string> lines;
};

// "vars: x,y" header, then one polynomial per line; '#' starts a comment.
Input read_input_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open input file '" + path + "'");
  Input out;
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    line = line.substr(b, line.find_last_not_of(" \t\r") - b + 1);
    if (!header) {
      if (line.rfind("vars:", 0) != 0) throw UsageError(path + ": first line must be 'vars: <list>'");
      out.vars = parse_variable_list(line.substr(5));
      header = true;
      continue;
    }
    out.lines.push_back(line);
  }
  if (!header) throw UsageError(path + ": missing 'vars:' header");
  return out;
}

struct Parsed {
  std::vector<std::string> vars;
  std::string text;  // components joined by commas
  PolyMap map{std::vector<Polynomial>{Polynomial()}};
};

// Inline expression (--map/--poly/--zeros) or --input file; --complex
// splits every component into real and imaginary parts.
Parsed parse_input(const Args& a, const std::string& inline_text, const char* flag) {
  Parsed p;
  if (!a.input.empty()) {
    Input in = read_input_file(a.input);
    if (in.lines.empty()) throw UsageError(a.input + ": no polynomial lines");
    p.vars = in.vars;
    for (std::size_t i = 0; i < in.lines.size(); ++i) p.text += (i ? "," : "") + in.lines[i];
  } else {
    if (inline_text.empty()) throw UsageError(std::string("missing ") + flag + " or --input");
    if (a.vars.empty()) throw UsageError("missing --vars");
    p.vars = parse_variable_list(a.vars);
    p.text = inline_text;
  }
  if (a.complex) {
    std::vector<Polynomial> parts;
    std::vector<std::string> real_vars;
    std::string rest = p.text;
    std::size_t depth = 0, start = 0;
    std::vector<std::string> comps;
    for (std::size_t i = 0; i <= rest.size(); ++i) {
      if (i == rest.size() || (rest[i] == ',' && depth == 0)) {
        comps.push_back(rest.substr(start, i - start));
        start = i + 1;
      } else if (rest[i] == '(') {
        ++depth;
      } else if (rest[i] == ')' && depth > 0) {
        --depth;
      }
    }
    for (const auto& comp : comps) {
      RealifiedPolynomial r = parse_complex_polynomial(comp, p.vars);
      real_vars = r.real_variables;
      parts.push_back(r.real_part);
      parts.push_back(r.imaginary_part);
    }
    p.vars = real_vars;
    p.map = PolyMap(std::move(parts));
    return p;
  }
  p.map = parse_map(p.text, p.vars);
  return p;
}

Rational rational_flag(const std::string& text, const char* flag) {
  try {
    return parse_rational(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string(flag) + ": " + e.what());
  }
}

FormulaOptions formula_options(const Args& a, const std::vector<std::string>& vars) {
  FormulaOptions o;
  o.budget.max_terms = a.budget;
  o.k = a.k;
  o.K = a.K;
  if (!a.c.empty()) o.c = rational_flag(a.c, "--c");
  if (!a.delta.empty()) o.delta = rational_flag(a.delta, "--delta");
  o.assume_milnor_ab = a.assume_milnor_ab;
  o.assume_cond_ab = a.assume_cond_ab;
  o.variables = vars;
  return o;
}

std::vector<std::string> show_map(const PolyMap& F, const std::vector<std::string>& vars) {
  std::vector<std::string> out;
  for (const auto& f : F) out.push_back(to_string(f, vars));
  return out;
}

Polynomial single(const Parsed& p) {
  if (p.map.size() != 1) throw UsageError("expected a single polynomial");
  return p.map[0];
}

std::vector<CorpusEntry> read_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open corpus file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw UsageError(path + ": " + e.what());
  }
  std::vector<CorpusEntry> out;
  for (const auto& e : j) {
    CorpusEntry c;
    c.name = e.value("name", "");
    c.command = e.at("command").get<std::string>();
    c.vars = e.at("vars").get<std::string>();
    c.input = e.at("input").get<std::string>();
    if (e.contains("options"))
      for (const auto& [k, v] : e["options"].items()) c.options[k] = v.is_string() ? v.get<std::string>() : v.dump();
    if (e.contains("expected") && !e["expected"].is_null()) c.expected = e["expected"].get<long>();
    out.push_back(std::move(c));
  }
  return out;
}

// Both degree paths; returns true when they disagree.
bool run_degree_pair(ReportEnvelope& env, const Parsed& p, bool at_infinity, const Args& a) {
  GroebnerBudget budget;
  budget.max_terms = a.budget;
  const auto inputs = show_map(p.map, p.vars);
  std::optional<long> symbolic, oracle;
  try {
    DegreeResult d = at_infinity ? degree_at_infinity_elk(p.map, budget) : local_degree_elk(p.map, budget);
    symbolic = d.degree;
    env.degrees.push_back({at_infinity ? "deg_inf (ELK)" : "deg_0 (ELK)", inputs, d});
  } catch (const std::exception& e) {
    std::cerr << "symbolic: " << e.what() << "\n";
  }
  const std::size_t n = p.map.arity();
  if ((n == 2 || n == 3) && p.map.size() == n) {
    try {
      DegreeResult d = at_infinity ? oracle_degree_at_infinity(p.map) : oracle_local_degree(p.map);
      oracle = d.degree;
      env.degrees.push_back({at_infinity ? "deg_inf (oracle)" : "deg_0 (oracle)", inputs, d});
    } catch (const std::exception& e) {
      std::cerr << "oracle: " << e.what() << "\n";
    }
  }
  return symbolic && oracle && *symbolic != *oracle;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Euler characteristics of Milnor fibers and links via exact degree computations"};
  app.require_subcommand(1);
  Args a;

  auto common = [&](CLI::App* s) {
    s->add_option("--vars", a.vars, "Comma-separated variable names");
    s->add_option("--input", a.input, "File: 'vars: x,y' header, then one polynomial per line");
    s->add_option("--k", a.k, "Fix k instead of searching");
    s->add_option("--K", a.K, "Fix K instead of searching");
    s->add_option("--c", a.c, "Fix c instead of searching");
    s->add_option("--delta", a.delta, "Fiber level (default 1/64)");
    s->add_flag("--assume-milnor-ab", a.assume_milnor_ab, "Assert Milnor conditions (a),(b)");
    s->add_flag("--assume-cond-ab", a.assume_cond_ab, "Assert Conditions (A),(B)");
    s->add_flag("--complex", a.complex, "Inputs are complex polynomials; use real and imaginary parts");
    s->add_option("--format", a.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    s->add_flag("--strict", a.strict, "Exit 3 on UNSUPPORTED-SYMBOLIC or UNSTABLE");
    s->add_flag("--deterministic", a.deterministic, "Leave out the wall time");
    s->add_option("--budget", a.budget, "Term budget for Groebner runs")->check(CLI::PositiveNumber);
  };

  auto* local_degree = app.add_subcommand("local-degree", "deg_0 of a square map at the origin");
  auto* infinity_degree = app.add_subcommand("infinity-degree", "deg_inf of a square map");
  auto* link0 = app.add_subcommand("chi-link0", "chi of the link at the origin of {h = 0}");
  auto* tube = app.add_subcommand("chi-fiber-tube", "chi of the tube Milnor fiber");
  auto* link_inf = app.add_subcommand("chi-link-inf", "chi of links at infinity of {f rel 0}");
  auto* global_fiber = app.add_subcommand("chi-global-fiber", "chi of the sphere Milnor fiber at infinity");
  auto* semitame = app.add_subcommand("semitame", "semitame level identities");
  auto* sza = app.add_subcommand("global-sza", "closed-set formula with Phi = omega^K f");
  auto* milnor_number = app.add_subcommand("milnor-number", "total Milnor number of a complex polynomial");
  auto* oracle = app.add_subcommand("oracle", "independent numerical oracles");
  oracle->require_subcommand(1);
  auto* oracle_degree_cmd = oracle->add_subcommand("degree", "mapping degree on a circle or 2-sphere");
  auto* oracle_chi_cmd = oracle->add_subcommand("chi", "chi of a sign set on a circle or 2-sphere");
  auto* verify = app.add_subcommand("verify", "run a formula corpus");

  for (auto* s : {local_degree, infinity_degree, link0, tube, link_inf, global_fiber, semitame, sza, milnor_number,
                  oracle_degree_cmd, oracle_chi_cmd, verify})
    common(s);
  for (auto* s : {local_degree, infinity_degree, tube, global_fiber, oracle_degree_cmd})
    s->add_option("--map", a.map, "Comma-separated components");
  for (auto* s : {tube, link_inf, semitame, sza, milnor_number, oracle_chi_cmd})
    s->add_option("--poly", a.poly, "Polynomial");
  link0->add_option("--zeros", a.zeros, "Comma-separated h_i with V = {h = 0}");
  tube->add_option("--mode", a.mode, "Formula branch")
      ->check(CLI::IsMember({"khimshiashvili", "isolated", "nonisolated"}));
  link_inf->add_option("--relation", a.relation, "Sign condition")
      ->check(CLI::IsMember({"le", "ge", "eq", "closed"}));
  oracle_chi_cmd->add_option("--relation", a.relation, "Sign condition")->check(CLI::IsMember({"le", "ge", "eq"}));
  oracle_chi_cmd->add_option("--level", a.level, "Level c in {f rel c}");
  for (auto* s : {oracle_degree_cmd, oracle_chi_cmd}) {
    s->add_option("--radius", a.radius, "Fixed radius (otherwise the --at schedule)");
    s->add_option("--at", a.at, "Radius schedule")->check(CLI::IsMember({"origin", "infinity"}));
  }
  semitame->add_option("--alpha-minus", a.alpha_minus, "Negative level (default -1)");
  semitame->add_option("--alpha-plus", a.alpha_plus, "Positive level (default 1)");
  verify->add_option("--suite", a.suite, "Built-in suite")->check(CLI::IsMember(builtin_corpus_names()));
  verify->add_option("--corpus", a.corpus, "JSON corpus file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  const auto t0 = std::chrono::steady_clock::now();
  ReportEnvelope env;
  env.command = [&] {
    std::string s;
    for (int i = 1; i < argc; ++i) s += (i > 1 ? " " : "") + std::string(argv[i]);
    return s;
  }();
  bool degree_conflict = false;

  try {
    // Everything is parsed before any computation starts.
    if (local_degree->parsed() || infinity_degree->parsed()) {
      Parsed p = parse_input(a, a.map, "--map");
      if (p.map.size() != p.map.arity()) throw UsageError("degree needs as many components as variables");
      degree_conflict = run_degree_pair(env, p, infinity_degree->parsed(), a);
    } else if (link0->parsed()) {
      Parsed p = parse_input(a, a.zeros, "--zeros");
      env.reports.push_back(chi_link_origin(p.map, formula_options(a, p.vars)));
    } else if (tube->parsed()) {
      Parsed p = parse_input(a, a.map.empty() ? a.poly : a.map, "--map");
      const TubeMode mode = a.mode == "isolated"      ? TubeMode::isolated_map
                            : a.mode == "nonisolated" ? TubeMode::nonisolated
                                                      : TubeMode::khimshiashvili;
      const FormulaOptions o = formula_options(a, p.vars);
      env.reports.push_back(chi_tube_fiber(p.map, mode, o));
    } else if (link_inf->parsed()) {
      Parsed p = parse_input(a, a.poly, "--poly");
      const LinkMode mode = a.relation == "closed" ? LinkMode::closed_set
                            : a.relation == "ge"   ? LinkMode::ge
                            : a.relation == "eq"   ? LinkMode::eq
                                                   : LinkMode::le;
      const Polynomial f = single(p);
      env.reports.push_back(chi_link_infinity(f, mode, formula_options(a, p.vars)));
    } else if (global_fiber->parsed()) {
      Parsed p = parse_input(a, a.map, "--map");
      for (auto& r : chi_sphere_fiber_global(p.map, formula_options(a, p.vars))) env.reports.push_back(r);
    } else if (semitame->parsed()) {
      Parsed p = parse_input(a, a.poly, "--poly");
      const Rational am = rational_flag(a.alpha_minus, "--alpha-minus");
      const Rational ap = rational_flag(a.alpha_plus, "--alpha-plus");
      const Polynomial f = single(p);
      for (auto& r : semitame_identities(f, am, ap, formula_options(a, p.vars))) env.reports.push_back(r);
    } else if (sza->parsed()) {
      Parsed p = parse_input(a, a.poly, "--poly");
      const Polynomial f = single(p);
      env.reports.push_back(global_sza(f, formula_options(a, p.vars)));
    } else if (milnor_number->parsed()) {
      std::vector<std::string> vars;
      std::string text;
      if (!a.input.empty()) {
        Input in = read_input_file(a.input);
        if (in.lines.size() != 1) throw UsageError(a.input + ": expected one polynomial");
        vars = in.vars;
        text = in.lines[0];
      } else {
        if (a.vars.empty() || a.poly.empty()) throw UsageError("missing --vars or --poly");
        vars = parse_variable_list(a.vars);
        text = a.poly;
      }
      parse_polynomial(text, vars);
      env.reports.push_back(milnor_number_chi(text, vars, formula_options(a, vars)).report);
    } else if (oracle_degree_cmd->parsed()) {
      Parsed p = parse_input(a, a.map, "--map");
      const std::size_t n = p.map.arity();
      if (p.map.size() != n || (n != 2 && n != 3))
        throw UsageError("the degree oracle needs a square map in 2 or 3 variables");
      std::optional<Rational> radius;
      if (!a.radius.empty()) radius = rational_flag(a.radius, "--radius");
      DegreeResult d = radius              ? oracle_degree(p.map, *radius)
                       : a.at == "infinity" ? oracle_degree_at_infinity(p.map)
                                            : oracle_local_degree(p.map);
      env.degrees.push_back({"degree (oracle)", show_map(p.map, p.vars), d});
    } else if (oracle_chi_cmd->parsed()) {
      Parsed p = parse_input(a, a.poly, "--poly");
      const std::size_t n = p.map.arity();
      if (n != 2 && n != 3) throw UsageError("the chi oracle works in 2 or 3 variables");
      std::vector<SignConstraint> cs;
      const Rational level = rational_flag(a.level, "--level");
      for (const auto& f : p.map) cs.push_back({f, parse_relation(a.relation), level});
      std::optional<Rational> radius;
      if (!a.radius.empty()) radius = rational_flag(a.radius, "--radius");
      ChiResult c = radius              ? chi_on_sphere(cs, *radius)
                    : a.at == "infinity" ? chi_link_infinity_oracle(cs)
                                         : chi_link_origin_oracle(cs);
      env.chis.push_back({"chi (oracle)", show_map(p.map, p.vars), c});
    } else if (verify->parsed()) {
      if (a.suite.empty() == a.corpus.empty()) throw UsageError("verify needs exactly one of --suite, --corpus");
      const auto corpus = a.suite.empty() ? read_corpus(a.corpus) : builtin_corpus(a.suite);
      FormulaOptions o = formula_options(a, {});
      env.reports = verify_formula_suite(corpus, o);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }

  if (!a.deterministic)
    env.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cout << emit_report(env, a.format == "json" ? ReportFormat::json : ReportFormat::text);
  if (degree_conflict) {
    std::cerr << "CONFLICT: symbolic and oracle degrees differ\n";
    return 2;
  }
  return exit_code(env, a.strict);
}
