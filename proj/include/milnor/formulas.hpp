#pragma once

#include "milnor/chi_oracle.hpp"
#include "milnor/elk.hpp"
#include "milnor/groebner.hpp"
#include "milnor/polynomial.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace milnor {

enum class FormulaId {
  MILNOR_CHI,
  KHIMSHIASHVILI,
  MAP_ISOLATED_CHI,
  SZAFRANIEC_LINK0,
  NONISOLATED_TUBE_CHI,
  LINK_INF_LE,
  LINK_INF_GE,
  LINK_INF_EQ,
  CLOSED_SET_LINK_INF,
  SEMITAME_LEVELS,
  GLOBAL_SZA,
  GLOBAL_SPHERE_FIBER,
  LINK_INF_COMPONENT_RELATION,
};

enum class Verdict { verified, conflict, unsupported_symbolic, unstable };

std::string to_string(FormulaId id);
std::string to_string(Verdict v);

// Named check attached to a report. Stability gates failing make the report
// UNSTABLE; consistency gates failing make it a CONFLICT.
struct Gate {
  enum class Kind { stability, consistency } kind = Kind::stability;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct FormulaReport {
  FormulaId formula_id = FormulaId::MILNOR_CHI;
  std::vector<std::string> inputs;
  std::map<std::string, std::string> parameters;
  std::optional<long> lhs, rhs;
  std::string lhs_method, rhs_method;
  // lhs was obtained from an oracle degree because the exact path failed.
  bool symbolic_failed = false;
  Verdict verdict = Verdict::unstable;
  std::string method;
  std::vector<Gate> gates;
  std::vector<std::string> assumptions;
  std::vector<std::string> diagnostics;

  void add_gate(Gate::Kind kind, std::string name, bool passed, std::string detail = {});
  bool gates_passed(Gate::Kind kind) const;
  // Sets the verdict from lhs, rhs and the gates.
  void finalize();
};

class ScheduleExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FormulaOptions {
  GroebnerBudget budget;
  std::optional<Rational> c;
  std::optional<unsigned> k, K;
  std::optional<Rational> delta;
  bool assume_milnor_ab = false;
  bool assume_cond_ab = false;
  bool run_oracles = true;
  // Names used when printing inputs; defaults to x1, x2, ...
  std::vector<std::string> variables;
};

// ---- critical loci ---------------------------------------------------------

struct CriticalLociReport {
  IdealRecord sigma_F;
  IdealRecord milnor_set;
  IdealRecord gamma_f_omega;
  std::vector<std::string> sampled_diagnostics;
};

CriticalLociReport critical_loci_ideals(const PolyMap& F);

// ---- complex Milnor number -------------------------------------------------

struct MilnorNumber {
  long mu = 0;
  long chi = 0;
  std::optional<long> local_mu;
  FormulaReport report;
};

// f is written in the complex variables; coefficients must be rational.
MilnorNumber milnor_number_chi(const std::string& f, const std::vector<std::string>& complex_variables,
                               const FormulaOptions& options = {});

// ---- local formulas --------------------------------------------------------

struct SzafraniecLift {
  Polynomial g;
  Rational c;
  unsigned k = 0;
  long degree = 0;
  long next_degree = 0;
  // False when a degree came from the oracle (origin not isolated over C).
  bool symbolic = true;
  std::vector<std::string> diagnostics;
};

// g = h_1^2 + ... + h_s^2 - c rho^k, first (c, k) with an isolated critical
// point at the origin whose degree agrees with the one at k + 1.
SzafraniecLift szafraniec_lift(const PolyMap& h, const FormulaOptions& options = {});

FormulaReport chi_link_origin(const PolyMap& h, const FormulaOptions& options = {});

enum class TubeMode { khimshiashvili, isolated_map, nonisolated };

FormulaReport chi_tube_fiber(const PolyMap& F, TubeMode mode, const FormulaOptions& options = {});

// ---- infinity --------------------------------------------------------------

// Rational map with an explicit positive denominator.
struct AugmentedRationalMap {
  PolyMap numerators{std::vector<Polynomial>{Polynomial()}};
  Polynomial denominator;
};

struct InfinityMaps {
  Polynomial f;  // after the origin shift
  std::vector<Rational> shift;
  bool shifted = false;
  unsigned k = 0;
  std::optional<unsigned> K;
  std::optional<Polynomial> Phi;
  OmegaFraction g_minus, g_plus;
  Polynomial G_minus, G_plus;
  AugmentedRationalMap H_minus, H_plus;
  // Variables (lambda, x_1, ..., x_n).
  PolyMap L_minus{std::vector<Polynomial>{Polynomial()}};
  PolyMap L_plus{std::vector<Polynomial>{Polynomial()}};
};

// Integer points a with f(a) > 1, by increasing |a| then lexicographically;
// the origin comes first whenever it qualifies.
std::vector<std::vector<Rational>> origin_candidates(const Polynomial& f, std::size_t limit = 8);

// shift_index selects the origin among origin_candidates(f).
InfinityMaps build_infinity_maps(const Polynomial& f, unsigned k, std::optional<unsigned> K = std::nullopt,
                                 std::size_t shift_index = 0);

enum class LinkMode { le, ge, eq, closed_set };

FormulaReport chi_link_infinity(const Polynomial& f, LinkMode mode, const FormulaOptions& options = {});

// SEMITAME_LEVELS for le, ge and eq, in that order.
std::vector<FormulaReport> semitame_identities(const Polynomial& f, const Rational& alpha_minus,
                                               const Rational& alpha_plus, const FormulaOptions& options = {});

// f >= 0 with X = {f = 0}.
FormulaReport global_sza(const Polynomial& f, const FormulaOptions& options = {});

// GLOBAL_SPHERE_FIBER then LINK_INF_COMPONENT_RELATION.
std::vector<FormulaReport> chi_sphere_fiber_global(const PolyMap& F, const FormulaOptions& options = {});

// ---- suites ----------------------------------------------------------------

struct CorpusEntry {
  std::string name;
  // Same names as the CLI commands: chi-link0, chi-fiber-tube, chi-link-inf,
  // chi-global-fiber, semitame, milnor-number.
  std::string command;
  std::string vars;
  std::string input;
  std::map<std::string, std::string> options;  // relation, mode, delta, alpha-, alpha+
  std::optional<long> expected;
};

std::vector<CorpusEntry> builtin_corpus(const std::string& name);
std::vector<std::string> builtin_corpus_names();

std::vector<FormulaReport> run_corpus_entry(const CorpusEntry& entry, const FormulaOptions& options = {});
std::vector<FormulaReport> verify_formula_suite(const std::vector<CorpusEntry>& corpus,
                                                const FormulaOptions& options = {});

}  // namespace milnor
