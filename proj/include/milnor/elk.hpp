#pragma once

#include "milnor/groebner.hpp"
#include "milnor/linalg.hpp"
#include "milnor/polynomial.hpp"
#include "milnor/quotient.hpp"

#include <map>
#include <string>
#include <vector>

namespace milnor {

enum class DegreeMethod {
  local_signature,
  infinity_signature,
  infinity_bezoutian,
  winding_oracle,
  solid_angle_oracle,
};

std::string to_string(DegreeMethod m);

struct DegreeResult {
  long degree = 0;
  DegreeMethod method = DegreeMethod::local_signature;
  std::map<std::string, std::string> parameters;
  std::vector<std::string> diagnostics;
};

struct BilinearFormRecord {
  std::vector<Monomial> basis;
  RationalMatrix matrix;
  std::string functional_tag;
};

SignatureTriple signature_of_form(const BilinearFormRecord& form);

class OriginNotIsolated : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateFunctional : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Local algebra of the ideal of F at the origin, as Q[x] / (F + (x_1^N, ..., x_n^N))
/// with N doubled until the dimension stops growing. Throws OriginNotIsolated
/// when it never does within the cap.
QuotientAlgebra local_algebra(const PolyMap& F, const GroebnerBudget& budget = {},
                              unsigned max_power = 128);

// Form (a, b) -> phi(a b) on an algebra, for phi given in coordinates.
BilinearFormRecord functional_form_record(const QuotientAlgebra& algebra, const RationalVector& phi,
                                          std::string tag);

// deg_0 of a square map at an isolated zero at the origin (0 when F(0) != 0).
DegreeResult local_degree_elk(const PolyMap& map, const GroebnerBudget& budget = {});

// Sum of local degrees over all real zeros; requires a finite complex zero set.
DegreeResult degree_at_infinity_elk(const PolyMap& map, const GroebnerBudget& budget = {});

// Bezoutian form of F on its global quotient algebra.
BilinearFormRecord bezoutian_form(const PolyMap& map, const QuotientAlgebra& algebra);

// Multiplies every component by its (positive) denominator.
PolyMap positive_rescale_reduction(const RationalFunctionMap& map);

}  // namespace milnor
