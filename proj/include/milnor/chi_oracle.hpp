#pragma once

#include "milnor/polynomial.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace milnor {

enum class Relation { le, ge, eq };

std::string to_string(Relation r);
// "le", "ge", "eq" (also "<=", ">=", "=").
Relation parse_relation(const std::string& text);

// {f rel level}
struct SignConstraint {
  Polynomial f;
  Relation relation = Relation::le;
  Rational level{0};
};

struct ChiResult {
  long chi = 0;
  // Cell counts of the complex the value was read from (the accepted refinement).
  std::size_t vertices = 0, edges = 0, faces = 0, solids = 0;
  std::string method;
  std::map<std::string, std::string> parameters;
};

class ChiUnstable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Exact: rational parametrization of the circle plus Sturm root isolation.
ChiResult chi_on_circle(const SignConstraint& c, const Rational& radius);

// PL sign complex on a geodesic sphere mesh; accepted when two consecutive
// depths give the same value.
ChiResult chi_on_sphere2(const SignConstraint& c, const Rational& radius, unsigned start_depth = 3,
                         unsigned max_depth = 7);
// Intersection of several constraints, through vertex-induced subcomplexes.
ChiResult chi_on_sphere2(const std::vector<SignConstraint>& cs, const Rational& radius,
                         unsigned start_depth = 3, unsigned max_depth = 7);

// Dispatch on arity: circle for n = 2, sphere for n = 3. Several equalities
// at level zero on the circle collapse to one sum of squares.
ChiResult chi_on_sphere(const std::vector<SignConstraint>& cs, const Rational& radius);

struct RegionShape {
  enum class Kind { ball, shell } kind = Kind::ball;
  Rational inner{0};
  Rational outer{1};
};

// Closed region {constraints} intersected with the ball or shell, on a
// Freudenthal grid refined until two consecutive resolutions agree.
ChiResult chi_region_grid(const std::vector<SignConstraint>& cs, const RegionShape& shape);

// Radius schedules: 1/8 halving toward the origin, 16 doubling toward infinity.
// The value is accepted once two consecutive radii agree.
ChiResult chi_link_origin_oracle(const std::vector<SignConstraint>& cs);
ChiResult chi_link_infinity_oracle(const std::vector<SignConstraint>& cs);

}  // namespace milnor
