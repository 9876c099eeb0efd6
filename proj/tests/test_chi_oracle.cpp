#include <doctest.h>

#include "milnor/chi_oracle.hpp"
#include "support.hpp"

using namespace testing_support;

namespace {

long circle(const std::string& f, Relation r, Rational level = 0, Rational radius = 1) {
  return chi_on_circle({P(f), r, level}, radius).chi;
}

long sphere(const std::string& f, Relation r, Rational level = 0) {
  return chi_on_sphere2(SignConstraint{P(f, xyz()), r, level}, Q(1)).chi;
}

long grid(const std::vector<SignConstraint>& cs, Rational outer = 1) {
  RegionShape ball;
  ball.outer = outer;
  return chi_region_grid(cs, ball).chi;
}

const std::vector<std::string> kHomogeneous = {"x", "x^2-y^2", "x*y", "x^3-3*x*y^2", "x^2+y^2", "-x^2-y^2"};

}  // namespace

TEST_CASE("relations") {
  CHECK(parse_relation("<=") == Relation::le);
  CHECK(parse_relation("ge") == Relation::ge);
  CHECK(parse_relation("==") == Relation::eq);
  CHECK_THROWS(parse_relation("lt"));
  CHECK(to_string(Relation::eq) == "eq");
}

TEST_CASE("circle") {
  CHECK(circle("x", Relation::eq) == 2);
  CHECK(circle("x", Relation::le) == 1);
  CHECK(circle("x^2+y^2-4", Relation::le) == 0);
  CHECK(circle("x^2+y^2-4", Relation::ge) == 0);
  CHECK(circle("x^2+y^2-4", Relation::eq) == 0);
  // tangency: {x <= -1} touches the unit circle in one point
  CHECK(circle("x + 1", Relation::le) == 1);
  CHECK(circle("x + 1", Relation::eq) == 1);
  CHECK(circle("x*y", Relation::eq) == 4);
  CHECK(circle("x*y", Relation::ge) == 2);
}

TEST_CASE("sphere") {
  CHECK(sphere("z", Relation::eq) == 0);
  CHECK(sphere("z", Relation::le) == 1);
  CHECK(sphere("z^2-1/4", Relation::le) == 0);
  CHECK(sphere("z^2-1/4", Relation::ge) == 2);
  CHECK(sphere("x^2+y^2+z^2+1", Relation::le) == 0);
  CHECK(sphere("x^2+y^2+z^2+1", Relation::ge) == 2);
}

TEST_CASE("sphere: several constraints") {
  std::vector<SignConstraint> axis = {{P("x", xyz()), Relation::eq, 0}, {P("y", xyz()), Relation::eq, 0}};
  CHECK(chi_on_sphere2(axis, Q(1)).chi == 2);
  std::vector<SignConstraint> quarter = {{P("x", xyz()), Relation::ge, 0}, {P("y", xyz()), Relation::ge, 0}};
  CHECK(chi_on_sphere2(quarter, Q(1)).chi == 1);
}

TEST_CASE("grid") {
  CHECK(grid({{P("x^2+y^2"), Relation::eq, Q(1, 4)}}) == 0);
  CHECK(grid({{P("x^2-y^2"), Relation::eq, Q(1, 10)}}) == 2);
  CHECK(grid({{P("x^2+y^2"), Relation::le, Q(1, 4)}}) == 1);
  CHECK(grid({{P("x", xyz()), Relation::eq, Q(1, 64)}, {P("y", xyz()), Relation::eq, Q(1, 32)}}) == 1);
  CHECK(grid({{P("z^2", xyz()), Relation::le, Q(1, 16)}}) == 1);
}

TEST_CASE("link schedules") {
  CHECK(chi_link_origin_oracle({{P("x*y"), Relation::eq, 0}}).chi == 4);
  CHECK(chi_link_infinity_oracle({{P("x^2+y^2-1"), Relation::le, 0}}).chi == 0);
  CHECK(chi_link_infinity_oracle({{P("x"), Relation::le, 0}}).chi == 1);
  CHECK(chi_link_origin_oracle({{P("x", xyz()), Relation::eq, 0}}).chi == 0);
}

TEST_CASE("property: additivity on spheres") {
  for (const auto& f : kHomogeneous)
    for (auto level : {Q(0), Q(1, 3), Q(-1, 5)})
      CHECK(circle(f, Relation::ge, level) + circle(f, Relation::le, level) - circle(f, Relation::eq, level) == 0);
  for (const std::string f : {"z", "x*y - 1/10", "z^2-1/4", "x^2+y^2-z^2", "x + y^2 - z/2"})
    CHECK(sphere(f, Relation::ge) + sphere(f, Relation::le) - sphere(f, Relation::eq) == 2);
}

TEST_CASE("sphere: singular zero curves are rejected") {
  CHECK_THROWS_AS(sphere("x^3-3*x*y^2", Relation::eq), ChiUnstable);
  CHECK_THROWS_AS(sphere("x*y", Relation::le), ChiUnstable);
  CHECK(chi_on_sphere2(SignConstraint{P("x^2+y^2-z^2", xyz()), Relation::eq, 0}, Q(1)).parameters.at("singular_check") ==
        "smooth");
}

TEST_CASE("property: cylinders over plane sets") {
  // A = {f(x, y) r 0} meets S^2 in two copies of A in the disc glued along A on the circle.
  const std::vector<std::string> curves = {"x - 1/2", "x^2 + y^2 - 1/4", "x*y - 1/10", "x^2 - y^2 - 1/10", "x + y^2 - 1/3"};
  for (const auto& f : curves)
    for (auto r : {Relation::le, Relation::ge, Relation::eq})
      CHECK(sphere(f, r) == 2 * grid({{P(f), r, 0}}) - circle(f, r));
}

TEST_CASE("property: grid shells agree with the circle") {
  // Homogeneous sets in a shell are products with an interval.
  RegionShape shell;
  shell.kind = RegionShape::Kind::shell;
  shell.inner = Q(1, 2);
  shell.outer = Q(1);
  for (const auto& f : kHomogeneous)
    for (auto r : {Relation::le, Relation::ge, Relation::eq})
      CHECK(chi_region_grid({{P(f), r, 0}}, shell).chi == circle(f, r));
}
