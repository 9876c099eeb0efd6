#include <doctest.h>

#include "milnor/degree_oracle.hpp"
#include "support.hpp"

using namespace testing_support;

TEST_CASE("winding degrees") {
  CHECK(winding_degree_2d(M("x, y"), Q(1)).degree == 1);
  CHECK(winding_degree_2d(M("3*x^2-3*y^2, -6*x*y"), Q(1, 2)).degree == -2);
  CHECK(winding_degree_2d(M("x^2-y^2, 2*x*y"), Q(1)).degree == 2);
  CHECK(winding_degree_2d(M("x^2-y^2, 2*x*y"), Q(1)).method == DegreeMethod::winding_oracle);
}

TEST_CASE("winding: zero on the circle") {
  CHECK_THROWS_AS(winding_degree_2d(M("x^2+y^2-1, x"), Q(1)), ZeroOnSphere);
}

TEST_CASE("solid angle degrees") {
  CHECK(solid_angle_degree_3d(M("x, y, z", xyz()), Q(1)).degree == 1);
  CHECK(solid_angle_degree_3d(M("x, y, z", xyz()), Q(7, 2)).degree == 1);
  CHECK(solid_angle_degree_3d(M("-x, -y, -z", xyz()), Q(1)).degree == -1);
  CHECK(solid_angle_degree_3d(M("x, y, -z", xyz()), Q(1)).degree == -1);
  CHECK(solid_angle_degree_3d(M("x^2-y^2, 2*x*y, z", xyz()), Q(1)).degree == 2);
  CHECK(solid_angle_degree_3d(M("x, y, z^2 + 1/4", xyz()), Q(1)).degree == 0);
}

TEST_CASE("icosphere meshes") {
  for (unsigned d = 0; d <= 3; ++d) {
    const SphereMesh& m = cached_icosphere(d);
    const long chi = static_cast<long>(m.vertices.size()) - static_cast<long>(m.edge_count()) +
                     static_cast<long>(m.triangles.size());
    CHECK(chi == 2);
    CHECK(m.edges().size() == m.edge_count());
  }
}

TEST_CASE("radius schedules") {
  CHECK(oracle_local_degree(M("2*x, -2*y")).degree == -1);
  CHECK(oracle_degree_at_infinity(M("x^2, y")).degree == 0);
  // zeros at distance 1 and at infinity scale: only the origin counts locally
  CHECK(oracle_local_degree(M("x*(x-1), y")).degree == -1);
  CHECK(oracle_degree_at_infinity(M("x*(x-1), y")).degree == 0);
}

TEST_CASE("property: radius stability away from zeros") {
  // zeros of (x^2 - 4, y) at (+-2, 0): constant degree inside and outside radius 2.
  PolyMap F = M("x^2-4, y");
  for (auto r : {Q(1, 4), Q(1), Q(3, 2)}) CHECK(oracle_degree(F, r).degree == 0);
  for (auto r : {Q(3), Q(10), Q(100)}) CHECK(oracle_degree(F, r).degree == 0);
  PolyMap G = M("x^3 - 3*x*y^2 - 1, 3*x^2*y - y^3");
  for (auto r : {Q(1, 2), Q(3, 4)}) CHECK(oracle_degree(G, r).degree == 0);
  for (auto r : {Q(2), Q(5), Q(40)}) CHECK(oracle_degree(G, r).degree == 3);
}

TEST_CASE("property: refinement stability is enforced") {
  for (const std::string text : {"x, y, z", "x^2-y^2, 2*x*y, z", "y, z, x^3 - x*z^2"}) {
    DegreeResult d = solid_angle_degree_3d(M(text, xyz()), Q(1));
    // two independent adaptive runs were compared
    CHECK(d.parameters.at("vertices").find(',') != std::string::npos);
  }
}

TEST_CASE("property: antipodal law") {
  const std::vector<std::string> planar = {"2*x, 2*y", "2*x, -2*y", "3*x^2-3*y^2, -6*x*y", "x^2-y^2, 2*x*y"};
  for (const auto& text : planar) {
    PolyMap F = M(text);
    CHECK(oracle_degree(-F, Q(1, 2)).degree == oracle_degree(F, Q(1, 2)).degree);
  }
  const std::vector<std::string> spatial = {"x, y, z", "x^2-y^2, 2*x*y, z", "x, y, -z^3"};
  for (const auto& text : spatial) {
    PolyMap F = M(text, xyz());
    CHECK(oracle_degree(-F, Q(1, 2)).degree == -oracle_degree(F, Q(1, 2)).degree);
  }
}
