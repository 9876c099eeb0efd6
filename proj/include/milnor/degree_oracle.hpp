#pragma once

#include "milnor/elk.hpp"
#include "milnor/polynomial.hpp"

#include <array>
#include <stdexcept>
#include <vector>

namespace milnor {

class ZeroOnSphere : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Oracle result farther than the rounding gate from an integer, or unstable.
class OracleUnstable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Triangulated sphere: unit vertices and counterclockwise (seen from outside)
/// triangles. Depth 0 is the icosahedron; each level splits every triangle in four.
struct SphereMesh {
  std::vector<std::array<double, 3>> vertices;
  std::vector<std::array<std::size_t, 3>> triangles;

  static SphereMesh icosphere(unsigned depth);
  std::size_t edge_count() const { return triangles.size() * 3 / 2; }
  // Each undirected edge once.
  std::vector<std::array<std::size_t, 2>> edges() const;
};

// Shared, lazily built meshes; the reference stays valid for the process lifetime.
const SphereMesh& cached_icosphere(unsigned depth);

inline constexpr double kRoundingGate = 0.05;

// Degree of F/|F| on the circle of the given radius.
DegreeResult winding_degree_2d(const PolyMap& map, const Rational& radius);

// Degree of F/|F| on the sphere of the given radius: adaptive refinement from
// two starting meshes, which must agree.
DegreeResult solid_angle_degree_3d(const PolyMap& map, const Rational& radius, unsigned start_depth = 2,
                                   unsigned max_levels = 24);

// Dispatches on arity (2 or 3) at a fixed radius.
DegreeResult oracle_degree(const PolyMap& map, const Rational& radius);

// eps = 1/8 halving (local) or R = 16 doubling (infinity) until two
// consecutive radii agree.
DegreeResult oracle_local_degree(const PolyMap& map);
DegreeResult oracle_degree_at_infinity(const PolyMap& map);

}  // namespace milnor
