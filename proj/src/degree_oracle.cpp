#include "milnor/degree_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <mutex>
#include <numbers>
#include <optional>
#include <unordered_map>

namespace milnor {

namespace {

constexpr double kPi = std::numbers::pi;

/// Double-precision evaluator with an exact fallback for tiny values.
class DirectionField {
 public:
  DirectionField(const PolyMap& map, double radius) : map_(map) {
    for (const auto& c : map) scale_ = std::max(scale_, c.magnitude_bound(radius));
    if (scale_ == 0.0) throw ZeroOnSphere("map is identically zero");
  }

  // Unit direction of map(point); throws ZeroOnSphere on an exact zero.
  std::vector<double> direction(std::span<const double> point) const {
    std::vector<double> v = map_.evaluate(point);
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm >= 1e-8 * scale_ && std::isfinite(norm)) {
      for (double& x : v) x /= norm;
      return v;
    }
    std::vector<Rational> q;
    for (double x : point) q.push_back(rational_from_double(x));
    std::vector<Rational> exact = map_.evaluate(std::span<const Rational>(q));
    Rational big(0);
    for (const auto& e : exact) big = std::max(big, Rational(abs(e)));
    if (big.is_zero()) throw ZeroOnSphere("map vanishes on the sphere");
    norm = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] = to_double(exact[i] / big);
      norm += v[i] * v[i];
    }
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
    return v;
  }

 private:
  const PolyMap& map_;
  double scale_ = 0.0;
};

double signed_angle(const std::vector<double>& a, const std::vector<double>& b) {
  return std::atan2(a[0] * b[1] - a[1] * b[0], a[0] * b[0] + a[1] * b[1]);
}

double near_integer_or_throw(double w, const std::string& what) {
  double r = std::round(w);
  if (std::abs(w - r) >= kRoundingGate)
    throw OracleUnstable(what + ": value " + std::to_string(w) + " is not within the rounding gate");
  return r;
}

using Vec3 = std::array<double, 3>;

Vec3 normalized(const Vec3& v) {
  double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  return {v[0] / n, v[1] / n, v[2] / n};
}

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

SphereMesh build_icosahedron() {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  SphereMesh m;
  std::vector<Vec3> raw = {{-1, t, 0}, {1, t, 0},  {-1, -t, 0}, {1, -t, 0}, {0, -1, t},  {0, 1, t},
                           {0, -1, -t}, {0, 1, -t}, {t, 0, -1},  {t, 0, 1},  {-t, 0, -1}, {-t, 0, 1}};
  for (auto& v : raw) m.vertices.push_back(normalized(v));
  m.triangles = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
                 {11, 10, 2}, {10, 7, 6}, {7, 1, 8},   {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
                 {3, 8, 9},  {4, 9, 5},  {2, 4, 11},  {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
  // Orient counterclockwise as seen from outside.
  for (auto& tri : m.triangles) {
    const auto& a = m.vertices[tri[0]];
    const auto& b = m.vertices[tri[1]];
    const auto& c = m.vertices[tri[2]];
    Vec3 ab{b[0] - a[0], b[1] - a[1], b[2] - a[2]};
    Vec3 ac{c[0] - a[0], c[1] - a[1], c[2] - a[2]};
    if (dot(cross(ab, ac), a) < 0) std::swap(tri[1], tri[2]);
  }
  return m;
}

SphereMesh subdivide(const SphereMesh& in) {
  SphereMesh out;
  out.vertices = in.vertices;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> midpoint;
  auto mid = [&](std::size_t a, std::size_t b) {
    auto key = std::minmax(a, b);
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    const auto& p = out.vertices[a];
    const auto& q = out.vertices[b];
    out.vertices.push_back(normalized({p[0] + q[0], p[1] + q[1], p[2] + q[2]}));
    std::size_t idx = out.vertices.size() - 1;
    midpoint.emplace(key, idx);
    return idx;
  };
  for (const auto& t : in.triangles) {
    std::size_t ab = mid(t[0], t[1]), bc = mid(t[1], t[2]), ca = mid(t[2], t[0]);
    out.triangles.push_back({t[0], ab, ca});
    out.triangles.push_back({t[1], bc, ab});
    out.triangles.push_back({t[2], ca, bc});
    out.triangles.push_back({ab, bc, ca});
  }
  return out;
}

double radius_double(const Rational& r) {
  if (r <= 0) throw std::invalid_argument("radius must be positive");
  return to_double(r);
}

// Solid angle of the geodesic triangle (u, v, w).
double solid_angle(const Vec3& u, const Vec3& v, const Vec3& w) {
  return 2.0 * std::atan2(dot(u, cross(v, w)), 1.0 + dot(u, v) + dot(v, w) + dot(w, u));
}

struct AdaptiveRun {
  double winding;
  std::size_t vertices;
};

// Triangles are split while some edge image spans more than max_angle. Leaves
// next to finer neighbours become polygons through the hanging midpoints, so
// the image surface stays closed and the sum is 4*pi times an integer.
AdaptiveRun solid_angle_adaptive(const PolyMap& map, double radius, unsigned start_depth, double max_angle,
                                 unsigned max_levels) {
  constexpr std::size_t kMaxVertices = 2'000'000;
  const SphereMesh& mesh = cached_icosphere(start_depth);
  DirectionField field(map, radius);
  std::vector<Vec3> pos = mesh.vertices;
  std::vector<Vec3> img;
  auto image_of = [&](const Vec3& v) {
    double p[3] = {radius * v[0], radius * v[1], radius * v[2]};
    auto d = field.direction(std::span<const double>(p, 3));
    return Vec3{d[0], d[1], d[2]};
  };
  for (const auto& v : pos) img.push_back(image_of(v));
  std::unordered_map<std::uint64_t, std::size_t> midpoint;
  auto key = [](std::size_t a, std::size_t b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | b;
  };
  auto mid = [&](std::size_t a, std::size_t b) {
    auto [it, fresh] = midpoint.try_emplace(key(a, b), pos.size());
    if (fresh) {
      if (pos.size() >= kMaxVertices) throw BudgetExceeded("solid-angle oracle vertex budget exceeded");
      Vec3 m = normalized({pos[a][0] + pos[b][0], pos[a][1] + pos[b][1], pos[a][2] + pos[b][2]});
      pos.push_back(m);
      img.push_back(image_of(m));
    }
    return it->second;
  };
  const double min_cos = std::cos(max_angle);
  struct Tri {
    std::size_t a, b, c;
    unsigned level;
  };
  std::vector<Tri> stack, leaves;
  for (const auto& t : mesh.triangles) stack.push_back({t[0], t[1], t[2], 0});
  while (!stack.empty()) {
    Tri t = stack.back();
    stack.pop_back();
    bool coarse = dot(img[t.a], img[t.b]) < min_cos || dot(img[t.b], img[t.c]) < min_cos ||
                  dot(img[t.c], img[t.a]) < min_cos;
    if (!coarse) {
      leaves.push_back(t);
      continue;
    }
    if (t.level >= max_levels) throw OracleUnstable("solid-angle oracle could not resolve the map near a point");
    std::size_t ab = mid(t.a, t.b), bc = mid(t.b, t.c), ca = mid(t.c, t.a);
    stack.push_back({t.a, ab, ca, t.level + 1});
    stack.push_back({t.b, bc, ab, t.level + 1});
    stack.push_back({t.c, ca, bc, t.level + 1});
    stack.push_back({ab, bc, ca, t.level + 1});
  }
  std::vector<std::size_t> poly;
  std::function<void(std::size_t, std::size_t)> walk = [&](std::size_t u, std::size_t v) {
    auto it = midpoint.find(key(u, v));
    if (it == midpoint.end()) {
      poly.push_back(u);
      return;
    }
    walk(u, it->second);
    walk(it->second, v);
  };
  double total = 0.0;
  for (const auto& t : leaves) {
    poly.clear();
    walk(t.a, t.b);
    walk(t.b, t.c);
    walk(t.c, t.a);
    for (std::size_t i = 1; i + 1 < poly.size(); ++i) total += solid_angle(img[poly[0]], img[poly[i]], img[poly[i + 1]]);
  }
  return {total / (4.0 * kPi), pos.size()};
}

}  // namespace

const SphereMesh& cached_icosphere(unsigned depth) {
  static std::mutex lock;
  static std::deque<SphereMesh> cache;
  std::lock_guard<std::mutex> guard(lock);
  if (cache.empty()) cache.push_back(build_icosahedron());
  while (cache.size() <= depth) cache.push_back(subdivide(cache.back()));
  return cache[depth];
}

std::vector<std::array<std::size_t, 2>> SphereMesh::edges() const {
  std::vector<std::array<std::size_t, 2>> out;
  out.reserve(edge_count());
  for (const auto& t : triangles)
    for (int k = 0; k < 3; ++k) {
      std::size_t a = t[k], b = t[(k + 1) % 3];
      // Every edge borders two triangles with opposite directions; keep one.
      if (a < b) out.push_back({a, b});
    }
  return out;
}

SphereMesh SphereMesh::icosphere(unsigned depth) {
  SphereMesh m = build_icosahedron();
  for (unsigned d = 0; d < depth; ++d) m = subdivide(m);
  return m;
}

DegreeResult winding_degree_2d(const PolyMap& map, const Rational& radius) {
  if (map.arity() != 2 || map.size() != 2) throw std::invalid_argument("winding oracle needs a map R^2 -> R^2");
  const double r = radius_double(radius);
  DirectionField field(map, r);
  auto dir = [&](double theta) {
    double p[2] = {r * std::cos(theta), r * std::sin(theta)};
    return field.direction(std::span<const double>(p, 2));
  };
  constexpr int kInitial = 256;
  constexpr std::size_t kMaxSamples = 2'000'000;
  double total = 0.0;
  std::size_t samples = 0;
  for (int s = 0; s < kInitial; ++s) {
    double a = 2 * kPi * s / kInitial;
    double b = 2 * kPi * (s + 1) / kInitial;
    struct Arc {
      double a, b;
      std::vector<double> da, db;
    };
    std::vector<Arc> stack{{a, b, dir(a), dir(b)}};
    while (!stack.empty()) {
      Arc arc = std::move(stack.back());
      stack.pop_back();
      double step = signed_angle(arc.da, arc.db);
      if (std::abs(step) < kPi / 4) {
        total += step;
        continue;
      }
      if (arc.b - arc.a < 1e-12) throw ZeroOnSphere("map nearly vanishes on the circle");
      if (++samples > kMaxSamples) throw BudgetExceeded("winding oracle sample budget exceeded");
      double m = 0.5 * (arc.a + arc.b);
      auto dm = dir(m);
      stack.push_back({m, arc.b, dm, arc.db});
      stack.push_back({arc.a, m, arc.da, std::move(dm)});
    }
  }
  double w = total / (2 * kPi);
  DegreeResult out;
  out.method = DegreeMethod::winding_oracle;
  out.degree = static_cast<long>(near_integer_or_throw(w, "winding oracle"));
  out.parameters["radius"] = to_string(radius);
  out.parameters["refinements"] = std::to_string(samples);
  return out;
}

DegreeResult solid_angle_degree_3d(const PolyMap& map, const Rational& radius, unsigned start_depth,
                                   unsigned max_levels) {
  if (map.arity() != 3 || map.size() != 3)
    throw std::invalid_argument("solid-angle oracle needs a map R^3 -> R^3");
  const double r = radius_double(radius);
  // Two independent meshes: coarser start with a looser angle, finer with a tighter one.
  AdaptiveRun coarse = solid_angle_adaptive(map, r, start_depth, kPi / 6, max_levels);
  AdaptiveRun fine = solid_angle_adaptive(map, r, start_depth + 1, kPi / 12, max_levels);
  double a = near_integer_or_throw(coarse.winding, "solid-angle oracle");
  double b = near_integer_or_throw(fine.winding, "solid-angle oracle");
  if (a != b) throw OracleUnstable("solid-angle oracle disagrees between refinements");
  DegreeResult out;
  out.method = DegreeMethod::solid_angle_oracle;
  out.degree = static_cast<long>(b);
  out.parameters["radius"] = to_string(radius);
  out.parameters["vertices"] = std::to_string(coarse.vertices) + "," + std::to_string(fine.vertices);
  return out;
}

DegreeResult oracle_degree(const PolyMap& map, const Rational& radius) {
  if (map.arity() == 2) return winding_degree_2d(map, radius);
  if (map.arity() == 3) return solid_angle_degree_3d(map, radius);
  throw std::invalid_argument("degree oracle supports arity 2 and 3 only");
}

namespace {

DegreeResult radius_schedule(const PolyMap& map, Rational radius, const Rational& factor, int steps,
                             const char* label) {
  std::optional<DegreeResult> previous;
  std::string last_error;
  for (int i = 0; i < steps; ++i, radius *= factor) {
    try {
      DegreeResult cur = oracle_degree(map, radius);
      if (previous && previous->degree == cur.degree) {
        previous->parameters["next_radius"] = to_string(radius);
        previous->parameters["radius_schedule"] = label;
        return *previous;
      }
      previous = std::move(cur);
    } catch (const ZeroOnSphere& e) {
      previous.reset();
      last_error = e.what();
    } catch (const OracleUnstable& e) {
      previous.reset();
      last_error = e.what();
    }
  }
  throw OracleUnstable(std::string("degree oracle did not stabilize over the ") + label +
                       " radius schedule" + (last_error.empty() ? "" : " (" + last_error + ")"));
}

}  // namespace

DegreeResult oracle_local_degree(const PolyMap& map) {
  return radius_schedule(map, make_rational(1, 8), make_rational(1, 2), 8, "halving from 1/8");
}

DegreeResult oracle_degree_at_infinity(const PolyMap& map) {
  return radius_schedule(map, Rational(16), Rational(2), 7, "doubling from 16");
}

}  // namespace milnor
