#include "milnor/chi_oracle.hpp"

#include "milnor/degree_oracle.hpp"
#include "milnor/groebner.hpp"
#include "milnor/linalg.hpp"
#include "milnor/quotient.hpp"
#include "milnor/univariate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>

namespace milnor {

std::string to_string(Relation r) {
  switch (r) {
    case Relation::le: return "le";
    case Relation::ge: return "ge";
    case Relation::eq: return "eq";
  }
  return "?";
}

Relation parse_relation(const std::string& text) {
  if (text == "le" || text == "<=") return Relation::le;
  if (text == "ge" || text == ">=") return Relation::ge;
  if (text == "eq" || text == "=" || text == "==") return Relation::eq;
  throw std::invalid_argument("unknown relation '" + text + "' (expected le, ge or eq)");
}

namespace {

bool accepts(Relation r, int sign) {
  switch (r) {
    case Relation::le: return sign <= 0;
    case Relation::ge: return sign >= 0;
    case Relation::eq: return sign == 0;
  }
  return false;
}

Polynomial shifted(const SignConstraint& c) {
  return c.f - Polynomial::constant(c.f.arity(), c.level);
}

void require_arity(const std::vector<SignConstraint>& cs, std::size_t n) {
  if (cs.empty()) throw std::invalid_argument("no constraints given");
  for (const auto& c : cs)
    if (c.f.arity() != n)
      throw std::invalid_argument("constraint has " + std::to_string(c.f.arity()) + " variables, expected " +
                                  std::to_string(n));
}

// Sign of p at a double point, exact when the value is too small to trust.
class SignEvaluator {
 public:
  SignEvaluator(const Polynomial& p, double radius) : p_(p), scale_(p.magnitude_bound(radius)) {}

  int sign(std::span<const double> point) const {
    double v = p_.evaluate(point);
    if (std::abs(v) > 1e-9 * scale_ && std::isfinite(v)) return v > 0 ? 1 : -1;
    std::vector<Rational> q;
    for (double x : point) q.push_back(rational_from_double(x));
    return p_.evaluate(std::span<const Rational>(q)).sign();
  }

  int sign(std::span<const double> approx, std::span<const Rational> exact) const {
    double v = p_.evaluate(approx);
    if (std::abs(v) > 1e-9 * scale_ && std::isfinite(v)) return v > 0 ? 1 : -1;
    return p_.evaluate(exact).sign();
  }

 private:
  const Polynomial& p_;
  double scale_;
};

// ---- circle ----------------------------------------------------------------

// Numerator of g on the circle of radius R under x = R(1-t^2)/(1+t^2), y = 2Rt/(1+t^2).
UPoly circle_numerator(const Polynomial& g, const Rational& R) {
  const unsigned D = g.total_degree();
  const UPoly u({Rational(1), Rational(0), Rational(-1)});
  const UPoly v({Rational(0), Rational(2)});
  const UPoly w({Rational(1), Rational(0), Rational(1)});
  std::vector<UPoly> up{UPoly::constant(Rational(1))}, vp = up, wp = up;
  for (unsigned k = 1; k <= D; ++k) {
    up.push_back(up.back() * u);
    vp.push_back(vp.back() * v);
    wp.push_back(wp.back() * w);
  }
  UPoly out;
  for (const auto& t : g.terms()) {
    const unsigned a = t.monomial[0], b = t.monomial[1];
    Rational scale = t.coeff;
    for (unsigned k = 0; k < a + b; ++k) scale *= R;
    out = out + scale * (up[a] * vp[b] * wp[D - a - b]);
  }
  return out;
}

ChiResult circle_impl(const std::vector<SignConstraint>& cs, const Rational& R) {
  require_arity(cs, 2);
  if (R <= 0) throw std::invalid_argument("radius must be positive");
  const std::size_t m = cs.size();
  std::vector<UPoly> nums;
  std::vector<int> at_infinity;
  const std::array<Rational, 2> antipode{-R, Rational(0)};
  UPoly product = UPoly::constant(Rational(1));
  for (const auto& c : cs) {
    Polynomial g = shifted(c);
    nums.push_back(circle_numerator(g, R));
    at_infinity.push_back(g.evaluate(std::span<const Rational>(antipode)).sign());
    if (!nums.back().is_zero()) product = product * nums.back();
  }
  auto roots = isolate_real_roots(product);
  const UPoly sf = square_free_part(product);

  auto selected = [&](const std::vector<int>& signs) {
    for (std::size_t i = 0; i < m; ++i)
      if (!accepts(cs[i].relation, signs[i])) return false;
    return true;
  };
  auto signs_at = [&](const Rational& t) {
    std::vector<int> s(m);
    for (std::size_t i = 0; i < m; ++i) s[i] = nums[i].sign_at(t);
    return s;
  };

  // Signs at each root: a constraint vanishes there iff its gcd with the
  // square-free product has a root in the isolating interval.
  std::vector<std::optional<SturmSequence>> vanish;
  for (std::size_t i = 0; i < m; ++i) {
    if (nums[i].is_zero() || nums[i].degree() == 0) {
      vanish.emplace_back();
      continue;
    }
    UPoly g = gcd(nums[i], sf);
    if (g.degree() < 1) vanish.emplace_back();
    else vanish.emplace_back(SturmSequence(g));
  }
  long points_selected = 0, arcs_selected = 0;
  std::size_t points = roots.size(), arcs = 0;
  for (const auto& r : roots) {
    std::vector<int> s = signs_at(r.hi);
    for (std::size_t i = 0; i < m; ++i) {
      if (nums[i].is_zero()) s[i] = 0;
      else if (vanish[i] && vanish[i]->count_roots(r.lo, r.hi) > 0) s[i] = 0;
    }
    if (selected(s)) ++points_selected;
  }
  bool infinity_zero = false;
  for (std::size_t i = 0; i < m; ++i)
    if (!nums[i].is_zero() && at_infinity[i] == 0) infinity_zero = true;
  if (infinity_zero) {
    ++points;
    std::vector<int> s(at_infinity);
    if (selected(s)) ++points_selected;
  }
  if (points == 0) {
    // No distinguished points: the circle is either fully in or fully out.
    ChiResult out;
    out.method = "circle_exact";
    out.parameters["radius"] = to_string(R);
    out.parameters["selected"] = selected(at_infinity) ? "whole circle" : "empty";
    return out;
  }
  // Open arcs between consecutive points in the cyclic order of t, with t = infinity last.
  std::vector<std::vector<int>> arc_signs;
  for (std::size_t k = 0; k + 1 < roots.size(); ++k) arc_signs.push_back(signs_at(roots[k].hi));
  if (infinity_zero) {
    if (!roots.empty()) {
      arc_signs.push_back(signs_at(roots.back().hi));
      arc_signs.push_back(signs_at(roots.front().lo));
    } else {
      arc_signs.push_back(signs_at(Rational(0)));
    }
  } else {
    // The arc through t = infinity.
    arc_signs.push_back(at_infinity);
  }
  for (auto& s : arc_signs) {
    for (std::size_t i = 0; i < m; ++i)
      if (nums[i].is_zero()) s[i] = 0;
    ++arcs;
    if (selected(s)) ++arcs_selected;
  }
  ChiResult out;
  out.chi = points_selected - arcs_selected;
  out.vertices = points;
  out.edges = arcs;
  out.method = "circle_exact";
  out.parameters["radius"] = to_string(R);
  out.parameters["selected_points"] = std::to_string(points_selected);
  out.parameters["selected_arcs"] = std::to_string(arcs_selected);
  return out;
}

// ---- sphere ----------------------------------------------------------------

std::vector<int> vertex_signs(const Polynomial& g, const SphereMesh& mesh, double radius) {
  SignEvaluator ev(g, radius);
  std::vector<int> out(mesh.vertices.size());
  for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
    const auto& v = mesh.vertices[i];
    double p[3] = {radius * v[0], radius * v[1], radius * v[2]};
    out[i] = ev.sign(std::span<const double>(p, 3));
  }
  return out;
}

struct Cells {
  long chi = 0;
  std::size_t v = 0, e = 0, f = 0;
};

// Sign complex of the PL interpolant: vertices, edge pieces and triangle pieces
// each carry one sign; the closed set is the union of the cells with accepted sign.
Cells pl_sign_complex(const std::vector<int>& sign, const SphereMesh& mesh, Relation rel) {
  std::array<long, 3> V{}, E{}, F{};  // index sign + 1
  for (int s : sign) ++V[s + 1];
  for (const auto& [a, b] : mesh.edges()) {
    int sa = sign[a], sb = sign[b];
    if (sa * sb < 0) {
      ++V[1];
      ++E[sa + 1];
      ++E[sb + 1];
    } else {
      ++E[(sa != 0 ? sa : sb) + 1];
    }
  }
  for (const auto& t : mesh.triangles) {
    bool pos = false, neg = false;
    for (auto i : t) {
      pos |= sign[i] > 0;
      neg |= sign[i] < 0;
    }
    if (pos && neg) {
      ++E[1];
      ++F[0];
      ++F[2];
    } else if (pos) {
      ++F[2];
    } else if (neg) {
      ++F[0];
    } else {
      ++F[1];
    }
  }
  Cells c;
  for (int s = -1; s <= 1; ++s) {
    if (!accepts(rel, s)) continue;
    c.v += V[s + 1];
    c.e += E[s + 1];
    c.f += F[s + 1];
  }
  c.chi = static_cast<long>(c.v) - static_cast<long>(c.e) + static_cast<long>(c.f);
  return c;
}

// Histogram of AND-masks per simplex dimension; chi of vertex-induced
// subcomplexes follows by summing over supersets of the required bits.
struct MaskHistogram {
  std::vector<std::vector<long>> counts;  // counts[dim][mask]

  MaskHistogram(std::size_t dims, unsigned bits) : counts(dims + 1, std::vector<long>(std::size_t{1} << bits, 0)) {}

  long chi(unsigned required) const {
    long total = 0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
      long n = 0;
      for (std::size_t mask = 0; mask < counts[k].size(); ++mask)
        if ((mask & required) == required) n += counts[k][mask];
      total += (k % 2 == 0) ? n : -n;
    }
    return total;
  }

  std::vector<std::size_t> cells(unsigned required) const {
    std::vector<std::size_t> out;
    for (const auto& level : counts) {
      std::size_t n = 0;
      for (std::size_t mask = 0; mask < level.size(); ++mask)
        if ((mask & required) == required) n += static_cast<std::size_t>(level[mask]);
      out.push_back(n);
    }
    return out;
  }
};

// 1_{=} = 1_{<=} + 1_{>=} - 1 over every equality, starting from `base`.
long expand_equalities(const std::vector<SignConstraint>& cs, unsigned base, const MaskHistogram& h) {
  std::vector<std::size_t> eqs;
  unsigned required = base;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (cs[i].relation == Relation::le) required |= 1u << (2 * i);
    if (cs[i].relation == Relation::ge) required |= 1u << (2 * i + 1);
    if (cs[i].relation == Relation::eq) eqs.push_back(i);
  }
  long total = 0;
  std::size_t combos = 1;
  for (std::size_t k = 0; k < eqs.size(); ++k) combos *= 3;
  for (std::size_t code = 0; code < combos; ++code) {
    unsigned mask = required;
    long coeff = 1;
    std::size_t rest = code;
    for (std::size_t i : eqs) {
      switch (rest % 3) {
        case 0: mask |= 1u << (2 * i); break;
        case 1: mask |= 1u << (2 * i + 1); break;
        default: coeff = -coeff;
      }
      rest /= 3;
    }
    total += coeff * h.chi(mask);
  }
  return total;
}

unsigned sign_bits(int s, std::size_t i) {
  unsigned bits = 0;
  if (s <= 0) bits |= 1u << (2 * i);
  if (s >= 0) bits |= 1u << (2 * i + 1);
  return bits;
}

constexpr std::size_t kMaxConstraints = 6;

Cells sphere_masks(const std::vector<SignConstraint>& cs, const SphereMesh& mesh, double radius) {
  std::vector<unsigned> mask(mesh.vertices.size(), 0);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    auto s = vertex_signs(shifted(cs[i]), mesh, radius);
    for (std::size_t v = 0; v < s.size(); ++v) mask[v] |= sign_bits(s[v], i);
  }
  MaskHistogram h(2, static_cast<unsigned>(2 * cs.size()));
  for (unsigned m : mask) ++h.counts[0][m];
  for (const auto& [a, b] : mesh.edges()) ++h.counts[1][mask[a] & mask[b]];
  for (const auto& t : mesh.triangles) ++h.counts[2][mask[t[0]] & mask[t[1]] & mask[t[2]]];
  Cells c;
  c.chi = expand_equalities(cs, 0, h);
  auto n = h.cells(0);
  c.v = n[0];
  c.e = n[1];
  c.f = n[2];
  return c;
}

ChiResult refine_sphere(const std::function<Cells(const SphereMesh&)>& at_depth, const Rational& radius,
                        unsigned start_depth, unsigned max_depth, const std::string& method) {
  if (radius <= 0) throw std::invalid_argument("radius must be positive");
  std::optional<Cells> prev;
  std::string trail;
  for (unsigned d = start_depth; d <= max_depth; ++d) {
    Cells c = at_depth(cached_icosphere(d));
    trail += (trail.empty() ? "" : ",") + std::to_string(c.chi);
    if (prev && prev->chi == c.chi) {
      ChiResult out;
      out.chi = c.chi;
      out.vertices = c.v;
      out.edges = c.e;
      out.faces = c.f;
      out.method = method;
      out.parameters["radius"] = to_string(radius);
      out.parameters["depth"] = std::to_string(d);
      out.parameters["depth_values"] = trail;
      return out;
    }
    prev = c;
  }
  throw ChiUnstable("sphere Euler characteristic did not stabilize by depth " + std::to_string(max_depth) +
                    " (values " + trail + ")");
}

// A vertex-sign complex cannot see several branches of {g = 0} meeting inside
// one triangle, at any depth. Real singular points of the curve on the sphere
// are counted exactly (Hermite: signature of the trace form) and rejected.
std::string check_smooth_on_sphere(const Polynomial& g, const Rational& radius) {
  if (g.is_constant()) return "constant";
  const std::size_t n = g.arity();
  std::vector<Polynomial> gens = {g, build_rho(n) - Polynomial::constant(n, radius * radius)};
  for (auto& m : jacobian_minors(PolyMap({g}), PolyMap({build_omega(n)}), 2)) gens.push_back(m);
  GroebnerBudget budget;
  budget.max_terms = 4000;
  budget.max_basis = 800;
  try {
    GroebnerBasis gb = groebner_basis(IdealRecord{PolyMap(std::move(gens))}, budget);
    if (gb.is_unit()) return "smooth";
    auto q = quotient_basis(gb);
    if (std::holds_alternative<NotZeroDimensional>(q)) return "skipped: singular locus is not finite";
    const QuotientAlgebra& a = std::get<QuotientAlgebra>(q);
    const long real_points = signature_of_form<Rational>(a.functional_form(a.trace_functional())).signature();
    if (real_points > 0)
      throw ChiUnstable("zero curve has " + std::to_string(real_points) +
                        " singular point(s) on the sphere; the mesh complex cannot resolve them");
    return "smooth";
  } catch (const ResourceLimitExceeded&) {
    return "skipped: resource limit";
  }
}

// ---- grid ------------------------------------------------------------------

// Simplices of the Freudenthal triangulation based at a cube corner: strictly
// increasing chains of nonempty coordinate subsets.
std::vector<std::vector<unsigned>> freudenthal_chains(std::size_t n) {
  std::vector<std::vector<unsigned>> out{{}};
  std::vector<std::vector<unsigned>> frontier{{}};
  while (!frontier.empty()) {
    std::vector<std::vector<unsigned>> next;
    for (const auto& chain : frontier) {
      unsigned last = chain.empty() ? 0u : chain.back();
      for (unsigned s = 1; s < (1u << n); ++s) {
        if ((s & last) != last || s == last) continue;
        auto c = chain;
        c.push_back(s);
        next.push_back(c);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

Cells grid_at(const std::vector<SignConstraint>& cs, const RegionShape& shape, std::size_t n, unsigned N) {
  const Rational W = shape.outer * Rational(Integer(20), Integer(19));
  const Rational h = 2 * W / N;
  std::vector<std::vector<Rational>> axis_q(n);
  std::vector<std::vector<double>> axis_d(n);
  for (std::size_t d = 0; d < n; ++d) {
    Rational offset = h * Rational(Integer(static_cast<long>(d) + 2), Integer(13));
    for (unsigned i = 0; i <= N; ++i) {
      Rational x = -W + offset + h * i;
      axis_q[d].push_back(x);
      axis_d[d].push_back(to_double(x));
    }
  }
  std::vector<Polynomial> polys;
  for (const auto& c : cs) polys.push_back(shifted(c));
  const Polynomial rho = build_rho(n);
  unsigned region_bits = 0;
  const unsigned first_region_bit = static_cast<unsigned>(2 * cs.size());
  polys.push_back(rho - Polynomial::constant(n, shape.outer * shape.outer));
  region_bits |= 1u << first_region_bit;
  if (shape.kind == RegionShape::Kind::shell) {
    polys.push_back(Polynomial::constant(n, shape.inner * shape.inner) - rho);
    region_bits |= 1u << (first_region_bit + 1);
  }
  const double reach = to_double(W) * std::sqrt(static_cast<double>(n)) * 1.1;
  std::vector<SignEvaluator> evals;
  for (const auto& p : polys) evals.emplace_back(p, reach);

  std::size_t total = 1;
  for (std::size_t d = 0; d < n; ++d) total *= (N + 1);
  std::vector<unsigned> mask(total, 0);
  std::vector<double> pd(n);
  std::vector<Rational> pq(n);
  std::vector<unsigned> idx(n, 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    for (std::size_t d = 0; d < n; ++d) {
      idx[d] = static_cast<unsigned>(rest % (N + 1));
      rest /= (N + 1);
      pd[d] = axis_d[d][idx[d]];
      pq[d] = axis_q[d][idx[d]];
    }
    unsigned m = 0;
    for (std::size_t i = 0; i < cs.size(); ++i) m |= sign_bits(evals[i].sign(pd, pq), i);
    for (std::size_t r = cs.size(); r < polys.size(); ++r)
      if (evals[r].sign(pd, pq) <= 0) m |= 1u << (first_region_bit + (r - cs.size()));
    mask[flat] = m;
  }

  const auto chains = freudenthal_chains(n);
  std::vector<std::size_t> stride(n);
  stride[0] = 1;
  for (std::size_t d = 1; d < n; ++d) stride[d] = stride[d - 1] * (N + 1);
  std::vector<std::size_t> offset(1u << n, 0);
  for (unsigned s = 0; s < (1u << n); ++s)
    for (std::size_t d = 0; d < n; ++d)
      if (s & (1u << d)) offset[s] += stride[d];

  MaskHistogram hist(n, first_region_bit + (shape.kind == RegionShape::Kind::shell ? 2 : 1));
  for (std::size_t flat = 0; flat < total; ++flat) {
    std::size_t rest = flat;
    unsigned room = 0;  // coordinates that can still step up
    for (std::size_t d = 0; d < n; ++d) {
      if (rest % (N + 1) < N) room |= 1u << d;
      rest /= (N + 1);
    }
    const unsigned base = mask[flat];
    if ((base & region_bits) != region_bits) continue;
    for (const auto& chain : chains) {
      if (!chain.empty() && (chain.back() & room) != chain.back()) continue;
      unsigned m = base;
      for (unsigned s : chain) m &= mask[flat + offset[s]];
      ++hist.counts[chain.size()][m];
    }
  }
  Cells c;
  c.chi = expand_equalities(cs, region_bits, hist);
  auto counts = hist.cells(region_bits);
  c.v = counts[0];
  c.e = counts[1];
  c.f = counts.size() > 2 ? counts[2] : 0;
  return c;
}

}  // namespace

ChiResult chi_on_circle(const SignConstraint& c, const Rational& radius) { return circle_impl({c}, radius); }

ChiResult chi_on_sphere2(const SignConstraint& c, const Rational& radius, unsigned start_depth, unsigned max_depth) {
  require_arity({c}, 3);
  const double r = to_double(radius);
  const Polynomial g = shifted(c);
  const std::string smooth = check_smooth_on_sphere(g, radius);
  ChiResult out =
      refine_sphere([&](const SphereMesh& mesh) { return pl_sign_complex(vertex_signs(g, mesh, r), mesh, c.relation); },
                    radius, start_depth, max_depth, "sphere_pl");
  out.parameters["singular_check"] = smooth;
  return out;
}

ChiResult chi_on_sphere2(const std::vector<SignConstraint>& cs, const Rational& radius, unsigned start_depth,
                         unsigned max_depth) {
  require_arity(cs, 3);
  if (cs.size() == 1) return chi_on_sphere2(cs.front(), radius, start_depth, max_depth);
  if (cs.size() > kMaxConstraints) throw std::invalid_argument("too many constraints");
  const double r = to_double(radius);
  std::string smooth;
  for (const auto& c : cs) smooth += (smooth.empty() ? "" : ",") + check_smooth_on_sphere(shifted(c), radius);
  ChiResult out = refine_sphere([&](const SphereMesh& mesh) { return sphere_masks(cs, mesh, r); }, radius,
                                start_depth, max_depth, "sphere_vertex_induced");
  out.parameters["singular_check"] = smooth;
  return out;
}

ChiResult chi_on_sphere(const std::vector<SignConstraint>& cs, const Rational& radius) {
  if (cs.empty()) throw std::invalid_argument("no constraints given");
  const std::size_t n = cs.front().f.arity();
  if (n == 1) {
    // S^0: two points.
    ChiResult out;
    out.method = "two_points";
    out.vertices = 2;
    out.parameters["radius"] = to_string(radius);
    for (const Rational& x : {-radius, radius}) {
      bool in = true;
      for (const auto& c : cs) {
        std::array<Rational, 1> p{x};
        in = in && accepts(c.relation, shifted(c).evaluate(std::span<const Rational>(p)).sign());
      }
      if (in) ++out.chi;
    }
    return out;
  }
  if (n == 2) return circle_impl(cs, radius);
  if (n == 3) return chi_on_sphere2(cs, radius);
  throw std::invalid_argument("sphere oracle supports 1, 2 or 3 variables, got " + std::to_string(n));
}

ChiResult chi_region_grid(const std::vector<SignConstraint>& cs, const RegionShape& shape) {
  require_arity(cs, cs.front().f.arity());
  const std::size_t n = cs.front().f.arity();
  if (n < 2 || n > 3) throw std::invalid_argument("grid oracle supports 2 or 3 variables");
  if (cs.size() > kMaxConstraints) throw std::invalid_argument("too many constraints");
  if (shape.outer <= 0 || (shape.kind == RegionShape::Kind::shell && !(shape.inner > 0 && shape.inner < shape.outer)))
    throw std::invalid_argument("invalid region radii");
  const std::vector<unsigned> schedule = n == 2 ? std::vector<unsigned>{64, 128, 256, 512, 1024}
                                                : std::vector<unsigned>{16, 32, 64, 128};
  std::optional<long> prev;
  std::string trail;
  for (unsigned N : schedule) {
    Cells c = grid_at(cs, shape, n, N);
    trail += (trail.empty() ? "" : ",") + std::to_string(c.chi);
    if (prev && *prev == c.chi) {
      ChiResult out;
      out.chi = c.chi;
      out.vertices = c.v;
      out.edges = c.e;
      out.faces = c.f;
      out.method = "freudenthal_grid";
      out.parameters["resolution"] = std::to_string(N);
      out.parameters["resolution_values"] = trail;
      out.parameters["outer"] = to_string(shape.outer);
      if (shape.kind == RegionShape::Kind::shell) out.parameters["inner"] = to_string(shape.inner);
      return out;
    }
    prev = c.chi;
  }
  throw ChiUnstable("grid Euler characteristic did not stabilize (values " + trail + ")");
}

namespace {

ChiResult radius_schedule(const std::vector<SignConstraint>& cs, Rational radius, bool shrink, const std::string& name) {
  std::optional<ChiResult> prev;
  std::string trail;
  std::string last_error;
  for (int step = 0; step < (shrink ? 8 : 7); ++step, radius = shrink ? radius / 2 : radius * 2) {
    try {
      ChiResult r = chi_on_sphere(cs, radius);
      trail += (trail.empty() ? "" : ",") + std::to_string(r.chi);
      if (prev && prev->chi == r.chi) {
        r.parameters["radius_values"] = trail;
        r.parameters["schedule"] = name;
        return r;
      }
      prev = r;
    } catch (const ChiUnstable& e) {
      trail += (trail.empty() ? "" : ",") + std::string("?");
      last_error = e.what();
      prev.reset();
    }
  }
  throw ChiUnstable("link Euler characteristic did not stabilize over the " + name + " schedule (values " + trail +
                    (last_error.empty() ? ")" : "; " + last_error + ")"));
}

}  // namespace

ChiResult chi_link_origin_oracle(const std::vector<SignConstraint>& cs) {
  return radius_schedule(cs, Rational(Integer(1), Integer(8)), true, "halving from 1/8");
}

ChiResult chi_link_infinity_oracle(const std::vector<SignConstraint>& cs) {
  return radius_schedule(cs, Rational(16), false, "doubling from 16");
}

}  // namespace milnor
