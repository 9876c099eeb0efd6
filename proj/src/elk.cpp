#include "milnor/elk.hpp"

#include <unordered_map>

namespace milnor {

std::string to_string(DegreeMethod m) {
  switch (m) {
    case DegreeMethod::local_signature: return "local_signature";
    case DegreeMethod::infinity_signature: return "infinity_signature";
    case DegreeMethod::infinity_bezoutian: return "infinity_bezoutian";
    case DegreeMethod::winding_oracle: return "winding_oracle";
    case DegreeMethod::solid_angle_oracle: return "solid_angle_oracle";
  }
  return "unknown";
}

SignatureTriple signature_of_form(const BilinearFormRecord& form) {
  return signature_of_form<Rational>(form.matrix);
}

namespace {

void require_square(const PolyMap& F) {
  if (F.size() != F.arity())
    throw std::invalid_argument("degree needs a map R^n -> R^n, got " + std::to_string(F.size()) +
                                " components in " + std::to_string(F.arity()) + " variables");
}

GroebnerBasis truncated_basis(const PolyMap& F, unsigned power, const GroebnerBudget& budget) {
  std::vector<Polynomial> gens = F.components();
  for (std::size_t i = 0; i < F.arity(); ++i)
    gens.push_back(Polynomial::monomial(F.arity(), Monomial::variable(i, power)));
  return groebner_basis({PolyMap(std::move(gens))}, budget);
}

}  // namespace

QuotientAlgebra local_algebra(const PolyMap& F, const GroebnerBudget& budget, unsigned max_power) {
  for (unsigned power = 4; power <= max_power; power *= 2) {
    QuotientAlgebra a = quotient_algebra(truncated_basis(F, power, budget));
    QuotientAlgebra b = quotient_algebra(truncated_basis(F, power + 1, budget));
    if (a.dimension() == b.dimension()) return a;
  }
  throw OriginNotIsolated("the origin is not an isolated zero over the complex numbers (local algebra "
                          "did not stabilize up to power " + std::to_string(max_power) + ")");
}

BilinearFormRecord functional_form_record(const QuotientAlgebra& algebra, const RationalVector& phi,
                                          std::string tag) {
  return {algebra.basis(), algebra.functional_form(phi), std::move(tag)};
}

DegreeResult local_degree_elk(const PolyMap& map, const GroebnerBudget& budget) {
  require_square(map);
  DegreeResult out;
  out.method = DegreeMethod::local_signature;
  QuotientAlgebra a = local_algebra(map, budget);
  out.parameters["local_dimension"] = std::to_string(a.dimension());
  if (a.dimension() == 0) {
    out.diagnostics.push_back("origin is not a zero of the map");
    return out;
  }
  RationalVector c = a.coordinates(jacobian_determinant(map));
  Rational norm = c.squaredNorm();
  if (norm.is_zero()) throw DegenerateFunctional("Jacobian determinant vanishes in the local algebra");
  RationalVector phi = c / norm;
  auto form = functional_form_record(a, phi, "dual to the Jacobian class");
  SignatureTriple s = signature_of_form(form);
  out.degree = s.signature();
  out.parameters["signature"] = "(" + std::to_string(s.positive) + "," + std::to_string(s.negative) +
                                "," + std::to_string(s.zero) + ")";
  return out;
}

BilinearFormRecord bezoutian_form(const PolyMap& map, const QuotientAlgebra& algebra) {
  require_square(map);
  const std::size_t n = map.arity();
  if (2 * n > kMaxVariables) throw std::invalid_argument("Bezoutian needs 2n variables");
  const std::size_t m = 2 * n;  // x_i -> i, y_i -> n + i
  std::vector<std::vector<Polynomial>> delta(n, std::vector<Polynomial>(n, Polynomial(m)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Term> terms;
      for (const auto& t : map[i].terms()) {
        const unsigned a = t.monomial[j];
        if (a == 0) continue;
        Monomial rest;
        for (std::size_t v = 0; v < j; ++v) rest.set(n + v, t.monomial[v]);
        for (std::size_t v = j + 1; v < n; ++v) rest.set(v, t.monomial[v]);
        for (unsigned s = 0; s < a; ++s) {
          Monomial mono = rest;
          mono.set(j, s);
          mono.set(n + j, a - 1 - s);
          terms.push_back({mono, t.coeff});
        }
      }
      delta[i][j] = Polynomial::from_terms(m, std::move(terms));
    }
  }
  Polynomial theta = determinant(delta);

  const auto dim = static_cast<Eigen::Index>(algebra.dimension());
  // Group by the x-part, reducing the y-part first.
  std::unordered_map<Monomial, RationalVector, MonomialHash> by_x;
  for (const auto& t : theta.terms()) {
    Monomial xm, ym;
    for (std::size_t v = 0; v < n; ++v) {
      xm.set(v, t.monomial[v]);
      ym.set(v, t.monomial[n + v]);
    }
    auto it = by_x.find(xm);
    if (it == by_x.end()) it = by_x.emplace(xm, RationalVector::Zero(dim)).first;
    it->second += t.coeff * algebra.monomial_coordinates(ym);
  }
  RationalMatrix b = RationalMatrix::Zero(dim, dim);
  for (const auto& [xm, u] : by_x) b += algebra.monomial_coordinates(xm) * u.transpose();
  if (!(b == b.transpose())) throw std::logic_error("Bezoutian matrix is not symmetric");
  return {algebra.basis(), std::move(b), "Bezoutian"};
}

DegreeResult degree_at_infinity_elk(const PolyMap& map, const GroebnerBudget& budget) {
  require_square(map);
  DegreeResult out;
  out.method = DegreeMethod::infinity_signature;
  QuotientAlgebra a = quotient_algebra(groebner_basis({map}, budget));
  out.parameters["dimension"] = std::to_string(a.dimension());
  if (a.dimension() == 0) {
    out.diagnostics.push_back("no complex zeros");
    return out;
  }
  RationalVector t = a.trace_functional();
  RationalVector cj = a.coordinates(jacobian_determinant(map));
  RationalVector ell = a.functional_form(t) * cj;
  auto form = functional_form_record(a, ell, "trace twisted by the Jacobian");
  SignatureTriple s = signature_of_form(form);
  if (s.zero == 0) {
    out.degree = s.signature();
    out.parameters["signature"] = "(" + std::to_string(s.positive) + "," + std::to_string(s.negative) + ",0)";
    return out;
  }
  // Multiple zeros: the twisted trace form loses them, the Bezoutian does not.
  out.method = DegreeMethod::infinity_bezoutian;
  out.diagnostics.push_back("twisted trace form degenerate (rank " + std::to_string(s.rank()) +
                            "); used the Bezoutian form");
  SignatureTriple sb = signature_of_form(bezoutian_form(map, a));
  if (sb.zero != 0) throw std::logic_error("Bezoutian form is degenerate");
  out.degree = sb.signature();
  out.parameters["signature"] = "(" + std::to_string(sb.positive) + "," + std::to_string(sb.negative) + ",0)";
  return out;
}

PolyMap positive_rescale_reduction(const RationalFunctionMap& map) { return map.numerators; }

}  // namespace milnor
