#pragma once

#include "milnor/parser.hpp"
#include "milnor/polynomial.hpp"
#include "milnor/rational.hpp"

#include <random>
#include <string>
#include <vector>

namespace testing_support {

using namespace milnor;

inline std::vector<std::string> xy() { return {"x", "y"}; }
inline std::vector<std::string> xyz() { return {"x", "y", "z"}; }

inline Polynomial P(const std::string& text, const std::vector<std::string>& vars = xy()) {
  return parse_polynomial(text, vars);
}

inline PolyMap M(const std::string& text, const std::vector<std::string>& vars = xy()) { return parse_map(text, vars); }

inline Rational Q(long n, long d = 1) { return make_rational(n, d); }

// Small random polynomial: up to `terms` terms, exponents < 4, coefficients p/q with |p| <= 9, q <= 4.
inline Polynomial random_polynomial(std::mt19937& gen, std::size_t arity, std::size_t terms = 5) {
  std::uniform_int_distribution<int> exp(0, 3), num(-9, 9), den(1, 4);
  std::vector<Term> ts;
  for (std::size_t t = 0; t < terms; ++t) {
    Monomial m;
    for (std::size_t i = 0; i < arity; ++i) m.set(i, static_cast<unsigned>(exp(gen)));
    ts.push_back({m, make_rational(num(gen), den(gen))});
  }
  return Polynomial::from_terms(arity, ts);
}

inline std::vector<Rational> random_point(std::mt19937& gen, std::size_t arity) {
  std::uniform_int_distribution<int> num(-7, 7), den(1, 5);
  std::vector<Rational> v;
  for (std::size_t i = 0; i < arity; ++i) v.push_back(make_rational(num(gen), den(gen)));
  return v;
}

}  // namespace testing_support

#include "milnor/elk.hpp"

namespace testing_support {

// Signatures of phi(a b) on the local algebra of F for `count` random
// rational phi with phi(J) > 0 (others rejected).
inline std::vector<long> random_functional_signatures(const PolyMap& F, int count, unsigned seed) {
  QuotientAlgebra a = local_algebra(F);
  RationalVector c = a.coordinates(jacobian_determinant(F));
  std::mt19937 gen(seed);
  std::uniform_int_distribution<int> num(-20, 20), den(1, 7);
  std::vector<long> out;
  while (static_cast<int>(out.size()) < count) {
    RationalVector phi(c.size());
    for (Eigen::Index i = 0; i < phi.size(); ++i) phi[i] = make_rational(num(gen), den(gen));
    Rational at_j(0);
    for (Eigen::Index i = 0; i < phi.size(); ++i) at_j += phi[i] * c[i];
    if (at_j <= 0) continue;
    out.push_back(signature_of_form(functional_form_record(a, phi, "random")).signature());
  }
  return out;
}

}  // namespace testing_support
