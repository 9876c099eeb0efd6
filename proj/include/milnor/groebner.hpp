#pragma once

#include "milnor/polynomial.hpp"

#include <stdexcept>
#include <vector>

namespace milnor {

struct GroebnerBudget {
  std::size_t max_terms = 20000;   // per intermediate polynomial
  std::size_t max_basis = 4000;    // basis elements, including discarded ones
  unsigned max_degree = 400;
  double max_seconds = 0;          // wall clock, 0 = no limit
};

class ResourceLimitExceeded : public std::runtime_error {
 public:
  ResourceLimitExceeded(const std::string& what, std::size_t partial_basis_size)
      : std::runtime_error(what + " (partial basis size " + std::to_string(partial_basis_size) + ")"),
        partial_basis_size_(partial_basis_size) {}
  std::size_t partial_basis_size() const { return partial_basis_size_; }

 private:
  std::size_t partial_basis_size_;
};

struct IdealRecord {
  PolyMap generators;
  MonomialOrder order = MonomialOrder::grevlex;
};

/// Reduced, monic Groebner basis. Elements are sorted by increasing leading
/// monomial in the basis order.
class GroebnerBasis {
 public:
  GroebnerBasis(std::size_t arity, MonomialOrder order, std::vector<Polynomial> elements);

  std::size_t arity() const { return arity_; }
  MonomialOrder order() const { return order_; }
  const std::vector<Polynomial>& elements() const { return elements_; }
  const std::vector<Monomial>& leading_monomials() const { return leading_; }
  std::size_t size() const { return elements_.size(); }
  // True iff the ideal is the whole ring.
  bool is_unit() const;

 private:
  std::size_t arity_;
  MonomialOrder order_;
  std::vector<Polynomial> elements_;
  std::vector<Monomial> leading_;
  // Elements with terms sorted by the basis order.
  std::vector<std::vector<Term>> ordered_;

  friend Polynomial normal_form(const Polynomial& p, const GroebnerBasis& gb);
};

// Leading monomial of p under the given order; p must be non-zero.
Monomial leading_monomial(const Polynomial& p, MonomialOrder order);

GroebnerBasis groebner_basis(const IdealRecord& ideal, const GroebnerBudget& budget = {});

Polynomial normal_form(const Polynomial& p, const GroebnerBasis& gb);

// Every S-polynomial of the elements reduces to zero.
bool is_groebner_basis(const GroebnerBasis& gb);

}  // namespace milnor
