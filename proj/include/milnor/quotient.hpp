#pragma once

#include "milnor/groebner.hpp"
#include "milnor/rational.hpp"

#include <unordered_map>
#include <variant>
#include <vector>

namespace milnor {

// A variable with no pure power among the leading monomials.
struct NotZeroDimensional {
  std::size_t variable;
};

class NotZeroDimensionalError : public std::runtime_error {
 public:
  explicit NotZeroDimensionalError(std::size_t variable)
      : std::runtime_error("ideal is not zero-dimensional (no pure power of variable " +
                           std::to_string(variable) + ")"),
        variable_(variable) {}
  std::size_t variable() const { return variable_; }

 private:
  std::size_t variable_;
};

// Sparse column storage of a square matrix: col[j] lists (row, value).
using SparseColumns = std::vector<std::vector<std::pair<std::size_t, Rational>>>;

/// Finite-dimensional quotient Q[x]/I presented by standard monomials.
///
/// basis()[0] is 1 whenever the dimension is positive, and every other basis
/// monomial is x_v * basis()[parent] for an earlier parent.
class QuotientAlgebra {
 public:
  QuotientAlgebra(GroebnerBasis gb, std::vector<Monomial> basis);

  const GroebnerBasis& groebner() const { return gb_; }
  const std::vector<Monomial>& basis() const { return basis_; }
  std::size_t dimension() const { return basis_.size(); }
  std::size_t arity() const { return gb_.arity(); }

  // Multiplication by x_i.
  RationalMatrix variable_matrix(std::size_t i) const;
  const SparseColumns& variable_columns(std::size_t i) const { return mult_[i]; }

  RationalVector coordinates(const Polynomial& p) const;
  Polynomial element(const RationalVector& coords) const;

  // Coordinates of a monomial, via the multiplication matrices; memoized.
  const RationalVector& monomial_coordinates(const Monomial& m) const;

  RationalMatrix multiplication_matrix(const Polynomial& p) const;

  // x_v * v in coordinates, and the row vector r * M_{x_v}.
  RationalVector multiply_variable(std::size_t v, const RationalVector& x) const;
  RationalVector functional_times_variable(const RationalVector& r, std::size_t v) const;

  // B(j,k) = ell(b_j * b_k) for a linear functional ell given in coordinates.
  RationalMatrix functional_form(const RationalVector& ell) const;

  // t(a) = Trace(multiplication by a), in coordinates.
  RationalVector trace_functional() const;

  bool origin_is_only_zero() const;
  bool matrices_commute() const;

  std::size_t parent(std::size_t j) const { return parent_[j]; }
  std::size_t parent_variable(std::size_t j) const { return parent_var_[j]; }
  // Index of a standard monomial, or -1.
  long index_of(const Monomial& m) const;

 private:
  GroebnerBasis gb_;
  std::vector<Monomial> basis_;
  std::unordered_map<Monomial, std::size_t, MonomialHash> index_;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> parent_var_;
  std::vector<SparseColumns> mult_;
  mutable std::unordered_map<Monomial, RationalVector, MonomialHash> monomial_cache_;
};

std::variant<QuotientAlgebra, NotZeroDimensional> quotient_basis(const GroebnerBasis& gb);

// Throws NotZeroDimensionalError instead of returning the marker.
QuotientAlgebra quotient_algebra(const GroebnerBasis& gb);

}  // namespace milnor
