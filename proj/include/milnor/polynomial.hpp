#pragma once

#include "milnor/monomial.hpp"
#include "milnor/rational.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace milnor {

class ArityMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Term {
  Monomial monomial;
  Rational coeff;
};

class PolyMap;

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are kept sorted by descending graded reverse lexicographic order and
/// never carry a zero coefficient, so structural equality is mathematical
/// equality. Variables are positional; names only exist at the I/O layer.
class Polynomial {
 public:
  explicit Polynomial(std::size_t arity = 1);

  static Polynomial constant(std::size_t arity, const Rational& value);
  static Polynomial variable(std::size_t arity, std::size_t index);
  static Polynomial monomial(std::size_t arity, const Monomial& m,
                             const Rational& coeff = Rational(1));
  // Accepts terms in any order, with duplicates and zeros.
  static Polynomial from_terms(std::size_t arity, std::vector<Term> terms);

  std::size_t arity() const { return arity_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  unsigned total_degree() const;
  // Smallest total degree of a term; 0 for the zero polynomial.
  unsigned order() const;
  const Term& leading_term() const { return terms_.front(); }
  Rational coefficient(const Monomial& m) const;
  Rational constant_term() const { return coefficient(Monomial()); }

  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Polynomial& rhs);
  Polynomial& operator*=(const Rational& factor);

  friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
  friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
  friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs);
  friend Polynomial operator*(Polynomial lhs, const Rational& f) { return lhs *= f; }
  friend Polynomial operator*(const Rational& f, Polynomial rhs) { return rhs *= f; }
  friend Polynomial operator-(Polynomial p);
  friend bool operator==(const Polynomial& a, const Polynomial& b);

  Rational evaluate(std::span<const Rational> point) const;
  double evaluate(std::span<const double> point) const;

  Polynomial derivative(std::size_t index) const;
  // p(x + shift)
  Polynomial translate(std::span<const Rational> shift) const;
  // p(s_1(y), ..., s_n(y)); the result has the arity of the substitution.
  Polynomial compose(const PolyMap& substitution) const;
  // Re-index into a larger ring: variable i becomes variable target[i].
  Polynomial embed(std::size_t new_arity, std::span<const std::size_t> target) const;

  // Sum of |coefficient| * radius^degree; bounds |p| on the ball of that radius.
  double magnitude_bound(double radius) const;

 private:
  std::size_t arity_;
  std::vector<Term> terms_;
};

Polynomial pow(const Polynomial& p, unsigned exponent);

/// Ordered, non-empty tuple of polynomials sharing one arity.
class PolyMap {
 public:
  explicit PolyMap(std::vector<Polynomial> components);

  std::size_t size() const { return components_.size(); }
  std::size_t arity() const { return components_.front().arity(); }
  const Polynomial& operator[](std::size_t i) const { return components_[i]; }
  const std::vector<Polynomial>& components() const { return components_; }
  auto begin() const { return components_.begin(); }
  auto end() const { return components_.end(); }

  std::vector<Rational> evaluate(std::span<const Rational> point) const;
  std::vector<double> evaluate(std::span<const double> point) const;

  PolyMap translate(std::span<const Rational> shift) const;
  PolyMap operator-() const;
  friend bool operator==(const PolyMap& a, const PolyMap& b) {
    return a.components_ == b.components_;
  }

 private:
  std::vector<Polynomial> components_;
};

/// Numerators over a common denominator omega^k (omega = 1 + |x|^2 / 2).
struct RationalFunctionMap {
  PolyMap numerators;
  unsigned omega_power = 0;

  Polynomial denominator() const;
};

/// A single function numerator / omega^k.
struct OmegaFraction {
  Polynomial numerator;
  unsigned omega_power = 0;

  RationalFunctionMap gradient() const;
};

Polynomial differentiate(const Polynomial& p, std::size_t index);
PolyMap gradient(const Polynomial& p);

// x_1^2 + ... + x_n^2
Polynomial build_rho(std::size_t n);
// 1 + (x_1^2 + ... + x_n^2) / 2
Polynomial build_omega(std::size_t n);
// h_1^2 + ... + h_s^2
Polynomial build_sum_of_squares(const PolyMap& h);

// Determinant of a square matrix of polynomials.
Polynomial determinant(const std::vector<std::vector<Polynomial>>& matrix);

// Rows are the gradients of F's components.
std::vector<std::vector<Polynomial>> jacobian(const PolyMap& F);
Polynomial jacobian_determinant(const PolyMap& F);

/// All minor_size x minor_size minors of the matrix whose rows are the
/// gradients of F's components followed by those of extra_rows. Row subsets
/// are enumerated lexicographically, and column subsets inside each.
std::vector<Polynomial> jacobian_minors(const PolyMap& F,
                                        const std::optional<PolyMap>& extra_rows,
                                        std::size_t minor_size);

std::vector<std::string> default_variable_names(std::size_t n);

// Canonical text form; see parser.hpp for the grammar it round-trips through.
std::string to_string(const Polynomial& p, std::span<const std::string> names);
std::string to_string(const Polynomial& p);
std::string to_string(const PolyMap& F, std::span<const std::string> names);

}  // namespace milnor
