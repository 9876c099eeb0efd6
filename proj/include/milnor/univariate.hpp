#pragma once

#include "milnor/rational.hpp"

#include <vector>

namespace milnor {

/// Dense univariate polynomial, coefficients in ascending degree, no trailing zeros.
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<Rational> coeffs);

  static UPoly constant(const Rational& c) { return UPoly({c}); }
  static UPoly x() { return UPoly({Rational(0), Rational(1)}); }

  bool is_zero() const { return c_.empty(); }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  const Rational& leading() const { return c_.back(); }

  Rational evaluate(const Rational& t) const;
  int sign_at(const Rational& t) const { return evaluate(t).sign(); }
  UPoly derivative() const;

  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const Rational& s, const UPoly& a);
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  // a = q * b + r with deg r < deg b.
  static void divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r);

 private:
  void trim();
  std::vector<Rational> c_;
};

UPoly pow(const UPoly& p, unsigned e);
UPoly gcd(UPoly a, UPoly b);
UPoly square_free_part(const UPoly& p);

/// Sturm sequence of a square-free polynomial.
class SturmSequence {
 public:
  explicit SturmSequence(const UPoly& p);
  // Sign variations at t.
  int variations(const Rational& t) const;
  // Distinct real roots in (a, b].
  int count_roots(const Rational& a, const Rational& b) const;

 private:
  std::vector<UPoly> seq_;
};

// Bound B with every real root in (-B, B).
Rational cauchy_bound(const UPoly& p);

/// Disjoint isolating intervals (lo, hi) in increasing order, one root each;
/// endpoints are never roots. Multiple roots are reported once.
struct RootInterval {
  Rational lo, hi;
};
std::vector<RootInterval> isolate_real_roots(const UPoly& p);

}  // namespace milnor
