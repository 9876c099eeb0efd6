#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

#include <string>
#include <string_view>

namespace milnor {

// Expression templates are disabled so the scalar composes cleanly with Eigen.
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using RationalMatrix = MatrixX<Rational>;
using RationalVector = VectorX<Rational>;

inline Rational make_rational(long num, long den = 1) {
  return Rational(Integer(num), Integer(den));
}

inline int sign_of(const Rational& q) { return q.sign(); }

// "a/b", with "/b" omitted when b == 1.
inline std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

// Parses "a" or "a/b" (optional leading sign). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

// Exact binary value of a finite double.
Rational rational_from_double(double value);

inline double to_double(const Rational& q) { return q.convert_to<double>(); }

}  // namespace milnor
