#pragma once

#include "milnor/polynomial.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace milnor {

class ParseError : public std::invalid_argument {
 public:
  ParseError(const std::string& message, std::size_t position)
      : std::invalid_argument(message + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

// Grammar:
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor ('*' factor | '/' posint)*
//   factor := base ('^' nonneg-int)?
//   base   := rational | ident | '(' expr ')'
Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& variables);

// Comma-separated components.
PolyMap parse_map(std::string_view text, const std::vector<std::string>& variables);

// "x,y,z" -> {"x","y","z"}; rejects duplicates and malformed names.
std::vector<std::string> parse_variable_list(std::string_view text);

/// Real and imaginary parts of a complex polynomial with rational coefficients.
///
/// Each complex variable z becomes the pair z_re, z_im, ordered
/// (z1_re, z1_im, z2_re, z2_im, ...). The identifier `I` denotes the imaginary
/// unit unless it is itself declared as a variable.
struct RealifiedPolynomial {
  std::vector<std::string> real_variables;
  Polynomial real_part;
  Polynomial imaginary_part;
};

RealifiedPolynomial parse_complex_polynomial(std::string_view text,
                                             const std::vector<std::string>& complex_variables);

}  // namespace milnor
