#include "milnor/parser.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <optional>
#include <set>

namespace milnor {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

struct ComplexValue {
  Polynomial re;
  Polynomial im;

  ComplexValue& operator+=(const ComplexValue& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ComplexValue& operator-=(const ComplexValue& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  friend ComplexValue operator*(const ComplexValue& a, const ComplexValue& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  ComplexValue& operator*=(const Rational& q) {
    re *= q;
    im *= q;
    return *this;
  }
  ComplexValue operator-() const { return {-re, -im}; }
};

// Builds real values (Polynomial) or complex values (ComplexValue).
struct RealAlgebra {
  using Value = Polynomial;
  std::size_t arity;
  const std::vector<std::string>& names;

  Value constant(const Rational& q) const { return Polynomial::constant(arity, q); }
  std::optional<Value> identifier(const std::string& name) const {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) return std::nullopt;
    return Polynomial::variable(arity, static_cast<std::size_t>(it - names.begin()));
  }
  static Value power(const Value& v, unsigned e) { return pow(v, e); }
};

struct ComplexAlgebra {
  using Value = ComplexValue;
  std::size_t arity;
  const std::vector<std::string>& names;

  Value constant(const Rational& q) const {
    return {Polynomial::constant(arity, q), Polynomial(arity)};
  }
  std::optional<Value> identifier(const std::string& name) const {
    auto it = std::find(names.begin(), names.end(), name);
    if (it != names.end()) {
      auto j = static_cast<std::size_t>(it - names.begin());
      return Value{Polynomial::variable(arity, 2 * j), Polynomial::variable(arity, 2 * j + 1)};
    }
    if (name == "I") return Value{Polynomial(arity), Polynomial::constant(arity, Rational(1))};
    return std::nullopt;
  }
  Value power(const Value& v, unsigned e) const {
    Value result = constant(Rational(1));
    Value base = v;
    while (e > 0) {
      if (e & 1u) result = result * base;
      e >>= 1;
      if (e > 0) base = base * base;
    }
    return result;
  }
};

template <typename Algebra>
class Parser {
 public:
  using Value = typename Algebra::Value;

  Parser(std::string_view text, const Algebra& algebra) : text_(text), alg_(algebra) {}

  Value parse_all() {
    Value v = expr();
    skip();
    if (pos_ < text_.size()) fail(std::string("unexpected character '") + text_[pos_] + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, pos_); }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Integer integer_literal() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && digit(text_[pos_])) ++pos_;
    if (start == pos_) fail("expected an integer");
    return Integer(std::string(text_.substr(start, pos_ - start)));
  }

  Value expr() {
    bool negate = accept('-');
    Value v = term();
    if (negate) v = -v;
    for (;;) {
      if (accept('+'))
        v += term();
      else if (accept('-'))
        v -= term();
      else
        return v;
    }
  }

  Value term() {
    Value v = factor();
    for (;;) {
      if (accept('*')) {
        v = v * factor();
      } else if (accept('/')) {
        skip();
        std::size_t at = pos_;
        if (pos_ < text_.size() && text_[pos_] == '(')
          fail("division is only allowed by an integer literal");
        Integer d = integer_literal();
        if (d == 0) {
          pos_ = at;
          fail("zero denominator");
        }
        v *= Rational(Integer(1), d);
      } else {
        return v;
      }
    }
  }

  Value factor() {
    Value v = base();
    if (accept('^')) {
      skip();
      std::size_t at = pos_;
      if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '('))
        fail("exponent must be a non-negative integer");
      Integer e = integer_literal();
      skip();
      if (pos_ < text_.size() && (text_[pos_] == '/' || text_[pos_] == '.')) {
        fail("exponent must be a non-negative integer");
      }
      if (e > 65535) {
        pos_ = at;
        fail("exponent too large");
      }
      v = alg_.power(v, e.template convert_to<unsigned>());
    }
    return v;
  }

  Value base() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Value v = expr();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (digit(c)) {
      Integer num = integer_literal();
      return alg_.constant(Rational(num));
    }
    if (ident_start(c)) {
      std::size_t start = pos_;
      while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      auto v = alg_.identifier(name);
      if (!v) {
        pos_ = start;
        fail("unknown identifier '" + name + "'");
      }
      return *v;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view text_;
  const Algebra& alg_;
  std::size_t pos_ = 0;
};

void check_variables(const std::vector<std::string>& variables) {
  if (variables.empty()) throw std::invalid_argument("empty variable list");
  if (variables.size() > kMaxVariables)
    throw std::invalid_argument("at most " + std::to_string(kMaxVariables) + " variables");
  std::set<std::string> seen;
  for (const auto& v : variables) {
    if (v.empty() || !ident_start(v[0]) || !std::all_of(v.begin(), v.end(), ident_char))
      throw std::invalid_argument("invalid variable name '" + v + "'");
    if (!seen.insert(v).second) throw std::invalid_argument("duplicate variable '" + v + "'");
  }
}

// Splits at top-level commas, keeping offsets for error positions.
std::vector<std::pair<std::size_t, std::string_view>> split_commas(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> parts;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || (text[i] == ',' && depth == 0)) {
      parts.emplace_back(start, text.substr(start, i - start));
      start = i + 1;
    } else if (text[i] == '(') {
      ++depth;
    } else if (text[i] == ')') {
      --depth;
    }
  }
  return parts;
}

}  // namespace

Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& variables) {
  check_variables(variables);
  RealAlgebra alg{variables.size(), variables};
  return Parser<RealAlgebra>(text, alg).parse_all();
}

PolyMap parse_map(std::string_view text, const std::vector<std::string>& variables) {
  std::vector<Polynomial> comps;
  for (auto [offset, part] : split_commas(text)) {
    try {
      comps.push_back(parse_polynomial(part, variables));
    } catch (const ParseError& e) {
      std::string msg = e.what();
      msg = msg.substr(0, msg.rfind(" at position "));
      throw ParseError(msg, offset + e.position());
    }
  }
  return PolyMap(std::move(comps));
}

std::vector<std::string> parse_variable_list(std::string_view text) {
  std::vector<std::string> out;
  for (auto [offset, part] : split_commas(text)) {
    std::string name(part);
    name.erase(std::remove_if(name.begin(), name.end(),
                              [](char c) { return std::isspace(static_cast<unsigned char>(c)); }),
               name.end());
    out.push_back(name);
  }
  check_variables(out);
  return out;
}

RealifiedPolynomial parse_complex_polynomial(std::string_view text,
                                             const std::vector<std::string>& complex_variables) {
  if (complex_variables.size() * 2 > kMaxVariables)
    throw std::invalid_argument("too many complex variables");
  check_variables(complex_variables);
  ComplexAlgebra alg{complex_variables.size() * 2, complex_variables};
  ComplexValue v = Parser<ComplexAlgebra>(text, alg).parse_all();
  RealifiedPolynomial out{{}, v.re, v.im};
  for (const auto& z : complex_variables) {
    out.real_variables.push_back(z + "_re");
    out.real_variables.push_back(z + "_im");
  }
  return out;
}

}  // namespace milnor
