#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace milnor {

inline constexpr std::size_t kMaxVariables = 8;

// Exponent vector of a monomial. Positional: index 0 is the largest variable.
class Monomial {
 public:
  Monomial() = default;

  static Monomial variable(std::size_t index, unsigned power = 1);

  unsigned operator[](std::size_t i) const { return exps_[i]; }
  void set(std::size_t i, unsigned exponent);
  unsigned degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }

  bool divides(const Monomial& other) const;
  bool coprime(const Monomial& other) const;

  Monomial operator*(const Monomial& other) const;
  // Requires divisor.divides(*this).
  Monomial operator/(const Monomial& divisor) const;

  friend Monomial lcm(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.exps_ == b.exps_;
  }

  std::size_t hash() const;

 private:
  std::array<std::uint16_t, kMaxVariables> exps_{};
  std::uint32_t degree_ = 0;
};

enum class MonomialOrder { grevlex, lex };

// Three-way comparison under the given order: negative, zero or positive.
int compare(const Monomial& a, const Monomial& b, MonomialOrder order);

inline bool grevlex_greater(const Monomial& a, const Monomial& b) {
  return compare(a, b, MonomialOrder::grevlex) > 0;
}

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

}  // namespace milnor
