#include "milnor/monomial.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace milnor {

namespace {

std::uint16_t checked_exponent(unsigned value) {
  if (value > std::numeric_limits<std::uint16_t>::max())
    throw std::overflow_error("monomial exponent exceeds 65535");
  return static_cast<std::uint16_t>(value);
}

}  // namespace

Monomial Monomial::variable(std::size_t index, unsigned power) {
  Monomial m;
  m.set(index, power);
  return m;
}

void Monomial::set(std::size_t i, unsigned exponent) {
  if (i >= kMaxVariables) throw std::out_of_range("variable index out of range");
  degree_ = degree_ - exps_[i] + exponent;
  exps_[i] = checked_exponent(exponent);
}

bool Monomial::divides(const Monomial& other) const {
  if (degree_ > other.degree_) return false;
  for (std::size_t i = 0; i < kMaxVariables; ++i)
    if (exps_[i] > other.exps_[i]) return false;
  return true;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < kMaxVariables; ++i)
    if (exps_[i] != 0 && other.exps_[i] != 0) return false;
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVariables; ++i)
    r.exps_[i] = checked_exponent(unsigned(exps_[i]) + other.exps_[i]);
  r.degree_ = degree_ + other.degree_;
  return r;
}

Monomial Monomial::operator/(const Monomial& divisor) const {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVariables; ++i)
    r.exps_[i] = static_cast<std::uint16_t>(exps_[i] - divisor.exps_[i]);
  r.degree_ = degree_ - divisor.degree_;
  return r;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    r.exps_[i] = std::max(a.exps_[i], b.exps_[i]);
    r.degree_ += r.exps_[i];
  }
  return r;
}

std::size_t Monomial::hash() const {
  std::size_t h = 1469598103934665603ull;
  for (auto e : exps_) {
    h ^= e;
    h *= 1099511628211ull;
  }
  return h;
}

int compare(const Monomial& a, const Monomial& b, MonomialOrder order) {
  if (order == MonomialOrder::grevlex) {
    if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
    for (std::size_t i = kMaxVariables; i-- > 0;) {
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    }
    return 0;
  }
  for (std::size_t i = 0; i < kMaxVariables; ++i) {
    if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
  }
  return 0;
}

}  // namespace milnor
