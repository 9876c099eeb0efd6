#include "milnor/univariate.hpp"

#include <algorithm>
#include <stdexcept>

namespace milnor {

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void UPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Rational UPoly::evaluate(const Rational& t) const {
  Rational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

UPoly UPoly::derivative() const {
  std::vector<Rational> d;
  for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
  return UPoly(std::move(d));
}

UPoly operator+(const UPoly& a, const UPoly& b) {
  std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
  return UPoly(std::move(r));
}

UPoly operator-(const UPoly& a, const UPoly& b) {
  std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()), Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
  return UPoly(std::move(r));
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return UPoly();
  std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return UPoly(std::move(r));
}

UPoly operator*(const Rational& s, const UPoly& a) {
  std::vector<Rational> r = a.c_;
  for (auto& c : r) c *= s;
  return UPoly(std::move(r));
}

void UPoly::divmod(const UPoly& a, const UPoly& b, UPoly& q, UPoly& r) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = a.c_;
  std::vector<Rational> quo(a.c_.size() >= b.c_.size() ? a.c_.size() - b.c_.size() + 1 : 0, Rational(0));
  const Rational lead_inv = 1 / b.leading();
  for (std::size_t i = rem.size(); i-- >= b.c_.size();) {
    if (rem[i].is_zero()) continue;
    Rational f = rem[i] * lead_inv;
    std::size_t shift = i - (b.c_.size() - 1);
    quo[shift] = f;
    for (std::size_t j = 0; j < b.c_.size(); ++j) rem[shift + j] -= f * b.c_[j];
  }
  q = UPoly(std::move(quo));
  r = UPoly(std::move(rem));
}

UPoly pow(const UPoly& p, unsigned e) {
  UPoly result = UPoly::constant(Rational(1));
  UPoly base = p;
  while (e > 0) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly q, r;
    UPoly::divmod(a, b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return (1 / a.leading()) * a;
}

UPoly square_free_part(const UPoly& p) {
  if (p.degree() <= 0) return p;
  UPoly g = gcd(p, p.derivative());
  UPoly q, r;
  UPoly::divmod(p, g, q, r);
  return q;
}

SturmSequence::SturmSequence(const UPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("Sturm sequence of zero");
  seq_.push_back(p);
  seq_.push_back(p.derivative());
  while (!seq_.back().is_zero()) {
    UPoly q, r;
    UPoly::divmod(seq_[seq_.size() - 2], seq_.back(), q, r);
    seq_.push_back(Rational(-1) * r);
  }
  seq_.pop_back();
}

int SturmSequence::variations(const Rational& t) const {
  int count = 0, last = 0;
  for (const auto& p : seq_) {
    int s = p.sign_at(t);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

int SturmSequence::count_roots(const Rational& a, const Rational& b) const {
  return variations(a) - variations(b);
}

Rational cauchy_bound(const UPoly& p) {
  if (p.degree() < 1) return Rational(1);
  Rational m(0);
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, Rational(abs(p.coeffs()[i] / p.leading())));
  return m + 1;
}

std::vector<RootInterval> isolate_real_roots(const UPoly& p) {
  std::vector<RootInterval> out;
  if (p.degree() < 1) return out;
  UPoly sf = square_free_part(p);
  SturmSequence sturm(sf);
  Rational bound = cauchy_bound(sf);
  struct Work {
    Rational lo, hi;
    int count;
  };
  std::vector<Work> stack{{-bound, bound, sturm.count_roots(-bound, bound)}};
  while (!stack.empty()) {
    Work w = std::move(stack.back());
    stack.pop_back();
    if (w.count == 0) continue;
    if (w.count == 1) {
      out.push_back({w.lo, w.hi});
      continue;
    }
    Rational mid = (w.lo + w.hi) / 2;
    // Keep endpoints away from roots.
    Rational nudge = (w.hi - w.lo) / 7;
    while (sf.sign_at(mid) == 0) {
      mid += nudge;
      nudge /= 3;
    }
    int left = sturm.count_roots(w.lo, mid);
    stack.push_back({mid, w.hi, w.count - left});
    stack.push_back({w.lo, mid, left});
  }
  std::sort(out.begin(), out.end(), [](const RootInterval& a, const RootInterval& b) { return a.lo < b.lo; });
  return out;
}

}  // namespace milnor
