#include "milnor/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace milnor {

namespace {

void require_arity(std::size_t a, std::size_t b) {
  if (a != b)
    throw ArityMismatch("arity mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

bool term_before(const Term& a, const Term& b) { return grevlex_greater(a.monomial, b.monomial); }

// Merge two sorted term lists, lhs + sign * rhs.
std::vector<Term> merge_terms(const std::vector<Term>& lhs, const std::vector<Term>& rhs,
                              bool subtract) {
  std::vector<Term> out;
  out.reserve(lhs.size() + rhs.size());
  std::size_t i = 0, j = 0;
  while (i < lhs.size() && j < rhs.size()) {
    int c = compare(lhs[i].monomial, rhs[j].monomial, MonomialOrder::grevlex);
    if (c > 0) {
      out.push_back(lhs[i++]);
    } else if (c < 0) {
      out.push_back({rhs[j].monomial, subtract ? Rational(-rhs[j].coeff) : rhs[j].coeff});
      ++j;
    } else {
      Rational s = subtract ? lhs[i].coeff - rhs[j].coeff : lhs[i].coeff + rhs[j].coeff;
      if (!s.is_zero()) out.push_back({lhs[i].monomial, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < lhs.size(); ++i) out.push_back(lhs[i]);
  for (; j < rhs.size(); ++j)
    out.push_back({rhs[j].monomial, subtract ? Rational(-rhs[j].coeff) : rhs[j].coeff});
  return out;
}

}  // namespace

Polynomial::Polynomial(std::size_t arity) : arity_(arity) {
  if (arity == 0 || arity > kMaxVariables)
    throw std::invalid_argument("polynomial arity must be in 1.." + std::to_string(kMaxVariables));
}

Polynomial Polynomial::constant(std::size_t arity, const Rational& value) {
  Polynomial p(arity);
  if (!value.is_zero()) p.terms_.push_back({Monomial(), value});
  return p;
}

Polynomial Polynomial::variable(std::size_t arity, std::size_t index) {
  if (index >= arity) throw std::out_of_range("variable index out of range");
  return monomial(arity, Monomial::variable(index));
}

Polynomial Polynomial::monomial(std::size_t arity, const Monomial& m, const Rational& coeff) {
  Polynomial p(arity);
  for (std::size_t i = arity; i < kMaxVariables; ++i)
    if (m[i] != 0) throw std::out_of_range("monomial uses a variable beyond the arity");
  if (!coeff.is_zero()) p.terms_.push_back({m, coeff});
  return p;
}

Polynomial Polynomial::from_terms(std::size_t arity, std::vector<Term> terms) {
  Polynomial p(arity);
  std::sort(terms.begin(), terms.end(), term_before);
  for (auto& t : terms) {
    for (std::size_t i = arity; i < kMaxVariables; ++i)
      if (t.monomial[i] != 0) throw std::out_of_range("monomial uses a variable beyond the arity");
    if (!p.terms_.empty() && p.terms_.back().monomial == t.monomial) {
      p.terms_.back().coeff += t.coeff;
      if (p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
    } else if (!t.coeff.is_zero()) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().monomial.is_one());
}

unsigned Polynomial::total_degree() const {
  return terms_.empty() ? 0 : terms_.front().monomial.degree();
}

unsigned Polynomial::order() const {
  return terms_.empty() ? 0 : terms_.back().monomial.degree();
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m, [](const Term& t, const Monomial& x) {
    return grevlex_greater(t.monomial, x);
  });
  if (it != terms_.end() && it->monomial == m) return it->coeff;
  return Rational(0);
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  require_arity(arity_, rhs.arity_);
  terms_ = merge_terms(terms_, rhs.terms_, false);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  require_arity(arity_, rhs.arity_);
  terms_ = merge_terms(terms_, rhs.terms_, true);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
  *this = *this * rhs;
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& factor) {
  if (factor.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= factor;
  return *this;
}

Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
  require_arity(lhs.arity_, rhs.arity_);
  Polynomial out(lhs.arity_);
  if (lhs.is_zero() || rhs.is_zero()) return out;
  std::unordered_map<Monomial, Rational, MonomialHash> acc;
  acc.reserve(lhs.size() * rhs.size());
  for (const auto& a : lhs.terms_)
    for (const auto& b : rhs.terms_) acc[a.monomial * b.monomial] += a.coeff * b.coeff;
  out.terms_.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (!c.is_zero()) out.terms_.push_back({m, std::move(c)});
  std::sort(out.terms_.begin(), out.terms_.end(), term_before);
  return out;
}

Polynomial operator-(Polynomial p) {
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.arity_ != b.arity_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i)
    if (!(a.terms_[i].monomial == b.terms_[i].monomial) || a.terms_[i].coeff != b.terms_[i].coeff)
      return false;
  return true;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  require_arity(arity_, point.size());
  // Power tables keep this linear in the number of terms.
  std::vector<std::vector<Rational>> powers(arity_);
  for (std::size_t i = 0; i < arity_; ++i) powers[i].push_back(Rational(1));
  Rational sum(0);
  for (const auto& t : terms_) {
    Rational v = t.coeff;
    for (std::size_t i = 0; i < arity_; ++i) {
      unsigned e = t.monomial[i];
      if (e == 0) continue;
      auto& table = powers[i];
      while (table.size() <= e) table.push_back(table.back() * point[i]);
      v *= table[e];
    }
    sum += v;
  }
  return sum;
}

double Polynomial::evaluate(std::span<const double> point) const {
  require_arity(arity_, point.size());
  double sum = 0.0;
  for (const auto& t : terms_) {
    double v = to_double(t.coeff);
    for (std::size_t i = 0; i < arity_; ++i) {
      unsigned e = t.monomial[i];
      if (e != 0) v *= std::pow(point[i], static_cast<int>(e));
    }
    sum += v;
  }
  return sum;
}

Polynomial Polynomial::derivative(std::size_t index) const {
  if (index >= arity_) throw std::out_of_range("derivative index out of range");
  std::vector<Term> out;
  for (const auto& t : terms_) {
    unsigned e = t.monomial[index];
    if (e == 0) continue;
    Monomial m = t.monomial;
    m.set(index, e - 1);
    out.push_back({m, t.coeff * e});
  }
  return from_terms(arity_, std::move(out));
}

Polynomial Polynomial::translate(std::span<const Rational> shift) const {
  require_arity(arity_, shift.size());
  std::vector<Polynomial> subs;
  for (std::size_t i = 0; i < arity_; ++i)
    subs.push_back(variable(arity_, i) + constant(arity_, shift[i]));
  return compose(PolyMap(std::move(subs)));
}

Polynomial Polynomial::compose(const PolyMap& substitution) const {
  require_arity(arity_, substitution.size());
  const std::size_t m = substitution.arity();
  std::vector<std::vector<Polynomial>> powers(arity_);
  for (std::size_t i = 0; i < arity_; ++i) powers[i].push_back(constant(m, Rational(1)));
  Polynomial sum(m);
  for (const auto& t : terms_) {
    Polynomial v = constant(m, t.coeff);
    for (std::size_t i = 0; i < arity_; ++i) {
      unsigned e = t.monomial[i];
      if (e == 0) continue;
      auto& table = powers[i];
      while (table.size() <= e) table.push_back(table.back() * substitution[i]);
      v = v * table[e];
    }
    sum += v;
  }
  return sum;
}

Polynomial Polynomial::embed(std::size_t new_arity, std::span<const std::size_t> target) const {
  require_arity(arity_, target.size());
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Monomial m;
    for (std::size_t i = 0; i < arity_; ++i) {
      if (t.monomial[i] == 0) continue;
      if (target[i] >= new_arity) throw std::out_of_range("embedding target out of range");
      m.set(target[i], m[target[i]] + t.monomial[i]);
    }
    out.push_back({m, t.coeff});
  }
  return from_terms(new_arity, std::move(out));
}

double Polynomial::magnitude_bound(double radius) const {
  double s = 0.0;
  for (const auto& t : terms_)
    s += std::abs(to_double(t.coeff)) * std::pow(radius, static_cast<int>(t.monomial.degree()));
  return s;
}

Polynomial pow(const Polynomial& p, unsigned exponent) {
  Polynomial result = Polynomial::constant(p.arity(), Rational(1));
  Polynomial base = p;
  while (exponent > 0) {
    if (exponent & 1u) result = result * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return result;
}

PolyMap::PolyMap(std::vector<Polynomial> components) : components_(std::move(components)) {
  if (components_.empty()) throw std::invalid_argument("a polynomial map needs at least one component");
  for (const auto& c : components_) require_arity(components_.front().arity(), c.arity());
}

std::vector<Rational> PolyMap::evaluate(std::span<const Rational> point) const {
  std::vector<Rational> out;
  out.reserve(size());
  for (const auto& c : components_) out.push_back(c.evaluate(point));
  return out;
}

std::vector<double> PolyMap::evaluate(std::span<const double> point) const {
  std::vector<double> out;
  out.reserve(size());
  for (const auto& c : components_) out.push_back(c.evaluate(point));
  return out;
}

PolyMap PolyMap::translate(std::span<const Rational> shift) const {
  std::vector<Polynomial> out;
  for (const auto& c : components_) out.push_back(c.translate(shift));
  return PolyMap(std::move(out));
}

PolyMap PolyMap::operator-() const {
  std::vector<Polynomial> out;
  for (const auto& c : components_) out.push_back(-c);
  return PolyMap(std::move(out));
}

Polynomial RationalFunctionMap::denominator() const {
  return pow(build_omega(numerators.arity()), omega_power);
}

// grad(N / w^k) = (w grad N - k N grad w) / w^(k+1), and grad w = x.
RationalFunctionMap OmegaFraction::gradient() const {
  const std::size_t n = numerator.arity();
  const Polynomial omega = build_omega(n);
  std::vector<Polynomial> comps;
  for (std::size_t i = 0; i < n; ++i) {
    Polynomial c = omega * numerator.derivative(i);
    if (omega_power != 0)
      c -= Rational(omega_power) * (numerator * Polynomial::variable(n, i));
    comps.push_back(std::move(c));
  }
  return RationalFunctionMap{PolyMap(std::move(comps)), omega_power + 1};
}

Polynomial differentiate(const Polynomial& p, std::size_t index) { return p.derivative(index); }

PolyMap gradient(const Polynomial& p) {
  std::vector<Polynomial> comps;
  for (std::size_t i = 0; i < p.arity(); ++i) comps.push_back(p.derivative(i));
  return PolyMap(std::move(comps));
}

Polynomial build_rho(std::size_t n) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < n; ++i) terms.push_back({Monomial::variable(i, 2), Rational(1)});
  return Polynomial::from_terms(n, std::move(terms));
}

Polynomial build_omega(std::size_t n) {
  std::vector<Term> terms{{Monomial(), Rational(1)}};
  for (std::size_t i = 0; i < n; ++i)
    terms.push_back({Monomial::variable(i, 2), make_rational(1, 2)});
  return Polynomial::from_terms(n, std::move(terms));
}

Polynomial build_sum_of_squares(const PolyMap& h) {
  Polynomial sum(h.arity());
  for (const auto& c : h) sum += c * c;
  return sum;
}

Polynomial determinant(const std::vector<std::vector<Polynomial>>& matrix) {
  const std::size_t k = matrix.size();
  if (k == 0) throw std::invalid_argument("empty matrix");
  for (const auto& row : matrix)
    if (row.size() != k) throw std::invalid_argument("determinant of a non-square matrix");
  if (k > 16) throw std::invalid_argument("determinant size too large");
  const std::size_t arity = matrix[0][0].arity();
  // Laplace expansion along rows, memoized over column subsets.
  std::vector<std::optional<Polynomial>> minors(std::size_t(1) << k);
  minors[0] = Polynomial::constant(arity, Rational(1));
  for (std::size_t mask = 1; mask < minors.size(); ++mask) {
    const std::size_t row = static_cast<std::size_t>(__builtin_popcountll(mask)) - 1;
    Polynomial acc(arity);
    for (std::size_t j = 0; j < k; ++j) {
      if (!(mask & (std::size_t(1) << j))) continue;
      const auto& sub = minors[mask & ~(std::size_t(1) << j)];
      // Sign from the position of column j among the selected columns.
      int after = __builtin_popcountll(mask >> (j + 1));
      if (!matrix[row][j].is_zero() && !sub->is_zero()) {
        Polynomial term = matrix[row][j] * *sub;
        if (after % 2 == 0) acc += term; else acc -= term;
      }
    }
    minors[mask] = std::move(acc);
  }
  return *minors.back();
}

std::vector<std::vector<Polynomial>> jacobian(const PolyMap& F) {
  std::vector<std::vector<Polynomial>> rows;
  for (const auto& c : F) rows.push_back(gradient(c).components());
  return rows;
}

Polynomial jacobian_determinant(const PolyMap& F) {
  if (F.size() != F.arity()) throw std::invalid_argument("Jacobian determinant needs a square map");
  return determinant(jacobian(F));
}

namespace {

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<std::size_t>> subsets(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur;
  subsets(n, k, 0, cur, out);
  return out;
}

}  // namespace

std::vector<Polynomial> jacobian_minors(const PolyMap& F, const std::optional<PolyMap>& extra_rows,
                                        std::size_t minor_size) {
  auto rows = jacobian(F);
  if (extra_rows) {
    require_arity(F.arity(), extra_rows->arity());
    for (auto& r : jacobian(*extra_rows)) rows.push_back(std::move(r));
  }
  const std::size_t n = F.arity();
  if (minor_size == 0 || minor_size > std::min(rows.size(), n))
    throw std::out_of_range("minor size out of range");
  std::vector<Polynomial> out;
  for (const auto& rs : subsets(rows.size(), minor_size)) {
    for (const auto& cs : subsets(n, minor_size)) {
      std::vector<std::vector<Polynomial>> m;
      for (auto r : rs) {
        std::vector<Polynomial> row;
        for (auto c : cs) row.push_back(rows[r][c]);
        m.push_back(std::move(row));
      }
      out.push_back(determinant(m));
    }
  }
  return out;
}

std::vector<std::string> default_variable_names(std::size_t n) {
  if (n <= 3) {
    std::vector<std::string> xyz{"x", "y", "z"};
    return {xyz.begin(), xyz.begin() + static_cast<long>(n)};
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("x" + std::to_string(i + 1));
  return out;
}

std::string to_string(const Polynomial& p, std::span<const std::string> names) {
  require_arity(p.arity(), names.size());
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& t : p.terms()) {
    Rational c = t.coeff;
    if (first) {
      if (c.sign() < 0) out += "-";
    } else {
      out += c.sign() < 0 ? " - " : " + ";
    }
    c = abs(c);
    std::string mono;
    for (std::size_t i = 0; i < p.arity(); ++i) {
      unsigned e = t.monomial[i];
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[i];
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) {
      out += to_string(c);
    } else if (c == 1) {
      out += mono;
    } else {
      out += to_string(c) + "*" + mono;
    }
    first = false;
  }
  return out;
}

std::string to_string(const Polynomial& p) {
  auto names = default_variable_names(p.arity());
  return to_string(p, names);
}

std::string to_string(const PolyMap& F, std::span<const std::string> names) {
  std::string out;
  for (std::size_t i = 0; i < F.size(); ++i) {
    if (i) out += ", ";
    out += to_string(F[i], names);
  }
  return out;
}

}  // namespace milnor
