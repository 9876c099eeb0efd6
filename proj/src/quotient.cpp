#include "milnor/quotient.hpp"

#include <algorithm>
#include <deque>

namespace milnor {

namespace {

bool is_standard(const Monomial& m, const GroebnerBasis& gb) {
  for (const auto& l : gb.leading_monomials())
    if (l.divides(m)) return false;
  return true;
}

}  // namespace

QuotientAlgebra::QuotientAlgebra(GroebnerBasis gb, std::vector<Monomial> basis)
    : gb_(std::move(gb)), basis_(std::move(basis)) {
  const std::size_t n = gb_.arity();
  const std::size_t dim = basis_.size();
  for (std::size_t j = 0; j < dim; ++j) index_.emplace(basis_[j], j);
  if (dim > 0 && !basis_[0].is_one()) throw std::invalid_argument("quotient basis must start with 1");

  parent_.assign(dim, 0);
  parent_var_.assign(dim, 0);
  for (std::size_t j = 1; j < dim; ++j) {
    bool found = false;
    for (std::size_t v = 0; v < n && !found; ++v) {
      if (basis_[j][v] == 0) continue;
      Monomial p = basis_[j] / Monomial::variable(v);
      auto it = index_.find(p);
      if (it != index_.end() && it->second < j) {
        parent_[j] = it->second;
        parent_var_[j] = v;
        found = true;
      }
    }
    if (!found) throw std::invalid_argument("quotient basis is not an ordered order ideal");
  }

  mult_.assign(n, SparseColumns(dim));
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t j = 0; j < dim; ++j) {
      Monomial m = basis_[j] * Monomial::variable(v);
      auto it = index_.find(m);
      if (it != index_.end()) {
        mult_[v][j].emplace_back(it->second, Rational(1));
        continue;
      }
      Polynomial r = normal_form(Polynomial::monomial(n, m), gb_);
      for (const auto& t : r.terms()) mult_[v][j].emplace_back(index_.at(t.monomial), t.coeff);
      std::sort(mult_[v][j].begin(), mult_[v][j].end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
    }
  }
}

RationalMatrix QuotientAlgebra::variable_matrix(std::size_t i) const {
  const auto dim = static_cast<Eigen::Index>(dimension());
  RationalMatrix m = RationalMatrix::Zero(dim, dim);
  for (std::size_t j = 0; j < dimension(); ++j)
    for (const auto& [row, value] : mult_.at(i)[j])
      m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(j)) = value;
  return m;
}

long QuotientAlgebra::index_of(const Monomial& m) const {
  auto it = index_.find(m);
  return it == index_.end() ? -1 : static_cast<long>(it->second);
}

RationalVector QuotientAlgebra::coordinates(const Polynomial& p) const {
  RationalVector out = RationalVector::Zero(static_cast<Eigen::Index>(dimension()));
  if (dimension() == 0) return out;
  Polynomial r = normal_form(p, gb_);
  for (const auto& t : r.terms()) out(static_cast<Eigen::Index>(index_.at(t.monomial))) = t.coeff;
  return out;
}

Polynomial QuotientAlgebra::element(const RationalVector& coords) const {
  std::vector<Term> terms;
  for (std::size_t j = 0; j < dimension(); ++j)
    if (!coords(static_cast<Eigen::Index>(j)).is_zero())
      terms.push_back({basis_[j], coords(static_cast<Eigen::Index>(j))});
  return Polynomial::from_terms(arity(), std::move(terms));
}

RationalVector QuotientAlgebra::multiply_variable(std::size_t v, const RationalVector& x) const {
  RationalVector out = RationalVector::Zero(x.size());
  for (std::size_t j = 0; j < dimension(); ++j) {
    const Rational& xj = x(static_cast<Eigen::Index>(j));
    if (xj.is_zero()) continue;
    for (const auto& [row, value] : mult_[v][j]) out(static_cast<Eigen::Index>(row)) += xj * value;
  }
  return out;
}

RationalVector QuotientAlgebra::functional_times_variable(const RationalVector& r,
                                                          std::size_t v) const {
  RationalVector out = RationalVector::Zero(r.size());
  for (std::size_t j = 0; j < dimension(); ++j) {
    Rational s(0);
    for (const auto& [row, value] : mult_[v][j]) {
      const Rational& rr = r(static_cast<Eigen::Index>(row));
      if (!rr.is_zero()) s += rr * value;
    }
    out(static_cast<Eigen::Index>(j)) = s;
  }
  return out;
}

const RationalVector& QuotientAlgebra::monomial_coordinates(const Monomial& m) const {
  auto it = monomial_cache_.find(m);
  if (it != monomial_cache_.end()) return it->second;
  RationalVector out;
  long idx = index_of(m);
  if (idx >= 0) {
    out = RationalVector::Zero(static_cast<Eigen::Index>(dimension()));
    out(idx) = 1;
  } else if (m.is_one()) {
    out = RationalVector::Zero(static_cast<Eigen::Index>(dimension()));
  } else {
    std::size_t v = 0;
    while (m[v] == 0) ++v;
    out = multiply_variable(v, monomial_coordinates(m / Monomial::variable(v)));
  }
  return monomial_cache_.emplace(m, std::move(out)).first->second;
}

RationalMatrix QuotientAlgebra::multiplication_matrix(const Polynomial& p) const {
  const auto dim = static_cast<Eigen::Index>(dimension());
  RationalMatrix out(dim, dim);
  if (dim == 0) return out;
  out.col(0) = coordinates(p);
  for (std::size_t j = 1; j < dimension(); ++j)
    out.col(static_cast<Eigen::Index>(j)) =
        multiply_variable(parent_var_[j], out.col(static_cast<Eigen::Index>(parent_[j])));
  return out;
}

RationalMatrix QuotientAlgebra::functional_form(const RationalVector& ell) const {
  const auto dim = static_cast<Eigen::Index>(dimension());
  RationalMatrix rows(dim, dim);
  if (dim == 0) return rows;
  rows.row(0) = ell.transpose();
  for (std::size_t j = 1; j < dimension(); ++j) {
    RationalVector parent_row = rows.row(static_cast<Eigen::Index>(parent_[j])).transpose();
    rows.row(static_cast<Eigen::Index>(j)) = functional_times_variable(parent_row, parent_var_[j]).transpose();
  }
  return rows;
}

RationalVector QuotientAlgebra::trace_functional() const {
  const auto dim = static_cast<Eigen::Index>(dimension());
  RationalVector t = RationalVector::Zero(dim);
  // Row j of M_{b_j}, accumulated along the path from 1 to b_j.
  for (std::size_t j = 0; j < dimension(); ++j) {
    RationalVector r = RationalVector::Zero(dim);
    r(static_cast<Eigen::Index>(j)) = 1;
    std::size_t k = j;
    while (k != 0) {
      r = functional_times_variable(r, parent_var_[k]);
      k = parent_[k];
    }
    t += r;
  }
  return t;
}

bool QuotientAlgebra::origin_is_only_zero() const {
  const auto dim = static_cast<Eigen::Index>(dimension());
  if (dim == 0) return true;
  for (std::size_t v = 0; v < arity(); ++v) {
    RationalVector x = RationalVector::Zero(dim);
    x(0) = 1;
    for (Eigen::Index s = 0; s < dim && !x.isZero(); ++s) x = multiply_variable(v, x);
    if (!x.isZero()) return false;
  }
  return true;
}

bool QuotientAlgebra::matrices_commute() const {
  for (std::size_t a = 0; a < arity(); ++a) {
    RationalMatrix ma = variable_matrix(a);
    for (std::size_t b = a + 1; b < arity(); ++b) {
      RationalMatrix mb = variable_matrix(b);
      if (!(ma * mb == mb * ma)) return false;
    }
  }
  return true;
}

std::variant<QuotientAlgebra, NotZeroDimensional> quotient_basis(const GroebnerBasis& gb) {
  const std::size_t n = gb.arity();
  if (gb.is_unit()) return QuotientAlgebra(gb, {});
  for (std::size_t v = 0; v < n; ++v) {
    bool pure = false;
    for (const auto& l : gb.leading_monomials()) {
      if (l[v] == 0) continue;
      if (l.degree() == l[v]) pure = true;
    }
    if (!pure) return NotZeroDimensional{v};
  }
  // Breadth-first walk of the order ideal; parents precede children.
  std::vector<Monomial> basis{Monomial()};
  std::unordered_map<Monomial, std::size_t, MonomialHash> seen{{Monomial(), 0}};
  std::deque<Monomial> queue{Monomial()};
  while (!queue.empty()) {
    Monomial m = queue.front();
    queue.pop_front();
    for (std::size_t v = 0; v < n; ++v) {
      Monomial c = m * Monomial::variable(v);
      if (seen.count(c) || !is_standard(c, gb)) continue;
      seen.emplace(c, basis.size());
      basis.push_back(c);
      queue.push_back(c);
    }
  }
  return QuotientAlgebra(gb, std::move(basis));
}

QuotientAlgebra quotient_algebra(const GroebnerBasis& gb) {
  auto r = quotient_basis(gb);
  if (auto* nz = std::get_if<NotZeroDimensional>(&r)) throw NotZeroDimensionalError(nz->variable);
  return std::get<QuotientAlgebra>(std::move(r));
}

}  // namespace milnor
