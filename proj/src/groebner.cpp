#include "milnor/groebner.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <tuple>

namespace milnor {

namespace {

using Terms = std::vector<Term>;
using Clock = std::chrono::steady_clock;

struct Deadline {
  bool active = false;
  Clock::time_point at;
  explicit Deadline(double seconds) : active(seconds > 0) {
    if (active) at = Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(seconds));
  }
  void check(std::size_t basis_size) const {
    if (active && Clock::now() > at) throw ResourceLimitExceeded("time budget exceeded", basis_size);
  }
};

struct OrderCmp {
  MonomialOrder order;
  bool operator()(const Term& a, const Term& b) const {
    return compare(a.monomial, b.monomial, order) > 0;
  }
};

Terms ordered_terms(const Polynomial& p, MonomialOrder order) {
  Terms t = p.terms();
  if (order != MonomialOrder::grevlex) std::sort(t.begin(), t.end(), OrderCmp{order});
  return t;
}

void make_monic(Terms& t) {
  if (t.empty() || t.front().coeff == 1) return;
  Rational inv = 1 / t.front().coeff;
  for (auto& x : t) x.coeff *= inv;
}

// p - c * m * g, where the result keeps the order. Both inputs are sorted.
Terms sub_scaled(const Terms& p, std::size_t p_start, const Rational& c, const Monomial& m,
                 const Terms& g, MonomialOrder order) {
  Terms out;
  out.reserve(p.size() - p_start + g.size());
  std::size_t i = p_start, j = 0;
  while (i < p.size() && j < g.size()) {
    Monomial gm = g[j].monomial * m;
    int cmp = compare(p[i].monomial, gm, order);
    if (cmp > 0) {
      out.push_back(p[i++]);
    } else if (cmp < 0) {
      out.push_back({gm, -c * g[j].coeff});
      ++j;
    } else {
      Rational s = p[i].coeff - c * g[j].coeff;
      if (!s.is_zero()) out.push_back({gm, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < p.size(); ++i) out.push_back(p[i]);
  for (; j < g.size(); ++j) out.push_back({g[j].monomial * m, -c * g[j].coeff});
  return out;
}

struct Reducer {
  MonomialOrder order;
  const std::vector<Terms>& polys;
  const std::vector<Monomial>& leads;
  const std::vector<std::size_t>& active;
  std::size_t max_terms;
  std::size_t basis_size_for_errors;
  const Deadline* deadline = nullptr;

  const Terms* find_divisor(const Monomial& m, Monomial& quotient) const {
    for (auto idx : active) {
      if (leads[idx].divides(m)) {
        quotient = m / leads[idx];
        return &polys[idx];
      }
    }
    return nullptr;
  }

  // Full reduction; divisors are monic.
  Terms reduce(Terms p) const {
    Terms remainder;
    std::size_t start = 0;
    while (start < p.size()) {
      Monomial q;
      const Terms* g = find_divisor(p[start].monomial, q);
      if (!g) {
        remainder.push_back(std::move(p[start]));
        ++start;
        continue;
      }
      Rational c = p[start].coeff;
      p = sub_scaled(p, start, c, q, *g, order);
      start = 0;
      if (p.size() + remainder.size() > max_terms)
        throw ResourceLimitExceeded("term budget exceeded during reduction", basis_size_for_errors);
      if (deadline) deadline->check(basis_size_for_errors);
    }
    return remainder;
  }
};

struct Pair {
  std::size_t i, j;
  Monomial lcm;
  unsigned sugar;
};

}  // namespace

Monomial leading_monomial(const Polynomial& p, MonomialOrder order) {
  if (p.is_zero()) throw std::invalid_argument("leading monomial of zero");
  if (order == MonomialOrder::grevlex) return p.leading_term().monomial;
  Monomial best = p.terms().front().monomial;
  for (const auto& t : p.terms())
    if (compare(t.monomial, best, order) > 0) best = t.monomial;
  return best;
}

GroebnerBasis::GroebnerBasis(std::size_t arity, MonomialOrder order,
                             std::vector<Polynomial> elements)
    : arity_(arity), order_(order), elements_(std::move(elements)) {
  for (const auto& e : elements_) {
    if (e.arity() != arity_) throw ArityMismatch("basis element arity mismatch");
    leading_.push_back(leading_monomial(e, order_));
    ordered_.push_back(ordered_terms(e, order_));
  }
}

bool GroebnerBasis::is_unit() const {
  return std::any_of(leading_.begin(), leading_.end(), [](const Monomial& m) { return m.is_one(); });
}

GroebnerBasis groebner_basis(const IdealRecord& ideal, const GroebnerBudget& budget) {
  const MonomialOrder order = ideal.order;
  const std::size_t n = ideal.generators.arity();

  std::vector<Terms> input;
  for (const auto& g : ideal.generators) {
    if (g.is_zero()) continue;
    Terms t = ordered_terms(g, order);
    make_monic(t);
    input.push_back(std::move(t));
  }
  if (input.empty()) throw std::invalid_argument("Groebner basis of the zero ideal");
  std::sort(input.begin(), input.end(), [&](const Terms& a, const Terms& b) {
    int c = compare(a.front().monomial, b.front().monomial, order);
    if (c != 0) return c < 0;
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), [&](const Term& x, const Term& y) {
      int mc = compare(x.monomial, y.monomial, order);
      if (mc != 0) return mc > 0;
      return x.coeff < y.coeff;
    });
  });

  std::vector<Terms> polys;
  std::vector<Monomial> leads;
  std::vector<unsigned> sugar;
  std::vector<std::size_t> active;
  std::vector<Pair> pairs;
  bool unit = false;

  const Deadline deadline(budget.max_seconds);
  Reducer reducer{order, polys, leads, active, budget.max_terms, 0, &deadline};

  // Gebauer-Moeller installation of a new element h.
  auto install = [&](Terms h, unsigned h_sugar) {
    const std::size_t hi = polys.size();
    if (hi >= budget.max_basis) throw ResourceLimitExceeded("basis size budget exceeded", active.size());
    const Monomial lh = h.front().monomial;
    polys.push_back(std::move(h));
    leads.push_back(lh);
    sugar.push_back(h_sugar);

    std::vector<Pair> candidates;
    for (auto g : active) {
      Monomial l = lcm(leads[g], lh);
      unsigned s = std::max(sugar[g] + l.degree() - leads[g].degree(), h_sugar + l.degree() - lh.degree());
      candidates.push_back({g, hi, l, s});
    }
    // Chain criterion among the new pairs.
    std::vector<bool> keep(candidates.size(), true);
    for (std::size_t a = 0; a < candidates.size(); ++a) {
      if (leads[candidates[a].i].coprime(lh)) continue;
      for (std::size_t b = 0; b < candidates.size(); ++b) {
        if (a == b || !keep[b]) continue;
        const Monomial& la = candidates[a].lcm;
        const Monomial& lb = candidates[b].lcm;
        if (lb.divides(la) && (!(lb == la) || b < a)) {
          keep[a] = false;
          break;
        }
      }
    }
    // Old pairs made redundant by h.
    std::vector<Pair> kept;
    kept.reserve(pairs.size());
    for (auto& p : pairs) {
      bool drop = lh.divides(p.lcm) && !(lcm(leads[p.i], lh) == p.lcm) && !(lcm(leads[p.j], lh) == p.lcm);
      if (!drop) kept.push_back(std::move(p));
    }
    pairs = std::move(kept);
    // Product criterion: coprime leading monomials never need a pair.
    for (std::size_t a = 0; a < candidates.size(); ++a)
      if (keep[a] && !leads[candidates[a].i].coprime(lh)) pairs.push_back(candidates[a]);

    std::vector<std::size_t> next;
    for (auto g : active)
      if (!lh.divides(leads[g])) next.push_back(g);
    next.push_back(hi);
    active = std::move(next);
    reducer.basis_size_for_errors = active.size();
  };

  for (auto& g : input) {
    Terms r = reducer.reduce(g);
    if (r.empty()) continue;
    make_monic(r);
    unsigned s = 0;
    for (const auto& t : r) s = std::max(s, t.monomial.degree());
    if (r.front().monomial.is_one()) {
      unit = true;
      break;
    }
    install(std::move(r), s);
  }

  while (!unit && !pairs.empty()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      if (a.sugar != b.sugar) return a.sugar < b.sugar;
      int c = compare(a.lcm, b.lcm, order);
      if (c != 0) return c < 0;
      return std::tie(a.j, a.i) < std::tie(b.j, b.i);
    });
    Pair p = *best;
    pairs.erase(best);
    if (p.lcm.degree() > budget.max_degree)
      throw ResourceLimitExceeded("degree budget exceeded", active.size());
    deadline.check(active.size());

    const Terms& f = polys[p.i];
    const Terms& g = polys[p.j];
    Monomial mf = p.lcm / leads[p.i];
    Monomial mg = p.lcm / leads[p.j];
    Terms s;
    s.reserve(f.size() + g.size());
    for (std::size_t a = 1; a < f.size(); ++a) s.push_back({f[a].monomial * mf, f[a].coeff});
    Terms tail_g;
    for (std::size_t a = 1; a < g.size(); ++a) tail_g.push_back({g[a].monomial, g[a].coeff});
    s = sub_scaled(s, 0, Rational(1), mg, tail_g, order);

    Terms r = reducer.reduce(std::move(s));
    if (r.empty()) continue;
    make_monic(r);
    if (r.front().monomial.is_one()) {
      unit = true;
      break;
    }
    install(std::move(r), p.sugar);
  }

  if (unit) return GroebnerBasis(n, order, {Polynomial::constant(n, Rational(1))});

  // Inter-reduce the minimal basis.
  std::vector<std::size_t> minimal = active;
  std::sort(minimal.begin(), minimal.end(), [&](std::size_t a, std::size_t b) {
    return compare(leads[a], leads[b], order) < 0;
  });
  std::vector<Polynomial> out;
  for (auto idx : minimal) {
    std::vector<std::size_t> others;
    for (auto o : minimal)
      if (o != idx) others.push_back(o);
    Reducer tail{order, polys, leads, others, budget.max_terms, minimal.size(), &deadline};
    Terms head{polys[idx].front()};
    Terms rest(polys[idx].begin() + 1, polys[idx].end());
    Terms reduced = tail.reduce(std::move(rest));
    head.insert(head.end(), reduced.begin(), reduced.end());
    out.push_back(Polynomial::from_terms(n, std::move(head)));
  }
  return GroebnerBasis(n, order, std::move(out));
}

Polynomial normal_form(const Polynomial& p, const GroebnerBasis& gb) {
  if (p.arity() != gb.arity()) throw ArityMismatch("normal form arity mismatch");
  std::vector<std::size_t> all(gb.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  Reducer r{gb.order(), gb.ordered_, gb.leading_, all, std::numeric_limits<std::size_t>::max(), gb.size()};
  return Polynomial::from_terms(p.arity(), r.reduce(ordered_terms(p, gb.order())));
}

bool is_groebner_basis(const GroebnerBasis& gb) {
  const auto& el = gb.elements();
  for (std::size_t i = 0; i < el.size(); ++i) {
    for (std::size_t j = i + 1; j < el.size(); ++j) {
      const Monomial& li = gb.leading_monomials()[i];
      const Monomial& lj = gb.leading_monomials()[j];
      Monomial l = lcm(li, lj);
      Polynomial a = Polynomial::monomial(gb.arity(), l / li,
                                          1 / el[i].coefficient(li)) * el[i];
      Polynomial b = Polynomial::monomial(gb.arity(), l / lj,
                                          1 / el[j].coefficient(lj)) * el[j];
      if (!normal_form(a - b, gb).is_zero()) return false;
    }
  }
  return true;
}

}  // namespace milnor
