#include "cas/groebner.hpp"

#include <algorithm>

namespace cas {

void require_groebner_field(const RingPtr& ring) {
  if (!ring->field().supports_groebner()) {
    raise(Errc::unsupported_field,
          "Groebner computations need QQ or Zp coefficients, got " + ring->field().name());
  }
}

namespace {

Polynomial drop_leading(const Polynomial& p) {
  auto terms = p.terms();
  return Polynomial::from_terms(p.ring(), std::vector<Term>(terms.begin() + 1, terms.end()));
}

Division divide_impl(const Polynomial& f, std::span<const Polynomial> divisors, bool want_quotients) {
  const auto& ring = f.ring();
  const auto& field = ring->field();
  for (const auto& g : divisors) require_same_ring(ring, g.ring());
  Division out{{}, Polynomial(ring)};
  if (want_quotients) out.quotients.assign(divisors.size(), Polynomial(ring));
  std::vector<Term> rem;
  Polynomial p = f;
  while (!p.is_zero()) {
    const Term& lt = p.leading_term();
    bool divided = false;
    for (std::size_t i = 0; i < divisors.size(); ++i) {
      const auto& g = divisors[i];
      if (g.is_zero() || !g.leading_monomial().divides(lt.mono)) continue;
      Coeff c = field.div(lt.coeff, g.leading_coeff());
      Monomial m = lt.mono / g.leading_monomial();
      if (want_quotients) out.quotients[i] = out.quotients[i] + Polynomial::monomial(ring, c, m);
      p = p.add_mul_term(field.neg(c), m, g);
      divided = true;
      break;
    }
    if (!divided) {
      rem.push_back(lt);
      p = drop_leading(p);
    }
  }
  out.remainder = Polynomial::from_terms(ring, std::move(rem));
  return out;
}

}  // namespace

Division divide(const Polynomial& f, std::span<const Polynomial> divisors) {
  require_groebner_field(f.ring());
  return divide_impl(f, divisors, true);
}

Polynomial reduce(const Polynomial& f, std::span<const Polynomial> divisors) {
  require_groebner_field(f.ring());
  return divide_impl(f, divisors, false).remainder;
}

Polynomial s_poly(const Polynomial& f, const Polynomial& g) {
  require_same_ring(f.ring(), g.ring());
  if (f.is_zero() || g.is_zero()) raise(Errc::zero_input, "s_poly of a zero polynomial");
  const auto& field = f.ring()->field();
  Monomial l = f.leading_monomial().lcm(g.leading_monomial());
  Polynomial a = f.mul_term(field.inv(f.leading_coeff()), l / f.leading_monomial());
  return a.add_mul_term(field.neg(field.inv(g.leading_coeff())), l / g.leading_monomial(), g);
}

namespace {

struct Pair {
  std::size_t i;
  std::size_t j;
  Monomial lcm;
};

std::vector<Polynomial> reduce_basis(std::vector<Polynomial> basis, const RingPtr& ring) {
  // Minimal basis: drop generators whose leading monomial is divisible by another's.
  std::vector<Polynomial> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j) continue;
      const auto& mi = basis[i].leading_monomial();
      const auto& mj = basis[j].leading_monomial();
      // Equal leading monomials: keep the earlier one.
      if (mj.divides(mi) && (!(mi == mj) || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  std::vector<Polynomial> reduced;
  reduced.reserve(minimal.size());
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Polynomial> others;
    for (std::size_t j = 0; j < minimal.size(); ++j) {
      if (j != i) others.push_back(minimal[j]);
    }
    reduced.push_back(reduce(minimal[i], others).monic());
  }
  std::sort(reduced.begin(), reduced.end(), [&](const Polynomial& a, const Polynomial& b) {
    return ring->cmp(a.leading_monomial(), b.leading_monomial()) > 0;
  });
  return reduced;
}

}  // namespace

GroebnerBasis buchberger(std::span<const Polynomial> gens, const RingPtr& ring) {
  require_groebner_field(ring);
  std::vector<Polynomial> basis;
  for (const auto& g : gens) {
    require_same_ring(ring, g.ring());
    if (!g.is_zero()) basis.push_back(g.monic());
  }
  if (basis.empty()) return GroebnerBasis(ring, {}, true);
  auto unit = [&] { return GroebnerBasis(ring, {Polynomial::constant(ring, Coeff(1))}, true); };
  for (const auto& g : basis) {
    if (g.is_constant()) return unit();
  }

  std::vector<Pair> pairs;
  auto add_pairs_for = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) {
      pairs.push_back({i, j, basis[i].leading_monomial().lcm(basis[j].leading_monomial())});
    }
  };
  for (std::size_t j = 1; j < basis.size(); ++j) add_pairs_for(j);

  while (!pairs.empty()) {
    // Normal strategy: smallest lcm first; ties broken by creation order.
    auto best = pairs.begin();
    for (auto it = pairs.begin() + 1; it != pairs.end(); ++it) {
      if (ring->cmp(it->lcm, best->lcm) < 0) best = it;
    }
    Pair pair = std::move(*best);
    pairs.erase(best);
    const auto& f = basis[pair.i];
    const auto& g = basis[pair.j];
    if (f.leading_monomial().coprime(g.leading_monomial())) continue;
    Polynomial r = reduce(s_poly(f, g), basis);
    if (r.is_zero()) continue;
    if (r.is_constant()) return unit();
    basis.push_back(r.monic());
    add_pairs_for(basis.size() - 1);
  }
  return GroebnerBasis(ring, reduce_basis(std::move(basis), ring), true);
}

bool ideal_member(const Polynomial& f, const GroebnerBasis& gb) {
  require_same_ring(f.ring(), gb.ring());
  return reduce(f, gb.generators()).is_zero();
}

}  // namespace cas
