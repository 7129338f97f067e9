#include "cas/ideal.hpp"

#include <algorithm>
#include <set>

#include "cas/univariate.hpp"

namespace cas {

Ideal::Ideal(RingPtr ring, std::vector<Polynomial> generators)
    : ring_(std::move(ring)), cache_(std::make_shared<Cache>()) {
  for (auto& g : generators) {
    require_same_ring(ring_, g.ring());
    if (!g.is_zero()) generators_.push_back(std::move(g));
  }
}

const GroebnerBasis& Ideal::groebner() const {
  std::call_once(cache_->once, [this] { cache_->gb = buchberger(generators_, ring_); });
  return *cache_->gb;
}

bool Ideal::contains(const Polynomial& f) const { return ideal_member(f, groebner()); }

bool Ideal::contains(const Ideal& other) const {
  require_same_ring(ring_, other.ring_);
  return std::all_of(other.generators_.begin(), other.generators_.end(),
                     [&](const Polynomial& g) { return contains(g); });
}

Ideal Ideal::canonical() const { return Ideal(ring_, groebner().generators()); }

Ideal ideal_sum(const Ideal& a, const Ideal& b) {
  require_same_ring(a.ring(), b.ring());
  std::vector<Polynomial> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return Ideal(a.ring(), std::move(gens));
}

Ideal ideal_product(const Ideal& a, const Ideal& b) {
  require_same_ring(a.ring(), b.ring());
  std::vector<Polynomial> gens;
  for (const auto& f : a.generators()) {
    for (const auto& g : b.generators()) gens.push_back(f * g);
  }
  return Ideal(a.ring(), std::move(gens));
}

bool ideal_equals(const Ideal& a, const Ideal& b) {
  require_same_ring(a.ring(), b.ring());
  return a.groebner() == b.groebner();
}

Ideal eliminate(const Ideal& ideal, const std::vector<std::string>& drop) {
  const auto& ring = ideal.ring();
  require_groebner_field(ring);
  std::set<std::string> dropped;
  for (const auto& v : drop) {
    if (!ring->has_variable(v)) {
      raise(Errc::unknown_identifier, "unknown variable '" + v + "' in ring " + ring->describe());
    }
    dropped.insert(v);
  }
  if (dropped.empty()) return ideal.canonical();

  std::vector<std::string> order_vars;
  std::vector<std::string> remaining;
  for (const auto& v : ring->variables()) {
    if (dropped.count(v)) order_vars.push_back(v);
  }
  for (const auto& v : ring->variables()) {
    if (!dropped.count(v)) remaining.push_back(v);
  }
  order_vars.insert(order_vars.end(), remaining.begin(), remaining.end());

  auto elim_ring = ring_new(order_vars, ring->field(), MonomialOrder::lex);
  auto sub_ring = ring_new(remaining, ring->field(), ring->order());
  std::vector<Polynomial> mapped;
  for (const auto& g : ideal.generators()) mapped.push_back(map_to_ring(g, elim_ring));
  GroebnerBasis gb = buchberger(mapped, elim_ring);

  std::vector<Polynomial> kept;
  for (const auto& g : gb.generators()) {
    auto used = vars_of(g);
    bool free = std::none_of(used.begin(), used.end(),
                             [&](const std::string& v) { return dropped.count(v) > 0; });
    if (free) kept.push_back(map_to_ring(g, sub_ring));
  }
  return Ideal(sub_ring, std::move(kept)).canonical();
}

namespace {

std::string fresh_variable(const PolynomialRing& ring) {
  for (std::size_t k = 0;; ++k) {
    std::string name = "aux" + std::to_string(k);
    if (!ring.has_variable(name)) return name;
  }
}

}  // namespace

Ideal intersect(const Ideal& a, const Ideal& b) {
  const auto& ring = a.ring();
  require_same_ring(ring, b.ring());
  require_groebner_field(ring);
  if (a.is_zero() || b.is_zero()) return Ideal(ring, {});

  std::string t = fresh_variable(*ring);
  std::vector<std::string> vars{t};
  vars.insert(vars.end(), ring->variables().begin(), ring->variables().end());
  auto ext = ring_new(vars, ring->field(), ring->order());
  Polynomial tv = Polynomial::variable(ext, 0);
  Polynomial one_minus_t = Polynomial::constant(ext, Coeff(1)) - tv;

  std::vector<Polynomial> gens;
  for (const auto& f : a.generators()) gens.push_back(tv * map_to_ring(f, ext));
  for (const auto& g : b.generators()) gens.push_back(one_minus_t * map_to_ring(g, ext));
  Ideal result = eliminate(Ideal(ext, std::move(gens)), {t});

  std::vector<Polynomial> back;
  for (const auto& g : result.generators()) back.push_back(map_to_ring(g, ring));
  return Ideal(ring, std::move(back));
}

Ideal quotient(const Ideal& a, const Polynomial& f) {
  const auto& ring = a.ring();
  require_same_ring(ring, f.ring());
  if (f.is_zero()) raise(Errc::zero_input, "quotient by the zero polynomial");
  Ideal meet = intersect(a, Ideal(ring, {f}));
  std::vector<Polynomial> gens;
  std::vector<Polynomial> divisor{f};
  for (const auto& g : meet.generators()) {
    Division d = divide(g, divisor);
    if (!d.remainder.is_zero()) raise(Errc::internal, "inexact division in ideal quotient");
    gens.push_back(d.quotients.front());
  }
  return Ideal(ring, std::move(gens)).canonical();
}

Ideal quotient(const Ideal& a, const Ideal& b) {
  require_same_ring(a.ring(), b.ring());
  if (b.is_zero()) raise(Errc::zero_input, "quotient by the zero ideal");
  std::optional<Ideal> result;
  for (const auto& f : b.generators()) {
    Ideal q = quotient(a, f);
    result = result ? intersect(*result, q) : q;
  }
  return result->canonical();
}

Ideal saturate(const Ideal& a, const Ideal& b) {
  require_same_ring(a.ring(), b.ring());
  if (b.is_zero()) raise(Errc::zero_input, "saturation by the zero ideal");
  Ideal current = a.canonical();
  for (int step = 0; step < 64; ++step) {
    Ideal next = quotient(current, b);
    if (ideal_equals(next, current)) return next;
    current = std::move(next);
  }
  raise(Errc::internal, "saturation did not stabilize after 64 quotients");
}

namespace {

Polynomial squarefree_support(const Polynomial& m) {
  Monomial mono = m.leading_monomial();
  for (auto& e : mono.exps) e = e > 0 ? 1 : 0;
  return Polynomial::monomial(m.ring(), Coeff(1), std::move(mono));
}

Polynomial univariate_squarefree(const Polynomial& f) {
  auto used = vars_of(f);
  std::size_t index = *f.ring()->index_of(*used.begin());
  return squarefree_part(UniPoly::from_polynomial(f, index)).to_polynomial(f.ring(), index);
}

}  // namespace

Ideal radical(const Ideal& ideal) {
  const auto& ring = ideal.ring();
  require_groebner_field(ring);
  if (ideal.is_zero() || ideal.is_unit()) return ideal.canonical();

  const auto& gens = ideal.generators();
  if (std::all_of(gens.begin(), gens.end(), [](const Polynomial& g) { return g.is_monomial(); })) {
    std::vector<Polynomial> out;
    for (const auto& g : gens) out.push_back(squarefree_support(g));
    return Ideal(ring, std::move(out)).canonical();
  }
  if (gens.size() == 1 && is_univariate(gens.front())) {
    return Ideal(ring, {univariate_squarefree(gens.front())}).canonical();
  }
  if (dimension(ideal) == 0) {
    std::vector<Polynomial> out = ideal.groebner().generators();
    for (const auto& v : ring->variables()) {
      std::vector<std::string> others;
      for (const auto& w : ring->variables()) {
        if (w != v) others.push_back(w);
      }
      Ideal eliminant = eliminate(ideal, others);
      const Polynomial& g = eliminant.groebner().generators().front();
      out.push_back(map_to_ring(univariate_squarefree(g), ring));
    }
    return Ideal(ring, std::move(out)).canonical();
  }
  raise(Errc::unsupported_shape,
        "radical is implemented for monomial ideals, principal ideals with a univariate "
        "generator, and zero-dimensional ideals; this ideal is none of these");
}

bool is_radical(const Ideal& ideal) { return ideal_equals(radical(ideal), ideal); }

namespace {

using Support = std::vector<std::size_t>;

Support support_of(const Monomial& m) {
  Support s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m.exps[i] > 0) s.push_back(i);
  }
  return s;
}

// Smallest variable set meeting every support, by branching on the first
// support not yet hit. `best` holds the size of the best set found so far.
void min_hitting_set(const std::vector<Support>& supports, std::vector<bool>& chosen,
                     std::size_t size, std::size_t& best) {
  if (size >= best) return;
  const Support* open = nullptr;
  for (const auto& s : supports) {
    if (std::none_of(s.begin(), s.end(), [&](std::size_t v) { return chosen[v]; })) {
      open = &s;
      break;
    }
  }
  if (!open) {
    best = size;
    return;
  }
  for (std::size_t v : *open) {
    chosen[v] = true;
    min_hitting_set(supports, chosen, size + 1, best);
    chosen[v] = false;
  }
}

}  // namespace

long dimension(const Ideal& ideal) {
  const auto& ring = ideal.ring();
  require_groebner_field(ring);
  const GroebnerBasis& gb = ideal.groebner();
  const long n = static_cast<long>(ring->nvars());
  if (gb.is_zero_ideal()) return n;
  if (gb.is_unit_ideal()) return -1;
  std::vector<Support> supports;
  for (const auto& g : gb.generators()) supports.push_back(support_of(g.leading_monomial()));
  std::vector<bool> chosen(ring->nvars(), false);
  std::size_t best = ring->nvars() + 1;
  min_hitting_set(supports, chosen, 0, best);
  return n - static_cast<long>(best);
}

namespace {

using VarSet = std::set<std::size_t>;

void minimize_supports(std::vector<VarSet>& sets) {
  std::sort(sets.begin(), sets.end(),
            [](const VarSet& a, const VarSet& b) { return a.size() < b.size() || (a.size() == b.size() && a < b); });
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<VarSet> kept;
  for (const auto& s : sets) {
    bool covered = std::any_of(kept.begin(), kept.end(), [&](const VarSet& k) {
      return std::includes(s.begin(), s.end(), k.begin(), k.end());
    });
    if (!covered) kept.push_back(s);
  }
  sets = std::move(kept);
}

void split_components(std::vector<VarSet> supports, std::vector<VarSet>& out) {
  minimize_supports(supports);
  auto wide = std::find_if(supports.begin(), supports.end(), [](const VarSet& s) { return s.size() > 1; });
  if (wide == supports.end()) {
    VarSet component;
    for (const auto& s : supports) component.insert(*s.begin());
    out.push_back(std::move(component));
    return;
  }
  VarSet rest = *wide;
  std::size_t v = *rest.begin();
  rest.erase(rest.begin());
  auto with_var = supports;
  with_var.push_back({v});
  split_components(std::move(with_var), out);
  supports.push_back(std::move(rest));
  split_components(std::move(supports), out);
}

std::string generator_text(const Ideal& ideal) {
  std::string s;
  for (const auto& g : ideal.generators()) {
    if (!s.empty()) s += ',';
    s += g.to_string();
  }
  return s;
}

}  // namespace

std::vector<Ideal> primary_decomposition(const Ideal& ideal) {
  const auto& ring = ideal.ring();
  require_groebner_field(ring);
  std::vector<VarSet> supports;
  for (const auto& g : ideal.generators()) {
    bool squarefree_monomial =
        g.is_monomial() &&
        std::all_of(g.leading_monomial().exps.begin(), g.leading_monomial().exps.end(),
                    [](std::uint32_t e) { return e <= 1; });
    if (!squarefree_monomial) {
      raise(Errc::unsupported_shape,
            "primary decomposition is implemented for squarefree monomial ideals; generator " +
                g.to_string() + " is not a squarefree monomial");
    }
    if (g.is_constant()) raise(Errc::invalid_argument, "the unit ideal has no primary decomposition");
    auto s = support_of(g.leading_monomial());
    supports.emplace_back(s.begin(), s.end());
  }
  if (supports.empty()) return {Ideal(ring, {})};

  std::vector<VarSet> components;
  split_components(std::move(supports), components);
  // Minimal primes are the inclusion-minimal components.
  minimize_supports(components);

  std::vector<Ideal> primes;
  for (const auto& c : components) {
    std::vector<Polynomial> gens;
    for (std::size_t v : c) gens.push_back(Polynomial::variable(ring, v));
    primes.push_back(Ideal(ring, std::move(gens)).canonical());
  }
  std::vector<std::pair<long, std::string>> keys;
  std::vector<std::size_t> idx(primes.size());
  for (std::size_t i = 0; i < primes.size(); ++i) {
    idx[i] = i;
    keys.emplace_back(static_cast<long>(ring->nvars()) - static_cast<long>(primes[i].generators().size()),
                      generator_text(primes[i]));
  }
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (keys[a].first != keys[b].first) return keys[a].first > keys[b].first;
    return keys[a].second < keys[b].second;
  });
  std::vector<Ideal> ordered;
  for (std::size_t i : idx) ordered.push_back(primes[i]);
  return ordered;
}

}  // namespace cas
