#include "generators.hpp"

#include <cmath>

#include "cas/solver.hpp"

namespace cas::testing {

RingPtr random_ring(Rng& rng, std::size_t max_vars, bool allow_prime, std::size_t min_vars) {
  auto n = static_cast<std::size_t>(uniform(rng, static_cast<long>(min_vars), static_cast<long>(max_vars)));
  std::vector<std::string> vars(variable_pool.begin(), variable_pool.begin() + static_cast<long>(n));
  CoefficientField field = allow_prime && coin(rng) ? CoefficientField::prime(32003) : CoefficientField::rationals();
  static const std::vector<MonomialOrder> orders{MonomialOrder::lex, MonomialOrder::grlex, MonomialOrder::grevlex};
  return ring_new(vars, field, pick(rng, orders));
}

Coeff random_coeff(Rng& rng, bool allow_fractions) {
  long num = uniform(rng, -9, 9);
  if (num == 0) num = 1;
  long den = allow_fractions && coin(rng, 0.25) ? uniform(rng, 2, 5) : 1;
  Coeff c(num, den);
  c.canonicalize();
  return c;
}

Monomial random_monomial(Rng& rng, std::size_t nvars, unsigned max_degree) {
  Monomial m(nvars);
  unsigned budget = static_cast<unsigned>(uniform(rng, 0, max_degree));
  for (unsigned k = 0; k < budget; ++k) ++m.exps[static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(nvars) - 1))];
  return m;
}

Polynomial random_poly(Rng& rng, const RingPtr& ring, std::size_t max_terms, unsigned max_degree) {
  std::vector<Term> terms;
  auto count = uniform(rng, 1, static_cast<long>(max_terms));
  for (long i = 0; i < count; ++i) {
    terms.push_back({random_coeff(rng), random_monomial(rng, ring->nvars(), max_degree)});
  }
  return Polynomial::from_terms(ring, std::move(terms));
}

std::vector<Polynomial> random_generators(Rng& rng, const RingPtr& ring, std::size_t max_gens, unsigned max_degree) {
  std::vector<Polynomial> gens;
  auto count = uniform(rng, 1, static_cast<long>(max_gens));
  while (static_cast<long>(gens.size()) < count) {
    Polynomial f = random_poly(rng, ring, 4, max_degree);
    if (!f.is_zero()) gens.push_back(std::move(f));
  }
  return gens;
}

std::vector<Polynomial> structured_generators(Rng& rng, const RingPtr& ring, std::size_t max_gens, unsigned max_degree) {
  if (max_degree < 2 || !coin(rng, 1.0 / 3)) return random_generators(rng, ring, max_gens, max_degree);
  Polynomial common = random_poly(rng, ring, 2, 1);
  if (common.is_constant()) common = common + Polynomial::variable(ring, 0);
  std::vector<Polynomial> gens;
  for (const auto& f : random_generators(rng, ring, max_gens, max_degree - 1)) gens.push_back(f * common);
  return gens;
}

std::vector<Polynomial> random_monomial_generators(Rng& rng, const RingPtr& ring, std::size_t max_gens,
                                                  unsigned max_degree) {
  std::vector<Polynomial> gens;
  auto count = uniform(rng, 1, static_cast<long>(max_gens));
  for (long i = 0; i < count; ++i) {
    Monomial m = random_monomial(rng, ring->nvars(), max_degree);
    // Constants are rare but allowed: they exercise the unit ideal.
    if (m.is_unit() && !coin(rng, 0.1)) m.exps[0] = 1;
    gens.push_back(Polynomial::monomial(ring, Coeff(1), std::move(m)));
  }
  return gens;
}

IntMatrix random_int_matrix(Rng& rng, std::size_t max_rows, std::size_t max_cols, long bound) {
  auto rows = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(max_rows)));
  auto cols = static_cast<std::size_t>(uniform(rng, 1, static_cast<long>(max_cols)));
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = uniform(rng, -bound, bound);
  }
  // Rank-deficient inputs: copy a multiple of one row onto another.
  if (rows > 1 && coin(rng, 0.3)) {
    long k = uniform(rng, -3, 3);
    for (std::size_t j = 0; j < cols; ++j) m.at(rows - 1, j) = m.at(0, j) * k;
  }
  return m;
}

double random_real(Rng& rng) {
  switch (uniform(rng, 0, 4)) {
    case 0:
      return 0.0;
    case 1:
      return static_cast<double>(uniform(rng, -1000, 1000)) / 8.0;
    case 2:
      return std::ldexp(std::uniform_real_distribution<double>(-1, 1)(rng), static_cast<int>(uniform(rng, -300, 300)));
    default:
      return std::uniform_real_distribution<double>(-1e6, 1e6)(rng);
  }
}

std::string random_text(Rng& rng) {
  static const std::vector<std::string> pieces{"a", "Z", " ", "\"", "\\", "\n", "(", ")", "[", ",", "]", "é", "∂", "0", "ideal"};
  std::string out;
  auto n = uniform(rng, 0, 8);
  for (long i = 0; i < n; ++i) out += pick(rng, pieces);
  return out;
}

namespace {

WireValue random_leaf(Rng& rng) {
  switch (uniform(rng, 0, 6)) {
    case 0: {
      mpz_class v = uniform(rng, -1000000, 1000000);
      if (coin(rng, 0.3)) v *= mpz_class("98765432109876543210");
      return Integer{v};
    }
    case 1: {
      mpq_class q(uniform(rng, -500, 500), uniform(rng, 2, 97));
      q.canonicalize();
      return make_number(q);
    }
    case 2:
      return Real{random_real(rng)};
    case 3:
      return Boolean{coin(rng)};
    case 4:
      return Text{random_text(rng)};
    case 5:
      return Null{};
    default:
      return RefV{"o" + std::to_string(uniform(rng, 1, 99)), pick(rng, std::vector<std::string>{"gb", "ideal", "poly"})};
  }
}

WireValue random_algebraic(Rng& rng) {
  RingPtr ring = random_ring(rng, 4);
  switch (uniform(rng, 0, 8)) {
    case 0:
      return RingV{ring};
    case 1:
      return PolyV{coin(rng, 0.1) ? Polynomial(ring) : random_poly(rng, ring, 4, 4)};
    case 2:
      return IdealV{Ideal(ring, coin(rng, 0.1) ? std::vector<Polynomial>{} : random_generators(rng, ring, 3, 3))};
    case 3: {
      IdealListV list{ring, {}};
      auto n = uniform(rng, 0, 3);
      for (long i = 0; i < n; ++i) list.items.emplace_back(ring, random_generators(rng, ring, 2, 2));
      return list;
    }
    case 4:
      return GbV{buchberger(random_generators(rng, ring, 2, 2), ring)};
    case 5:
      return IntMatrixV{random_int_matrix(rng, 3, 3, 50)};
    case 6: {
      auto rows = uniform(rng, 1, 2);
      auto cols = uniform(rng, 1, 3);
      PolyMatrixV m{ring, {}};
      for (long i = 0; i < rows; ++i) {
        std::vector<Polynomial> row;
        for (long j = 0; j < cols; ++j) row.push_back(random_poly(rng, ring, 2, 2));
        m.rows.push_back(std::move(row));
      }
      return m;
    }
    case 7: {
      mpz_class n = uniform(rng, 1, 1000000000);
      return coin(rng) ? WireValue(FactorizationV{factor_n(n)}) : WireValue(SnfV{snf(random_int_matrix(rng, 3, 3, 9))});
    }
    default: {
      SolutionSet s;
      s.variables = {"z", "y"};
      s.tolerance = std::ldexp(1.0, static_cast<int>(uniform(rng, -40, -5)));
      auto n = uniform(rng, 0, 3);
      for (long i = 0; i < n; ++i) s.points.push_back({random_real(rng), random_real(rng)});
      return SolutionV{s};
    }
  }
}

}  // namespace

WireValue random_wire_value(Rng& rng, int depth) {
  long kind = uniform(rng, 0, depth > 0 ? 9 : 7);
  if (kind < 4) return random_leaf(rng);
  if (kind < 8) return random_algebraic(rng);
  ListV list;
  auto n = uniform(rng, 0, 4);
  for (long i = 0; i < n; ++i) list.items.push_back(random_wire_value(rng, depth - 1));
  return list;
}

}  // namespace cas::testing
