#include "cas/univariate.hpp"

namespace cas {

UniPoly::UniPoly(CoefficientField field, std::vector<Coeff> coeffs)
    : field_(field), coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c = field_.normalize(c);
  trim();
}

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

UniPoly UniPoly::from_polynomial(const Polynomial& f, std::size_t var_index) {
  std::vector<Coeff> c;
  for (const auto& t : f.terms()) {
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      if (i != var_index && t.mono.exps[i] != 0) {
        raise(Errc::invalid_argument, "polynomial " + f.to_string() + " is not univariate");
      }
    }
    std::size_t e = t.mono.exps[var_index];
    if (c.size() <= e) c.resize(e + 1, Coeff(0));
    c[e] = t.coeff;
  }
  return UniPoly(f.ring()->field(), std::move(c));
}

Polynomial UniPoly::to_polynomial(const RingPtr& ring, std::size_t var_index) const {
  std::vector<Term> terms;
  for (std::size_t e = 0; e < coeffs_.size(); ++e) {
    if (coeffs_[e] == 0) continue;
    Monomial m(ring->nvars());
    m.exps.at(var_index) = static_cast<std::uint32_t>(e);
    terms.push_back({coeffs_[e], std::move(m)});
  }
  return Polynomial::from_terms(ring, std::move(terms));
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  Coeff inv = field_.inv(leading());
  std::vector<Coeff> c(coeffs_);
  for (auto& x : c) x = field_.mul(x, inv);
  return UniPoly(field_, std::move(c));
}

UniPoly UniPoly::derivative() const {
  std::vector<Coeff> c;
  for (std::size_t e = 1; e < coeffs_.size(); ++e) {
    c.push_back(field_.mul(coeffs_[e], field_.normalize(Coeff(static_cast<unsigned long>(e)))));
  }
  return UniPoly(field_, std::move(c));
}

UniPoly UniPoly::operator*(const UniPoly& other) const {
  if (is_zero() || other.is_zero()) return UniPoly(field_, {});
  std::vector<Coeff> c(coeffs_.size() + other.coeffs_.size() - 1, Coeff(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) {
      c[i + j] = field_.add(c[i + j], field_.mul(coeffs_[i], other.coeffs_[j]));
    }
  }
  return UniPoly(field_, std::move(c));
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& divisor) const {
  if (divisor.is_zero()) raise(Errc::invalid_argument, "division by the zero polynomial");
  std::vector<Coeff> rem(coeffs_);
  const long dd = divisor.degree();
  std::vector<Coeff> quot(degree() >= dd ? static_cast<std::size_t>(degree() - dd + 1) : 0, Coeff(0));
  Coeff inv_lead = field_.inv(divisor.leading());
  for (long k = degree(); k >= dd; --k) {
    const Coeff& top = rem[static_cast<std::size_t>(k)];
    if (top == 0) continue;
    Coeff q = field_.mul(top, inv_lead);
    quot[static_cast<std::size_t>(k - dd)] = q;
    for (long i = 0; i <= dd; ++i) {
      auto& slot = rem[static_cast<std::size_t>(k - dd + i)];
      slot = field_.sub(slot, field_.mul(q, divisor.coeffs_[static_cast<std::size_t>(i)]));
    }
  }
  return {UniPoly(field_, std::move(quot)), UniPoly(field_, std::move(rem))};
}

UniPoly uni_gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    UniPoly r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

namespace {

// f(x) = g(x^p) with every coefficient its own p-th root in Fp.
UniPoly pth_root(const UniPoly& f) {
  const std::uint64_t p = f.field().modulus();
  std::vector<Coeff> c;
  for (std::size_t e = 0; e < f.coeffs().size(); e += p) c.push_back(f.coeffs()[e]);
  return UniPoly(f.field(), std::move(c));
}

}  // namespace

UniPoly squarefree_part(const UniPoly& f) {
  if (f.is_zero()) raise(Errc::zero_input, "squarefree part of the zero polynomial");
  if (f.degree() <= 0) return UniPoly(f.field(), {Coeff(1)});
  UniPoly d = f.derivative();
  if (d.is_zero()) return squarefree_part(pth_root(f));
  UniPoly g = uni_gcd(f, d);
  UniPoly w = f.divmod(g).first.monic();
  // What is left in g after stripping w's factors has multiplicity divisible by p.
  for (;;) {
    UniPoly c = uni_gcd(g, w);
    if (c.degree() <= 0) break;
    g = g.divmod(c).first;
  }
  if (g.degree() > 0) w = (w * squarefree_part(g)).monic();
  return w;
}

}  // namespace cas
