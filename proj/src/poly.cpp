#include "cas/poly.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <unordered_set>

#include "cas/numtheory.hpp"

namespace cas {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::duplicate_variable: return "duplicate-variable";
    case Errc::invalid_variable: return "invalid-variable";
    case Errc::unknown_field: return "unknown-field";
    case Errc::non_prime_modulus: return "non-prime-modulus";
    case Errc::unknown_identifier: return "unknown-identifier";
    case Errc::syntax: return "syntax";
    case Errc::negative_exponent: return "negative-exponent";
    case Errc::ring_mismatch: return "ring-mismatch";
    case Errc::unsupported_field: return "unsupported-field";
    case Errc::zero_input: return "zero-input";
    case Errc::unsupported_shape: return "unsupported-shape";
    case Errc::dimensionality: return "dimensionality";
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::unserializable: return "unserializable";
    case Errc::unknown_builtin: return "unknown-builtin";
    case Errc::io: return "io";
    case Errc::internal: return "internal";
  }
  return "unknown";
}

// ---------------------------------------------------------------------------
// Orders and fields

std::string_view order_name(MonomialOrder order) noexcept {
  switch (order) {
    case MonomialOrder::lex: return "lex";
    case MonomialOrder::grlex: return "grlex";
    case MonomialOrder::grevlex: return "grevlex";
  }
  return "grevlex";
}

MonomialOrder parse_order(std::string_view name) {
  if (name == "lex") return MonomialOrder::lex;
  if (name == "grlex") return MonomialOrder::grlex;
  if (name == "grevlex") return MonomialOrder::grevlex;
  raise(Errc::invalid_argument, "unknown monomial order '" + std::string(name) + "'");
}

CoefficientField CoefficientField::prime(std::uint64_t p) {
  if (!nt::is_prime(p)) {
    raise(Errc::non_prime_modulus, "Zp modulus " + std::to_string(p) + " is not prime");
  }
  return CoefficientField(Kind::Zp, p);
}

CoefficientField CoefficientField::from_tag(std::string_view tag, std::uint64_t modulus) {
  if (tag == "QQ") return rationals();
  if (tag == "ZZ") return integers();
  if (tag == "CCf") return approximate_complex();
  if (tag == "Zp") return prime(modulus);
  raise(Errc::unknown_field, "unknown coefficient field '" + std::string(tag) + "'");
}

std::string CoefficientField::name() const {
  switch (kind_) {
    case Kind::QQ: return "QQ";
    case Kind::ZZ: return "ZZ";
    case Kind::CCf: return "CCf";
    case Kind::Zp: return "Zp(" + std::to_string(modulus_) + ")";
  }
  return "QQ";
}

namespace {

std::uint64_t to_u64(const mpz_class& z) { return mpz_get_ui(z.get_mpz_t()); }

mpz_class mod_floor(const mpz_class& a, std::uint64_t p) {
  mpz_class r;
  mpz_class m(std::to_string(p));
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Coeff from_u64(std::uint64_t v) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return Coeff(z);
}

}  // namespace

Coeff CoefficientField::normalize(const Coeff& value) const {
  switch (kind_) {
    case Kind::QQ: {
      Coeff q = value;
      q.canonicalize();
      return q;
    }
    case Kind::ZZ: {
      Coeff q = value;
      q.canonicalize();
      if (q.get_den() != 1) {
        raise(Errc::invalid_argument, "non-integer coefficient " + q.get_str() + " in ZZ");
      }
      return q;
    }
    case Kind::Zp: {
      std::uint64_t num = to_u64(mod_floor(value.get_num(), modulus_));
      std::uint64_t den = to_u64(mod_floor(value.get_den(), modulus_));
      if (den == 0) raise(Errc::invalid_argument, "division by zero in " + name());
      if (den != 1) num = nt::mulmod(num, nt::powmod(den, modulus_ - 2, modulus_), modulus_);
      return from_u64(num);
    }
    case Kind::CCf: break;
  }
  raise(Errc::internal, "exact arithmetic requested in CCf");
}

Coeff CoefficientField::add(const Coeff& a, const Coeff& b) const {
  if (kind_ == Kind::Zp) {
    unsigned __int128 s = static_cast<unsigned __int128>(to_u64(a.get_num())) + to_u64(b.get_num());
    return from_u64(static_cast<std::uint64_t>(s % modulus_));
  }
  return Coeff(a + b);
}

Coeff CoefficientField::sub(const Coeff& a, const Coeff& b) const {
  if (kind_ == Kind::Zp) {
    std::uint64_t x = to_u64(a.get_num());
    std::uint64_t y = to_u64(b.get_num());
    return from_u64(x >= y ? x - y : modulus_ - (y - x));
  }
  return Coeff(a - b);
}

Coeff CoefficientField::mul(const Coeff& a, const Coeff& b) const {
  if (kind_ == Kind::Zp) {
    return from_u64(nt::mulmod(to_u64(a.get_num()), to_u64(b.get_num()), modulus_));
  }
  return Coeff(a * b);
}

Coeff CoefficientField::neg(const Coeff& a) const {
  if (kind_ == Kind::Zp) {
    std::uint64_t x = to_u64(a.get_num());
    return from_u64(x == 0 ? 0 : modulus_ - x);
  }
  return Coeff(-a);
}

Coeff CoefficientField::inv(const Coeff& a) const {
  if (a == 0) raise(Errc::invalid_argument, "division by zero");
  switch (kind_) {
    case Kind::QQ: return Coeff(1 / a);
    case Kind::Zp: return from_u64(nt::powmod(to_u64(a.get_num()), modulus_ - 2, modulus_));
    case Kind::ZZ:
      if (a == 1 || a == -1) return a;
      raise(Errc::invalid_argument, a.get_str() + " is not invertible in ZZ");
    case Kind::CCf: break;
  }
  raise(Errc::internal, "exact arithmetic requested in CCf");
}

Coeff CoefficientField::representative(const Coeff& a) const {
  if (kind_ == Kind::Zp) {
    std::uint64_t x = to_u64(a.get_num());
    if (x > modulus_ / 2) return Coeff(-mpz_class(from_u64(modulus_ - x).get_num()));
  }
  return a;
}

// ---------------------------------------------------------------------------
// Monomials

std::uint64_t Monomial::degree() const noexcept {
  std::uint64_t d = 0;
  for (auto e : exps) d += e;
  return d;
}

bool Monomial::is_unit() const noexcept {
  return std::all_of(exps.begin(), exps.end(), [](auto e) { return e == 0; });
}

bool Monomial::divides(const Monomial& other) const {
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] > other.exps[i]) return false;
  }
  return true;
}

bool Monomial::coprime(const Monomial& other) const {
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (exps[i] != 0 && other.exps[i] != 0) return false;
  }
  return true;
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps.size(); ++i) r.exps[i] += other.exps[i];
  return r;
}

Monomial Monomial::operator/(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps.size(); ++i) r.exps[i] -= other.exps[i];
  return r;
}

Monomial Monomial::lcm(const Monomial& other) const {
  Monomial r(*this);
  for (std::size_t i = 0; i < exps.size(); ++i) r.exps[i] = std::max(exps[i], other.exps[i]);
  return r;
}

std::strong_ordering monomial_cmp(MonomialOrder order, const Monomial& a, const Monomial& b) {
  if (a.size() != b.size()) {
    raise(Errc::invalid_argument, "monomial length mismatch");
  }
  const std::size_t n = a.size();
  if (order != MonomialOrder::lex) {
    auto da = a.degree();
    auto db = b.degree();
    if (da != db) return da <=> db;
  }
  if (order == MonomialOrder::grevlex) {
    for (std::size_t i = n; i-- > 0;) {
      if (a.exps[i] != b.exps[i]) return b.exps[i] <=> a.exps[i];
    }
    return std::strong_ordering::equal;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (a.exps[i] != b.exps[i]) return a.exps[i] <=> b.exps[i];
  }
  return std::strong_ordering::equal;
}

// ---------------------------------------------------------------------------
// Rings

PolynomialRing::PolynomialRing(std::vector<std::string> variables, CoefficientField field,
                               MonomialOrder order)
    : variables_(std::move(variables)), field_(field), order_(order) {}

std::optional<std::size_t> PolynomialRing::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (variables_[i] == name) return i;
  }
  return std::nullopt;
}

std::string PolynomialRing::describe() const {
  std::string s = field_.name() + "[";
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (i) s += ',';
    s += variables_[i];
  }
  s += "] ";
  s += order_name(order_);
  return s;
}

bool is_valid_variable_name(std::string_view name) noexcept {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  return std::all_of(name.begin(), name.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; });
}

RingPtr ring_new(std::vector<std::string> variables, CoefficientField field, MonomialOrder order) {
  std::unordered_set<std::string> seen;
  for (const auto& v : variables) {
    if (!is_valid_variable_name(v)) raise(Errc::invalid_variable, "invalid variable name '" + v + "'");
    if (!seen.insert(v).second) raise(Errc::duplicate_variable, "duplicate variable '" + v + "'");
  }
  return std::make_shared<const PolynomialRing>(std::move(variables), field, order);
}

RingPtr with_order(const RingPtr& ring, MonomialOrder order) {
  if (ring->order() == order) return ring;
  return std::make_shared<const PolynomialRing>(ring->variables(), ring->field(), order);
}

bool same_ring(const RingPtr& a, const RingPtr& b) noexcept {
  return a == b || (a && b && *a == *b);
}

void require_same_ring(const RingPtr& a, const RingPtr& b) {
  if (!same_ring(a, b)) {
    raise(Errc::ring_mismatch, "ring mismatch: " + a->describe() + " vs " + b->describe());
  }
}

// ---------------------------------------------------------------------------
// Polynomials

Polynomial Polynomial::constant(RingPtr ring, const Coeff& value) {
  Coeff c = ring->field().normalize(value);
  Polynomial p(std::move(ring));
  if (c != 0) p.terms_.push_back({c, Monomial(p.ring_->nvars())});
  return p;
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t index) {
  Monomial m(ring->nvars());
  m.exps.at(index) = 1;
  return monomial(std::move(ring), Coeff(1), std::move(m));
}

Polynomial Polynomial::monomial(RingPtr ring, const Coeff& coeff, Monomial mono) {
  Coeff c = ring->field().normalize(coeff);
  Polynomial p(std::move(ring));
  if (c != 0) p.terms_.push_back({c, std::move(mono)});
  return p;
}

Polynomial Polynomial::from_terms(RingPtr ring, std::vector<Term> terms) {
  const auto& field = ring->field();
  for (auto& t : terms) {
    if (t.mono.size() != ring->nvars()) raise(Errc::internal, "monomial length does not match ring");
    t.coeff = field.normalize(t.coeff);
  }
  std::sort(terms.begin(), terms.end(),
            [&](const Term& a, const Term& b) { return ring->cmp(a.mono, b.mono) > 0; });
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff = field.add(out.back().coeff, t.coeff);
    } else {
      if (!out.empty() && out.back().coeff == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff == 0) out.pop_back();
  return Polynomial(std::move(ring), std::move(out));
}

bool Polynomial::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_unit());
}

const Term& Polynomial::leading_term() const {
  if (terms_.empty()) raise(Errc::zero_input, "zero polynomial has no leading term");
  return terms_.front();
}

std::uint64_t Polynomial::total_degree() const noexcept {
  std::uint64_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

Polynomial Polynomial::operator-() const {
  std::vector<Term> out(terms_);
  for (auto& t : out) t.coeff = ring_->field().neg(t.coeff);
  return Polynomial(ring_, std::move(out));
}

Polynomial Polynomial::add_mul_term(const Coeff& coeff, const Monomial& mono, const Polynomial& other) const {
  require_same_ring(ring_, other.ring_);
  const auto& field = ring_->field();
  if (coeff == 0 || other.is_zero()) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size() + other.terms_.size());
  std::size_t i = 0;
  std::size_t j = 0;
  Monomial shifted;
  std::size_t shifted_for = other.terms_.size();
  while (i < terms_.size() || j < other.terms_.size()) {
    if (j < other.terms_.size() && shifted_for != j) {
      shifted = other.terms_[j].mono * mono;
      shifted_for = j;
    }
    if (j == other.terms_.size()) {
      out.push_back(terms_[i++]);
      continue;
    }
    if (i == terms_.size()) {
      out.push_back({field.mul(coeff, other.terms_[j++].coeff), std::move(shifted)});
      continue;
    }
    auto c = ring_->cmp(terms_[i].mono, shifted);
    if (c > 0) {
      out.push_back(terms_[i++]);
    } else if (c < 0) {
      out.push_back({field.mul(coeff, other.terms_[j++].coeff), std::move(shifted)});
    } else {
      Coeff s = field.add(terms_[i].coeff, field.mul(coeff, other.terms_[j].coeff));
      if (s != 0) out.push_back({std::move(s), std::move(shifted)});
      ++i;
      ++j;
    }
  }
  return Polynomial(ring_, std::move(out));
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
  return add_mul_term(Coeff(1), Monomial(ring_->nvars()), other);
}

Polynomial Polynomial::operator-(const Polynomial& other) const {
  return add_mul_term(ring_->field().neg(Coeff(1)), Monomial(ring_->nvars()), other);
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
  require_same_ring(ring_, other.ring_);
  const auto& field = ring_->field();
  std::vector<Term> prod;
  prod.reserve(terms_.size() * other.terms_.size());
  for (const auto& a : terms_) {
    for (const auto& b : other.terms_) prod.push_back({field.mul(a.coeff, b.coeff), a.mono * b.mono});
  }
  return from_terms(ring_, std::move(prod));
}

Polynomial Polynomial::scaled(const Coeff& factor) const {
  Coeff f = ring_->field().normalize(factor);
  if (f == 0) return Polynomial(ring_);
  std::vector<Term> out(terms_);
  for (auto& t : out) t.coeff = ring_->field().mul(t.coeff, f);
  return Polynomial(ring_, std::move(out));
}

Polynomial Polynomial::mul_term(const Coeff& coeff, const Monomial& mono) const {
  return Polynomial(ring_).add_mul_term(coeff, mono, *this);
}

Polynomial Polynomial::pow(std::uint64_t exponent) const {
  Polynomial result = constant(ring_, Coeff(1));
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1) result = result * base;
    exponent >>= 1;
    if (exponent) base = base * base;
  }
  return result;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return scaled(ring_->field().inv(leading_coeff()));
}

namespace {

std::string monomial_text(const PolynomialRing& ring, const Monomial& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m.exps[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += ring.variables()[i];
    if (m.exps[i] > 1) s += '^' + std::to_string(m.exps[i]);
  }
  return s;
}

}  // namespace

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  const auto& field = ring_->field();
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    Coeff c = field.representative(terms_[i].coeff);
    const bool negative = c < 0;
    if (negative) {
      s += '-';
      c = -c;
    } else if (i > 0) {
      s += '+';
    }
    if (terms_[i].mono.is_unit()) {
      s += c.get_str();
    } else {
      if (c != 1) s += c.get_str() + '*';
      s += monomial_text(*ring_, terms_[i].mono);
    }
  }
  return s;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  return same_ring(a.ring_, b.ring_) && a.terms_ == b.terms_;
}

Polynomial poly_add(const Polynomial& a, const Polynomial& b) { return a + b; }
Polynomial poly_mul(const Polynomial& a, const Polynomial& b) { return a * b; }
Polynomial poly_neg(const Polynomial& a) { return -a; }
Polynomial poly_pow(const Polynomial& a, std::uint64_t k) { return a.pow(k); }

// ---------------------------------------------------------------------------
// Text parsing

namespace {

class PolyTextParser {
 public:
  PolyTextParser(std::string_view src, std::size_t pos, const RingPtr& ring)
      : src_(src), pos_(pos), ring_(ring) {}

  std::size_t pos() const { return pos_; }

  Polynomial expr() {
    skip_ws();
    Polynomial acc(ring_);
    bool negate = false;
    if (peek() == '-' || peek() == '+') {
      negate = src_[pos_] == '-';
      ++pos_;
    }
    acc = term();
    if (negate) acc = -acc;
    for (;;) {
      skip_ws();
      char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      Polynomial t = term();
      acc = c == '+' ? acc + t : acc - t;
    }
    return acc;
  }

 private:
  Polynomial term() {
    Polynomial acc = factor();
    for (;;) {
      skip_ws();
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc = acc * factor();
      } else if (starts_base(c)) {
        acc = acc * factor();
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial factor() {
    Polynomial b = base();
    skip_ws();
    if (peek() != '^') return b;
    ++pos_;
    skip_ws();
    if (peek() == '-') {
      throw Error(Errc::negative_exponent, "negative exponent at offset " + std::to_string(pos_));
    }
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected exponent");
    mpz_class e = digits();
    if (e > 0xFFFFFFFFU) fail("exponent too large");
    return b.pow(e.get_ui());
  }

  Polynomial base() {
    skip_ws();
    char c = peek();
    if (c == '(') {
      ++pos_;
      Polynomial inner = expr();
      skip_ws();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num = digits();
      mpz_class den = 1;
      if (peek() == '/') {
        ++pos_;
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected denominator");
        den = digits();
        if (den == 0) fail("zero denominator");
      }
      return Polynomial::constant(ring_, Coeff(num, den));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      std::string_view name = src_.substr(start, pos_ - start);
      auto idx = ring_->index_of(name);
      if (!idx) {
        throw Error(Errc::unknown_identifier, "unknown identifier '" + std::string(name) +
                                                  "' in ring " + ring_->describe());
      }
      return Polynomial::variable(ring_, *idx);
    }
    fail(c == '\0' ? "unexpected end of input" : "expected polynomial factor");
  }

  mpz_class digits() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    return mpz_class(std::string(src_.substr(start, pos_ - start)));
  }

  static bool starts_base(char c) {
    return c == '(' || std::isalnum(static_cast<unsigned char>(c));
  }

  char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(pos_, what); }

  std::string_view src_;
  std::size_t pos_;
  const RingPtr& ring_;
};

}  // namespace

Polynomial poly_parse_prefix(std::string_view source, std::size_t& pos, const RingPtr& ring) {
  PolyTextParser parser(source, pos, ring);
  Polynomial p = parser.expr();
  pos = parser.pos();
  return p;
}

Polynomial poly_parse_text(std::string_view source, const RingPtr& ring) {
  std::size_t pos = 0;
  Polynomial p = poly_parse_prefix(source, pos, ring);
  while (pos < source.size() && std::isspace(static_cast<unsigned char>(source[pos]))) ++pos;
  if (pos != source.size()) throw SyntaxError(pos, "unexpected character '" + std::string(1, source[pos]) + "'");
  return p;
}

// ---------------------------------------------------------------------------
// Variables, substitution, evaluation

std::set<std::string> vars_of(const Polynomial& f) {
  std::set<std::string> out;
  const auto& names = f.ring()->variables();
  for (const auto& t : f.terms()) {
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      if (t.mono.exps[i] != 0) out.insert(names[i]);
    }
  }
  return out;
}

bool is_univariate(const Polynomial& f) { return vars_of(f).size() <= 1; }

std::uint32_t degree_in(const Polynomial& f, std::size_t index) {
  std::uint32_t d = 0;
  for (const auto& t : f.terms()) d = std::max(d, t.mono.exps.at(index));
  return d;
}

RingPtr ring_without(const RingPtr& ring, std::string_view var) {
  auto idx = ring->index_of(var);
  if (!idx) raise(Errc::unknown_identifier, "unknown variable '" + std::string(var) + "'");
  std::vector<std::string> rest;
  for (const auto& v : ring->variables()) {
    if (v != var) rest.push_back(v);
  }
  return std::make_shared<const PolynomialRing>(std::move(rest), ring->field(), ring->order());
}

Polynomial map_to_ring(const Polynomial& f, const RingPtr& target) {
  const auto& src = f.ring()->variables();
  std::vector<std::optional<std::size_t>> where(src.size());
  for (std::size_t i = 0; i < src.size(); ++i) where[i] = target->index_of(src[i]);
  std::vector<Term> out;
  out.reserve(f.size());
  for (const auto& t : f.terms()) {
    Monomial m(target->nvars());
    for (std::size_t i = 0; i < src.size(); ++i) {
      if (t.mono.exps[i] == 0) continue;
      if (!where[i]) {
        raise(Errc::ring_mismatch, "variable '" + src[i] + "' is not in ring " + target->describe());
      }
      m.exps[*where[i]] = t.mono.exps[i];
    }
    out.push_back({t.coeff, std::move(m)});
  }
  return Polynomial::from_terms(target, std::move(out));
}

namespace {

template <typename T>
T int_power(T base, std::uint32_t e) {
  T r(1);
  while (e > 0) {
    if (e & 1) r *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return r;
}

Complex to_complex(const Coeff& c) { return Complex(c.get_d(), 0.0); }

RingPtr approx_ring(const RingPtr& ring) {
  return std::make_shared<const PolynomialRing>(ring->variables(), CoefficientField::approximate_complex(),
                                                ring->order());
}

}  // namespace

Polynomial substitute(const Polynomial& f, std::string_view var, const Coeff& value) {
  auto idx = f.ring()->index_of(var);
  if (!idx) raise(Errc::unknown_identifier, "unknown variable '" + std::string(var) + "'");
  RingPtr target = ring_without(f.ring(), var);
  const auto& field = f.ring()->field();
  Coeff v = field.normalize(value);
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    Coeff c = t.coeff;
    for (std::uint32_t k = 0; k < t.mono.exps[*idx]; ++k) c = field.mul(c, v);
    Monomial m;
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      if (i != *idx) m.exps.push_back(t.mono.exps[i]);
    }
    out.push_back({std::move(c), std::move(m)});
  }
  return Polynomial::from_terms(target, std::move(out));
}

ApproxPolynomial substitute(const Polynomial& f, std::string_view var, Complex value) {
  if (f.ring()->field().kind() == CoefficientField::Kind::Zp) {
    raise(Errc::unsupported_field, "cannot substitute an approximate value into " + f.ring()->describe());
  }
  return ApproxPolynomial::from_exact(f).substitute(var, value);
}

Coeff evaluate(const Polynomial& f, const std::map<std::string, Coeff>& point) {
  const auto& field = f.ring()->field();
  const auto& names = f.ring()->variables();
  std::vector<Coeff> values(names.size());
  for (const auto& v : vars_of(f)) {
    auto it = point.find(v);
    if (it == point.end()) raise(Errc::invalid_argument, "missing assignment for variable '" + v + "'");
    values[*f.ring()->index_of(v)] = field.normalize(it->second);
  }
  Coeff sum(0);
  for (const auto& t : f.terms()) {
    Coeff prod = t.coeff;
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      for (std::uint32_t k = 0; k < t.mono.exps[i]; ++k) prod = field.mul(prod, values[i]);
    }
    sum = field.add(sum, prod);
  }
  return sum;
}

Complex evaluate(const Polynomial& f, const std::map<std::string, Complex>& point) {
  return ApproxPolynomial::from_exact(f).evaluate(point);
}

// ---------------------------------------------------------------------------
// Approximate polynomials

ApproxPolynomial ApproxPolynomial::from_exact(const Polynomial& f) {
  std::vector<ApproxTerm> terms;
  terms.reserve(f.size());
  const auto& field = f.ring()->field();
  for (const auto& t : f.terms()) terms.push_back({to_complex(field.representative(t.coeff)), t.mono});
  ApproxPolynomial p(approx_ring(f.ring()));
  p.terms_ = std::move(terms);
  return p;
}

ApproxPolynomial ApproxPolynomial::from_terms(RingPtr ring, std::vector<ApproxTerm> terms) {
  std::sort(terms.begin(), terms.end(),
            [&](const ApproxTerm& a, const ApproxTerm& b) { return ring->cmp(a.mono, b.mono) > 0; });
  std::vector<ApproxTerm> out;
  for (auto& t : terms) {
    if (!out.empty() && out.back().mono == t.mono) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && out.back().coeff == Complex(0.0, 0.0)) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && out.back().coeff == Complex(0.0, 0.0)) out.pop_back();
  ApproxPolynomial p(std::move(ring));
  p.terms_ = std::move(out);
  return p;
}

double ApproxPolynomial::max_abs_coeff() const noexcept {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, std::abs(t.coeff));
  return m;
}

std::set<std::string> ApproxPolynomial::vars() const {
  std::set<std::string> out;
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      if (t.mono.exps[i] != 0) out.insert(ring_->variables()[i]);
    }
  }
  return out;
}

std::vector<Complex> ApproxPolynomial::univariate_coeffs(std::string_view var) const {
  auto idx = ring_->index_of(var);
  if (!idx) raise(Errc::unknown_identifier, "unknown variable '" + std::string(var) + "'");
  std::vector<Complex> coeffs;
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      if (i != *idx && t.mono.exps[i] != 0) {
        raise(Errc::invalid_argument, "polynomial is not univariate in '" + std::string(var) + "'");
      }
    }
    std::size_t e = t.mono.exps[*idx];
    if (coeffs.size() <= e) coeffs.resize(e + 1);
    coeffs[e] += t.coeff;
  }
  return coeffs;
}

ApproxPolynomial ApproxPolynomial::substitute(std::string_view var, Complex value) const {
  auto idx = ring_->index_of(var);
  if (!idx) raise(Errc::unknown_identifier, "unknown variable '" + std::string(var) + "'");
  RingPtr target = ring_without(ring_, var);
  std::vector<ApproxTerm> out;
  for (const auto& t : terms_) {
    Monomial m;
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      if (i != *idx) m.exps.push_back(t.mono.exps[i]);
    }
    out.push_back({t.coeff * int_power(value, t.mono.exps[*idx]), std::move(m)});
  }
  return from_terms(std::move(target), std::move(out));
}

Complex ApproxPolynomial::evaluate(const std::map<std::string, Complex>& point) const {
  const auto& names = ring_->variables();
  std::vector<Complex> values(names.size());
  for (const auto& v : vars()) {
    auto it = point.find(v);
    if (it == point.end()) raise(Errc::invalid_argument, "missing assignment for variable '" + v + "'");
    values[*ring_->index_of(v)] = it->second;
  }
  Complex sum(0.0, 0.0);
  for (const auto& t : terms_) {
    Complex prod = t.coeff;
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      if (t.mono.exps[i]) prod *= int_power(values[i], t.mono.exps[i]);
    }
    sum += prod;
  }
  return sum;
}

bool operator==(const ApproxPolynomial& a, const ApproxPolynomial& b) {
  if (!same_ring(a.ring_, b.ring_) || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (!(a.terms_[i].mono == b.terms_[i].mono)) return false;
    // Bit equality of the floating representation.
    if (std::memcmp(&a.terms_[i].coeff, &b.terms_[i].coeff, sizeof(Complex)) != 0) return false;
  }
  return true;
}

}  // namespace cas
