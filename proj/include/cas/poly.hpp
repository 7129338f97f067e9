#pragma once

#include <gmpxx.h>

#include <compare>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cas/error.hpp"

namespace cas {

enum class MonomialOrder { lex, grlex, grevlex };

std::string_view order_name(MonomialOrder order) noexcept;
MonomialOrder parse_order(std::string_view name);

using Coeff = mpq_class;
using Complex = std::complex<double>;

/// Coefficient domain of a polynomial ring. Exact kinds (QQ, Zp, ZZ) share the
/// mpq representation; Zp values are kept as integers in [0, p).
class CoefficientField {
 public:
  enum class Kind { QQ, Zp, ZZ, CCf };

  static CoefficientField rationals() { return CoefficientField(Kind::QQ, 0); }
  static CoefficientField integers() { return CoefficientField(Kind::ZZ, 0); }
  static CoefficientField approximate_complex() { return CoefficientField(Kind::CCf, 0); }
  /// Throws non_prime_modulus unless p is prime.
  static CoefficientField prime(std::uint64_t p);
  /// "QQ", "ZZ", "CCf" or "Zp" with its modulus.
  static CoefficientField from_tag(std::string_view tag, std::uint64_t modulus = 0);

  Kind kind() const noexcept { return kind_; }
  std::uint64_t modulus() const noexcept { return modulus_; }
  bool is_exact() const noexcept { return kind_ != Kind::CCf; }
  /// True for the domains Gröbner computations accept (QQ and Zp).
  bool supports_groebner() const noexcept { return kind_ == Kind::QQ || kind_ == Kind::Zp; }

  /// Canonical text: QQ, ZZ, CCf or Zp(p).
  std::string name() const;

  Coeff normalize(const Coeff& value) const;
  Coeff add(const Coeff& a, const Coeff& b) const;
  Coeff sub(const Coeff& a, const Coeff& b) const;
  Coeff mul(const Coeff& a, const Coeff& b) const;
  Coeff neg(const Coeff& a) const;
  Coeff inv(const Coeff& a) const;
  Coeff div(const Coeff& a, const Coeff& b) const { return mul(a, inv(b)); }
  /// Zp elements print in the symmetric range (-p/2, p/2].
  Coeff representative(const Coeff& a) const;

  friend bool operator==(const CoefficientField&, const CoefficientField&) = default;

 private:
  CoefficientField(Kind kind, std::uint64_t modulus) : kind_(kind), modulus_(modulus) {}

  Kind kind_;
  std::uint64_t modulus_;
};

struct Monomial {
  std::vector<std::uint32_t> exps;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> e) : exps(std::move(e)) {}

  std::size_t size() const noexcept { return exps.size(); }
  std::uint64_t degree() const noexcept;
  bool is_unit() const noexcept;
  bool divides(const Monomial& other) const;
  bool coprime(const Monomial& other) const;
  Monomial operator*(const Monomial& other) const;
  /// this / other; requires other | this.
  Monomial operator/(const Monomial& other) const;
  Monomial lcm(const Monomial& other) const;

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

std::strong_ordering monomial_cmp(MonomialOrder order, const Monomial& a, const Monomial& b);

class PolynomialRing {
 public:
  PolynomialRing(std::vector<std::string> variables, CoefficientField field, MonomialOrder order);

  const std::vector<std::string>& variables() const noexcept { return variables_; }
  std::size_t nvars() const noexcept { return variables_.size(); }
  const CoefficientField& field() const noexcept { return field_; }
  MonomialOrder order() const noexcept { return order_; }
  std::optional<std::size_t> index_of(std::string_view name) const;
  bool has_variable(std::string_view name) const { return index_of(name).has_value(); }

  std::strong_ordering cmp(const Monomial& a, const Monomial& b) const {
    return monomial_cmp(order_, a, b);
  }

  /// Human readable form, e.g. "QQ[t,x,y,z] grevlex".
  std::string describe() const;

  friend bool operator==(const PolynomialRing& a, const PolynomialRing& b) {
    return a.order_ == b.order_ && a.field_ == b.field_ && a.variables_ == b.variables_;
  }

 private:
  std::vector<std::string> variables_;
  CoefficientField field_;
  MonomialOrder order_;
};

using RingPtr = std::shared_ptr<const PolynomialRing>;

bool is_valid_variable_name(std::string_view name) noexcept;

/// Validates names (pattern and distinctness) and builds the ring.
RingPtr ring_new(std::vector<std::string> variables, CoefficientField field,
                 MonomialOrder order = MonomialOrder::grevlex);

/// Same variables and field, different monomial order.
RingPtr with_order(const RingPtr& ring, MonomialOrder order);

bool same_ring(const RingPtr& a, const RingPtr& b) noexcept;
void require_same_ring(const RingPtr& a, const RingPtr& b);

struct Term {
  Coeff coeff;
  Monomial mono;

  friend bool operator==(const Term&, const Term&) = default;
};

/// Exact polynomial in canonical form: terms strictly descending in the ring
/// order, no zero coefficients, no repeated monomials.
class Polynomial {
 public:
  explicit Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

  static Polynomial constant(RingPtr ring, const Coeff& value);
  static Polynomial variable(RingPtr ring, std::size_t index);
  static Polynomial monomial(RingPtr ring, const Coeff& coeff, Monomial mono);
  /// Sorts, combines and drops zeros.
  static Polynomial from_terms(RingPtr ring, std::vector<Term> terms);

  const RingPtr& ring() const noexcept { return ring_; }
  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  bool is_monomial() const noexcept { return terms_.size() == 1; }

  const Term& leading_term() const;
  const Monomial& leading_monomial() const { return leading_term().mono; }
  const Coeff& leading_coeff() const { return leading_term().coeff; }
  std::uint64_t total_degree() const noexcept;

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& other) const;
  Polynomial operator-(const Polynomial& other) const;
  Polynomial operator*(const Polynomial& other) const;
  Polynomial scaled(const Coeff& factor) const;
  Polynomial mul_term(const Coeff& coeff, const Monomial& mono) const;
  /// this + coeff * mono * other, merged in one pass.
  Polynomial add_mul_term(const Coeff& coeff, const Monomial& mono, const Polynomial& other) const;
  Polynomial pow(std::uint64_t exponent) const;
  /// Divides by the leading coefficient; zero stays zero.
  Polynomial monic() const;

  /// Canonical text: descending terms, explicit '*' and '^', no whitespace.
  std::string to_string() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  Polynomial(RingPtr ring, std::vector<Term> sorted_terms)
      : ring_(std::move(ring)), terms_(std::move(sorted_terms)) {}

  RingPtr ring_;
  std::vector<Term> terms_;
};

Polynomial poly_add(const Polynomial& a, const Polynomial& b);
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);
Polynomial poly_neg(const Polynomial& a);
Polynomial poly_pow(const Polynomial& a, std::uint64_t k);

/// Parses human-entered polynomial text. Accepts + - * ^, parentheses,
/// integer and a/b literals, and juxtaposition as multiplication.
Polynomial poly_parse_text(std::string_view source, const RingPtr& ring);

/// Parses the longest polynomial expression starting at `pos` and advances
/// `pos` past it. Stops before ',', ')', ']' or the end of input.
Polynomial poly_parse_prefix(std::string_view source, std::size_t& pos, const RingPtr& ring);

std::set<std::string> vars_of(const Polynomial& f);
bool is_univariate(const Polynomial& f);
/// Highest exponent of variable `index` in f.
std::uint32_t degree_in(const Polynomial& f, std::size_t index);

/// Ring with `var` removed; field and order kept.
RingPtr ring_without(const RingPtr& ring, std::string_view var);
/// Re-expresses f in `target`, whose variables must include every variable
/// used by f. Exponents are moved by name.
Polynomial map_to_ring(const Polynomial& f, const RingPtr& target);

class ApproxPolynomial;

Polynomial substitute(const Polynomial& f, std::string_view var, const Coeff& value);
ApproxPolynomial substitute(const Polynomial& f, std::string_view var, Complex value);

Coeff evaluate(const Polynomial& f, const std::map<std::string, Coeff>& point);
Complex evaluate(const Polynomial& f, const std::map<std::string, Complex>& point);

/// Polynomial with approximate complex coefficients (a CCf ring). Produced by
/// the solver when floating-point roots are substituted; never serialized.
class ApproxPolynomial {
 public:
  struct ApproxTerm {
    Complex coeff;
    Monomial mono;
  };

  explicit ApproxPolynomial(RingPtr ring) : ring_(std::move(ring)) {}
  /// Converts an exact polynomial; the ring keeps its variables and order.
  static ApproxPolynomial from_exact(const Polynomial& f);
  static ApproxPolynomial from_terms(RingPtr ring, std::vector<ApproxTerm> terms);

  const RingPtr& ring() const noexcept { return ring_; }
  std::span<const ApproxTerm> terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  double max_abs_coeff() const noexcept;

  std::set<std::string> vars() const;
  bool is_univariate() const { return vars().size() <= 1; }
  /// Dense coefficients in `var`, lowest degree first. Requires that no other
  /// variable occurs.
  std::vector<Complex> univariate_coeffs(std::string_view var) const;

  ApproxPolynomial substitute(std::string_view var, Complex value) const;
  Complex evaluate(const std::map<std::string, Complex>& point) const;

  friend bool operator==(const ApproxPolynomial& a, const ApproxPolynomial& b);

 private:
  RingPtr ring_;
  std::vector<ApproxTerm> terms_;
};

}  // namespace cas
