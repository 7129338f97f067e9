#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cas/ideal.hpp"
#include "cas/intalg.hpp"
#include "cas/solver.hpp"

namespace cas {

struct WireValue;

struct Integer {
  mpz_class value;
  friend bool operator==(const Integer&, const Integer&) = default;
};
/// Always in lowest terms with denominator > 1.
struct Rational {
  mpq_class value;
  friend bool operator==(const Rational&, const Rational&) = default;
};
struct Real {
  double value;
  friend bool operator==(const Real&, const Real&) = default;
};
struct Boolean {
  bool value;
  friend bool operator==(const Boolean&, const Boolean&) = default;
};
struct Text {
  std::string value;
  friend bool operator==(const Text&, const Text&) = default;
};
struct Null {
  friend bool operator==(const Null&, const Null&) = default;
};
/// Bare name outside any ring context, e.g. the field and order in ring(...).
struct Symbol {
  std::string name;
  friend bool operator==(const Symbol&, const Symbol&) = default;
};
struct RingV {
  RingPtr ring;
  friend bool operator==(const RingV& a, const RingV& b) { return same_ring(a.ring, b.ring); }
};
struct PolyV {
  Polynomial poly;
  friend bool operator==(const PolyV&, const PolyV&) = default;
};
/// Equality is structural (same ring, same generator sequence), not ideal
/// equality.
struct IdealV {
  Ideal ideal;
  friend bool operator==(const IdealV& a, const IdealV& b) {
    return same_ring(a.ideal.ring(), b.ideal.ring()) && a.ideal.generators() == b.ideal.generators();
  }
};
struct IdealListV {
  RingPtr ring;
  std::vector<Ideal> items;
  friend bool operator==(const IdealListV& a, const IdealListV& b);
};
struct GbV {
  GroebnerBasis gb;
  friend bool operator==(const GbV&, const GbV&) = default;
};
struct IntMatrixV {
  IntMatrix matrix;
  friend bool operator==(const IntMatrixV&, const IntMatrixV&) = default;
};
struct PolyMatrixV {
  RingPtr ring;
  std::vector<std::vector<Polynomial>> rows;
  friend bool operator==(const PolyMatrixV& a, const PolyMatrixV& b) {
    return same_ring(a.ring, b.ring) && a.rows == b.rows;
  }
};
struct ListV {
  std::vector<WireValue> items;
  friend bool operator==(const ListV&, const ListV&);
};
/// Handle to a value bound on a worker.
struct RefV {
  std::string name;
  std::string type_tag;
  friend bool operator==(const RefV&, const RefV&) = default;
};
/// Never serialized; errors travel in the response status.
struct ErrorV {
  Errc code;
  std::string message;
  friend bool operator==(const ErrorV&, const ErrorV&) = default;
};
struct SnfV {
  SnfResult result;
  friend bool operator==(const SnfV& a, const SnfV& b) {
    return a.result.P == b.result.P && a.result.D == b.result.D && a.result.Q == b.result.Q;
  }
};
struct FactorizationV {
  Factorization factorization;
  friend bool operator==(const FactorizationV&, const FactorizationV&) = default;
};
struct SolutionV {
  SolutionSet solutions;
  friend bool operator==(const SolutionV& a, const SolutionV& b) {
    return a.solutions.variables == b.solutions.variables && a.solutions.points == b.solutions.points &&
           a.solutions.tolerance == b.solutions.tolerance;
  }
};
/// Tagged form without a registered handler.
struct TaggedV {
  std::string tag;
  std::vector<WireValue> args;
  friend bool operator==(const TaggedV&, const TaggedV&);
};

struct WireValue {
  using Variant = std::variant<Integer, Rational, Real, Boolean, Text, Null, Symbol, RingV, PolyV, IdealV,
                               IdealListV, GbV, IntMatrixV, PolyMatrixV, ListV, RefV, ErrorV, SnfV,
                               FactorizationV, SolutionV, TaggedV>;
  Variant v;

  WireValue() : v(Null{}) {}
  template <typename T>
    requires std::is_constructible_v<Variant, T&&> && (!std::is_same_v<std::decay_t<T>, WireValue>)
  WireValue(T&& value) : v(std::forward<T>(value)) {}

  template <typename T>
  bool is() const noexcept {
    return std::holds_alternative<T>(v);
  }
  template <typename T>
  const T& as() const {
    return std::get<T>(v);
  }
  template <typename T>
  const T* get_if() const noexcept {
    return std::get_if<T>(&v);
  }

  friend bool operator==(const WireValue& a, const WireValue& b) { return a.v == b.v; }
};

/// Integer or Rational, whichever is canonical for `q`.
WireValue make_number(const mpq_class& q);

/// Short name of the variant, e.g. "ideal", "poly", "integer".
std::string type_tag(const WireValue& value);

/// Canonical text. Throws unserializable for ErrorV, CCf rings and
/// non-finite reals.
std::string serialize(const WireValue& value);
std::string serialize_ring(const PolynomialRing& ring);

using ParseHandler = std::function<WireValue(std::span<const WireValue>)>;

/// Maps tags to handlers. Immutable; `with` returns an extended copy, and a
/// later registration shadows an earlier one for the same tag.
class ParseRegistry {
 public:
  /// ring, ideal, matrix, list, idealList, poly, gb, ref.
  static const ParseRegistry& core();
  static ParseRegistry empty() { return ParseRegistry(); }

  ParseRegistry with(std::string tag, ParseHandler handler) const;
  const ParseHandler* find(std::string_view tag) const;

 private:
  std::map<std::string, ParseHandler, std::less<>> handlers_;
};

ParseRegistry register_handler(const ParseRegistry& registry, std::string tag, ParseHandler handler);

/// Core tags plus snf, factorization and solutions.
const ParseRegistry& kernel_registry();

WireValue parse(std::string_view source, const ParseRegistry& registry = ParseRegistry::core());

}  // namespace cas
