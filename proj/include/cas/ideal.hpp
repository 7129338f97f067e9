#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "cas/groebner.hpp"

namespace cas {

/// Ideal given by a generator sequence. Zero generators are dropped on
/// construction. The reduced Gröbner basis is computed lazily, once, and shared
/// between copies.
class Ideal {
 public:
  Ideal(RingPtr ring, std::vector<Polynomial> generators);

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<Polynomial>& generators() const noexcept { return generators_; }
  bool is_zero() const noexcept { return generators_.empty(); }
  bool is_unit() const { return groebner().is_unit_ideal(); }

  const GroebnerBasis& groebner() const;
  bool contains(const Polynomial& f) const;
  bool contains(const Ideal& other) const;

  /// Same ideal, generated by its reduced Gröbner basis.
  Ideal canonical() const;

 private:
  struct Cache {
    std::once_flag once;
    std::optional<GroebnerBasis> gb;
  };

  RingPtr ring_;
  std::vector<Polynomial> generators_;
  std::shared_ptr<Cache> cache_;
};

Ideal ideal_sum(const Ideal& a, const Ideal& b);
Ideal ideal_product(const Ideal& a, const Ideal& b);
bool ideal_equals(const Ideal& a, const Ideal& b);

/// I ∩ K[remaining variables]; the result lives in the ring on the remaining
/// variables (original field and order).
Ideal eliminate(const Ideal& ideal, const std::vector<std::string>& drop);

Ideal intersect(const Ideal& a, const Ideal& b);
Ideal quotient(const Ideal& a, const Polynomial& f);
Ideal quotient(const Ideal& a, const Ideal& b);
Ideal saturate(const Ideal& a, const Ideal& b);

/// Radical for monomial ideals, principal ideals with a univariate generator,
/// and zero-dimensional ideals. Other shapes raise unsupported_shape.
Ideal radical(const Ideal& ideal);
bool is_radical(const Ideal& ideal);

/// Krull dimension of ring/I; -1 for the unit ideal.
long dimension(const Ideal& ideal);

/// Minimal primes of a squarefree monomial ideal, ordered by descending
/// dimension, then by generator text.
std::vector<Ideal> primary_decomposition(const Ideal& ideal);

}  // namespace cas
