#pragma once

#include <span>
#include <vector>

#include "cas/poly.hpp"

namespace cas {

/// A Gröbner basis of an ideal in `ring`. When `reduced`, generators are monic,
/// mutually reduced, and sorted by descending leading monomial, which makes the
/// basis the unique representative of its ideal for the ring's order.
class GroebnerBasis {
 public:
  GroebnerBasis(RingPtr ring, std::vector<Polynomial> generators, bool reduced)
      : ring_(std::move(ring)), generators_(std::move(generators)), reduced_(reduced) {}

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<Polynomial>& generators() const noexcept { return generators_; }
  bool reduced() const noexcept { return reduced_; }
  bool is_zero_ideal() const noexcept { return generators_.empty(); }
  bool is_unit_ideal() const noexcept {
    return generators_.size() == 1 && generators_.front().is_constant();
  }

  friend bool operator==(const GroebnerBasis& a, const GroebnerBasis& b) {
    return same_ring(a.ring_, b.ring_) && a.generators_ == b.generators_;
  }

 private:
  RingPtr ring_;
  std::vector<Polynomial> generators_;
  bool reduced_;
};

struct Division {
  std::vector<Polynomial> quotients;
  Polynomial remainder;
};

/// Multivariate division: f = sum q_i g_i + r. Divisors are tried in sequence
/// order against the current leading term.
Division divide(const Polynomial& f, std::span<const Polynomial> divisors);

Polynomial reduce(const Polynomial& f, std::span<const Polynomial> divisors);

Polynomial s_poly(const Polynomial& f, const Polynomial& g);

/// Reduced Gröbner basis of the ideal generated by `gens` in `ring`.
GroebnerBasis buchberger(std::span<const Polynomial> gens, const RingPtr& ring);

bool ideal_member(const Polynomial& f, const GroebnerBasis& gb);

/// Throws unsupported_field unless the ring's coefficients are QQ or Zp.
void require_groebner_field(const RingPtr& ring);

}  // namespace cas
