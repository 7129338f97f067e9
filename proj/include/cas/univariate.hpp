#pragma once

#include <vector>

#include "cas/poly.hpp"

namespace cas {

/// Dense univariate polynomial over an exact field, lowest degree first.
/// Support code for radicals and the solver's root finding.
class UniPoly {
 public:
  UniPoly(CoefficientField field, std::vector<Coeff> coeffs);

  static UniPoly from_polynomial(const Polynomial& f, std::size_t var_index);
  Polynomial to_polynomial(const RingPtr& ring, std::size_t var_index) const;

  const CoefficientField& field() const noexcept { return field_; }
  const std::vector<Coeff>& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const noexcept { return static_cast<long>(coeffs_.size()) - 1; }
  const Coeff& leading() const { return coeffs_.back(); }

  UniPoly monic() const;
  UniPoly derivative() const;
  UniPoly operator*(const UniPoly& other) const;
  /// Quotient and remainder of Euclidean division.
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& divisor) const;

 private:
  void trim();

  CoefficientField field_;
  std::vector<Coeff> coeffs_;
};

/// Monic gcd; gcd(0, 0) = 0.
UniPoly uni_gcd(UniPoly a, UniPoly b);

/// Product of the distinct monic irreducible factors of f (f nonzero).
/// Handles the characteristic-p case where f' may vanish.
UniPoly squarefree_part(const UniPoly& f);

}  // namespace cas
