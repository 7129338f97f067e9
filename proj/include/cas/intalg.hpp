#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace cas {

/// Dense integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::size_t rows, std::size_t cols, std::vector<mpz_class> entries);
  static IntMatrix identity(std::size_t n);
  /// Throws invalid_argument on ragged or empty input.
  static IntMatrix from_rows(const std::vector<std::vector<mpz_class>>& rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const std::vector<mpz_class>& entries() const noexcept { return entries_; }

  mpz_class& at(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  const mpz_class& at(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }

  IntMatrix operator*(const IntMatrix& other) const;
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<mpz_class> entries_;
};

/// Fraction-free (Bareiss) determinant of a square matrix.
mpz_class determinant(const IntMatrix& m);

/// Rank over the rationals.
std::size_t rank(const IntMatrix& m);

struct SnfResult {
  IntMatrix P;
  IntMatrix D;
  IntMatrix Q;
};

/// Smith normal form D = P*M*Q with unimodular P and Q. Nonzero diagonal
/// entries are positive and each divides the one before it.
SnfResult snf(const IntMatrix& m);

struct Factorization {
  std::vector<mpz_class> primes;
  std::vector<unsigned> powers;

  friend bool operator==(const Factorization&, const Factorization&) = default;
};

/// Prime factorization of 1 <= n < 2^64; 1 gives the empty factorization.
Factorization factor_n(const mpz_class& n);

}  // namespace cas
