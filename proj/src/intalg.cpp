#include "cas/intalg.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "cas/error.hpp"
#include "cas/numtheory.hpp"

namespace cas {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, std::vector<mpz_class> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) raise(Errc::invalid_argument, "matrix entry count mismatch");
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<mpz_class>>& rows) {
  if (rows.empty() || rows.front().empty()) raise(Errc::invalid_argument, "empty matrix");
  std::vector<mpz_class> entries;
  for (const auto& row : rows) {
    if (row.size() != rows.front().size()) raise(Errc::invalid_argument, "ragged matrix rows");
    entries.insert(entries.end(), row.begin(), row.end());
  }
  return IntMatrix(rows.size(), rows.front().size(), std::move(entries));
}

IntMatrix IntMatrix::operator*(const IntMatrix& other) const {
  if (cols_ != other.rows_) raise(Errc::invalid_argument, "matrix shape mismatch in product");
  IntMatrix out(rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const mpz_class& a = at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) out.at(i, j) += a * other.at(k, j);
    }
  }
  return out;
}

mpz_class determinant(const IntMatrix& m) {
  if (m.rows() != m.cols()) raise(Errc::invalid_argument, "determinant of a non-square matrix");
  const std::size_t n = m.rows();
  IntMatrix a = m;
  mpz_class sign = 1;
  mpz_class prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a.at(k, k) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && a.at(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a.at(k, j), a.at(swap, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        mpz_class v = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a.at(i, j) = v;
      }
    }
    prev = a.at(k, k);
  }
  return sign * a.at(n - 1, n - 1);
}

std::size_t rank(const IntMatrix& m) {
  std::vector<std::vector<mpq_class>> a(m.rows(), std::vector<mpq_class>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) a[i][j] = m.at(i, j);
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && a[p][c] == 0) ++p;
    if (p == m.rows()) continue;
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (a[i][c] == 0) continue;
      mpq_class f = a[i][c] / a[r][c];
      for (std::size_t j = c; j < m.cols(); ++j) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return r;
}

namespace {

class SnfWork {
 public:
  explicit SnfWork(const IntMatrix& m)
      : a(m), p(IntMatrix::identity(m.rows())), q(IntMatrix::identity(m.cols())) {}

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a.at(i, c), a.at(j, c));
    for (std::size_t c = 0; c < p.cols(); ++c) std::swap(p.at(i, c), p.at(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < a.rows(); ++r) std::swap(a.at(r, i), a.at(r, j));
    for (std::size_t r = 0; r < q.rows(); ++r) std::swap(q.at(r, i), q.at(r, j));
  }
  // row dst += k * row src
  void add_row(std::size_t dst, std::size_t src, const mpz_class& k) {
    for (std::size_t c = 0; c < a.cols(); ++c) a.at(dst, c) += k * a.at(src, c);
    for (std::size_t c = 0; c < p.cols(); ++c) p.at(dst, c) += k * p.at(src, c);
  }
  // col dst += k * col src
  void add_col(std::size_t dst, std::size_t src, const mpz_class& k) {
    for (std::size_t r = 0; r < a.rows(); ++r) a.at(r, dst) += k * a.at(r, src);
    for (std::size_t r = 0; r < q.rows(); ++r) q.at(r, dst) += k * q.at(r, src);
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < a.cols(); ++c) a.at(i, c) = -a.at(i, c);
    for (std::size_t c = 0; c < p.cols(); ++c) p.at(i, c) = -p.at(i, c);
  }

  // Moves the smallest nonzero entry of the trailing block to (t, t).
  bool place_pivot(std::size_t t) {
    std::size_t bi = 0;
    std::size_t bj = 0;
    bool found = false;
    for (std::size_t i = t; i < a.rows(); ++i) {
      for (std::size_t j = t; j < a.cols(); ++j) {
        if (a.at(i, j) == 0) continue;
        if (!found || mpz_cmpabs(a.at(i, j).get_mpz_t(), a.at(bi, bj).get_mpz_t()) < 0) {
          bi = i;
          bj = j;
          found = true;
        }
      }
    }
    if (!found) return false;
    swap_rows(t, bi);
    swap_cols(t, bj);
    return true;
  }

  // Clears row and column t; true when both are clean without a new pivot.
  bool clear_cross(std::size_t t) {
    bool clean = true;
    const mpz_class pivot = a.at(t, t);
    for (std::size_t i = t + 1; i < a.rows(); ++i) {
      if (a.at(i, t) == 0) continue;
      mpz_class k = a.at(i, t) / pivot;
      if (k != 0) add_row(i, t, -k);
      if (a.at(i, t) != 0) clean = false;
    }
    for (std::size_t j = t + 1; j < a.cols(); ++j) {
      if (a.at(t, j) == 0) continue;
      mpz_class k = a.at(t, j) / pivot;
      if (k != 0) add_col(j, t, -k);
      if (a.at(t, j) != 0) clean = false;
    }
    return clean;
  }

  // Finds an entry of the trailing block not divisible by the pivot and folds
  // its row into the pivot row.
  bool fix_divisibility(std::size_t t) {
    const mpz_class& pivot = a.at(t, t);
    for (std::size_t i = t + 1; i < a.rows(); ++i) {
      for (std::size_t j = t + 1; j < a.cols(); ++j) {
        if (a.at(i, j) % pivot != 0) {
          add_row(t, i, 1);
          return true;
        }
      }
    }
    return false;
  }

  IntMatrix a;
  IntMatrix p;
  IntMatrix q;
};

}  // namespace

SnfResult snf(const IntMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) raise(Errc::invalid_argument, "snf of an empty matrix");
  SnfWork w(m);
  const std::size_t limit = std::min(m.rows(), m.cols());
  std::size_t nonzero = 0;
  for (std::size_t t = 0; t < limit; ++t) {
    if (!w.place_pivot(t)) break;
    for (;;) {
      if (!w.clear_cross(t)) {
        w.place_pivot(t);
        continue;
      }
      if (w.fix_divisibility(t)) continue;
      break;
    }
    if (w.a.at(t, t) < 0) w.negate_row(t);
    nonzero = t + 1;
  }
  // Ascending chain d1 | d2 | ... becomes descending by reversing the block.
  for (std::size_t i = 0; i < nonzero / 2; ++i) {
    w.swap_rows(i, nonzero - 1 - i);
    w.swap_cols(i, nonzero - 1 - i);
  }
  return {std::move(w.p), std::move(w.a), std::move(w.q)};
}

namespace {

std::uint64_t pollard_brent(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t y = 2;
    std::uint64_t x = 0;
    std::uint64_t g = 1;
    std::uint64_t q = 1;
    std::uint64_t ys = 0;
    const std::uint64_t m = 128;
    auto f = [&](std::uint64_t v) { return (nt::mulmod(v, v, n) + c) % n; };
    for (std::uint64_t r = 1; g == 1; r <<= 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      for (std::uint64_t k = 0; k < r && g == 1; k += m) {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = nt::mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split(std::uint64_t n, std::map<std::uint64_t, unsigned>& out) {
  if (n == 1) return;
  if (nt::is_prime(n)) {
    ++out[n];
    return;
  }
  std::uint64_t d = pollard_brent(n);
  split(d, out);
  split(n / d, out);
}

}  // namespace

Factorization factor_n(const mpz_class& n) {
  if (n <= 0) raise(Errc::invalid_argument, "factorn needs a positive integer");
  if (!n.fits_ulong_p() || sizeof(unsigned long) < 8) {
    raise(Errc::invalid_argument, "factorn supports inputs below 2^64");
  }
  std::uint64_t rest = n.get_ui();
  std::map<std::uint64_t, unsigned> found;
  for (std::uint64_t p = 2; p < 10000 && p * p <= rest; ++p) {
    while (rest % p == 0) {
      ++found[p];
      rest /= p;
    }
  }
  split(rest, found);
  Factorization out;
  for (const auto& [p, e] : found) {
    out.primes.emplace_back(static_cast<unsigned long>(p));
    out.powers.push_back(e);
  }
  return out;
}

}  // namespace cas
