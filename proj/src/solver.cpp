#include "cas/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <span>

#include "cas/univariate.hpp"

namespace cas {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr int max_iterations = 200;

}  // namespace

std::vector<Complex> complex_roots(std::vector<Complex> a) {
  while (!a.empty() && a.back() == 0.0) a.pop_back();
  if (a.size() < 2) raise(Errc::invalid_argument, "root finding needs a polynomial of degree at least 1");

  std::vector<Complex> roots;
  std::size_t zeros = 0;
  while (a[zeros] == 0.0) ++zeros;
  roots.assign(zeros, Complex(0.0, 0.0));
  a.erase(a.begin(), a.begin() + static_cast<long>(zeros));

  const std::size_t n = a.size() - 1;
  if (n == 0) return roots;
  const Complex lead = a.back();
  for (auto& c : a) c /= lead;
  if (n == 1) {
    roots.push_back(-a[0]);
    return roots;
  }

  double radius = 0.0;
  std::vector<double> mags(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    mags[i] = std::abs(a[i]);
    if (i < n) radius = std::max(radius, mags[i]);
  }
  radius += 1.0;

  std::vector<Complex> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
    z[k] = std::polar(radius, angle);
  }

  std::vector<bool> done(n, false);
  for (int iter = 0; iter < max_iterations; ++iter) {
    bool moved = false;
    for (std::size_t k = 0; k < n; ++k) {
      if (done[k]) continue;
      Complex p = a[n];
      Complex dp = 0.0;
      double scale = mags[n];
      const double az = std::abs(z[k]);
      for (std::size_t i = n; i-- > 0;) {
        dp = dp * z[k] + p;
        p = p * z[k] + a[i];
        scale = scale * az + mags[i];
      }
      if (std::abs(p) <= 8.0 * eps * scale) {
        done[k] = true;
        continue;
      }
      moved = true;
      if (dp == 0.0) {
        z[k] += Complex(radius * 1e-3, radius * 1e-3);
        continue;
      }
      Complex ratio = p / dp;
      Complex repulsion = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != k && z[j] != z[k]) repulsion += 1.0 / (z[k] - z[j]);
      }
      Complex step = ratio / (1.0 - ratio * repulsion);
      z[k] -= step;
      if (std::abs(step) <= 2.0 * eps * std::abs(z[k])) done[k] = true;
    }
    if (!moved) break;
  }
  if (!std::all_of(done.begin(), done.end(), [](bool d) { return d; })) {
    raise(Errc::internal, "root finder did not converge in 200 iterations");
  }
  roots.insert(roots.end(), z.begin(), z.end());
  return roots;
}

std::vector<double> real_roots(const std::vector<Complex>& coeffs, double tol) {
  if (!(tol > 0.0)) raise(Errc::invalid_argument, "tolerance must be positive");
  std::vector<double> real;
  for (const auto& r : complex_roots(coeffs)) {
    if (std::abs(r.imag()) <= tol * std::max(1.0, std::abs(r))) real.push_back(r.real() == 0.0 ? 0.0 : r.real());
  }
  std::sort(real.begin(), real.end());
  std::vector<double> merged;
  for (double r : real) {
    if (!merged.empty() && r - merged.back() <= tol * std::max(1.0, std::abs(r))) continue;
    merged.push_back(r);
  }
  return merged;
}

std::vector<double> real_roots(const Polynomial& f, double tol) {
  if (f.ring()->field().kind() != CoefficientField::Kind::QQ) {
    raise(Errc::unsupported_field, "real roots need a polynomial over QQ, got " + f.ring()->describe());
  }
  if (f.is_zero()) raise(Errc::zero_input, "the zero polynomial has no isolated roots");
  if (!is_univariate(f)) raise(Errc::invalid_argument, "polynomial " + f.to_string() + " is not univariate");
  if (f.is_constant()) raise(Errc::invalid_argument, "constant polynomial " + f.to_string() + " has no roots");
  std::size_t index = *f.ring()->index_of(*vars_of(f).begin());
  UniPoly sf = squarefree_part(UniPoly::from_polynomial(f, index));
  std::vector<Complex> coeffs;
  for (const auto& c : sf.coeffs()) coeffs.emplace_back(c.get_d(), 0.0);
  return real_roots(coeffs, tol);
}

namespace {

// A Gröbner basis element after substituting the assigned coordinates,
// viewed as a polynomial in one variable. `scale` bounds the magnitude of
// the terms that produced each coefficient and sets the rounding floor.
struct Univariate {
  std::vector<double> coeffs;
  std::vector<double> scale;
  const Polynomial* source = nullptr;
  bool exact = false;

  long degree() const { return static_cast<long>(coeffs.size()) - 1; }

  double residual(double x) const {
    double v = 0.0;
    for (std::size_t i = coeffs.size(); i-- > 0;) v = v * x + coeffs[i];
    return std::abs(v);
  }
  double magnitude(double x) const {
    double v = 0.0;
    for (std::size_t i = scale.size(); i-- > 0;) v = v * std::abs(x) + scale[i];
    return v;
  }
};

std::optional<Univariate> restrict_to(const Polynomial& g, const std::vector<std::optional<double>>& values,
                                      std::size_t var, double tol) {
  Univariate u;
  u.source = &g;
  u.exact = true;
  for (const auto& t : g.terms()) {
    double value = t.coeff.get_d();
    double mag = std::abs(value);
    for (std::size_t i = 0; i < t.mono.size(); ++i) {
      const auto e = t.mono.exps[i];
      if (e == 0 || (i == var && !values[i])) continue;
      if (!values[i]) return std::nullopt;
      u.exact = false;
      value *= std::pow(*values[i], e);
      mag *= std::pow(std::abs(*values[i]), e);
    }
    std::size_t power = values[var] ? 0 : t.mono.exps[var];
    if (u.coeffs.size() <= power) {
      u.coeffs.resize(power + 1, 0.0);
      u.scale.resize(power + 1, 0.0);
    }
    u.coeffs[power] += value;
    u.scale[power] += mag;
  }
  for (std::size_t i = 0; i < u.coeffs.size(); ++i) {
    if (std::abs(u.coeffs[i]) <= tol * u.scale[i]) u.coeffs[i] = 0.0;
  }
  while (!u.coeffs.empty() && u.coeffs.back() == 0.0) {
    u.coeffs.pop_back();
    u.scale.pop_back();
  }
  return u;
}

struct Descent {
  const std::vector<Polynomial>& basis;
  const std::vector<std::size_t>& order;
  double tol;
  std::vector<std::optional<double>> values;
  std::vector<std::vector<double>> rows;

  void run(std::size_t level) {
    if (level == order.size()) {
      finish();
      return;
    }
    const std::size_t var = order[level];
    std::vector<Univariate> candidates;
    for (const auto& g : basis) {
      auto u = restrict_to(g, values, var, tol);
      if (!u || u->coeffs.empty()) continue;
      if (u->degree() == 0) return;  // nonzero constant: no point on this branch
      candidates.push_back(std::move(*u));
    }
    if (candidates.empty()) {
      raise(Errc::dimensionality, "no univariate polynomial in '" + basis.front().ring()->variables()[var] +
                                      "'; the ideal is not zero-dimensional");
    }
    auto pick = std::min_element(candidates.begin(), candidates.end(),
                                 [](const Univariate& a, const Univariate& b) { return a.degree() < b.degree(); });
    std::vector<double> roots;
    if (pick->exact) {
      roots = real_roots(*pick->source, tol);
    } else {
      std::vector<Complex> c(pick->coeffs.begin(), pick->coeffs.end());
      roots = real_roots(c, tol);
    }
    for (double r : roots) {
      bool consistent = std::all_of(candidates.begin(), candidates.end(), [&](const Univariate& u) {
        return u.residual(r) <= tol * std::max(1.0, u.magnitude(r));
      });
      if (!consistent) continue;
      values[var] = r;
      run(level + 1);
      values[var].reset();
    }
  }

  void finish() {
    for (const auto& g : basis) {
      auto u = restrict_to(g, values, order.empty() ? 0 : order.front(), tol);
      if (u && !u->coeffs.empty()) return;
    }
    std::vector<double> row;
    for (std::size_t var : order) row.push_back(*values[var]);
    rows.push_back(std::move(row));
  }
};

using Point = std::vector<long double>;

long double term_value(const Term& t, const Point& x, std::optional<std::size_t> skip) {
  long double v = t.coeff.get_d();
  for (std::size_t i = 0; i < t.mono.size(); ++i) {
    auto e = t.mono.exps[i];
    if (skip && *skip == i) {
      if (e == 0) return 0.0L;
      v *= static_cast<long double>(e) * std::pow(x[i], static_cast<long double>(e - 1));
    } else if (e != 0) {
      v *= std::pow(x[i], static_cast<long double>(e));
    }
  }
  return v;
}

long double residual_norm(std::span<const Polynomial> gens, const Point& x) {
  long double sum = 0.0L;
  for (const auto& g : gens) {
    long double r = 0.0L;
    for (const auto& t : g.terms()) r += term_value(t, x, std::nullopt);
    sum += r * r;
  }
  return std::sqrt(sum);
}

// Gauss-Newton on the original generators; a step is kept only when it
// lowers the residual.
void polish(std::span<const Polynomial> gens, Point& x) {
  const std::size_t n = x.size();
  if (n == 0 || gens.empty()) return;
  long double current = residual_norm(gens, x);
  for (int iter = 0; iter < 4 && current > 0.0L; ++iter) {
    std::vector<std::vector<long double>> a(n, std::vector<long double>(n + 1, 0.0L));
    for (const auto& g : gens) {
      long double r = 0.0L;
      std::vector<long double> grad(n, 0.0L);
      for (const auto& t : g.terms()) {
        r += term_value(t, x, std::nullopt);
        for (std::size_t j = 0; j < n; ++j) grad[j] += term_value(t, x, j);
      }
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] += grad[i] * grad[j];
        a[i][n] -= grad[i] * r;
      }
    }
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t piv = c;
      for (std::size_t r = c + 1; r < n; ++r) {
        if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
      }
      if (std::abs(a[piv][c]) == 0.0L) return;
      std::swap(a[c], a[piv]);
      for (std::size_t r = 0; r < n; ++r) {
        if (r == c) continue;
        long double f = a[r][c] / a[c][c];
        for (std::size_t k = c; k <= n; ++k) a[r][k] -= f * a[c][k];
      }
    }
    Point next = x;
    for (std::size_t i = 0; i < n; ++i) {
      long double step = a[i][n] / a[i][i];
      if (!std::isfinite(static_cast<double>(step)) ||
          std::abs(step) > 1e-4L * std::max(1.0L, std::abs(x[i]))) {
        return;
      }
      next[i] += step;
    }
    long double after = residual_norm(gens, next);
    if (!(after < current)) return;
    x = std::move(next);
    current = after;
  }
}

bool close_rows(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a[i] - b[i]) > tol * std::max(1.0, std::abs(a[i]))) return false;
  }
  return true;
}

}  // namespace

SolutionSet solve_zero_dim(const Ideal& ideal, double tol) {
  const auto& ring = ideal.ring();
  if (ring->field().kind() != CoefficientField::Kind::QQ) {
    raise(Errc::unsupported_field, "solve needs an ideal over QQ, got " + ring->describe());
  }
  if (!(tol > 0.0)) raise(Errc::invalid_argument, "tolerance must be positive");

  SolutionSet out;
  out.tolerance = tol;
  std::vector<std::size_t> order;
  for (std::size_t i = ring->nvars(); i-- > 0;) {
    order.push_back(i);
    out.variables.push_back(ring->variables()[i]);
  }

  auto lex = with_order(ring, MonomialOrder::lex);
  std::vector<Polynomial> mapped;
  for (const auto& g : ideal.generators()) mapped.push_back(map_to_ring(g, lex));
  Ideal lex_ideal(lex, std::move(mapped));
  const GroebnerBasis& gb = lex_ideal.groebner();
  if (gb.is_unit_ideal()) return out;
  long dim = dimension(lex_ideal);
  if (dim > 0) {
    raise(Errc::dimensionality, "ideal has dimension " + std::to_string(dim) + "; solve needs a zero-dimensional ideal");
  }
  if (gb.is_zero_ideal()) {
    out.points.push_back({});
    return out;
  }

  Descent descent{gb.generators(), order, tol, std::vector<std::optional<double>>(ring->nvars()), {}};
  descent.run(0);
  auto rows = std::move(descent.rows);
  for (auto& row : rows) {
    Point x(ring->nvars());
    for (std::size_t k = 0; k < order.size(); ++k) x[order[k]] = row[k];
    polish(ideal.generators(), x);
    for (std::size_t k = 0; k < order.size(); ++k) row[k] = static_cast<double>(x[order[k]]);
  }
  std::sort(rows.begin(), rows.end());
  for (auto& row : rows) {
    if (!out.points.empty() && close_rows(out.points.back(), row, tol)) continue;
    out.points.push_back(std::move(row));
  }
  return out;
}

}  // namespace cas
