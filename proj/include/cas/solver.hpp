#pragma once

#include <string>
#include <vector>

#include "cas/ideal.hpp"

namespace cas {

inline constexpr double default_solve_tolerance = 1e-8;

struct SolutionSet {
  /// Column names, in the order the variables were solved for.
  std::vector<std::string> variables;
  /// One row per real solution, sorted lexicographically.
  std::vector<std::vector<double>> points;
  double tolerance = default_solve_tolerance;
};

/// All complex roots of a0 + a1 x + ... + an x^n (coefficients lowest first,
/// an != 0) by Aberth-Ehrlich iteration.
std::vector<Complex> complex_roots(std::vector<Complex> coeffs);

/// Real roots, ascending, with roots closer than `tol` merged. Roots whose
/// imaginary part is below `tol` count as real.
std::vector<double> real_roots(const std::vector<Complex>& coeffs, double tol);

/// Real roots of an exact univariate polynomial over QQ; the squarefree part
/// is taken first so repeated roots converge at full speed.
std::vector<double> real_roots(const Polynomial& f, double tol);

/// Real points of a zero-dimensional ideal over QQ via a lex Gröbner basis
/// and back substitution, last variable first.
SolutionSet solve_zero_dim(const Ideal& ideal, double tol = default_solve_tolerance);

}  // namespace cas
