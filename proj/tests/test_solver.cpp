#include <doctest.h>

#include <cmath>

#include "cas/solver.hpp"
#include "support/generators.hpp"

using namespace cas;

namespace {

Ideal ideal_of(const RingPtr& R, std::initializer_list<const char*> gens) {
  std::vector<Polynomial> ps;
  for (const char* g : gens) ps.push_back(poly_parse_text(g, R));
  return Ideal(R, ps);
}

}  // namespace

TEST_CASE("complex roots of a cubic") {
  // (x - 1)(x^2 + 1)
  auto roots = complex_roots({Complex(-1), Complex(1), Complex(-1), Complex(1)});
  REQUIRE(roots.size() == 3);
  std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) { return a.imag() < b.imag(); });
  CHECK(std::abs(roots[0] - Complex(0, -1)) < 1e-12);
  CHECK(std::abs(roots[1] - Complex(1, 0)) < 1e-12);
  CHECK(std::abs(roots[2] - Complex(0, 1)) < 1e-12);
}

TEST_CASE("real roots merge repeated roots") {
  auto R = ring_new({"x"}, CoefficientField::rationals(), MonomialOrder::grevlex);
  auto roots = real_roots(poly_parse_text("(x - 2)^3 (x + 1/2) (x^2 + 1)", R), 1e-8);
  REQUIRE(roots.size() == 2);
  CHECK(roots[0] == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(roots[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(real_roots(poly_parse_text("x^2 + 1", R), 1e-8).empty());
  CHECK_THROWS_AS(real_roots(poly_parse_text("5", R), 1e-8), Error);
  CHECK_THROWS_AS(real_roots(poly_parse_text("0", R), 1e-8), Error);
}

TEST_CASE("property: integer roots are recovered") {
  testing::Rng rng(17);
  auto R = ring_new({"x"}, CoefficientField::rationals(), MonomialOrder::grevlex);
  for (int i = 0; i < 100; ++i) {
    std::set<long> expected;
    Polynomial f = Polynomial::constant(R, Coeff(testing::uniform(rng, 1, 5)));
    auto count = testing::uniform(rng, 1, 6);
    for (long k = 0; k < count; ++k) {
      long r = testing::uniform(rng, -20, 20);
      expected.insert(r);
      f = f * poly_parse_text("x - (" + std::to_string(r) + ")", R);
    }
    auto roots = real_roots(f, 1e-8);
    REQUIRE(roots.size() == expected.size());
    auto it = expected.begin();
    for (double r : roots) CHECK(r == doctest::Approx(static_cast<double>(*it++)).epsilon(1e-9));
  }
}

TEST_CASE("zero-dimensional system of the worked example") {
  auto R = ring_new({"x", "y", "z"}, CoefficientField::rationals(), MonomialOrder::lex);
  Ideal I = ideal_of(R, {"x + y + z", "x^2 + y^2 + z^2 - 9", "x^2 + y^2 - z^2"});
  SolutionSet s = solve_zero_dim(I);
  CHECK(s.variables == std::vector<std::string>{"z", "y", "x"});
  REQUIRE(s.points.size() == 4);
  const double a = 3 / std::sqrt(2.0);
  for (const auto& p : s.points) {
    CHECK(std::abs(std::abs(p[0]) - a) < 1e-9);
    std::map<std::string, Complex> point{{"z", p[0]}, {"y", p[1]}, {"x", p[2]}};
    for (const auto& g : I.generators()) CHECK(std::abs(evaluate(g, point)) < 1e-10);
  }
}

TEST_CASE("solver edge cases") {
  auto R = ring_new({"x", "y"}, CoefficientField::rationals(), MonomialOrder::grevlex);
  SolutionSet inconsistent = solve_zero_dim(ideal_of(R, {"x", "x - 1"}));
  CHECK(inconsistent.points.empty());
  SolutionSet one = solve_zero_dim(ideal_of(R, {"x - 1", "y^2 - 4"}));
  CHECK(one.points.size() == 2);
  SolutionSet complex_only = solve_zero_dim(ideal_of(R, {"x^2 + 1", "y"}));
  CHECK(complex_only.points.empty());
  try {
    solve_zero_dim(ideal_of(R, {"x*y"}));
    FAIL("expected dimensionality error");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::dimensionality);
  }
  auto Z = ring_new({"x"}, CoefficientField::prime(7), MonomialOrder::lex);
  CHECK_THROWS_AS(solve_zero_dim(ideal_of(Z, {"x - 1"})), Error);
}

TEST_CASE("property: random triangular systems have small residuals") {
  testing::Rng rng(29);
  auto R = ring_new({"x", "y"}, CoefficientField::rationals(), MonomialOrder::lex);
  for (int i = 0; i < 40; ++i) {
    long a = testing::uniform(rng, -5, 5);
    long b = testing::uniform(rng, -5, 5);
    std::string fx = "x^2 - (" + std::to_string(a * a) + ")";
    std::string fy = "y - x - (" + std::to_string(b) + ")";
    Ideal I = ideal_of(R, {fx.c_str(), fy.c_str()});
    SolutionSet s = solve_zero_dim(I);
    CHECK(s.points.size() == (a == 0 ? 1u : 2u));
    for (const auto& p : s.points) {
      std::map<std::string, Complex> point;
      for (std::size_t k = 0; k < p.size(); ++k) point[s.variables[k]] = p[k];
      for (const auto& g : I.generators()) CHECK(std::abs(evaluate(g, point)) < 1e-10);
    }
  }
}

TEST_CASE("property: random zero-dimensional systems have small residuals") {
  testing::Rng rng(7);
  int tried = 0;
  for (int i = 0; i < 3000 && tried < 150; ++i) {
    RingPtr R = with_order(testing::random_ring(rng, 3, false, 2), MonomialOrder::lex);
    auto gens = testing::random_generators(rng, R, 3, 2);
    Ideal I(R, gens);
    if (dimension(I) != 0) continue;
    ++tried;
    SolutionSet s = solve_zero_dim(I);
    for (const auto& p : s.points) {
      std::map<std::string, Complex> point;
      for (std::size_t k = 0; k < p.size(); ++k) point[s.variables[k]] = p[k];
      for (const auto& g : gens) CHECK(std::abs(evaluate(g, point)) < 1e-10);
    }
  }
  CHECK(tried == 150);
}
