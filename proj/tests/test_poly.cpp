#include <doctest.h>

#include "cas/poly.hpp"
#include "cas/univariate.hpp"
#include "support/generators.hpp"

using namespace cas;
using cas::testing::Rng;

namespace {

RingPtr qq(std::vector<std::string> vars, MonomialOrder order = MonomialOrder::grevlex) {
  return ring_new(std::move(vars), CoefficientField::rationals(), order);
}

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::internal;
}

}  // namespace

TEST_CASE("ring construction validates names and fields") {
  CHECK(code_of([] { qq({"x", "x"}); }) == Errc::duplicate_variable);
  CHECK(code_of([] { qq({"1x"}); }) == Errc::invalid_variable);
  CHECK(code_of([] { qq({"_x"}); }) == Errc::invalid_variable);
  CHECK(code_of([] { qq({"x_1"}); }) == Errc::invalid_variable);
  CHECK(code_of([] { CoefficientField::prime(12); }) == Errc::non_prime_modulus);
  CHECK(code_of([] { CoefficientField::from_tag("RR"); }) == Errc::unknown_field);
  CHECK(qq({"x", "y"})->describe() == "QQ[x,y] grevlex");
  CHECK(same_ring(qq({"x", "y"}), qq({"x", "y"})));
  CHECK_FALSE(same_ring(qq({"x", "y"}), qq({"x", "y"}, MonomialOrder::lex)));
}

TEST_CASE("monomial orders") {
  Monomial a({2, 0, 0});
  Monomial b({0, 1, 1});
  Monomial c({1, 0, 2});
  CHECK(monomial_cmp(MonomialOrder::lex, a, b) > 0);
  CHECK(monomial_cmp(MonomialOrder::grlex, c, b) > 0);
  // x*z^2 vs y^3: same degree, grevlex prefers the smaller last exponent.
  Monomial d({0, 3, 0});
  CHECK(monomial_cmp(MonomialOrder::grlex, c, d) > 0);
  CHECK(monomial_cmp(MonomialOrder::grevlex, c, d) < 0);
  CHECK(monomial_cmp(MonomialOrder::grevlex, a, a) == 0);
}

TEST_CASE("parsing and canonical printing") {
  auto R = qq({"t", "x", "y", "z"});
  CHECK(poly_parse_text("t^4 - x", R).to_string() == "t^4-x");
  CHECK(poly_parse_text("2x y + 3/4 z^2 - 1", R).to_string() == "2*x*y+3/4*z^2-1");
  CHECK(poly_parse_text("(x+1)^2", R).to_string() == "x^2+2*x+1");
  CHECK(poly_parse_text("-(x - y)", R).to_string() == "-x+y");
  CHECK(poly_parse_text("0", R).to_string() == "0");
  CHECK(poly_parse_text("x*0", R).is_zero());
  CHECK(code_of([&] { poly_parse_text("u + 1", R); }) == Errc::unknown_identifier);
  CHECK(code_of([&] { poly_parse_text("x^-1", R); }) == Errc::negative_exponent);
  CHECK(code_of([&] { poly_parse_text("(x + 1", R); }) == Errc::syntax);
  try {
    poly_parse_text("x + + ", R);
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.offset() > 0);
  }
}

TEST_CASE("prime field coefficients print symmetrically") {
  auto R = ring_new({"x"}, CoefficientField::prime(7), MonomialOrder::grevlex);
  CHECK(poly_parse_text("6x + 10", R).to_string() == "-x+3");
  CHECK(poly_parse_text("4x", R).to_string() == "-3*x");
  CHECK(poly_parse_text("1/2 x", R).to_string() == "-3*x");
  CHECK(poly_parse_text("7x", R).is_zero());
}

TEST_CASE("ring axioms on random polynomials") {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    RingPtr R = testing::random_ring(rng, 3);
    auto f = testing::random_poly(rng, R, 4, 3);
    auto g = testing::random_poly(rng, R, 4, 3);
    auto h = testing::random_poly(rng, R, 4, 3);
    CHECK(f + g == g + f);
    CHECK(f * g == g * f);
    CHECK((f * g) * h == f * (g * h));
    CHECK(f * (g + h) == f * g + f * h);
    CHECK((f - f).is_zero());
    CHECK(f.pow(2) == f * f);
    CHECK(poly_parse_text(f.to_string(), R) == f);
  }
}

TEST_CASE("substitution and evaluation") {
  auto R = qq({"x", "y"});
  auto f = poly_parse_text("x^2 y - 3y + 1", R);
  CHECK(substitute(f, "y", Coeff(2)).to_string() == "2*x^2-5");
  CHECK(evaluate(f, {{"x", Coeff(1)}, {"y", Coeff(1, 2)}}) == Coeff(0));
  auto z = evaluate(f, std::map<std::string, Complex>{{"x", Complex(0, 1)}, {"y", Complex(1, 0)}});
  CHECK(z.real() == doctest::Approx(-3.0));
  CHECK(vars_of(f) == std::set<std::string>{"x", "y"});
  CHECK(degree_in(f, 0) == 2);
  CHECK(is_univariate(substitute(f, "x", Coeff(0))));
  CHECK(is_univariate(Polynomial::constant(R, Coeff(5))));
}

TEST_CASE("ring_without and map_to_ring move exponents by name") {
  auto R = qq({"t", "x", "y"});
  auto S = ring_without(R, "t");
  CHECK(S->variables() == std::vector<std::string>{"x", "y"});
  auto f = poly_parse_text("x^2 - y", R);
  CHECK(map_to_ring(f, S).to_string() == "x^2-y");
  CHECK(code_of([&] { map_to_ring(poly_parse_text("t", R), S); }) != Errc::internal);
}

TEST_CASE("univariate gcd and squarefree part") {
  auto R = qq({"x"});
  auto f = UniPoly::from_polynomial(poly_parse_text("(x-1)^3 (x+2)", R), 0);
  CHECK(squarefree_part(f).to_polynomial(R, 0).to_string() == "x^2+x-2");
  auto g = UniPoly::from_polynomial(poly_parse_text("(x-1)(x+5)", R), 0);
  CHECK(uni_gcd(f, g).to_polynomial(R, 0).to_string() == "x-1");
  auto P = ring_new({"x"}, CoefficientField::prime(3), MonomialOrder::grevlex);
  // x^3 - x = x(x-1)(x+1) over Z/3 is already squarefree; x^3 + 1 = (x+1)^3.
  CHECK(squarefree_part(UniPoly::from_polynomial(poly_parse_text("x^3 - x", P), 0)).to_polynomial(P, 0).to_string() == "x^3-x");
  CHECK(squarefree_part(UniPoly::from_polynomial(poly_parse_text("x^3 + 1", P), 0)).to_polynomial(P, 0).to_string() == "x+1");
}
