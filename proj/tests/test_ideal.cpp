#include <doctest.h>

#include "cas/ideal.hpp"
#include "support/generators.hpp"
#include "support/properties.hpp"

using namespace cas;

namespace {

struct Fixture {
  RingPtr R = ring_new({"t", "x", "y", "z"}, CoefficientField::rationals(), MonomialOrder::grevlex);

  Ideal I(std::initializer_list<const char*> gens) const {
    std::vector<Polynomial> ps;
    for (const char* g : gens) ps.push_back(poly_parse_text(g, R));
    return Ideal(R, ps);
  }
};

std::string gens_text(const Ideal& i) {
  std::string out;
  for (const auto& g : i.generators()) out += (out.empty() ? "" : ",") + g.to_string();
  return out;
}

}  // namespace

TEST_CASE_FIXTURE(Fixture, "ideal arithmetic") {
  CHECK(ideal_equals(ideal_sum(I({"x", "y"}), I({"z"})), I({"x", "y", "z"})));
  CHECK(ideal_equals(ideal_product(I({"x", "y"}), I({"z"})), I({"x*z", "y*z"})));
  CHECK(I({"x", "y"}).contains(I({"x*z + y^2"})));
  CHECK_FALSE(I({"x", "y"}).contains(poly_parse_text("z", R)));
  CHECK(I({"x", "x + 1"}).is_unit());
  CHECK(Ideal(R, {Polynomial(R)}).is_zero());
}

TEST_CASE_FIXTURE(Fixture, "radical, saturation and quotient") {
  CHECK(ideal_equals(radical(I({"x^2"})), I({"x"})));
  CHECK(ideal_equals(radical(I({"x^2*y^3"})), I({"x*y"})));
  CHECK(ideal_equals(saturate(I({"(x-1)*x*(x+1)"}), I({"x"})), I({"x^2 - 1"})));
  CHECK(ideal_equals(quotient(I({"x*z", "y*z"}), I({"z"})), I({"x", "y"})));
  CHECK(ideal_equals(quotient(I({"x^2"}), poly_parse_text("x", R)), I({"x"})));
  CHECK(is_radical(I({"x", "y"})));
  CHECK_FALSE(is_radical(I({"x^2"})));
  CHECK_THROWS_AS(saturate(I({"x"}), Ideal(R, {})), Error);
}

TEST_CASE_FIXTURE(Fixture, "zero-dimensional radical") {
  auto S = ring_new({"x", "y"}, CoefficientField::rationals(), MonomialOrder::grevlex);
  Ideal J(S, {poly_parse_text("x^2", S), poly_parse_text("y^2 - 2y + 1", S)});
  CHECK(ideal_equals(radical(J), Ideal(S, {poly_parse_text("x", S), poly_parse_text("y - 1", S)})));
  CHECK(ideal_equals(radical(radical(J)), radical(J)));
}

TEST_CASE_FIXTURE(Fixture, "unsupported radical shapes name the supported ones") {
  try {
    radical(I({"x^2 + y^3*z"}));
    FAIL("expected unsupported_shape");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::unsupported_shape);
    CHECK(std::string(e.what()).find("monomial") != std::string::npos);
  }
}

TEST_CASE_FIXTURE(Fixture, "dimension") {
  CHECK(dimension(I({"x*z", "y*z"})) == 3);
  CHECK(dimension(I({"z"})) == 3);
  CHECK(dimension(I({"x", "y"})) == 2);
  CHECK(dimension(I({"1"})) == -1);
  CHECK(dimension(Ideal(R, {})) == 4);
  CHECK(dimension(I({"t^4 - x", "t^3 - y", "t^2 - z"})) == 1);
}

TEST_CASE_FIXTURE(Fixture, "primary decomposition of a squarefree monomial ideal") {
  auto parts = primary_decomposition(I({"x*z", "y*z"}));
  REQUIRE(parts.size() == 2);
  CHECK(gens_text(parts[0]) == "z");
  CHECK(gens_text(parts[1]) == "x,y");
  CHECK(dimension(parts[0]) == 3);
  CHECK(dimension(parts[1]) == 2);
  // The intersection of the components gives the ideal back.
  CHECK(ideal_equals(intersect(parts[0], parts[1]), I({"x*z", "y*z"})));
  CHECK_THROWS_AS(primary_decomposition(I({"x^2"})), Error);
  CHECK_THROWS_AS(primary_decomposition(I({"1"})), Error);
}

TEST_CASE_FIXTURE(Fixture, "elimination and intersection") {
  Ideal e = eliminate(I({"t^4 - x", "t^3 - y", "t^2 - z"}), {"t"});
  CHECK(e.ring()->variables() == std::vector<std::string>{"x", "y", "z"});
  CHECK(gens_text(e.canonical()) == "y^2-x*z,z^2-x");
  CHECK(ideal_equals(intersect(I({"x"}), I({"y"})), I({"x*y"})));
  CHECK(ideal_equals(intersect(I({"x^2", "y"}), I({"x", "y^2"})), I({"x^2", "x*y", "y^2"})));
}

TEST_CASE("property: dimension matches the subset oracle") {
  auto report = testing::dimension_property(977, 100);
  INFO(report.first_failure);
  CHECK(report.ok());
}

TEST_CASE("property: radical is idempotent on monomial ideals") {
  testing::Rng rng(42);
  for (int i = 0; i < 50; ++i) {
    RingPtr R = testing::random_ring(rng, 3);
    Ideal I(R, testing::random_monomial_generators(rng, R, 3, 3));
    Ideal r = radical(I);
    CHECK(ideal_equals(radical(r), r));
    CHECK(r.contains(I));
    CHECK(is_radical(r));
  }
}
