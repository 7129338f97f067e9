#include <doctest.h>

#include "cas/groebner.hpp"
#include "support/generators.hpp"
#include "support/properties.hpp"

using namespace cas;

namespace {

std::vector<Polynomial> polys(const RingPtr& R, std::initializer_list<const char*> texts) {
  std::vector<Polynomial> out;
  for (const char* t : texts) out.push_back(poly_parse_text(t, R));
  return out;
}

std::vector<std::string> texts(const GroebnerBasis& gb) {
  std::vector<std::string> out;
  for (const auto& g : gb.generators()) out.push_back(g.to_string());
  return out;
}

}  // namespace

TEST_CASE("twisted cubic basis in grevlex") {
  auto R = ring_new({"t", "x", "y", "z"}, CoefficientField::rationals(), MonomialOrder::grevlex);
  auto gb = buchberger(polys(R, {"t^4 - x", "t^3 - y", "t^2 - z"}), R);
  CHECK(texts(gb) == std::vector<std::string>{"t^2-z", "t*x-y*z", "t*y-x", "y^2-x*z", "t*z-y", "z^2-x"});
}

TEST_CASE("twisted cubic basis in lex eliminates t") {
  auto R = ring_new({"t", "x", "y", "z"}, CoefficientField::rationals(), MonomialOrder::lex);
  auto gb = buchberger(polys(R, {"t^4 - x", "t^3 - y", "t^2 - z"}), R);
  bool has_t_free = false;
  for (const auto& g : gb.generators()) {
    if (g.leading_monomial().exps[0] == 0) has_t_free = true;
  }
  CHECK(has_t_free);
  for (const auto& f : polys(R, {"x - z^2", "y^2 - z^3"})) CHECK(ideal_member(f, gb));
}

TEST_CASE("degenerate ideals") {
  auto R = ring_new({"x", "y"}, CoefficientField::rationals(), MonomialOrder::grevlex);
  CHECK(buchberger(std::vector<Polynomial>{}, R).is_zero_ideal());
  CHECK(buchberger(polys(R, {"0", "0"}), R).is_zero_ideal());
  auto unit = buchberger(polys(R, {"x", "x + 1"}), R);
  CHECK(unit.is_unit_ideal());
  CHECK(texts(unit) == std::vector<std::string>{"1"});
  CHECK(texts(buchberger(polys(R, {"3x^2 y"}), R)) == std::vector<std::string>{"x^2*y"});
}

TEST_CASE("division algorithm identity") {
  testing::Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    RingPtr R = testing::random_ring(rng, 3);
    auto f = testing::random_poly(rng, R, 5, 4);
    auto divisors = testing::random_generators(rng, R, 3, 2);
    Division d = divide(f, divisors);
    REQUIRE(d.quotients.size() == divisors.size());
    Polynomial sum = d.remainder;
    for (std::size_t k = 0; k < divisors.size(); ++k) sum = sum + d.quotients[k] * divisors[k];
    CHECK(sum == f);
    // No remainder term is divisible by any leading monomial.
    for (const auto& t : d.remainder.terms()) {
      for (const auto& g : divisors) CHECK_FALSE(g.leading_monomial().divides(t.mono));
    }
  }
}

TEST_CASE("unsupported coefficient fields are rejected") {
  auto Z = ring_new({"x"}, CoefficientField::integers(), MonomialOrder::grevlex);
  CHECK_THROWS_AS(buchberger(polys(Z, {"2x"}), Z), Error);
}

TEST_CASE("property: S-pairs reduce to zero and the basis is canonical") {
  auto report = testing::gb_property(20240601, 100);
  INFO(report.first_failure);
  CHECK(report.ok());
}
