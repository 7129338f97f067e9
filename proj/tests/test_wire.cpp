#include <doctest.h>

#include <fstream>
#include <json.hpp>

#include "cas/wire.hpp"
#include "cas/wire_json.hpp"
#include "support/properties.hpp"

using namespace cas;

namespace {

std::vector<std::string> corpus_lines() {
  std::ifstream in(CAS_GOLDEN_DIR "/corpus.txt");
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

}  // namespace

TEST_CASE("scalars") {
  CHECK(parse("42").as<Integer>().value == 42);
  CHECK(parse("-7/21").as<Rational>().value == mpq_class(-1, 3));
  CHECK(parse("4/2").as<Integer>().value == 2);
  CHECK(parse("1.2").as<Real>().value == 1.2);
  CHECK(serialize(Real{3.0}) == "3.0");
  CHECK(serialize(Real{1e-8}) == "1.0e-08");
  CHECK(parse("true").as<Boolean>().value);
  CHECK(parse("null").is<Null>());
  CHECK(parse(R"("a\"b\\c\nd")").as<Text>().value == "a\"b\\c\nd");
  CHECK(serialize(Text{"line\nbreak"}) == R"("line\nbreak")");
  CHECK_THROWS_AS(serialize(Real{std::nan("")}), Error);
}

TEST_CASE("algebraic values") {
  WireValue r = parse("ring(Zp(7),[x,y],lex)");
  CHECK(r.as<RingV>().ring->field().modulus() == 7);
  WireValue p = parse("poly(ring(QQ,[x,y],grevlex),x^2-1/2*y)");
  CHECK(p.as<PolyV>().poly.to_string() == "x^2-1/2*y");
  WireValue i = parse("ideal(ring(QQ,[x,y,z],grevlex),[x*z,y*z])");
  CHECK(i.as<IdealV>().ideal.generators().size() == 2);
  CHECK(type_tag(parse("gb(ring(QQ,[x],grevlex),[x])")) == "gb");
  CHECK(type_tag(parse("matrix([[1,2],[3,4]])")) == "matrix");
  CHECK(type_tag(parse("ref(\"o2\",\"ideal\")")) == "ref");
}

TEST_CASE("syntax errors carry offsets") {
  for (const char* bad : {"[1,2", "ideal(", "poly(ring(QQ,[x],grevlex),x+)", "\"open", "1/0", "ring(QQ,[x,x],lex)",
                          "1 2", "ring(QQ,[x],sideways)"}) {
    INFO(bad);
    CHECK_THROWS_AS(parse(bad), Error);
  }
  try {
    parse("[1,,2]");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.offset() == 3);
  }
}

TEST_CASE("registry handlers and shadowing") {
  CHECK(parse("snf(matrix([[1]]),matrix([[1]]),matrix([[1]]))", ParseRegistry::core()).is<TaggedV>());
  CHECK(parse("snf(matrix([[1]]),matrix([[1]]),matrix([[1]]))", kernel_registry()).is<SnfV>());
  auto custom = kernel_registry().with("factorization", [](std::span<const WireValue>) -> WireValue { return Text{"mine"}; });
  CHECK(parse("factorization([2],[1])", custom).as<Text>().value == "mine");
  CHECK(parse("factorization([2],[1])", kernel_registry()).is<FactorizationV>());
  auto none = ParseRegistry::empty();
  WireValue unknown = parse("widget(1,[2])", none);
  REQUIRE(unknown.is<TaggedV>());
  CHECK(unknown.as<TaggedV>().tag == "widget");
  CHECK(serialize(unknown) == "widget(1,[2])");
}

TEST_CASE("golden corpus: canonical texts are fixed points") {
  auto lines = corpus_lines();
  REQUIRE(lines.size() == 50);
  for (const auto& line : lines) {
    INFO(line);
    CHECK(serialize(parse(line, kernel_registry())) == line);
  }
}

TEST_CASE("golden corpus: JSON expectation matches") {
  auto lines = corpus_lines();
  std::ifstream in(CAS_GOLDEN_DIR "/corpus.json");
  auto expected = nlohmann::json::parse(in);
  REQUIRE(expected.size() == lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    INFO(lines[i]);
    CHECK(expected[i]["text"] == lines[i]);
    CHECK(expected[i]["value"] == to_json(parse(lines[i], kernel_registry())));
  }
}

TEST_CASE("property: parse inverts serialize") {
  auto report = testing::wire_roundtrip_property(1729, 500);
  INFO(report.first_failure);
  CHECK(report.ok());
}
