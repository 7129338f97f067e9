#include "cas/wire_json.hpp"

namespace cas {

namespace {

using nlohmann::json;

json ring_json(const PolynomialRing& ring) {
  return {{"field", ring.field().name()}, {"variables", ring.variables()}, {"order", std::string(order_name(ring.order()))}};
}

json poly_json(const Polynomial& p) {
  json terms = json::array();
  const auto& field = p.ring()->field();
  for (const auto& t : p.terms()) {
    terms.push_back({{"coeff", field.representative(t.coeff).get_str()}, {"exponents", t.mono.exps}});
  }
  return terms;
}

json polys_json(const std::vector<Polynomial>& polys) {
  json out = json::array();
  for (const auto& p : polys) out.push_back(poly_json(p));
  return out;
}

json ideal_json(const Ideal& ideal) {
  return {{"type", "ideal"}, {"ring", ring_json(*ideal.ring())}, {"generators", polys_json(ideal.generators())}};
}

json matrix_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).get_str());
    rows.push_back(std::move(row));
  }
  return rows;
}

struct Dumper {
  json operator()(const Integer& v) const { return {{"type", "integer"}, {"value", v.value.get_str()}}; }
  json operator()(const Rational& v) const {
    return {{"type", "rational"}, {"num", v.value.get_num().get_str()}, {"den", v.value.get_den().get_str()}};
  }
  json operator()(const Real& v) const { return {{"type", "real"}, {"value", v.value}}; }
  json operator()(const Boolean& v) const { return {{"type", "boolean"}, {"value", v.value}}; }
  json operator()(const Text& v) const { return {{"type", "text"}, {"value", v.value}}; }
  json operator()(const Null&) const { return {{"type", "null"}}; }
  json operator()(const Symbol& v) const { return {{"type", "symbol"}, {"name", v.name}}; }
  json operator()(const RingV& v) const {
    json out = ring_json(*v.ring);
    out["type"] = "ring";
    return out;
  }
  json operator()(const PolyV& v) const {
    return {{"type", "poly"}, {"ring", ring_json(*v.poly.ring())}, {"terms", poly_json(v.poly)}};
  }
  json operator()(const IdealV& v) const { return ideal_json(v.ideal); }
  json operator()(const IdealListV& v) const {
    json items = json::array();
    for (const auto& i : v.items) items.push_back(ideal_json(i));
    return {{"type", "idealList"}, {"ring", ring_json(*v.ring)}, {"items", std::move(items)}};
  }
  json operator()(const GbV& v) const {
    return {{"type", "gb"}, {"ring", ring_json(*v.gb.ring())}, {"generators", polys_json(v.gb.generators())}};
  }
  json operator()(const IntMatrixV& v) const { return {{"type", "matrix"}, {"rows", matrix_json(v.matrix)}}; }
  json operator()(const PolyMatrixV& v) const {
    json rows = json::array();
    for (const auto& r : v.rows) rows.push_back(polys_json(r));
    return {{"type", "polyMatrix"}, {"ring", ring_json(*v.ring)}, {"rows", std::move(rows)}};
  }
  json operator()(const ListV& v) const {
    json items = json::array();
    for (const auto& i : v.items) items.push_back(std::visit(*this, i.v));
    return {{"type", "list"}, {"items", std::move(items)}};
  }
  json operator()(const RefV& v) const { return {{"type", "ref"}, {"name", v.name}, {"typeTag", v.type_tag}}; }
  json operator()(const ErrorV& v) const {
    return {{"type", "error"}, {"code", errc_name(v.code)}, {"message", v.message}};
  }
  json operator()(const SnfV& v) const {
    return {{"type", "snf"}, {"P", matrix_json(v.result.P)}, {"D", matrix_json(v.result.D)}, {"Q", matrix_json(v.result.Q)}};
  }
  json operator()(const FactorizationV& v) const {
    json primes = json::array();
    for (const auto& p : v.factorization.primes) primes.push_back(p.get_str());
    return {{"type", "factorization"}, {"primes", std::move(primes)}, {"powers", v.factorization.powers}};
  }
  json operator()(const SolutionV& v) const {
    return {{"type", "solutions"},
            {"variables", v.solutions.variables},
            {"points", v.solutions.points},
            {"tolerance", v.solutions.tolerance}};
  }
  json operator()(const TaggedV& v) const {
    json args = json::array();
    for (const auto& a : v.args) args.push_back(std::visit(*this, a.v));
    return {{"type", "tagged"}, {"tag", v.tag}, {"args", std::move(args)}};
  }
};

}  // namespace

json to_json(const WireValue& value) { return std::visit(Dumper{}, value.v); }

}  // namespace cas
