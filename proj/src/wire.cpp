#include "cas/wire.hpp"

#include <charconv>
#include <cmath>
#include <cstring>

namespace cas {

bool operator==(const IdealListV& a, const IdealListV& b) {
  if (!same_ring(a.ring, b.ring) || a.items.size() != b.items.size()) return false;
  for (std::size_t i = 0; i < a.items.size(); ++i) {
    if (!(IdealV{a.items[i]} == IdealV{b.items[i]})) return false;
  }
  return true;
}

bool operator==(const ListV& a, const ListV& b) { return a.items == b.items; }
bool operator==(const TaggedV& a, const TaggedV& b) { return a.tag == b.tag && a.args == b.args; }

WireValue make_number(const mpq_class& q) {
  mpq_class c = q;
  c.canonicalize();
  if (c.get_den() == 1) return Integer{c.get_num()};
  return Rational{c};
}

std::string type_tag(const WireValue& value) {
  struct Visitor {
    std::string operator()(const Integer&) const { return "integer"; }
    std::string operator()(const Rational&) const { return "rational"; }
    std::string operator()(const Real&) const { return "real"; }
    std::string operator()(const Boolean&) const { return "boolean"; }
    std::string operator()(const Text&) const { return "text"; }
    std::string operator()(const Null&) const { return "null"; }
    std::string operator()(const Symbol&) const { return "symbol"; }
    std::string operator()(const RingV&) const { return "ring"; }
    std::string operator()(const PolyV&) const { return "poly"; }
    std::string operator()(const IdealV&) const { return "ideal"; }
    std::string operator()(const IdealListV&) const { return "idealList"; }
    std::string operator()(const GbV&) const { return "gb"; }
    std::string operator()(const IntMatrixV&) const { return "matrix"; }
    std::string operator()(const PolyMatrixV&) const { return "matrix"; }
    std::string operator()(const ListV&) const { return "list"; }
    std::string operator()(const RefV&) const { return "ref"; }
    std::string operator()(const ErrorV&) const { return "error"; }
    std::string operator()(const SnfV&) const { return "snf"; }
    std::string operator()(const FactorizationV&) const { return "factorization"; }
    std::string operator()(const SolutionV&) const { return "solutions"; }
    std::string operator()(const TaggedV& t) const { return t.tag; }
  };
  return std::visit(Visitor{}, value.v);
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

std::string format_real(double d) {
  if (!std::isfinite(d)) raise(Errc::unserializable, "non-finite real cannot be serialized");
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, d);
  std::string s(buf, res.ptr);
  if (s.find('.') == std::string::npos) {
    auto e = s.find('e');
    if (e == std::string::npos) {
      s += ".0";
    } else {
      s.insert(e, ".0");
    }
  }
  return s;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

std::string poly_list(const std::vector<Polynomial>& polys) {
  std::string out = "[";
  for (std::size_t i = 0; i < polys.size(); ++i) {
    if (i) out += ',';
    out += polys[i].to_string();
  }
  return out + "]";
}

std::string int_matrix(const IntMatrix& m) {
  std::string out = "matrix([";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) out += ',';
    out += '[';
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ',';
      out += m.at(i, j).get_str();
    }
    out += ']';
  }
  return out + "])";
}

std::string ideal_text(const Ideal& ideal) {
  return "ideal(" + serialize_ring(*ideal.ring()) + "," + poly_list(ideal.generators()) + ")";
}

struct Serializer {
  std::string operator()(const Integer& v) const { return v.value.get_str(); }
  std::string operator()(const Rational& v) const { return v.value.get_str(); }
  std::string operator()(const Real& v) const { return format_real(v.value); }
  std::string operator()(const Boolean& v) const { return v.value ? "true" : "false"; }
  std::string operator()(const Text& v) const { return quote(v.value); }
  std::string operator()(const Null&) const { return "null"; }
  std::string operator()(const Symbol& v) const { return v.name; }
  std::string operator()(const RingV& v) const { return serialize_ring(*v.ring); }
  std::string operator()(const PolyV& v) const {
    return "poly(" + serialize_ring(*v.poly.ring()) + "," + v.poly.to_string() + ")";
  }
  std::string operator()(const IdealV& v) const { return ideal_text(v.ideal); }
  std::string operator()(const IdealListV& v) const {
    std::string out = "idealList(" + serialize_ring(*v.ring) + ",[";
    for (std::size_t i = 0; i < v.items.size(); ++i) {
      if (i) out += ',';
      out += ideal_text(v.items[i]);
    }
    return out + "])";
  }
  std::string operator()(const GbV& v) const {
    return "gb(" + serialize_ring(*v.gb.ring()) + "," + poly_list(v.gb.generators()) + ")";
  }
  std::string operator()(const IntMatrixV& v) const { return int_matrix(v.matrix); }
  std::string operator()(const PolyMatrixV& v) const {
    std::string out = "matrix(" + serialize_ring(*v.ring) + ",[";
    for (std::size_t i = 0; i < v.rows.size(); ++i) {
      if (i) out += ',';
      out += poly_list(v.rows[i]);
    }
    return out + "])";
  }
  std::string operator()(const ListV& v) const {
    std::string out = "[";
    for (std::size_t i = 0; i < v.items.size(); ++i) {
      if (i) out += ',';
      out += std::visit(*this, v.items[i].v);
    }
    return out + "]";
  }
  std::string operator()(const RefV& v) const { return "ref(" + quote(v.name) + "," + quote(v.type_tag) + ")"; }
  std::string operator()(const ErrorV& v) const {
    raise(Errc::unserializable, "error values are not serialized: " + v.message);
  }
  std::string operator()(const SnfV& v) const {
    return "snf(" + int_matrix(v.result.P) + "," + int_matrix(v.result.D) + "," + int_matrix(v.result.Q) + ")";
  }
  std::string operator()(const FactorizationV& v) const {
    std::string out = "factorization([";
    const auto& f = v.factorization;
    for (std::size_t i = 0; i < f.primes.size(); ++i) {
      if (i) out += ',';
      out += f.primes[i].get_str();
    }
    out += "],[";
    for (std::size_t i = 0; i < f.powers.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(f.powers[i]);
    }
    return out + "])";
  }
  std::string operator()(const SolutionV& v) const {
    const auto& s = v.solutions;
    std::string out = "solutions([";
    for (std::size_t i = 0; i < s.variables.size(); ++i) {
      if (i) out += ',';
      out += s.variables[i];
    }
    out += "],[";
    for (std::size_t i = 0; i < s.points.size(); ++i) {
      if (i) out += ',';
      out += '[';
      for (std::size_t j = 0; j < s.points[i].size(); ++j) {
        if (j) out += ',';
        out += format_real(s.points[i][j]);
      }
      out += ']';
    }
    return out + "]," + format_real(s.tolerance) + ")";
  }
  std::string operator()(const TaggedV& v) const {
    std::string out = v.tag + "(";
    for (std::size_t i = 0; i < v.args.size(); ++i) {
      if (i) out += ',';
      out += std::visit(*this, v.args[i].v);
    }
    return out + ")";
  }
};

}  // namespace

std::string serialize_ring(const PolynomialRing& ring) {
  if (ring.field().kind() == CoefficientField::Kind::CCf) {
    raise(Errc::unserializable, "approximate-coefficient rings are not serialized");
  }
  std::string out = "ring(" + ring.field().name() + ",[";
  for (std::size_t i = 0; i < ring.nvars(); ++i) {
    if (i) out += ',';
    out += ring.variables()[i];
  }
  return out + "]," + std::string(order_name(ring.order())) + ")";
}

std::string serialize(const WireValue& value) { return std::visit(Serializer{}, value.v); }

// ---------------------------------------------------------------------------
// Registry

ParseRegistry ParseRegistry::with(std::string tag, ParseHandler handler) const {
  ParseRegistry copy = *this;
  copy.handlers_[std::move(tag)] = std::move(handler);
  return copy;
}

const ParseHandler* ParseRegistry::find(std::string_view tag) const {
  auto it = handlers_.find(tag);
  return it == handlers_.end() ? nullptr : &it->second;
}

ParseRegistry register_handler(const ParseRegistry& registry, std::string tag, ParseHandler handler) {
  return registry.with(std::move(tag), std::move(handler));
}

namespace {

[[noreturn]] void bad_args(std::string_view tag, std::string_view expected) {
  raise(Errc::invalid_argument, std::string(tag) + "(...) expects " + std::string(expected));
}

const RingPtr& ring_arg(std::span<const WireValue> args, std::string_view tag, std::string_view expected) {
  if (args.empty() || !args[0].is<RingV>()) bad_args(tag, expected);
  return args[0].as<RingV>().ring;
}

std::vector<Polynomial> poly_items(const WireValue& v, std::string_view tag, std::string_view expected) {
  const auto* list = v.get_if<ListV>();
  if (!list) bad_args(tag, expected);
  std::vector<Polynomial> out;
  for (const auto& item : list->items) {
    const auto* p = item.get_if<PolyV>();
    if (!p) bad_args(tag, expected);
    out.push_back(p->poly);
  }
  return out;
}

mpz_class integer_arg(const WireValue& v, std::string_view tag, std::string_view expected) {
  const auto* i = v.get_if<Integer>();
  if (!i) bad_args(tag, expected);
  return i->value;
}

CoefficientField field_arg(const WireValue& v) {
  if (const auto* s = v.get_if<Symbol>()) {
    if (s->name == "QQ" || s->name == "ZZ") return CoefficientField::from_tag(s->name);
    raise(Errc::unknown_field, "unknown coefficient field '" + s->name + "'");
  }
  if (const auto* t = v.get_if<TaggedV>()) {
    if (t->tag == "Zp" && t->args.size() == 1 && t->args[0].is<Integer>()) {
      const mpz_class& p = t->args[0].as<Integer>().value;
      if (p <= 1 || !p.fits_ulong_p()) raise(Errc::non_prime_modulus, "Zp modulus " + p.get_str() + " is not prime");
      return CoefficientField::prime(p.get_ui());
    }
  }
  raise(Errc::unknown_field, "unknown coefficient field");
}

WireValue ring_handler(std::span<const WireValue> args) {
  constexpr std::string_view expected = "a field, a variable list and an optional order";
  if (args.size() != 2 && args.size() != 3) bad_args("ring", expected);
  CoefficientField field = field_arg(args[0]);
  const auto* list = args[1].get_if<ListV>();
  if (!list) bad_args("ring", expected);
  std::vector<std::string> vars;
  for (const auto& item : list->items) {
    const auto* s = item.get_if<Symbol>();
    if (!s) bad_args("ring", expected);
    vars.push_back(s->name);
  }
  MonomialOrder order = MonomialOrder::grevlex;
  if (args.size() == 3) {
    const auto* s = args[2].get_if<Symbol>();
    if (!s) bad_args("ring", expected);
    order = parse_order(s->name);
  }
  return RingV{ring_new(std::move(vars), field, order)};
}

WireValue poly_handler(std::span<const WireValue> args) {
  constexpr std::string_view expected = "a ring and a polynomial";
  const RingPtr& ring = ring_arg(args, "poly", expected);
  if (args.size() != 2 || !args[1].is<PolyV>()) bad_args("poly", expected);
  return PolyV{map_to_ring(args[1].as<PolyV>().poly, ring)};
}

WireValue ideal_handler(std::span<const WireValue> args) {
  constexpr std::string_view expected = "a ring and a list of polynomials";
  const RingPtr& ring = ring_arg(args, "ideal", expected);
  if (args.size() != 2) bad_args("ideal", expected);
  return IdealV{Ideal(ring, poly_items(args[1], "ideal", expected))};
}

WireValue gb_handler(std::span<const WireValue> args) {
  constexpr std::string_view expected = "a ring and a list of polynomials";
  const RingPtr& ring = ring_arg(args, "gb", expected);
  if (args.size() != 2) bad_args("gb", expected);
  return GbV{GroebnerBasis(ring, poly_items(args[1], "gb", expected), true)};
}

WireValue ideal_list_handler(std::span<const WireValue> args) {
  constexpr std::string_view expected = "a ring and a list of ideals over it";
  const RingPtr& ring = ring_arg(args, "idealList", expected);
  if (args.size() != 2 || !args[1].is<ListV>()) bad_args("idealList", expected);
  IdealListV out{ring, {}};
  for (const auto& item : args[1].as<ListV>().items) {
    const auto* ideal = item.get_if<IdealV>();
    if (!ideal) bad_args("idealList", expected);
    require_same_ring(ring, ideal->ideal.ring());
    out.items.push_back(ideal->ideal);
  }
  return out;
}

IntMatrix int_matrix_arg(const WireValue& v, std::string_view tag, std::string_view expected) {
  if (const auto* m = v.get_if<IntMatrixV>()) return m->matrix;
  const auto* rows = v.get_if<ListV>();
  if (!rows || rows->items.empty()) bad_args(tag, expected);
  std::vector<std::vector<mpz_class>> data;
  for (const auto& row : rows->items) {
    const auto* cells = row.get_if<ListV>();
    if (!cells) bad_args(tag, expected);
    std::vector<mpz_class> r;
    for (const auto& c : cells->items) r.push_back(integer_arg(c, tag, expected));
    data.push_back(std::move(r));
  }
  return IntMatrix::from_rows(data);
}

WireValue matrix_handler(std::span<const WireValue> args) {
  constexpr std::string_view expected = "a list of integer rows, or a ring and a list of polynomial rows";
  if (args.size() == 1) return IntMatrixV{int_matrix_arg(args[0], "matrix", expected)};
  const RingPtr& ring = ring_arg(args, "matrix", expected);
  if (args.size() != 2 || !args[1].is<ListV>()) bad_args("matrix", expected);
  PolyMatrixV out{ring, {}};
  for (const auto& row : args[1].as<ListV>().items) {
    out.rows.push_back(poly_items(row, "matrix", expected));
    if (out.rows.back().size() != out.rows.front().size()) raise(Errc::invalid_argument, "ragged matrix rows");
  }
  if (out.rows.empty() || out.rows.front().empty()) raise(Errc::invalid_argument, "empty matrix");
  return out;
}

WireValue list_handler(std::span<const WireValue> args) {
  return ListV{std::vector<WireValue>(args.begin(), args.end())};
}

WireValue ref_handler(std::span<const WireValue> args) {
  if (args.size() != 2 || !args[0].is<Text>() || !args[1].is<Text>()) bad_args("ref", "a name and a type tag");
  return RefV{args[0].as<Text>().value, args[1].as<Text>().value};
}

WireValue snf_handler(std::span<const WireValue> args) {
  constexpr std::string_view expected = "three integer matrices";
  if (args.size() != 3) bad_args("snf", expected);
  return SnfV{SnfResult{int_matrix_arg(args[0], "snf", expected), int_matrix_arg(args[1], "snf", expected),
                        int_matrix_arg(args[2], "snf", expected)}};
}

WireValue factorization_handler(std::span<const WireValue> args) {
  constexpr std::string_view expected = "a list of primes and a list of powers";
  if (args.size() != 2 || !args[0].is<ListV>() || !args[1].is<ListV>()) bad_args("factorization", expected);
  Factorization f;
  for (const auto& p : args[0].as<ListV>().items) f.primes.push_back(integer_arg(p, "factorization", expected));
  for (const auto& e : args[1].as<ListV>().items) {
    mpz_class v = integer_arg(e, "factorization", expected);
    if (v <= 0 || !v.fits_uint_p()) bad_args("factorization", expected);
    f.powers.push_back(static_cast<unsigned>(v.get_ui()));
  }
  if (f.primes.size() != f.powers.size()) bad_args("factorization", expected);
  return FactorizationV{std::move(f)};
}

double real_arg(const WireValue& v, std::string_view tag, std::string_view expected) {
  if (const auto* r = v.get_if<Real>()) return r->value;
  if (const auto* i = v.get_if<Integer>()) return i->value.get_d();
  if (const auto* q = v.get_if<Rational>()) return q->value.get_d();
  bad_args(tag, expected);
}

WireValue solutions_handler(std::span<const WireValue> args) {
  constexpr std::string_view expected = "variables, rows of coordinates and a tolerance";
  if (args.size() != 3 || !args[0].is<ListV>() || !args[1].is<ListV>()) bad_args("solutions", expected);
  SolutionSet s;
  for (const auto& v : args[0].as<ListV>().items) {
    const auto* name = v.get_if<Symbol>();
    if (!name) bad_args("solutions", expected);
    s.variables.push_back(name->name);
  }
  for (const auto& row : args[1].as<ListV>().items) {
    const auto* cells = row.get_if<ListV>();
    if (!cells || cells->items.size() != s.variables.size()) bad_args("solutions", expected);
    std::vector<double> point;
    for (const auto& c : cells->items) point.push_back(real_arg(c, "solutions", expected));
    s.points.push_back(std::move(point));
  }
  s.tolerance = real_arg(args[2], "solutions", expected);
  return SolutionV{std::move(s)};
}

}  // namespace

const ParseRegistry& ParseRegistry::core() {
  static const ParseRegistry registry = ParseRegistry()
                                            .with("ring", ring_handler)
                                            .with("poly", poly_handler)
                                            .with("ideal", ideal_handler)
                                            .with("gb", gb_handler)
                                            .with("idealList", ideal_list_handler)
                                            .with("matrix", matrix_handler)
                                            .with("list", list_handler)
                                            .with("ref", ref_handler);
  return registry;
}

const ParseRegistry& kernel_registry() {
  static const ParseRegistry registry = ParseRegistry::core()
                                            .with("snf", snf_handler)
                                            .with("factorization", factorization_handler)
                                            .with("solutions", solutions_handler);
  return registry;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

class WireParser {
 public:
  WireParser(std::string_view src, const ParseRegistry& registry) : src_(src), registry_(registry) {}

  WireValue document() {
    WireValue v = value(nullptr);
    skip_ws();
    if (pos_ != src_.size()) fail("expected end of input");
    return v;
  }

 private:
  WireValue value(const RingPtr& ring) {
    skip_ws();
    char c = peek();
    if (c == '"') return text();
    if (c == '[') return list(ring);
    if (name_start(c)) {
      std::size_t save = pos_;
      std::string n = name();
      bool is_var = ring && ring->has_variable(n);
      if (!is_var) {
        skip_ws();
        if (peek() == '(') return tagged(n);
        if (n == "true") return Boolean{true};
        if (n == "false") return Boolean{false};
        if (n == "null") return Null{};
        if (!ring) return Symbol{n};
      }
      pos_ = save;
      return PolyV{poly_parse_prefix(src_, pos_, ring)};
    }
    if (ring) {
      if (c == '\0') fail("expected a value");
      return PolyV{poly_parse_prefix(src_, pos_, ring)};
    }
    if (c == '-' || digit(c)) return number();
    fail(c == '\0' ? "unexpected end of input, expected a value" : "expected a value");
  }

  WireValue text() {
    ++pos_;
    std::string out;
    for (;;) {
      if (pos_ >= src_.size()) fail("unterminated text, expected '\"'");
      char c = src_[pos_++];
      if (c == '"') break;
      if (c == '\\') {
        if (pos_ >= src_.size()) fail("unterminated escape");
        char e = src_[pos_++];
        if (e == '"' || e == '\\') {
          out += e;
        } else if (e == 'n') {
          out += '\n';
        } else {
          --pos_;
          fail("unknown escape, expected one of \\\" \\\\ \\n");
        }
        continue;
      }
      out += c;
    }
    return Text{std::move(out)};
  }

  WireValue list(const RingPtr& ring) {
    ++pos_;
    ListV out;
    skip_ws();
    if (peek() == ']') {
      ++pos_;
      return out;
    }
    for (;;) {
      out.items.push_back(value(ring));
      skip_ws();
      char c = peek();
      ++pos_;
      if (c == ']') break;
      if (c != ',') {
        --pos_;
        fail("expected ',' or ']'");
      }
    }
    return out;
  }

  WireValue tagged(const std::string& tag) {
    ++pos_;  // '('
    std::vector<WireValue> args;
    RingPtr ring;
    skip_ws();
    if (peek() == ')') {
      ++pos_;
    } else {
      for (;;) {
        args.push_back(value(ring));
        if (args.size() == 1 && args.front().is<RingV>()) ring = args.front().as<RingV>().ring;
        skip_ws();
        char c = peek();
        ++pos_;
        if (c == ')') break;
        if (c != ',') {
          --pos_;
          fail("expected ',' or ')'");
        }
      }
    }
    if (const auto* handler = registry_.find(tag)) return (*handler)(args);
    return TaggedV{tag, std::move(args)};
  }

  WireValue number() {
    std::size_t start = pos_;
    if (peek() == '-') ++pos_;
    if (!digit(peek())) fail("expected digits");
    while (digit(peek())) ++pos_;
    bool real = false;
    if (peek() == '/') {
      std::size_t num_end = pos_;
      ++pos_;
      if (!digit(peek())) fail("expected denominator digits");
      std::size_t den_start = pos_;
      while (digit(peek())) ++pos_;
      mpz_class num(std::string(src_.substr(start, num_end - start)));
      mpz_class den(std::string(src_.substr(den_start, pos_ - den_start)));
      if (den == 0) fail("zero denominator");
      return make_number(mpq_class(num, den));
    }
    if (peek() == '.') {
      real = true;
      ++pos_;
      if (!digit(peek())) fail("expected digits after '.'");
      while (digit(peek())) ++pos_;
    }
    if (peek() == 'e' || peek() == 'E') {
      real = true;
      ++pos_;
      if (peek() == '+' || peek() == '-') ++pos_;
      if (!digit(peek())) fail("expected exponent digits");
      while (digit(peek())) ++pos_;
    }
    std::string_view tok = src_.substr(start, pos_ - start);
    if (!real) return Integer{mpz_class(std::string(tok))};
    double d = 0.0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), d);
    if (res.ec == std::errc::result_out_of_range) {
      pos_ = start;
      fail("real literal out of range");
    }
    return Real{d};
  }

  std::string name() {
    std::size_t start = pos_;
    while (name_char(peek())) ++pos_;
    return std::string(src_.substr(start, pos_ - start));
  }

  char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(pos_, what); }

  std::string_view src_;
  const ParseRegistry& registry_;
  std::size_t pos_ = 0;
};

}  // namespace

WireValue parse(std::string_view source, const ParseRegistry& registry) {
  return WireParser(source, registry).document();
}

}  // namespace cas
