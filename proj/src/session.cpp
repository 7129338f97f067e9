#include "cas/session.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <regex>
#include <set>

#include "cas/error.hpp"
#include "cas/groebner.hpp"
#include "cas/ideal.hpp"
#include "cas/intalg.hpp"
#include "cas/solver.hpp"

namespace cas {

// ---------------------------------------------------------------------------
// Statement syntax

namespace {

struct Node {
  enum class Kind { integer, real, text, name, call, list, neg, binary, boolean, null };

  Kind kind;
  std::size_t offset = 0;
  std::string text;  // literal, name, callee or operator
  std::vector<Node> kids;
};

struct Statement {
  enum class Kind { use, assign, expr };
  Kind kind = Kind::expr;
  std::string name;
  Node expr;
};

bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)); }

class StatementParser {
 public:
  explicit StatementParser(std::string_view src) : src_(src) {}

  Statement statement() {
    Statement st;
    skip_ws();
    if (pos_ == src_.size()) fail("empty statement");
    std::size_t save = pos_;
    if (name_start(peek())) {
      std::string n = name();
      std::size_t after_name = pos_;
      skip_ws();
      if (n == "use" && pos_ > after_name && name_start(peek())) {
        st.kind = Statement::Kind::use;
        st.name = name();
        finish();
        return st;
      }
      if (peek() == '=' && peek(1) != '=') {
        ++pos_;
        st.kind = Statement::Kind::assign;
        st.name = std::move(n);
        st.expr = expr();
        finish();
        return st;
      }
    }
    pos_ = save;
    st.expr = expr();
    finish();
    return st;
  }

 private:
  void finish() {
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected '" + std::string(1, peek()) + "'");
  }

  Node expr() {
    Node left = sum();
    skip_ws();
    if (peek() == '=' && peek(1) == '=') {
      std::size_t at = pos_;
      pos_ += 2;
      Node right = sum();
      return binary("==", at, std::move(left), std::move(right));
    }
    return left;
  }

  Node sum() {
    Node left = product();
    for (;;) {
      skip_ws();
      char c = peek();
      if (c != '+' && c != '-') return left;
      std::size_t at = pos_++;
      Node right = product();
      left = binary(std::string(1, c), at, std::move(left), std::move(right));
    }
  }

  Node product() {
    Node left = unary();
    for (;;) {
      skip_ws();
      char c = peek();
      std::size_t at = pos_;
      if (c == '*' || c == '/') {
        ++pos_;
        Node right = unary();
        left = binary(std::string(1, c), at, std::move(left), std::move(right));
      } else if (digit(c) || name_start(c) || c == '(' || c == '"') {
        Node right = power();
        left = binary("*", at, std::move(left), std::move(right));
      } else {
        return left;
      }
    }
  }

  Node unary() {
    skip_ws();
    if (peek() == '-') {
      Node n{Node::Kind::neg, pos_++, "-", {}};
      n.kids.push_back(unary());
      return n;
    }
    if (peek() == '+') {
      ++pos_;
      return unary();
    }
    return power();
  }

  Node power() {
    Node base = atom();
    skip_ws();
    if (peek() != '^') return base;
    std::size_t at = pos_++;
    Node exponent = unary();
    return binary("^", at, std::move(base), std::move(exponent));
  }

  Node atom() {
    skip_ws();
    std::size_t at = pos_;
    char c = peek();
    if (digit(c)) return number();
    if (c == '"') return text();
    if (c == '(') {
      ++pos_;
      Node inner = expr();
      expect(')');
      return inner;
    }
    if (c == '[') {
      ++pos_;
      Node list{Node::Kind::list, at, {}, {}};
      list.kids = sequence(']');
      return list;
    }
    if (name_start(c)) {
      std::string n = name();
      if (peek() == '(') {
        ++pos_;
        Node call{Node::Kind::call, at, std::move(n), {}};
        call.kids = sequence(')');
        return call;
      }
      if (n == "true" || n == "false") return Node{Node::Kind::boolean, at, n, {}};
      if (n == "null") return Node{Node::Kind::null, at, n, {}};
      return Node{Node::Kind::name, at, std::move(n), {}};
    }
    fail(c == '\0' ? "unexpected end of input" : "unexpected '" + std::string(1, c) + "'");
  }

  std::vector<Node> sequence(char close) {
    std::vector<Node> items;
    skip_ws();
    if (peek() == close) {
      ++pos_;
      return items;
    }
    for (;;) {
      items.push_back(expr());
      skip_ws();
      if (peek() == close) {
        ++pos_;
        return items;
      }
      if (peek() != ',') fail(std::string("expected ',' or '") + close + "'");
      ++pos_;
    }
  }

  Node number() {
    std::size_t start = pos_;
    while (digit(peek())) ++pos_;
    bool real = false;
    if (peek() == '.' && digit(peek(1))) {
      real = true;
      ++pos_;
      while (digit(peek())) ++pos_;
    }
    if ((peek() == 'e' || peek() == 'E') &&
        (digit(peek(1)) || ((peek(1) == '+' || peek(1) == '-') && digit(peek(2))))) {
      real = true;
      pos_ += digit(peek(1)) ? 1 : 2;
      while (digit(peek())) ++pos_;
    }
    return Node{real ? Node::Kind::real : Node::Kind::integer, start,
                std::string(src_.substr(start, pos_ - start)), {}};
  }

  Node text() {
    std::size_t start = pos_++;
    std::string out;
    for (;;) {
      if (pos_ >= src_.size()) fail("unterminated text");
      char c = src_[pos_++];
      if (c == '"') break;
      if (c == '\\') {
        char e = peek();
        if (e == '"' || e == '\\') {
          out += e;
        } else if (e == 'n') {
          out += '\n';
        } else {
          fail("unknown escape");
        }
        ++pos_;
        continue;
      }
      out += c;
    }
    return Node{Node::Kind::text, start, std::move(out), {}};
  }

  std::string name() {
    std::size_t start = pos_;
    while (name_char(peek())) ++pos_;
    return std::string(src_.substr(start, pos_ - start));
  }

  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  static Node binary(std::string op, std::size_t at, Node left, Node right) {
    Node n{Node::Kind::binary, at, std::move(op), {}};
    n.kids.push_back(std::move(left));
    n.kids.push_back(std::move(right));
    return n;
  }

  char peek(std::size_t ahead = 0) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& what) const { throw SyntaxError(pos_, what); }

  std::string_view src_;
  std::size_t pos_ = 0;
};

}  // namespace

// ---------------------------------------------------------------------------
// Evaluation

namespace {

struct Ctx {
  RingPtr ring;
  bool explicit_ring = false;
};

bool is_number(const WireValue& v) { return v.is<Integer>() || v.is<Rational>() || v.is<Real>(); }

mpq_class exact_of(const WireValue& v) {
  if (const auto* i = v.get_if<Integer>()) return mpq_class(i->value);
  return v.as<Rational>().value;
}

double real_of(const WireValue& v) {
  if (const auto* r = v.get_if<Real>()) return r->value;
  return exact_of(v).get_d();
}

[[noreturn]] void type_error(const std::string& what, const WireValue& v) {
  raise(Errc::invalid_argument, what + ", got " + type_tag(v));
}

}  // namespace

class Evaluator {
 public:
  Evaluator(Session& session) : s_(session) {}

  WireValue run(const Statement& st) {
    if (st.kind == Statement::Kind::use) {
      const WireValue* v = s_.lookup(st.name);
      if (!v) raise(Errc::unknown_identifier, "unknown name '" + st.name + "'");
      if (!v->is<RingV>()) type_error("use needs a ring", *v);
      s_.use_ring(v->as<RingV>().ring);
      return *v;
    }
    Ctx ctx{default_ring(st.expr), false};
    return eval(st.expr, ctx);
  }

 private:
  using Builtin = std::function<WireValue(Evaluator&, const Node&, const Ctx&)>;

  // -- default ring -------------------------------------------------------

  bool ring_first(const Node& call) const {
    if (call.kids.empty()) return false;
    const Node& first = call.kids.front();
    if (first.kind == Node::Kind::call && first.text == "ring") return true;
    if (first.kind == Node::Kind::name) {
      const WireValue* v = s_.lookup(first.text);
      return v && v->is<RingV>();
    }
    return false;
  }

  void free_names(const Node& n, std::set<std::string>& out) const {
    switch (n.kind) {
      case Node::Kind::name:
        if (!s_.lookup(n.text)) out.insert(n.text);
        return;
      case Node::Kind::call: {
        if (n.text == "ring" || n.text == "exists" || n.text == "ref") return;
        if (n.text == "eliminate") {
          if (!n.kids.empty()) free_names(n.kids.front(), out);
          return;
        }
        if (ring_first(n)) return;
        // f(g) with a ring variable f is a product; anything else is a call.
        bool product = n.kids.size() == 1 && !builtins().count(n.text) && !s_.lookup(n.text) &&
                       std::any_of(s_.rings().begin(), s_.rings().end(),
                                   [&](const RingPtr& r) { return r->has_variable(n.text); });
        if (product) out.insert(n.text);
        for (const auto& k : n.kids) free_names(k, out);
        return;
      }
      default:
        for (const auto& k : n.kids) free_names(k, out);
    }
  }

  RingPtr default_ring(const Node& expr) const {
    std::set<std::string> names;
    free_names(expr, names);
    const auto& rings = s_.rings();
    if (names.empty()) return rings.empty() ? nullptr : rings.front();
    for (const auto& r : rings) {
      if (std::all_of(names.begin(), names.end(), [&](const std::string& n) { return r->has_variable(n); })) {
        return r;
      }
    }
    std::vector<std::string> missing;
    for (const auto& n : names) {
      if (std::none_of(rings.begin(), rings.end(), [&](const RingPtr& r) { return r->has_variable(n); })) {
        missing.push_back(n);
      }
    }
    if (!missing.empty()) {
      raise(Errc::unknown_identifier,
            "unknown identifier '" + missing.front() + "': no binding and no ring in use contains it");
    }
    std::string list;
    for (const auto& n : names) list += (list.empty() ? "" : ", ") + n;
    raise(Errc::unknown_identifier, "no single ring in use contains all of " + list);
  }

  // -- expressions ----------------------------------------------------------

  WireValue eval(const Node& n, const Ctx& ctx) {
    switch (n.kind) {
      case Node::Kind::integer:
        return Integer{mpz_class(n.text)};
      case Node::Kind::real:
        return Real{std::stod(n.text)};
      case Node::Kind::text:
        return Text{n.text};
      case Node::Kind::boolean:
        return Boolean{n.text == "true"};
      case Node::Kind::null:
        return Null{};
      case Node::Kind::name:
        return resolve(n.text, ctx);
      case Node::Kind::list: {
        ListV out;
        for (const auto& k : n.kids) out.items.push_back(eval(k, ctx));
        return out;
      }
      case Node::Kind::neg:
        return negate(eval(n.kids[0], ctx));
      case Node::Kind::binary:
        return binary(n.text, eval(n.kids[0], ctx), eval(n.kids[1], ctx));
      case Node::Kind::call:
        return call(n, ctx);
    }
    raise(Errc::internal, "unhandled expression");
  }

  WireValue resolve(const std::string& name, const Ctx& ctx) {
    if (ctx.explicit_ring && ctx.ring->has_variable(name)) {
      return PolyV{Polynomial::variable(ctx.ring, *ctx.ring->index_of(name))};
    }
    if (const WireValue* v = s_.lookup(name)) return *v;
    if (ctx.ring && ctx.ring->has_variable(name)) {
      return PolyV{Polynomial::variable(ctx.ring, *ctx.ring->index_of(name))};
    }
    raise(Errc::unknown_identifier, "unknown identifier '" + name + "'");
  }

  WireValue call(const Node& n, const Ctx& ctx) {
    auto it = builtins().find(n.text);
    if (it != builtins().end()) return it->second(*this, n, ctx);
    // f(g) where f is a value and not a function: juxtaposed product.
    bool is_value = s_.lookup(n.text) || (ctx.ring && ctx.ring->has_variable(n.text));
    if (is_value && n.kids.size() == 1) {
      return binary("*", resolve(n.text, ctx), eval(n.kids[0], ctx));
    }
    raise(Errc::unknown_builtin, "unknown function '" + n.text + "'");
  }

  static WireValue negate(const WireValue& v) {
    if (const auto* i = v.get_if<Integer>()) return Integer{-i->value};
    if (const auto* q = v.get_if<Rational>()) return Rational{-q->value};
    if (const auto* r = v.get_if<Real>()) return Real{-r->value};
    if (const auto* p = v.get_if<PolyV>()) return PolyV{-p->poly};
    type_error("cannot negate this value", v);
  }

  static Polynomial coerce(const WireValue& v, const RingPtr& ring) {
    if (const auto* p = v.get_if<PolyV>()) {
      require_same_ring(ring, p->poly.ring());
      return p->poly;
    }
    if (v.is<Integer>() || v.is<Rational>()) return Polynomial::constant(ring, exact_of(v));
    if (const auto* t = v.get_if<Text>()) return poly_parse_text(t->value, ring);
    type_error("expected a polynomial", v);
  }

  static WireValue numeric(const std::string& op, const WireValue& a, const WireValue& b) {
    if (a.is<Real>() || b.is<Real>()) {
      double x = real_of(a);
      double y = real_of(b);
      if (op == "+") return Real{x + y};
      if (op == "-") return Real{x - y};
      if (op == "*") return Real{x * y};
      if (op == "/") return Real{x / y};
      if (op == "^") return Real{std::pow(x, y)};
      return Boolean{x == y};
    }
    mpq_class x = exact_of(a);
    mpq_class y = exact_of(b);
    if (op == "+") return make_number(x + y);
    if (op == "-") return make_number(x - y);
    if (op == "*") return make_number(x * y);
    if (op == "/") {
      if (y == 0) raise(Errc::invalid_argument, "division by zero");
      return make_number(x / y);
    }
    if (op == "^") {
      if (!b.is<Integer>()) raise(Errc::invalid_argument, "exponent must be an integer");
      const mpz_class& e = b.as<Integer>().value;
      if (abs(e) > 100000) raise(Errc::invalid_argument, "exponent too large");
      if (e < 0 && x == 0) raise(Errc::invalid_argument, "division by zero");
      mpq_class base = e < 0 ? mpq_class(1) / x : x;
      unsigned long k = mpz_class(abs(e)).get_ui();
      mpz_class num;
      mpz_class den;
      mpz_pow_ui(num.get_mpz_t(), base.get_num().get_mpz_t(), k);
      mpz_pow_ui(den.get_mpz_t(), base.get_den().get_mpz_t(), k);
      return make_number(mpq_class(num, den));
    }
    return Boolean{x == y};
  }

  static std::uint64_t exponent_of(const WireValue& e) {
    const auto* i = e.get_if<Integer>();
    if (!i) type_error("exponent must be an integer", e);
    if (i->value < 0) raise(Errc::negative_exponent, "negative exponent " + i->value.get_str());
    if (!i->value.fits_ulong_p() || i->value > 100000) raise(Errc::invalid_argument, "exponent too large");
    return i->value.get_ui();
  }

  WireValue binary(const std::string& op, const WireValue& a, const WireValue& b) {
    if (op == "==") return Boolean{equal(a, b)};
    if (is_number(a) && is_number(b)) return numeric(op, a, b);

    const auto* ia = a.get_if<IdealV>();
    const auto* ib = b.get_if<IdealV>();
    if (ia && ib && op == "+") return IdealV{ideal_sum(ia->ideal, ib->ideal)};
    if (ia && ib && op == "*") return IdealV{ideal_product(ia->ideal, ib->ideal)};
    if (ia && op == "^") {
      std::uint64_t k = exponent_of(b);
      Ideal acc(ia->ideal.ring(), {Polynomial::constant(ia->ideal.ring(), Coeff(1))});
      for (std::uint64_t i = 0; i < k; ++i) acc = ideal_product(acc, ia->ideal);
      return IdealV{acc};
    }

    const auto* pa = a.get_if<PolyV>();
    const auto* pb = b.get_if<PolyV>();
    if (pa || pb) {
      const RingPtr& ring = pa ? pa->poly.ring() : pb->poly.ring();
      if (op == "^") {
        if (!pa) type_error("exponent must be an integer", b);
        return PolyV{pa->poly.pow(exponent_of(b))};
      }
      Polynomial x = coerce(a, ring);
      Polynomial y = coerce(b, ring);
      if (op == "+") return PolyV{x + y};
      if (op == "-") return PolyV{x - y};
      if (op == "*") return PolyV{x * y};
      if (op == "/") return PolyV{exact_quotient(x, y)};
    }
    raise(Errc::invalid_argument, "cannot apply '" + op + "' to " + type_tag(a) + " and " + type_tag(b));
  }

  static Polynomial exact_quotient(const Polynomial& x, const Polynomial& y) {
    if (y.is_zero()) raise(Errc::invalid_argument, "division by zero");
    if (y.is_constant()) return x.scaled(y.ring()->field().inv(y.leading_coeff()));
    std::vector<Polynomial> divisor{y};
    Division d = divide(x, divisor);
    if (!d.remainder.is_zero()) {
      raise(Errc::invalid_argument, y.to_string() + " does not divide " + x.to_string());
    }
    return d.quotients.front();
  }

  static bool equal(const WireValue& a, const WireValue& b) {
    if (is_number(a) && is_number(b)) return numeric("==", a, b).as<Boolean>().value;
    const auto* ia = a.get_if<IdealV>();
    const auto* ib = b.get_if<IdealV>();
    if (ia && ib) return ideal_equals(ia->ideal, ib->ideal);
    const auto* pa = a.get_if<PolyV>();
    const auto* pb = b.get_if<PolyV>();
    if ((pa && (pb || is_number(b))) || (pb && is_number(a))) {
      const RingPtr& ring = pa ? pa->poly.ring() : pb->poly.ring();
      if (a.is<Real>() || b.is<Real>()) return false;
      return coerce(a, ring) == coerce(b, ring);
    }
    return a == b;
  }

  // -- builtin helpers ------------------------------------------------------

  struct Args {
    std::vector<WireValue> values;
    Ctx ctx;
    bool ring_first = false;
  };

  // Evaluates call arguments. A ring as first argument becomes the explicit
  // context of the remaining ones.
  Args eval_args(const Node& call, const Ctx& ctx) {
    Args out{{}, ctx, false};
    for (std::size_t i = 0; i < call.kids.size(); ++i) {
      out.values.push_back(eval(call.kids[i], out.ctx));
      if (i == 0 && out.values.front().is<RingV>()) {
        out.ctx = Ctx{out.values.front().as<RingV>().ring, true};
        out.ring_first = true;
        s_.use_ring(out.ctx.ring);
      }
    }
    return out;
  }

  static void arity(const Node& call, std::size_t lo, std::size_t hi, const std::string& usage) {
    if (call.kids.size() < lo || call.kids.size() > hi) {
      raise(Errc::invalid_argument, call.text + " expects " + usage);
    }
  }

  static RingPtr require_ring(const Ctx& ctx, const std::string& what) {
    if (!ctx.ring) raise(Errc::invalid_argument, what + " needs a ring; define one with ring(...) first");
    return ctx.ring;
  }

  static Ideal ideal_of(const WireValue& v) {
    if (const auto* i = v.get_if<IdealV>()) return i->ideal;
    if (const auto* g = v.get_if<GbV>()) return Ideal(g->gb.ring(), g->gb.generators());
    if (const auto* p = v.get_if<PolyV>()) return Ideal(p->poly.ring(), {p->poly});
    type_error("expected an ideal", v);
  }

  static std::vector<WireValue> flatten(std::span<const WireValue> values) {
    std::vector<WireValue> out;
    for (const auto& v : values) {
      if (const auto* l = v.get_if<ListV>()) {
        out.insert(out.end(), l->items.begin(), l->items.end());
      } else {
        out.push_back(v);
      }
    }
    return out;
  }

  // Generators of ideal(...), gb(...): either ring-first or inferred.
  std::pair<RingPtr, std::vector<Polynomial>> generators(const Node& call, const Ctx& ctx) {
    Args args = eval_args(call, ctx);
    std::span<const WireValue> rest(args.values);
    RingPtr ring;
    if (args.ring_first) {
      ring = args.ctx.ring;
      rest = rest.subspan(1);
    }
    auto items = flatten(rest);
    if (!ring) {
      for (const auto& v : items) {
        if (const auto* p = v.get_if<PolyV>()) {
          ring = p->poly.ring();
          break;
        }
      }
    }
    if (!ring) ring = require_ring(ctx, call.text);
    std::vector<Polynomial> gens;
    for (const auto& v : items) gens.push_back(coerce(v, ring));
    return {ring, std::move(gens)};
  }

  static std::vector<std::string> raw_names(std::span<const Node> nodes, Evaluator& self, const Ctx& ctx) {
    std::vector<std::string> names;
    for (const auto& n : nodes) {
      if (n.kind == Node::Kind::name) {
        names.push_back(n.text);
      } else if (n.kind == Node::Kind::list) {
        auto inner = raw_names(n.kids, self, ctx);
        names.insert(names.end(), inner.begin(), inner.end());
      } else {
        WireValue v = self.eval(n, ctx);
        for (const auto& item : flatten(std::span<const WireValue>(&v, 1))) {
          const auto* t = item.get_if<Text>();
          if (!t) type_error("expected names", item);
          names.push_back(t->value);
        }
      }
    }
    return names;
  }

  static CoefficientField field_of(const Node& n, Evaluator& self, const Ctx& ctx) {
    if (n.kind == Node::Kind::name) {
      if (n.text == "QQ" || n.text == "ZZ") return CoefficientField::from_tag(n.text);
      raise(Errc::unknown_field, "unknown coefficient field '" + n.text + "'");
    }
    if (n.kind == Node::Kind::call && n.text == "Zp" && n.kids.size() == 1) {
      WireValue p = self.eval(n.kids[0], ctx);
      const auto* i = p.get_if<Integer>();
      if (!i || i->value <= 1 || !i->value.fits_ulong_p()) {
        raise(Errc::non_prime_modulus, "Zp needs a prime modulus");
      }
      return CoefficientField::prime(i->value.get_ui());
    }
    raise(Errc::unknown_field, "unknown coefficient field");
  }

  // -- builtins -------------------------------------------------------------

  static const std::map<std::string, Builtin>& builtins() {
    static const std::map<std::string, Builtin> table = make_builtins();
    return table;
  }

  static std::map<std::string, Builtin> make_builtins() {
    std::map<std::string, Builtin> b;

    b["ring"] = [](Evaluator& e, const Node& call, const Ctx& ctx) -> WireValue {
      arity(call, 2, 3, "a field, a variable list and an optional order");
      CoefficientField field = field_of(call.kids[0], e, ctx);
      const Node& list = call.kids[1];
      if (list.kind != Node::Kind::list) raise(Errc::invalid_argument, "ring expects a variable list like [x,y]");
      std::vector<std::string> vars;
      for (const auto& v : list.kids) {
        if (v.kind == Node::Kind::name || v.kind == Node::Kind::text) {
          vars.push_back(v.text);
        } else {
          raise(Errc::invalid_variable, "ring variables must be names");
        }
      }
      MonomialOrder order = MonomialOrder::grevlex;
      if (call.kids.size() == 3) {
        if (call.kids[2].kind != Node::Kind::name) raise(Errc::invalid_argument, "ring order must be a name");
        order = parse_order(call.kids[2].text);
      }
      RingPtr ring = ring_new(std::move(vars), field, order);
      e.s_.use_ring(ring);
      return RingV{ring};
    };

    b["poly"] = [](Evaluator& e, const Node& call, const Ctx& ctx) -> WireValue {
      arity(call, 1, 2, "an optional ring and a polynomial");
      Args args = e.eval_args(call, ctx);
      if (args.ring_first) {
        if (args.values.size() != 2) raise(Errc::invalid_argument, "poly expects a ring and a polynomial");
        return PolyV{coerce(args.values[1], args.ctx.ring)};
      }
      if (call.kids.size() != 1) raise(Errc::invalid_argument, "poly expects a ring and a polynomial");
      if (const auto* p = args.values[0].get_if<PolyV>()) return *p;
      return PolyV{coerce(args.values[0], require_ring(ctx, "poly"))};
    };

    b["ideal"] = [](Evaluator& e, const Node& call, const Ctx& ctx) -> WireValue {
      auto [ring, gens] = e.generators(call, ctx);
      return IdealV{Ideal(ring, std::move(gens))};
    };

    b["gb"] = [](Evaluator& e, const Node& call, const Ctx& ctx) -> WireValue {
      if (call.kids.size() == 1) {
        WireValue v = e.eval(call.kids[0], ctx);
        if (const auto* g = v.get_if<GbV>()) return *g;
        if (v.is<IdealV>()) return GbV{v.as<IdealV>().ideal.groebner()};
      }
      auto [ring, gens] = e.generators(call, ctx);
      return GbV{buchberger(gens, ring)};
    };

    b["idealList"] = [](Evaluator& e, const Node& call, const Ctx& ctx) -> WireValue {
      Args args = e.eval_args(call, ctx);
      std::span<const WireValue> rest(args.values);
      if (args.ring_first) rest = rest.subspan(1);
      IdealListV out{args.ring_first ? args.ctx.ring : nullptr, {}};
      for (const auto& v : flatten(rest)) {
        Ideal i = ideal_of(v);
        if (!out.ring) out.ring = i.ring();
        require_same_ring(out.ring, i.ring());
        out.items.push_back(i);
      }
      if (!out.ring) raise(Errc::invalid_argument, "idealList needs at least one ideal");
      return out;
    };

    b["matrix"] = [](Evaluator& e, const Node& call, const Ctx& ctx) -> WireValue {
      Args args = e.eval_args(call, ctx);
      if (args.ring_first && args.values.size() == 2) {
        const auto* rows = args.values[1].get_if<ListV>();
        if (!rows || rows->items.empty()) raise(Errc::invalid_argument, "matrix expects a list of rows");
        PolyMatrixV out{args.ctx.ring, {}};
        for (const auto& row : rows->items) {
          const auto* cells = row.get_if<ListV>();
          if (!cells) type_error("matrix rows must be lists", row);
          std::vector<Polynomial> r;
          for (const auto& c : cells->items) r.push_back(coerce(c, out.ring));
          if (!out.rows.empty() && r.size() != out.rows.front().size()) {
            raise(Errc::invalid_argument, "ragged matrix rows");
          }
          out.rows.push_back(std::move(r));
        }
        if (out.rows.front().empty()) raise(Errc::invalid_argument, "empty matrix");
        return out;
      }
      if (args.values.size() != 1 || !args.values[0].is<ListV>()) {
        raise(Errc::invalid_argument, "matrix expects a list of integer rows");
      }
      std::vector<std::vector<mpz_class>> rows;
      for (const auto& row : args.values[0].as<ListV>().items) {
        const auto* cells = row.get_if<ListV>();
        if (!cells) type_error("matrix rows must be lists", row);
        std::vector<mpz_class> r;
        for (const auto& c : cells->items) {
          const auto* i = c.get_if<Integer>();
          if (!i) type_error("integer matrix entries must be integers", c);
          r.push_back(i->value);
        }
        rows.push_back(std::move(r));
      }
      return IntMatrixV{IntMatrix::from_rows(rows)};
    };

    b["list"] = [](Evaluator& e, const Node& call, const Ctx& ctx) -> WireValue {
      return ListV{e.eval_args(call, ctx).values};
    };

    b["radical"] = [](Evaluator& e, const Node& call, const Ctx& ctx) -> WireValue {
      arity(call, 1, 1, "an ideal");
      return IdealV{radical(ideal_of(e.eval(call.kids[0], ctx)))};
    };

    b["isRadical"] = [](Evaluator& e, const Node& call, const Ctx& ctx) -> WireValue {
      arity(call, 1, 1, "an ideal");
      return Boolean{is_radical(ideal_of(e.eval(call.kids[0], ctx)))};
    };

    b["saturate"] = [](Evaluator& e, const Node& call, const Ctx& ctx) -> WireValue {
      arity(call, 2, 2, "two ideals");
      return IdealV{saturate(ideal_of(e.eval(call.kids[0], ctx)), ideal_of(e.eval(call.kids[1], ctx)))};
    };

    b["quotient"] = [](Evaluator& e, const Node& call, const Ctx& ctx) -> WireValue {
      arity(call, 2, 2, "two ideals");
      return IdealV{quotient(ideal_of(e.eval(call.kids[0], ctx)), ideal_of(e.eval(call.kids[1], ctx)))};
    };

    b["dimension"] = [](Evaluator& e, const Node& call, const Ctx& ctx) -> WireValue {
      arity(call, 1, 1, "an ideal or a list of ideals");
      WireValue v = e.eval(call.kids[0], ctx);
      auto dim = [](const Ideal& i) -> WireValue { return Integer{mpz_class(dimension(i))}; };
      if (const auto* l = v.get_if<IdealListV>()) {
        ListV out;
        for (const auto& i : l->items) out.items.push_back(dim(i));
        return out;
      }
      if (const auto* l = v.get_if<ListV>()) {
        ListV out;
        for (const auto& i : l->items) out.items.push_back(dim(ideal_of(i)));
        return out;
      }
      return dim(ideal_of(v));
    };

    b["primaryDecomposition"] = [](Evaluator& e, const Node& call, const Ctx& ctx) -> WireValue {
      arity(call, 1, 1, "an ideal");
      Ideal i = ideal_of(e.eval(call.kids[0], ctx));
      return IdealListV{i.ring(), primary_decomposition(i)};
    };

    b["eliminate"] = [](Evaluator& e, const Node& call, const Ctx& ctx) -> WireValue {
      if (call.kids.empty()) raise(Errc::invalid_argument, "eliminate expects an ideal and variable names");
      Ideal i = ideal_of(e.eval(call.kids[0], ctx));
      auto names = raw_names(std::span<const Node>(call.kids).subspan(1), e, ctx);
      return IdealV{eliminate(i, names)};
    };

    b["snf"] = [](Evaluator& e, const Node& call, const Ctx& ctx) -> WireValue {
      arity(call, 1, 1, "an integer matrix");
      WireValue v = e.eval(call.kids[0], ctx);
      const auto* m = v.get_if<IntMatrixV>();
      if (!m) type_error("snf expects an integer matrix", v);
      return SnfV{snf(m->matrix)};
    };

    b["factorn"] = [](Evaluator& e, const Node& call, const Ctx& ctx) -> WireValue {
      arity(call, 1, 1, "a positive integer");
      WireValue v = e.eval(call.kids[0], ctx);
      const auto* i = v.get_if<Integer>();
      if (!i) type_error("factorn expects an integer", v);
      return FactorizationV{factor_n(i->value)};
    };

    b["solve"] = [](Evaluator& e, const Node& call, const Ctx& ctx) -> WireValue {
      arity(call, 1, 2, "an ideal and an optional tolerance");
      Ideal i = ideal_of(e.eval(call.kids[0], ctx));
      double tol = default_solve_tolerance;
      if (call.kids.size() == 2) {
        WireValue t = e.eval(call.kids[1], ctx);
        if (!is_number(t)) type_error("tolerance must be a number", t);
        tol = real_of(t);
      }
      return SolutionV{solve_zero_dim(i, tol)};
    };

    b["member"] = [](Evaluator& e, const Node& call, const Ctx& ctx) -> WireValue {
      arity(call, 2, 2, "a polynomial and an ideal");
      WireValue f = e.eval(call.kids[0], ctx);
      Ideal i = ideal_of(e.eval(call.kids[1], ctx));
      return Boolean{i.contains(coerce(f, i.ring()))};
    };

    b["reduce"] = [](Evaluator& e, const Node& call, const Ctx& ctx) -> WireValue {
      arity(call, 2, 2, "a polynomial and an ideal");
      WireValue f = e.eval(call.kids[0], ctx);
      Ideal i = ideal_of(e.eval(call.kids[1], ctx));
      return PolyV{reduce(coerce(f, i.ring()), i.groebner().generators())};
    };

    b["ls"] = [](Evaluator& e, const Node& call, const Ctx& ctx) -> WireValue {
      arity(call, 0, 1, "an optional boolean");
      bool all = false;
      if (call.kids.size() == 1) {
        WireValue v = e.eval(call.kids[0], ctx);
        if (!v.is<Boolean>()) type_error("ls expects a boolean", v);
        all = v.as<Boolean>().value;
      }
      ListV out;
      for (const auto& n : e.s_.ls(all)) out.items.push_back(Text{n});
      return out;
    };

    b["exists"] = [](Evaluator& e, const Node& call, const Ctx& ctx) -> WireValue {
      auto names = raw_names(call.kids, e, ctx);
      ListV out;
      for (bool b : e.s_.exists(names)) out.items.push_back(Boolean{b});
      return out;
    };

    b["getwd"] = [](Evaluator& e, const Node& call, const Ctx&) -> WireValue {
      arity(call, 0, 0, "no arguments");
      return Text{e.s_.workdir()};
    };

    b["vars"] = [](Evaluator& e, const Node& call, const Ctx&) -> WireValue {
      arity(call, 0, 0, "no arguments");
      ListV out;
      if (!e.s_.rings().empty()) {
        for (const auto& v : e.s_.rings().front()->variables()) out.items.push_back(Text{v});
      }
      return out;
    };

    b["ref"] = [](Evaluator& e, const Node& call, const Ctx& ctx) -> WireValue {
      arity(call, 1, 2, "a binding name and an optional type tag");
      WireValue name = e.eval(call.kids[0], ctx);
      const auto* t = name.get_if<Text>();
      if (!t) type_error("ref expects a name", name);
      const WireValue* v = e.s_.lookup(t->value);
      if (!v) raise(Errc::unknown_identifier, "unknown name '" + t->value + "'");
      return *v;
    };

    return b;
  }

  Session& s_;
};

// ---------------------------------------------------------------------------
// Session

Session::Session(std::string workdir) : workdir_(std::move(workdir)) {}

const WireValue* Session::lookup(std::string_view name) const {
  auto it = bindings_.find(name);
  return it == bindings_.end() ? nullptr : &it->second;
}

void Session::use_ring(const RingPtr& ring) {
  auto it = std::find_if(rings_.begin(), rings_.end(), [&](const RingPtr& r) { return same_ring(r, ring); });
  if (it != rings_.end()) rings_.erase(it);
  rings_.insert(rings_.begin(), ring);
  if (rings_.size() > 64) rings_.pop_back();
}

std::vector<std::string> Session::ls(bool all) const {
  static const std::regex history_name("^o[0-9]+$");
  std::vector<std::string> out;
  for (const auto& [name, value] : bindings_) {
    if (!all && (name.rfind("_int", 0) == 0 || std::regex_match(name, history_name))) continue;
    out.push_back(name);
  }
  return out;
}

std::vector<bool> Session::exists(std::span<const std::string> names) const {
  std::vector<bool> out;
  for (const auto& n : names) out.push_back(lookup(n) != nullptr);
  return out;
}

Response Session::eval(std::string_view source) {
  try {
    Statement st = StatementParser(source).statement();
    WireValue value = Evaluator(*this).run(st);
    std::string text = serialize(value);
    ++history_;
    bindings_["o" + std::to_string(history_)] = value;
    if (st.kind == Statement::Kind::assign) bindings_[st.name] = value;
    return Response::make(static_cast<int>(Status::ok), text);
  } catch (const SyntaxError& e) {
    return Response::make(static_cast<int>(Status::syntax_error), std::string("syntax error: ") + e.what());
  } catch (const Error& e) {
    Status s = e.code() == Errc::internal ? Status::internal_error : Status::eval_error;
    return Response::make(static_cast<int>(s), std::string(errc_name(e.code())) + ": " + e.what());
  } catch (const std::exception& e) {
    return Response::make(static_cast<int>(Status::internal_error), std::string("internal: ") + e.what());
  }
}

int serve_connection(int fd, Session& session) {
  for (;;) {
    Frame frame;
    try {
      frame = read_frame(fd);
    } catch (const Error&) {
      return 1;
    }
    switch (frame.kind) {
      case Frame::Kind::shutdown:
      case Frame::Kind::end_of_stream:
        return 0;
      case Frame::Kind::oversized:
        write_frame(fd, encode_response(Response::make(static_cast<int>(Status::internal_error),
                                                       "malformed frame: payload exceeds the size limit")));
        continue;
      case Frame::Kind::payload:
        break;
    }
    Response r = valid_utf8(frame.data)
                     ? session.eval(frame.data)
                     : Response::make(static_cast<int>(Status::internal_error), "malformed frame: invalid UTF-8");
    try {
      write_frame(fd, encode_response(r));
    } catch (const Error&) {
      return 1;
    }
  }
}

}  // namespace cas
