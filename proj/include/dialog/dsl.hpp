#pragma once

// Text format for specifications.
//
//   # comment
//   type X, Y                      types
//   unit 1                         terminal type
//   term f : X -> Y                term, `term pure f : X -> Y` marks it pure
//   pure f, g                      pure marks on existing terms
//   product P = X * Y with p q     binary product with its projections
//   identity i : X                 identity of X
//   collapse c : X                 collapsing X -> 1
//   compose h = g . f              h is g after f
//   tuple t = <f, g>
//   eq g . f = h                   equation; composites and tuples are elaborated
//   goal e1 = e2                   equation to be entailed (not part of the spec)
//   parameter type A               distinguished parameter type
//   parameter const a              distinguished constant a : 1 -> A
//
// Names are identifiers over [A-Za-z0-9_'] or double-quoted strings. The mark
// statements declare their term when it does not exist yet.

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dialog/decorate.hpp"
#include "dialog/expr.hpp"
#include "dialog/inference.hpp"
#include "dialog/morphism.hpp"
#include "dialog/spec.hpp"

namespace dialog {

struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
  bool operator==(const SourcePos&) const = default;
};

struct SpecDocument {
  DecoratedSpecification spec;
  bool decorated = false;  // a `pure` keyword occurs
  std::optional<std::string> parameter_type;
  std::optional<std::string> parameter_constant;
  std::vector<std::pair<Expr, Expr>> goals;
  std::map<std::string, SourcePos> positions;  // where each type and term was declared

  const Specification& base() const { return spec.base; }

  /// Equality of content; positions are ignored.
  bool same_content(const SpecDocument& o) const {
    return spec == o.spec && decorated == o.decorated && parameter_type == o.parameter_type &&
           parameter_constant == o.parameter_constant && goals == o.goals;
  }
};

namespace dsl {

inline const std::set<std::string>& keywords() {
  static const std::set<std::string> k{"type", "unit",    "term", "pure", "product",   "identity", "collapse",
                                       "compose", "tuple", "eq",  "goal", "parameter", "with",     "const"};
  return k;
}

/// Name as written in the DSL: plain when possible, else quoted.
inline std::string name(std::string_view n) {
  if (names::is_plain(n) && !keywords().count(std::string(n))) return std::string(n);
  std::string out = "\"";
  for (char c : n) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

struct Token {
  enum class Kind { ident, symbol, end };
  Kind kind = Kind::end;
  std::string text;
  bool quoted = false;
  SourcePos pos;
};

inline std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  SourcePos pos;
  std::size_t i = 0;
  auto advance = [&] {
    if (src[i] == '\n') {
      ++pos.line;
      pos.column = 1;
    } else {
      ++pos.column;
    }
    ++i;
  };
  auto fail = [&](const std::string& msg) {
    return Error(ErrorKind::syntax_error,
                 std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + msg);
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance();
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance();
      continue;
    }
    Token t;
    t.pos = pos;
    if (c == '"') {
      t.kind = Token::Kind::ident;
      t.quoted = true;
      advance();
      while (true) {
        if (i >= src.size() || src[i] == '\n') throw fail("unterminated quoted name");
        if (src[i] == '"') break;
        if (src[i] == '\\') {
          advance();
          if (i >= src.size()) throw fail("unterminated quoted name");
        }
        t.text += src[i];
        advance();
      }
      advance();
      if (t.text.empty()) throw Error(ErrorKind::syntax_error, std::to_string(t.pos.line) + ":" +
                                                                   std::to_string(t.pos.column) + ": empty name");
    } else if (names::is_ident_char(c) && c != '\'') {
      t.kind = Token::Kind::ident;
      while (i < src.size() && names::is_ident_char(src[i])) {
        t.text += src[i];
        advance();
      }
    } else if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      t.kind = Token::Kind::symbol;
      t.text = "->";
      advance();
      advance();
    } else if (std::string_view(":=.*<>,()[]").find(c) != std::string_view::npos) {
      t.kind = Token::Kind::symbol;
      t.text = std::string(1, c);
      advance();
    } else {
      throw fail(std::string("unexpected character '") + c + "'");
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.pos = pos;
  out.push_back(end);
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  SpecDocument parse() {
    while (peek().kind != Token::Kind::end) statement();
    if (auto v = validate(doc_.spec.base); !v.empty()) throw Error(ErrorKind::invalid_spec, v.front());
    doc_.spec = decoration_closure(doc_.spec).spec;
    if (doc_.parameter_constant) {
      const Specification& s = doc_.spec.base;
      if (!doc_.parameter_type) throw Error(ErrorKind::invalid_spec, "parameter constant without parameter type");
      if (!s.terminal || s.sig(*doc_.parameter_constant) != TermSig{*s.terminal, *doc_.parameter_type})
        throw Error(ErrorKind::invalid_spec, "parameter constant must be a term 1 -> " + *doc_.parameter_type);
    }
    return std::move(doc_);
  }

 private:
  std::vector<Token> toks_;
  std::size_t at_ = 0;
  SpecDocument doc_;

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(at_ + k, toks_.size() - 1)]; }
  const Token& next() { return toks_[std::min(at_++, toks_.size() - 1)]; }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    std::string found = t.kind == Token::Kind::end ? "end of input" : "'" + t.text + "'";
    throw Error(ErrorKind::syntax_error, std::to_string(t.pos.line) + ":" + std::to_string(t.pos.column) + ": " +
                                             msg + ", found " + found);
  }
  [[noreturn]] void semantic(const Token& t, ErrorKind k, const std::string& msg) const {
    throw Error(k, std::to_string(t.pos.line) + ":" + std::to_string(t.pos.column) + ": " + msg);
  }

  bool at_word(std::string_view w, std::size_t k = 0) const {
    const Token& t = peek(k);
    return t.kind == Token::Kind::ident && !t.quoted && t.text == w;
  }
  bool at_symbol(std::string_view s) const {
    return peek().kind == Token::Kind::symbol && peek().text == s;
  }
  void expect_symbol(std::string_view s) {
    if (!at_symbol(s)) fail(peek(), "expected '" + std::string(s) + "'");
    next();
  }
  void expect_word(std::string_view w) {
    if (!at_word(w)) fail(peek(), "expected '" + std::string(w) + "'");
    next();
  }
  const Token& ident(const char* what) {
    if (peek().kind != Token::Kind::ident) fail(peek(), std::string("expected ") + what);
    return next();
  }

  Specification& spec() { return doc_.spec.base; }

  void declare_type(const Token& t) {
    if (spec().name_used(t.text)) semantic(t, ErrorKind::duplicate_name, "name " + t.text + " is already declared");
    spec().add_type(t.text);
    doc_.positions[t.text] = t.pos;
  }
  const std::string& known_type(const Token& t) {
    if (!spec().has_type(t.text)) semantic(t, ErrorKind::invalid_spec, "unknown type " + t.text);
    return t.text;
  }
  const std::string& known_term(const Token& t) {
    if (!spec().has_term(t.text)) semantic(t, ErrorKind::invalid_spec, "unknown term " + t.text);
    return t.text;
  }
  // Declares `t : dom -> cod` or checks the signature of an existing term.
  void term_with(const Token& t, const std::string& dom, const std::string& cod) {
    if (spec().has_term(t.text)) {
      if (spec().sig(t.text) != TermSig{dom, cod})
        semantic(t, ErrorKind::invalid_spec, "term " + t.text + " is not " + dom + " -> " + cod);
      return;
    }
    if (spec().has_type(t.text)) semantic(t, ErrorKind::duplicate_name, "name " + t.text + " is already a type");
    spec().add_term(t.text, dom, cod);
    doc_.positions[t.text] = t.pos;
  }

  void statement() {
    const Token& kw = peek();
    if (kw.kind != Token::Kind::ident || kw.quoted) fail(kw, "expected a statement");
    const std::string w = kw.text;
    next();
    if (w == "type") {
      declare_type(ident("type name"));
      while (at_symbol(",")) {
        next();
        declare_type(ident("type name"));
      }
    } else if (w == "unit") {
      const Token& t = ident("type name");
      if (!spec().has_type(t.text)) declare_type(t);
      if (spec().terminal && *spec().terminal != t.text)
        semantic(t, ErrorKind::invalid_spec, "a terminal type is already declared");
      spec().terminal = t.text;
    } else if (w == "term") {
      bool pure = false;
      if (at_word("pure") && !(peek(1).kind == Token::Kind::symbol && peek(1).text == ":")) {
        next();
        pure = true;
      }
      const Token& f = ident("term name");
      if (spec().name_used(f.text)) semantic(f, ErrorKind::duplicate_name, "name " + f.text + " is already declared");
      expect_symbol(":");
      const std::string& dom = known_type(ident("type name"));
      expect_symbol("->");
      const std::string& cod = known_type(ident("type name"));
      term_with(f, dom, cod);
      if (pure) mark_pure(f);
    } else if (w == "pure") {
      mark_pure(ident("term name"));
      while (at_symbol(",")) {
        next();
        mark_pure(ident("term name"));
      }
    } else if (w == "product") {
      const Token& v = ident("type name");
      expect_symbol("=");
      const std::string& y1 = known_type(ident("type name"));
      expect_symbol("*");
      const std::string& y2 = known_type(ident("type name"));
      expect_word("with");
      const Token& p1 = ident("projection name");
      const Token& p2 = ident("projection name");
      if (!spec().has_type(v.text)) declare_type(v);
      if (spec().product_of(y1, y2)) semantic(v, ErrorKind::invalid_spec, "product of " + y1 + " and " + y2 + " already declared");
      term_with(p1, v.text, y1);
      term_with(p2, v.text, y2);
      spec().products[{y1, y2}] = {v.text, p1.text, p2.text};
    } else if (w == "identity" || w == "collapse") {
      const Token& f = ident("term name");
      expect_symbol(":");
      const std::string& x = known_type(ident("type name"));
      auto& marks = w == "identity" ? spec().identities : spec().collapsings;
      if (marks.count(x)) semantic(f, ErrorKind::invalid_spec, w + " of " + x + " already declared");
      if (w == "collapse" && !spec().terminal) semantic(f, ErrorKind::invalid_spec, "no terminal type declared");
      term_with(f, x, w == "identity" ? x : *spec().terminal);
      marks[x] = f.text;
    } else if (w == "compose") {
      const Token& h = ident("term name");
      expect_symbol("=");
      const std::string& g = known_term(ident("term name"));
      expect_symbol(".");
      const std::string& f = known_term(ident("term name"));
      if (spec().sig(f).cod != spec().sig(g).dom) semantic(h, ErrorKind::invalid_spec, g + " . " + f + " is ill-typed");
      if (spec().composite_of(f, g)) semantic(h, ErrorKind::invalid_spec, "composite " + g + " . " + f + " already declared");
      term_with(h, spec().sig(f).dom, spec().sig(g).cod);
      spec().compositions[{f, g}] = h.text;
    } else if (w == "tuple") {
      const Token& t = ident("term name");
      expect_symbol("=");
      expect_symbol("<");
      const std::string& f1 = known_term(ident("term name"));
      expect_symbol(",");
      const std::string& f2 = known_term(ident("term name"));
      expect_symbol(">");
      const TermSig& s1 = spec().sig(f1);
      const TermSig& s2 = spec().sig(f2);
      const ProductCone* p = spec().product_of(s1.cod, s2.cod);
      if (s1.dom != s2.dom || !p) semantic(t, ErrorKind::invalid_spec, "no product for the tuple <" + f1 + ", " + f2 + ">");
      if (spec().tuple_of(f1, f2)) semantic(t, ErrorKind::invalid_spec, "tuple <" + f1 + ", " + f2 + "> already declared");
      term_with(t, s1.dom, p->vertex);
      spec().tuples[{f1, f2}] = t.text;
    } else if (w == "eq" || w == "goal") {
      const Token& start = peek();
      Expr l = expr();
      expect_symbol("=");
      Expr r = expr();
      auto tl = type_of(spec(), l), tr = type_of(spec(), r);
      if (!tl || !tr) semantic(start, ErrorKind::invalid_spec, "ill-typed expression");
      if (*tl != *tr) semantic(start, ErrorKind::not_parallel, to_string(l) + " and " + to_string(r) + " are not parallel");
      if (w == "goal") {
        doc_.goals.emplace_back(std::move(l), std::move(r));
      } else {
        std::string a = materialize(spec(), l), b = materialize(spec(), r);
        if (a != b) spec().add_equation(a, b);
      }
    } else if (w == "parameter") {
      if (at_word("type")) {
        next();
        doc_.parameter_type = known_type(ident("type name"));
      } else if (at_word("const")) {
        next();
        doc_.parameter_constant = known_term(ident("term name"));
      } else {
        fail(peek(), "expected 'type' or 'const'");
      }
    } else {
      fail(kw, "unknown statement");
    }
  }

  void mark_pure(const Token& f) {
    known_term(f);
    doc_.decorated = true;
    doc_.spec.pure_terms.insert(f.text);
  }

  // expr := primary ('.' expr)?
  Expr expr() {
    Expr head = primary();
    if (!at_symbol(".")) return head;
    next();
    Expr rest = expr();
    return Expr::compose(std::move(rest), std::move(head));
  }

  Expr primary() {
    if (at_symbol("<")) {
      next();
      Expr a = expr();
      expect_symbol(",");
      Expr b = expr();
      expect_symbol(">");
      return Expr::tuple(std::move(a), std::move(b));
    }
    if (at_symbol("(")) {
      next();
      Expr e = expr();
      expect_symbol(")");
      return e;
    }
    const Token& t = ident("a term");
    if (!t.quoted && (t.text == "id" || t.text == "tu") && at_symbol("[")) {
      next();
      std::string x = known_type(ident("type name"));
      expect_symbol("]");
      return t.text == "id" ? Expr::identity(x) : Expr::collapse(x);
    }
    known_term(t);
    return Expr::atom(t.text);
  }
};

}  // namespace dsl

inline SpecDocument parse_document(std::string_view text) { return dsl::Parser(text).parse(); }

/// Expression in DSL syntax with DSL name quoting.
inline std::string dsl_expr(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::atom: return dsl::name(e.name);
    case Expr::Kind::identity: return "id[" + dsl::name(e.name) + "]";
    case Expr::Kind::collapse: return "tu[" + dsl::name(e.name) + "]";
    case Expr::Kind::tuple: return "<" + dsl_expr(e.args[0]) + ", " + dsl_expr(e.args[1]) + ">";
    case Expr::Kind::compose: {
      std::string left = dsl_expr(e.args[1]);
      if (e.args[1].kind == Expr::Kind::compose) left = "(" + left + ")";
      return left + " . " + dsl_expr(e.args[0]);
    }
  }
  return {};
}

/// Like `materialize`, recording each added feature as a rule application.
inline std::string materialize_traced(Specification& s, const Expr& e, std::vector<TraceEntry>& trace) {
  switch (e.kind) {
    case Expr::Kind::atom: return e.name;
    case Expr::Kind::identity:
      if (auto it = s.identities.find(e.name); it != s.identities.end()) return it->second;
      trace.push_back({"identity", {{"X", e.name}}, {materialize(s, e)}});
      return trace.back().generated.front();
    case Expr::Kind::collapse:
      if (auto it = s.collapsings.find(e.name); it != s.collapsings.end()) return it->second;
      trace.push_back({"collapsing", {{"X", e.name}}, {materialize(s, e)}});
      return trace.back().generated.front();
    case Expr::Kind::compose: {
      std::string f = materialize_traced(s, e.args[0], trace), g = materialize_traced(s, e.args[1], trace);
      if (auto h = s.composite_of(f, g)) return *h;
      TraceEntry t{"composition",
                   {{"X", s.sig(f).dom}, {"Y", s.sig(f).cod}, {"Z", s.sig(g).cod}, {"f", f}, {"g", g}},
                   {materialize(s, Expr::compose(Expr::atom(f), Expr::atom(g)))}};
      trace.push_back(std::move(t));
      return trace.back().generated.front();
    }
    case Expr::Kind::tuple: {
      std::string f1 = materialize_traced(s, e.args[0], trace), f2 = materialize_traced(s, e.args[1], trace);
      if (auto t = s.tuple_of(f1, f2)) return *t;
      TraceEntry t{"binary-tuple",
                   {{"X", s.sig(f1).dom}, {"Y1", s.sig(f1).cod}, {"Y2", s.sig(f2).cod}, {"f1", f1}, {"f2", f2}},
                   {materialize(s, Expr::tuple(Expr::atom(f1), Expr::atom(f2)))}};
      trace.push_back(std::move(t));
      return trace.back().generated.front();
    }
  }
  return {};
}

struct GoalExtension {
  SpecMorphism inclusion;           // the spec into the spec with the goals added
  std::vector<TraceEntry> trace;    // features built for the goal terms
  std::vector<NamePair> equations;  // the goal equations as term names
};

/// The inclusion whose entailment means that every goal is derivable.
inline GoalExtension goal_extension(const SpecDocument& doc) {
  GoalExtension g;
  Specification target = doc.base();
  for (const auto& [l, r] : doc.goals) {
    std::string a = materialize_traced(target, l, g.trace);
    std::string b = materialize_traced(target, r, g.trace);
    g.equations.emplace_back(a, b);
    if (a != b) target.add_equation(a, b);
  }
  g.inclusion = inclusion(doc.base(), target);
  return g;
}

/// Canonical text: types, terms, then features, each group in name order.
inline std::string dump(const SpecDocument& doc) {
  const Specification& s = doc.spec.base;
  using dsl::name;
  std::ostringstream o;
  for (const auto& t : s.types) o << "type " << name(t) << "\n";
  if (s.terminal) o << "unit " << name(*s.terminal) << "\n";
  for (const auto& [f, sig] : s.terms) {
    o << "term ";
    if (doc.decorated && doc.spec.is_pure(f)) o << "pure ";
    o << name(f) << " : " << name(sig.dom) << " -> " << name(sig.cod) << "\n";
  }
  for (const auto& [site, c] : s.products)
    o << "product " << name(c.vertex) << " = " << name(site.first) << " * " << name(site.second) << " with "
      << name(c.first) << " " << name(c.second) << "\n";
  for (const auto& [x, id] : s.identities) o << "identity " << name(id) << " : " << name(x) << "\n";
  for (const auto& [x, c] : s.collapsings) o << "collapse " << name(c) << " : " << name(x) << "\n";
  for (const auto& [site, h] : s.compositions)
    o << "compose " << name(h) << " = " << name(site.second) << " . " << name(site.first) << "\n";
  for (const auto& [site, t] : s.tuples)
    o << "tuple " << name(t) << " = <" << name(site.first) << ", " << name(site.second) << ">\n";
  for (const auto& [a, b] : s.equations) o << "eq " << name(a) << " = " << name(b) << "\n";
  for (const auto& [l, r] : doc.goals) o << "goal " << dsl_expr(l) << " = " << dsl_expr(r) << "\n";
  if (doc.parameter_type) o << "parameter type " << name(*doc.parameter_type) << "\n";
  if (doc.parameter_constant) o << "parameter const " << name(*doc.parameter_constant) << "\n";
  return o.str();
}

inline std::string dump(const Specification& s) {
  SpecDocument d;
  d.spec.base = s;
  return dump(d);
}

inline std::string dump(const DecoratedSpecification& s) {
  SpecDocument d;
  d.spec = s;
  d.decorated = true;
  return dump(d);
}

}  // namespace dialog
