#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dialog/spec.hpp"

namespace dialog {

/// A term expression over a specification: declared terms combined with
/// identities, composition, binary tupling and collapsing.
struct Expr {
  enum class Kind { atom, identity, compose, tuple, collapse };

  Kind kind = Kind::atom;
  std::string name;        // term name for atoms, type name for identity/collapse
  std::vector<Expr> args;  // compose: {f, g} meaning g∘f; tuple: {f1, f2}

  static Expr atom(std::string f) { return {Kind::atom, std::move(f), {}}; }
  static Expr identity(std::string x) { return {Kind::identity, std::move(x), {}}; }
  static Expr collapse(std::string x) { return {Kind::collapse, std::move(x), {}}; }
  /// g∘f
  static Expr compose(Expr f, Expr g) { return {Kind::compose, {}, {std::move(f), std::move(g)}}; }
  static Expr tuple(Expr f1, Expr f2) { return {Kind::tuple, {}, {std::move(f1), std::move(f2)}}; }

  bool operator==(const Expr&) const = default;
  auto operator<=>(const Expr&) const = default;

  /// Nesting level of composition and tupling.
  int depth() const {
    if (kind != Kind::compose && kind != Kind::tuple) return 0;
    return 1 + std::max(args[0].depth(), args[1].depth());
  }
};

/// DSL rendering; `parse_expr` in the DSL reads this back.
inline std::string to_string(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::atom: return names::quote(e.name);
    case Expr::Kind::identity: return "id[" + names::quote(e.name) + "]";
    case Expr::Kind::collapse: return "tu[" + names::quote(e.name) + "]";
    case Expr::Kind::tuple:
      return "<" + to_string(e.args[0]) + ", " + to_string(e.args[1]) + ">";
    case Expr::Kind::compose: {
      const Expr& f = e.args[0];
      const Expr& g = e.args[1];
      std::string left = to_string(g);
      if (g.kind == Expr::Kind::compose) left = "(" + left + ")";
      return left + " . " + to_string(f);
    }
  }
  return {};
}

/// Signature of `e` in `s`, or nullopt when ill-typed or referring to unknown names.
inline std::optional<TermSig> type_of(const Specification& s, const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::atom: {
      auto it = s.terms.find(e.name);
      if (it == s.terms.end()) return std::nullopt;
      return it->second;
    }
    case Expr::Kind::identity:
      if (!s.has_type(e.name)) return std::nullopt;
      return TermSig{e.name, e.name};
    case Expr::Kind::collapse:
      if (!s.has_type(e.name) || !s.terminal) return std::nullopt;
      return TermSig{e.name, *s.terminal};
    case Expr::Kind::compose: {
      auto f = type_of(s, e.args[0]);
      auto g = type_of(s, e.args[1]);
      if (!f || !g || f->cod != g->dom) return std::nullopt;
      return TermSig{f->dom, g->cod};
    }
    case Expr::Kind::tuple: {
      auto f1 = type_of(s, e.args[0]);
      auto f2 = type_of(s, e.args[1]);
      if (!f1 || !f2 || f1->dom != f2->dom) return std::nullopt;
      const ProductCone* p = s.product_of(f1->cod, f2->cod);
      if (!p) return std::nullopt;
      return TermSig{f1->dom, p->vertex};
    }
  }
  return std::nullopt;
}

/// Returns a term of `s` denoting `e`, adding marked identities, composites,
/// tuples and collapsings when the site is still free. Existing features are
/// reused, so materializing twice is a no-op.
inline std::string materialize(Specification& s, const Expr& e) {
  auto bad = [&]() -> Error {
    return Error(ErrorKind::invalid_spec, "cannot materialize ill-typed expression " + to_string(e));
  };
  switch (e.kind) {
    case Expr::Kind::atom:
      if (!s.has_term(e.name)) throw bad();
      return e.name;
    case Expr::Kind::identity: {
      if (!s.has_type(e.name)) throw bad();
      if (auto it = s.identities.find(e.name); it != s.identities.end()) return it->second;
      std::string id = s.fresh_term_name(names::identity(e.name));
      s.add_term(id, e.name, e.name);
      s.identities[e.name] = id;
      return id;
    }
    case Expr::Kind::collapse: {
      if (!s.has_type(e.name) || !s.terminal) throw bad();
      if (auto it = s.collapsings.find(e.name); it != s.collapsings.end()) return it->second;
      std::string c = s.fresh_term_name(names::collapsing(e.name));
      s.add_term(c, e.name, *s.terminal);
      s.collapsings[e.name] = c;
      return c;
    }
    case Expr::Kind::compose: {
      std::string f = materialize(s, e.args[0]);
      std::string g = materialize(s, e.args[1]);
      if (s.sig(f).cod != s.sig(g).dom) throw bad();
      if (auto h = s.composite_of(f, g)) return *h;
      std::string h = s.fresh_term_name(names::composite(f, g));
      s.add_term(h, s.sig(f).dom, s.sig(g).cod);
      s.compositions[{f, g}] = h;
      return h;
    }
    case Expr::Kind::tuple: {
      std::string f1 = materialize(s, e.args[0]);
      std::string f2 = materialize(s, e.args[1]);
      const auto& s1 = s.sig(f1);
      const auto& s2 = s.sig(f2);
      const ProductCone* p = s.product_of(s1.cod, s2.cod);
      if (s1.dom != s2.dom || !p) throw bad();
      if (auto t = s.tuple_of(f1, f2)) return *t;
      std::string t = s.fresh_term_name(names::tuple(f1, f2));
      s.add_term(t, s1.dom, p->vertex);
      s.tuples[{f1, f2}] = t;
      return t;
    }
  }
  throw bad();
}

}  // namespace dialog
