#pragma once

// Specifications built directly through the data model, independent of the
// DSL parser. Shared by the unit tests and the acceptance suite.

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dialog/decorate.hpp"
#include "dialog/expr.hpp"
#include "dialog/spec.hpp"

namespace corpus {

using dialog::Expr;
using dialog::Specification;

inline Expr at(const std::string& f) { return Expr::atom(f); }
/// g . f
inline Expr dot(Expr g, Expr f) { return Expr::compose(std::move(f), std::move(g)); }
inline Expr tup(Expr a, Expr b) { return Expr::tuple(std::move(a), std::move(b)); }

inline void equate(Specification& s, const Expr& l, const Expr& r) {
  std::string a = dialog::materialize(s, l);
  std::string b = dialog::materialize(s, r);
  if (a != b) s.add_equation(a, b);
}

inline void product(Specification& s, const std::string& v, const std::string& y1, const std::string& y2,
                    const std::string& p1, const std::string& p2) {
  s.add_type(v);
  s.add_term(p1, v, y1);
  s.add_term(p2, v, y2);
  s.products[{y1, y2}] = {v, p1, p2};
}

inline Specification empty() { return {}; }

inline Specification single_term() {
  Specification s;
  s.add_type("X");
  s.add_type("Y");
  s.add_term("f", "X", "Y");
  return s;
}

/// X with a constant e : 1 -> X and an endofunction s.
inline Specification endo() {
  Specification s;
  s.add_type("X");
  s.add_type("1");
  s.terminal = "1";
  s.add_term("e", "1", "X");
  s.add_term("s", "X", "X");
  return s;
}

inline Specification idem() {
  Specification s = endo();
  equate(s, dot(at("s"), at("s")), at("s"));
  return s;
}

inline Specification two_ops() {
  Specification s = endo();
  s.add_term("t", "X", "X");
  return s;
}

inline Specification monoid() {
  Specification s;
  s.add_type("M");
  s.add_type("1");
  s.terminal = "1";
  product(s, "P", "M", "M", "p1", "p2");
  product(s, "Q", "P", "M", "q1", "q2");
  s.add_term("m", "P", "M");
  s.add_term("e", "1", "M");
  Expr unit = dot(at("e"), Expr::collapse("M"));
  equate(s, dot(at("m"), tup(unit, Expr::identity("M"))), Expr::identity("M"));
  equate(s, dot(at("m"), tup(Expr::identity("M"), unit)), Expr::identity("M"));
  Expr left = dot(at("m"), tup(dot(at("m"), at("q1")), at("q2")));
  Expr right = dot(at("m"), tup(dot(at("p1"), at("q1")), dot(at("m"), tup(dot(at("p2"), at("q1")), at("q2")))));
  equate(s, left, right);
  return s;
}

/// A product with its swap map, which is an involution.
inline Specification product_heavy() {
  Specification s;
  s.add_type("A");
  s.add_type("B");
  product(s, "AB", "A", "B", "pa", "pb");
  product(s, "BA", "B", "A", "qb", "qa");
  std::string sw = dialog::materialize(s, tup(at("pb"), at("pa")));
  std::string back = dialog::materialize(s, tup(at("qa"), at("qb")));
  equate(s, dot(at(back), at(sw)), Expr::identity("AB"));
  return s;
}

inline Specification diagonal() {
  Specification s;
  s.add_type("X");
  product(s, "XX", "X", "X", "l", "r");
  s.add_term("d", "X", "XX");
  equate(s, dot(at("l"), at("d")), Expr::identity("X"));
  equate(s, dot(at("r"), at("d")), Expr::identity("X"));
  return s;
}

inline Specification terminal_only() {
  Specification s;
  s.add_type("1");
  s.terminal = "1";
  s.add_type("X");
  dialog::materialize(s, Expr::collapse("X"));
  return s;
}

inline Specification comp_chain() {
  Specification s;
  for (const char* t : {"A", "B", "C", "D"}) s.add_type(t);
  s.add_term("f", "A", "B");
  s.add_term("g", "B", "C");
  s.add_term("h", "C", "D");
  dialog::materialize(s, dot(at("h"), dot(at("g"), at("f"))));
  dialog::materialize(s, dot(dot(at("h"), at("g")), at("f")));
  return s;
}

inline Specification parallel_pair() {
  Specification s;
  s.add_type("X");
  s.add_type("Y");
  s.add_term("f", "X", "Y");
  s.add_term("g", "X", "Y");
  return s;
}

/// f, g : X -> Y with id_Y . f = g, so f = g is derivable.
inline Specification entail_positive() {
  Specification s = parallel_pair();
  equate(s, dot(Expr::identity("Y"), at("f")), at("g"));
  return s;
}

inline std::vector<std::pair<std::string, Specification>> all() {
  return {
      {"empty", empty()},           {"single_term", single_term()}, {"endo", endo()},
      {"idem", idem()},             {"two_ops", two_ops()},         {"monoid", monoid()},
      {"product_heavy", product_heavy()}, {"diagonal", diagonal()}, {"terminal_only", terminal_only()},
      {"comp_chain", comp_chain()}, {"parallel_pair", parallel_pair()}, {"entail_positive", entail_positive()},
  };
}

/// The decoration with the listed pure terms, closed under the decoration rules.
inline dialog::DecoratedSpecification decorated(const Specification& s, std::set<std::string> pure) {
  return dialog::decoration_closure({s, std::move(pure)}).spec;
}

/// Decorated specifications with general terms: the constant e is pure.
inline std::vector<std::pair<std::string, dialog::DecoratedSpecification>> decorated_all() {
  return {
      {"endo", decorated(endo(), {"e"})},
      {"idem", decorated(idem(), {"e"})},
      {"two_ops", decorated(two_ops(), {"e"})},
      {"monoid", decorated(monoid(), {"e"})},
      {"diagonal", decorated(diagonal(), {})},
      {"comp_chain", decorated(comp_chain(), {"f"})},
      {"product_heavy", decorated(product_heavy(), {})},
      {"single_term", decorated(single_term(), {})},
      {"terminal_only", dialog::purify(terminal_only())},
      {"entail_positive", decorated(entail_positive(), {"f"})},
  };
}

}  // namespace corpus
