#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "dialog/spec.hpp"

namespace dialog {

/// The points of the equational meta-sketch. Each one has an elementary
/// specification presenting the shape of its elements.
enum class ElementaryPoint {
  type,
  term,
  cons,
  comp,
  selid,
  binary_product,
  binary_cone,
  type_pair,
  binary_tuple,
  unit,
  terminal,
  collapsing,
};

inline constexpr std::array<ElementaryPoint, 12> all_elementary_points{
    ElementaryPoint::type,           ElementaryPoint::term,        ElementaryPoint::cons,
    ElementaryPoint::comp,           ElementaryPoint::selid,       ElementaryPoint::binary_product,
    ElementaryPoint::binary_cone,    ElementaryPoint::type_pair,   ElementaryPoint::binary_tuple,
    ElementaryPoint::unit,           ElementaryPoint::terminal,    ElementaryPoint::collapsing,
};

/// Point name as used in the meta-sketch.
inline std::string_view point_name(ElementaryPoint p) {
  switch (p) {
    case ElementaryPoint::type: return "Type";
    case ElementaryPoint::term: return "Term";
    case ElementaryPoint::cons: return "Cons";
    case ElementaryPoint::comp: return "Comp";
    case ElementaryPoint::selid: return "Selid";
    case ElementaryPoint::binary_product: return "2-Prod";
    case ElementaryPoint::binary_cone: return "2-Cone";
    case ElementaryPoint::type_pair: return "Type2";
    case ElementaryPoint::binary_tuple: return "Tuple2";
    case ElementaryPoint::unit: return "Unit";
    case ElementaryPoint::terminal: return "0-Prod";
    case ElementaryPoint::collapsing: return "Tuple0";
  }
  return "";
}

inline std::optional<ElementaryPoint> parse_point(std::string_view name) {
  for (auto p : all_elementary_points)
    if (point_name(p) == name) return p;
  return std::nullopt;
}

namespace elementary {

// Building blocks with the conventional names X, Y, Z, f, g, Y1, Y2, p1, p2.

inline Specification types(std::initializer_list<const char*> names) {
  Specification s;
  for (const char* n : names) s.add_type(n);
  return s;
}

inline void add_product(Specification& s, const std::string& y1, const std::string& y2,
                        const std::string& p1 = "p1", const std::string& p2 = "p2") {
  std::string v = names::product(y1, y2);
  s.add_type(v);
  s.add_term(p1, v, y1);
  s.add_term(p2, v, y2);
  s.products[{y1, y2}] = {v, p1, p2};
}

}  // namespace elementary

/// The elementary specification of a meta-sketch point: one generic element
/// of that point, with the least structure it needs.
inline Specification yoneda_elementary(ElementaryPoint p) {
  using namespace elementary;
  Specification s;
  switch (p) {
    case ElementaryPoint::type:
      return types({"X"});
    case ElementaryPoint::term:
      s = types({"X", "Y"});
      s.add_term("f", "X", "Y");
      return s;
    case ElementaryPoint::cons:
    case ElementaryPoint::comp:
      s = types({"X", "Y", "Z"});
      s.add_term("f", "X", "Y");
      s.add_term("g", "Y", "Z");
      if (p == ElementaryPoint::comp) {
        std::string h = names::composite("f", "g");
        s.add_term(h, "X", "Z");
        s.compositions[{"f", "g"}] = h;
      }
      return s;
    case ElementaryPoint::selid:
      s = types({"X"});
      s.add_term(names::identity("X"), "X", "X");
      s.identities["X"] = names::identity("X");
      return s;
    case ElementaryPoint::type_pair:
      return types({"Y1", "Y2"});
    case ElementaryPoint::binary_product:
      s = types({"Y1", "Y2"});
      add_product(s, "Y1", "Y2");
      return s;
    case ElementaryPoint::binary_cone:
      s = types({"X", "Y1", "Y2"});
      s.add_term("f1", "X", "Y1");
      s.add_term("f2", "X", "Y2");
      return s;
    case ElementaryPoint::binary_tuple: {
      s = types({"X", "Y1", "Y2"});
      s.add_term("f1", "X", "Y1");
      s.add_term("f2", "X", "Y2");
      add_product(s, "Y1", "Y2");
      std::string t = names::tuple("f1", "f2");
      std::string v = names::product("Y1", "Y2");
      s.add_term(t, "X", v);
      s.tuples[{"f1", "f2"}] = t;
      for (const auto& [pi, fi] : {std::pair{"p1", "f1"}, std::pair{"p2", "f2"}}) {
        std::string c = names::composite(t, pi);
        s.add_term(c, "X", s.sig(pi).cod);
        s.compositions[{t, pi}] = c;
        s.add_equation(c, fi);
      }
      return s;
    }
    case ElementaryPoint::unit:
      return s;
    case ElementaryPoint::terminal:
      s.add_type("1");
      s.terminal = "1";
      return s;
    case ElementaryPoint::collapsing:
      s = types({"X", "1"});
      s.terminal = "1";
      s.add_term(names::collapsing("X"), "X", "1");
      s.collapsings["X"] = names::collapsing("X");
      return s;
  }
  return s;
}

}  // namespace dialog
