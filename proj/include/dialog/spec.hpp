#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dialog/error.hpp"
#include "dialog/names.hpp"

namespace dialog {

using NamePair = std::pair<std::string, std::string>;

struct TermSig {
  std::string dom;
  std::string cod;
  auto operator<=>(const TermSig&) const = default;
};

/// Vertex and projections of a potential binary product.
struct ProductCone {
  std::string vertex;
  std::string first;
  std::string second;
  auto operator<=>(const ProductCone&) const = default;
};

/// A finitely presented finite-product sketch: types, terms, the potential
/// features (identities, composites, binary products, tuples, terminal type,
/// collapsings) and equations between parallel terms.
///
/// Every potential feature is keyed by its site, so each site carries at most
/// one feature. Equations are unordered pairs stored with `first <= second`.
struct Specification {
  std::set<std::string> types;
  std::map<std::string, TermSig> terms;
  std::map<std::string, std::string> identities;    // X -> id_X
  std::map<NamePair, std::string> compositions;      // (f, g) -> g∘f
  std::map<NamePair, ProductCone> products;          // (Y1, Y2) -> Y1×Y2
  std::map<NamePair, std::string> tuples;            // (f1, f2) -> <f1,f2>
  std::optional<std::string> terminal;
  std::map<std::string, std::string> collapsings;    // X -> tu_X : X -> 1
  std::set<NamePair> equations;

  bool operator==(const Specification&) const = default;

  bool has_type(const std::string& t) const { return types.count(t) != 0; }
  bool has_term(const std::string& f) const { return terms.count(f) != 0; }

  const TermSig& sig(const std::string& f) const {
    auto it = terms.find(f);
    if (it == terms.end()) throw Error(ErrorKind::invalid_spec, "unknown term " + f);
    return it->second;
  }

  void add_type(const std::string& t) { types.insert(t); }

  void add_term(const std::string& f, const std::string& dom, const std::string& cod) {
    terms[f] = TermSig{dom, cod};
  }

  void add_equation(const std::string& a, const std::string& b) {
    equations.insert(a <= b ? NamePair{a, b} : NamePair{b, a});
  }

  bool has_equation(const std::string& a, const std::string& b) const {
    return equations.count(a <= b ? NamePair{a, b} : NamePair{b, a}) != 0;
  }

  std::optional<std::string> composite_of(const std::string& f, const std::string& g) const {
    auto it = compositions.find({f, g});
    if (it == compositions.end()) return std::nullopt;
    return it->second;
  }

  const ProductCone* product_of(const std::string& y1, const std::string& y2) const {
    auto it = products.find({y1, y2});
    return it == products.end() ? nullptr : &it->second;
  }

  std::optional<std::string> tuple_of(const std::string& f1, const std::string& f2) const {
    auto it = tuples.find({f1, f2});
    if (it == tuples.end()) return std::nullopt;
    return it->second;
  }

  /// Product records whose vertex is `p`.
  std::vector<std::pair<NamePair, ProductCone>> products_at(const std::string& p) const {
    std::vector<std::pair<NamePair, ProductCone>> out;
    for (const auto& [site, cone] : products)
      if (cone.vertex == p) out.emplace_back(site, cone);
    return out;
  }

  /// Types and term names together; generated names avoid all of them.
  std::set<std::string> used_names() const {
    std::set<std::string> used = types;
    for (const auto& [f, _] : terms) used.insert(f);
    return used;
  }

  bool name_used(const std::string& n) const { return types.count(n) || terms.count(n); }

  std::string fresh_term_name(std::string base) const {
    while (name_used(base)) base += '\'';
    return base;
  }
};

/// Empty list iff every structural invariant holds.
inline std::vector<std::string> validate(const Specification& s) {
  std::vector<std::string> out;
  auto type_ok = [&](const std::string& t) { return s.has_type(t); };
  auto check_term = [&](const std::string& what, const std::string& f,
                        const std::string& dom, const std::string& cod) {
    auto it = s.terms.find(f);
    if (it == s.terms.end()) {
      out.push_back(what + ": unknown term " + f);
      return;
    }
    if (it->second.dom != dom || it->second.cod != cod)
      out.push_back(what + ": term " + f + " is " + it->second.dom + " -> " + it->second.cod +
                    ", expected " + dom + " -> " + cod);
  };

  for (const auto& [f, sig] : s.terms) {
    if (!type_ok(sig.dom)) out.push_back("term " + f + ": unknown domain " + sig.dom);
    if (!type_ok(sig.cod)) out.push_back("term " + f + ": unknown codomain " + sig.cod);
  }
  for (const auto& [x, id] : s.identities) {
    if (!type_ok(x)) out.push_back("identity " + id + ": unknown type " + x);
    check_term("identity at " + x, id, x, x);
  }
  for (const auto& [site, h] : s.compositions) {
    const auto& [f, g] = site;
    if (!s.has_term(f) || !s.has_term(g)) {
      out.push_back("composition " + h + ": unknown component " + f + " or " + g);
      continue;
    }
    const auto& sf = s.sig(f);
    const auto& sg = s.sig(g);
    if (sf.cod != sg.dom) {
      out.push_back("composition " + h + ": " + f + " and " + g + " are not consecutive");
      continue;
    }
    check_term("composition " + g + "." + f, h, sf.dom, sg.cod);
  }
  for (const auto& [site, cone] : s.products) {
    const auto& [y1, y2] = site;
    if (!type_ok(y1) || !type_ok(y2) || !type_ok(cone.vertex)) {
      out.push_back("product " + cone.vertex + ": unknown type");
      continue;
    }
    check_term("product " + cone.vertex + " first projection", cone.first, cone.vertex, y1);
    check_term("product " + cone.vertex + " second projection", cone.second, cone.vertex, y2);
  }
  for (const auto& [site, t] : s.tuples) {
    const auto& [f1, f2] = site;
    if (!s.has_term(f1) || !s.has_term(f2)) {
      out.push_back("tuple " + t + ": unknown component " + f1 + " or " + f2);
      continue;
    }
    const auto& s1 = s.sig(f1);
    const auto& s2 = s.sig(f2);
    if (s1.dom != s2.dom) {
      out.push_back("tuple " + t + ": " + f1 + " and " + f2 + " have different domains");
      continue;
    }
    const ProductCone* p = s.product_of(s1.cod, s2.cod);
    if (!p) {
      out.push_back("tuple " + t + ": no product of " + s1.cod + " and " + s2.cod);
      continue;
    }
    check_term("tuple <" + f1 + "," + f2 + ">", t, s1.dom, p->vertex);
  }
  if (s.terminal && !type_ok(*s.terminal))
    out.push_back("terminal: unknown type " + *s.terminal);
  for (const auto& [x, c] : s.collapsings) {
    if (!type_ok(x)) out.push_back("collapsing " + c + ": unknown type " + x);
    if (!s.terminal) {
      out.push_back("collapsing " + c + ": no terminal type");
      continue;
    }
    check_term("collapsing at " + x, c, x, *s.terminal);
  }
  for (const auto& [a, b] : s.equations) {
    if (!s.has_term(a) || !s.has_term(b)) {
      out.push_back("equation " + a + " = " + b + ": unknown term");
      continue;
    }
    if (s.sig(a) != s.sig(b))
      out.push_back("equation " + a + " = " + b + ": terms are not parallel");
  }
  return out;
}

/// Number of potential features of each kind, used as an isomorphism invariant.
struct FeatureCounts {
  std::size_t types, terms, identities, compositions, products, tuples, terminal, collapsings,
      equations;
  auto operator<=>(const FeatureCounts&) const = default;
};

inline FeatureCounts counts(const Specification& s) {
  return {s.types.size(),        s.terms.size(),  s.identities.size(),
          s.compositions.size(), s.products.size(), s.tuples.size(),
          s.terminal ? 1u : 0u,  s.collapsings.size(), s.equations.size()};
}

}  // namespace dialog
