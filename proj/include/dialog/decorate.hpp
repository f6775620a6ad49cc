#pragma once

#include <set>
#include <string>
#include <vector>

#include "dialog/morphism.hpp"
#include "dialog/spec.hpp"

namespace dialog {

/// An equational specification with a wide pure part: all types, and the
/// terms listed in `pure_terms`. Every other term is general.
struct DecoratedSpecification {
  Specification base;
  std::set<std::string> pure_terms;

  bool operator==(const DecoratedSpecification&) const = default;

  bool is_pure(const std::string& f) const { return pure_terms.count(f) != 0; }
};

namespace detail {

// Terms that the decoration rules force to be pure, given the current pure set.
inline std::vector<std::string> forced_pure(const DecoratedSpecification& d) {
  std::set<std::string> out;
  const Specification& s = d.base;
  for (const auto& [_, id] : s.identities) out.insert(id);
  for (const auto& [_, c] : s.collapsings) out.insert(c);
  for (const auto& [_, cone] : s.products) {
    out.insert(cone.first);
    out.insert(cone.second);
  }
  for (const auto& [site, h] : s.compositions)
    if (d.is_pure(site.first) && d.is_pure(site.second)) out.insert(h);
  for (const auto& [site, t] : s.tuples)
    if (d.is_pure(site.first) && d.is_pure(site.second)) out.insert(t);
  return {out.begin(), out.end()};
}

}  // namespace detail

inline std::vector<std::string> validate_decorated(const DecoratedSpecification& d) {
  std::vector<std::string> out;
  for (const auto& f : d.pure_terms)
    if (!d.base.has_term(f)) out.push_back("pure mark on unknown term " + f);
  for (const auto& f : detail::forced_pure(d))
    if (!d.is_pure(f)) out.push_back("term " + f + " must be pure");
  return out;
}

struct DecorationClosure {
  DecoratedSpecification spec;
  std::vector<std::string> added;  // in the order the marks were forced
};

/// Least decoration above `d` satisfying the decoration rules.
inline DecorationClosure decoration_closure(const DecoratedSpecification& d) {
  DecorationClosure r{d, {}};
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& f : detail::forced_pure(r.spec))
      if (r.spec.pure_terms.insert(f).second) {
        r.added.push_back(f);
        changed = true;
      }
  }
  return r;
}

inline Specification undecorate(const DecoratedSpecification& d) { return d.base; }

inline DecoratedSpecification purify(const Specification& s) {
  DecoratedSpecification d{s, {}};
  for (const auto& [f, _] : s.terms) d.pure_terms.insert(f);
  return d;
}

/// The wide subspecification of pure terms, with the features and equations
/// all of whose members are pure.
inline Specification pure_part(const DecoratedSpecification& d) {
  const Specification& s = d.base;
  auto P = [&](const std::string& f) { return d.is_pure(f); };
  Specification out;
  out.types = s.types;
  out.terminal = s.terminal;
  for (const auto& [f, sig] : s.terms)
    if (P(f)) out.terms[f] = sig;
  for (const auto& [x, id] : s.identities)
    if (P(id)) out.identities[x] = id;
  for (const auto& [x, c] : s.collapsings)
    if (P(c)) out.collapsings[x] = c;
  for (const auto& [site, cone] : s.products)
    if (P(cone.first) && P(cone.second)) out.products[site] = cone;
  for (const auto& [site, h] : s.compositions)
    if (P(site.first) && P(site.second) && P(h)) out.compositions[site] = h;
  for (const auto& [site, t] : s.tuples)
    if (P(site.first) && P(site.second) && P(t)) out.tuples[site] = t;
  for (const auto& [a, b] : s.equations)
    if (P(a) && P(b)) out.equations.insert({a, b});
  return out;
}

/// Morphisms of decorated specifications send pure terms to pure terms;
/// general terms may become pure.
inline std::vector<std::string> validate_decorated_morphism(const SpecMorphism& u, const DecoratedSpecification& d1,
                                                            const DecoratedSpecification& d2) {
  std::vector<std::string> out;
  if (!(u.source == d1.base) || !(u.target == d2.base)) out.push_back("morphism does not go from d1 to d2");
  for (auto& v : validate_morphism(u)) out.push_back(std::move(v));
  if (!out.empty()) return out;
  for (const auto& f : d1.pure_terms)
    if (!d2.is_pure(u.term(f))) out.push_back("pure term " + f + " maps to general term " + u.term(f));
  return out;
}

}  // namespace dialog
