#pragma once

#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dialog/sketch.hpp"
#include "dialog/spec.hpp"

namespace dialog {

/// The meta-sketch whose set-valued realizations are the equational
/// specifications (without their equations).
inline LimitSketch equational_sketch() {
  LimitSketch sk;
  sk.points = {"Type", "Term", "Cons", "Comp", "Selid", "2-Prod", "2-Cone", "Type2", "Tuple2", "Unit", "0-Prod",
               "Tuple0"};
  const std::vector<std::array<const char*, 3>> arrows{
      {"dom", "Term", "Type"},       {"codom", "Term", "Type"},    {"fst", "Cons", "Term"},
      {"snd", "Cons", "Term"},       {"i", "Comp", "Cons"},        {"comp", "Comp", "Term"},
      {"i0", "Selid", "Type"},       {"selid", "Selid", "Term"},   {"j", "2-Prod", "Type2"},
      {"2-prod", "2-Prod", "2-Cone"}, {"k", "Tuple2", "2-Cone"},   {"2-base'", "Tuple2", "2-Prod"},
      {"2-tuple", "Tuple2", "Term"}, {"j0", "0-Prod", "Unit"},     {"0-prod", "0-Prod", "Type"},
      {"k0", "Tuple0", "Type"},      {"0-base'", "Tuple0", "0-Prod"}, {"0-tuple", "Tuple0", "Term"},
      {"b1", "Type2", "Type"},       {"b2", "Type2", "Type"},      {"c1", "2-Cone", "Term"},
      {"c2", "2-Cone", "Term"},      {"2-base", "2-Cone", "Type2"}, {"0-base", "Type", "Unit"},
      {"id", "Type", "Type"},
  };
  for (const auto& [a, s, t] : arrows) sk.add_arrow(a, s, t);
  sk.identities["Type"] = "id";

  // Cons: consecutive pairs, the pullback of codom and dom.
  sk.cones["Cons"] = {{"Term", "Term", "Type"},
                      {{0, 2, {"codom"}}, {1, 2, {"dom"}}},
                      {{"fst"}, {"snd"}, {"fst", "codom"}}};
  // Type2: pairs of types.
  sk.cones["Type2"] = {{"Type", "Type"}, {}, {{"b1"}, {"b2"}}};
  // 2-Cone: pairs of terms with a common domain.
  sk.cones["2-Cone"] = {{"Term", "Term", "Type"},
                        {{0, 2, {"dom"}}, {1, 2, {"dom"}}},
                        {{"c1"}, {"c2"}, {"c1", "dom"}}};
  sk.cones["Unit"] = {{}, {}, {}};

  sk.tuples["2-base"] = {"Type2", {{"c1", "codom"}, {"c2", "codom"}}};
  sk.tuples["0-base"] = {"Unit", {}};

  sk.monos = {"i", "i0", "j", "j0", "k", "k0"};

  sk.equalities = {
      {{"comp", "dom"}, {"i", "fst", "dom"}},
      {{"comp", "codom"}, {"i", "snd", "codom"}},
      {{"selid", "dom"}, {"i0"}},
      {{"selid", "codom"}, {"i0"}},
      {{"2-prod", "2-base"}, {"j"}},
      {{"k", "2-base"}, {"2-base'", "j"}},
      {{"2-tuple", "dom"}, {"k", "c1", "dom"}},
      {{"2-tuple", "codom"}, {"2-base'", "2-prod", "c1", "dom"}},
      {{"0-tuple", "dom"}, {"k0"}},
      {{"0-tuple", "codom"}, {"0-base'", "0-prod"}},
  };
  return sk;
}

/// The meta-sketch enlarged with a point Eq of equations between parallel terms.
inline LimitSketch equational_sketch_with_equations() {
  LimitSketch sk = equational_sketch();
  sk.points.insert("Eq");
  sk.add_arrow("lhs", "Eq", "Term");
  sk.add_arrow("rhs", "Eq", "Term");
  sk.equalities.push_back({{"lhs", "dom"}, {"rhs", "dom"}});
  sk.equalities.push_back({{"lhs", "codom"}, {"rhs", "codom"}});
  return sk;
}

/// Inclusion of the plain meta-sketch into the enlarged one.
inline SketchMorphism equational_sketch_inclusion() {
  SketchMorphism m{equational_sketch(), equational_sketch_with_equations(), {}, {}};
  for (const auto& p : m.source.points) m.points[p] = p;
  for (const auto& [a, _] : m.source.arrows) m.arrows[a] = a;
  return m;
}

namespace detail {

inline std::string pair_label(const std::string& a, const std::string& b) {
  return "(" + names::quote(a) + "," + names::quote(b) + ")";
}

}  // namespace detail

/// The realization of the enlarged meta-sketch described by `s`.
inline FiniteRealization spec_to_realization(const Specification& s) {
  FiniteRealization r;
  std::vector<std::string> types(s.types.begin(), s.types.end());
  std::vector<std::string> terms;
  for (const auto& [f, _] : s.terms) terms.push_back(f);
  std::map<std::string, std::size_t> type_ix, term_ix;
  for (std::size_t i = 0; i < types.size(); ++i) type_ix[types[i]] = i;
  for (std::size_t i = 0; i < terms.size(); ++i) term_ix[terms[i]] = i;

  r.sets["Type"] = types;
  r.sets["Term"] = terms;
  for (const auto& f : terms) {
    r.maps["dom"].push_back(type_ix.at(s.sig(f).dom));
    r.maps["codom"].push_back(type_ix.at(s.sig(f).cod));
  }
  r.maps["dom"].resize(terms.size());
  r.maps["codom"].resize(terms.size());
  r.maps["id"].resize(types.size());
  for (std::size_t i = 0; i < types.size(); ++i) r.maps["id"][i] = i;
  r.sets["Unit"] = {"*"};
  r.maps["0-base"].assign(types.size(), 0);

  auto& fst = r.maps["fst"];
  auto& snd = r.maps["snd"];
  std::map<NamePair, std::size_t> cons_ix;
  r.sets["Cons"];
  for (const auto& f : terms)
    for (const auto& g : terms)
      if (s.sig(f).cod == s.sig(g).dom) {
        cons_ix[{f, g}] = r.sets["Cons"].size();
        r.sets["Cons"].push_back(detail::pair_label(f, g));
        fst.push_back(term_ix.at(f));
        snd.push_back(term_ix.at(g));
      }

  r.sets["Comp"];
  r.maps["i"];
  r.maps["comp"];
  for (const auto& [site, h] : s.compositions) {
    r.sets["Comp"].push_back(detail::pair_label(site.first, site.second));
    r.maps["i"].push_back(cons_ix.at(site));
    r.maps["comp"].push_back(term_ix.at(h));
  }

  r.sets["Selid"];
  r.maps["i0"];
  r.maps["selid"];
  for (const auto& [x, id] : s.identities) {
    r.sets["Selid"].push_back(x);
    r.maps["i0"].push_back(type_ix.at(x));
    r.maps["selid"].push_back(term_ix.at(id));
  }

  std::map<NamePair, std::size_t> type2_ix;
  r.sets["Type2"];
  for (const auto& a : types)
    for (const auto& b : types) {
      type2_ix[{a, b}] = r.sets["Type2"].size();
      r.sets["Type2"].push_back(detail::pair_label(a, b));
      r.maps["b1"].push_back(type_ix.at(a));
      r.maps["b2"].push_back(type_ix.at(b));
    }
  r.maps["b1"];
  r.maps["b2"];

  std::map<NamePair, std::size_t> cone_ix;
  r.sets["2-Cone"];
  r.maps["c1"];
  r.maps["c2"];
  r.maps["2-base"];
  for (const auto& f : terms)
    for (const auto& g : terms)
      if (s.sig(f).dom == s.sig(g).dom) {
        cone_ix[{f, g}] = r.sets["2-Cone"].size();
        r.sets["2-Cone"].push_back(detail::pair_label(f, g));
        r.maps["c1"].push_back(term_ix.at(f));
        r.maps["c2"].push_back(term_ix.at(g));
        r.maps["2-base"].push_back(type2_ix.at({s.sig(f).cod, s.sig(g).cod}));
      }

  std::map<NamePair, std::size_t> prod_ix;
  r.sets["2-Prod"];
  r.maps["j"];
  r.maps["2-prod"];
  for (const auto& [site, cone] : s.products) {
    prod_ix[site] = r.sets["2-Prod"].size();
    r.sets["2-Prod"].push_back(detail::pair_label(site.first, site.second));
    r.maps["j"].push_back(type2_ix.at(site));
    r.maps["2-prod"].push_back(cone_ix.at({cone.first, cone.second}));
  }

  r.sets["Tuple2"];
  r.maps["k"];
  r.maps["2-base'"];
  r.maps["2-tuple"];
  for (const auto& [site, t] : s.tuples) {
    r.sets["Tuple2"].push_back(detail::pair_label(site.first, site.second));
    r.maps["k"].push_back(cone_ix.at(site));
    r.maps["2-base'"].push_back(prod_ix.at({s.sig(site.first).cod, s.sig(site.second).cod}));
    r.maps["2-tuple"].push_back(term_ix.at(t));
  }

  r.sets["0-Prod"];
  r.maps["j0"];
  r.maps["0-prod"];
  if (s.terminal) {
    r.sets["0-Prod"].push_back(*s.terminal);
    r.maps["j0"].push_back(0);
    r.maps["0-prod"].push_back(type_ix.at(*s.terminal));
  }

  r.sets["Tuple0"];
  r.maps["k0"];
  r.maps["0-base'"];
  r.maps["0-tuple"];
  for (const auto& [x, c] : s.collapsings) {
    r.sets["Tuple0"].push_back(x);
    r.maps["k0"].push_back(type_ix.at(x));
    r.maps["0-base'"].push_back(0);
    r.maps["0-tuple"].push_back(term_ix.at(c));
  }

  r.sets["Eq"];
  r.maps["lhs"];
  r.maps["rhs"];
  for (const auto& [a, b] : s.equations) {
    r.sets["Eq"].push_back(detail::pair_label(a, b));
    r.maps["lhs"].push_back(term_ix.at(a));
    r.maps["rhs"].push_back(term_ix.at(b));
  }
  return r;
}

/// Reads a specification back from a realization of the enlarged meta-sketch.
/// A realization of the plain meta-sketch (no Eq point) is read with no equations.
inline Specification realization_to_spec(const FiniteRealization& r) {
  FiniteRealization full = r;
  if (!full.sets.count("Eq")) {
    full.sets["Eq"] = {};
    full.maps["lhs"] = {};
    full.maps["rhs"] = {};
  }
  std::vector<std::string> problems;
  try {
    problems = check_realization(equational_sketch_with_equations(), full);
  } catch (const Error& e) {
    throw Error(ErrorKind::invalid_realization, e.what());
  }
  if (!problems.empty()) throw Error(ErrorKind::invalid_realization, problems.front());

  const auto& types = full.sets.at("Type");
  const auto& terms = full.sets.at("Term");
  if (std::set<std::string>(types.begin(), types.end()).size() != types.size() ||
      std::set<std::string>(terms.begin(), terms.end()).size() != terms.size())
    throw Error(ErrorKind::invalid_realization, "type or term labels are not distinct");
  auto map = [&](const char* a, std::size_t x) { return full.maps.at(a).at(x); };

  Specification s;
  for (const auto& t : types) s.add_type(t);
  for (std::size_t f = 0; f < terms.size(); ++f) s.add_term(terms[f], types[map("dom", f)], types[map("codom", f)]);
  for (std::size_t e = 0; e < full.size("Selid"); ++e) s.identities[types[map("i0", e)]] = terms[map("selid", e)];
  for (std::size_t e = 0; e < full.size("Comp"); ++e) {
    std::size_t c = map("i", e);
    s.compositions[{terms[map("fst", c)], terms[map("snd", c)]}] = terms[map("comp", e)];
  }
  for (std::size_t e = 0; e < full.size("2-Prod"); ++e) {
    std::size_t site = map("j", e), cone = map("2-prod", e);
    std::size_t p1 = map("c1", cone), p2 = map("c2", cone);
    s.products[{types[map("b1", site)], types[map("b2", site)]}] = {types[map("dom", p1)], terms[p1], terms[p2]};
  }
  for (std::size_t e = 0; e < full.size("Tuple2"); ++e) {
    std::size_t cone = map("k", e);
    s.tuples[{terms[map("c1", cone)], terms[map("c2", cone)]}] = terms[map("2-tuple", e)];
  }
  if (full.size("0-Prod") > 0) s.terminal = types[map("0-prod", 0)];
  for (std::size_t e = 0; e < full.size("Tuple0"); ++e) s.collapsings[types[map("k0", e)]] = terms[map("0-tuple", e)];
  for (std::size_t e = 0; e < full.size("Eq"); ++e)
    s.add_equation(terms[map("lhs", e)], terms[map("rhs", e)]);
  return s;
}

}  // namespace dialog
