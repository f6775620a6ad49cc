#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dialog/egraph.hpp"
#include "dialog/elementary.hpp"
#include "dialog/models.hpp"
#include "dialog/morphism.hpp"

namespace dialog {

enum class RuleTag {
  composition,
  identity,
  binary_product,
  binary_tuple,
  terminal_type,
  collapsing,
  reflexivity,
  symmetry,
  transitivity,
  congruence_composition,
  congruence_tuple,
};

inline constexpr std::array<RuleTag, 11> all_rules{
    RuleTag::composition,  RuleTag::identity,   RuleTag::binary_product,         RuleTag::binary_tuple,
    RuleTag::terminal_type, RuleTag::collapsing, RuleTag::reflexivity,           RuleTag::symmetry,
    RuleTag::transitivity, RuleTag::congruence_composition, RuleTag::congruence_tuple,
};

inline std::string_view rule_name(RuleTag r) {
  switch (r) {
    case RuleTag::composition: return "composition";
    case RuleTag::identity: return "identity";
    case RuleTag::binary_product: return "binary-product";
    case RuleTag::binary_tuple: return "binary-tuple";
    case RuleTag::terminal_type: return "terminal-type";
    case RuleTag::collapsing: return "collapsing";
    case RuleTag::reflexivity: return "reflexivity";
    case RuleTag::symmetry: return "symmetry";
    case RuleTag::transitivity: return "transitivity";
    case RuleTag::congruence_composition: return "congruence-of-composition";
    case RuleTag::congruence_tuple: return "congruence-of-tuple";
  }
  return "";
}

/// A cospan: `numerator` and `denominator` share their target, and the
/// denominator is an entailment.
struct Fraction {
  SpecMorphism numerator;
  SpecMorphism denominator;
};

/// An inference rule read as a fraction of elementary specifications:
/// the hypothesis embeds into `fraction.denominator.target` by an entailment
/// and the conclusion maps there by the numerator.
struct InferenceRule {
  RuleTag tag;
  Fraction fraction;

  const Specification& hypothesis() const { return fraction.denominator.source; }
  const Specification& conclusion() const { return fraction.numerator.source; }
  const Specification& extended() const { return fraction.denominator.target; }
};

namespace detail {

// X, Y and two parallel terms u = v.
inline Specification equation_spec() {
  Specification s;
  s.add_type("X");
  s.add_type("Y");
  s.add_term("u", "X", "Y");
  s.add_term("v", "X", "Y");
  s.add_equation("u", "v");
  return s;
}

inline SpecMorphism morphism(const Specification& src, const Specification& tgt, NameMap types, NameMap terms) {
  SpecMorphism m{src, tgt, std::move(types), std::move(terms)};
  for (const auto& t : src.types) m.types.try_emplace(t, t);
  for (const auto& [f, _] : src.terms) m.terms.try_emplace(f, f);
  return m;
}

}  // namespace detail

inline InferenceRule inference_rule(RuleTag tag) {
  using detail::morphism;
  auto frac = [&](const Specification& h, const Specification& ext, const Specification& c, NameMap ct,
                  NameMap cf) {
    return InferenceRule{tag, Fraction{morphism(c, ext, std::move(ct), std::move(cf)), morphism(h, ext, {}, {})}};
  };
  Specification term = yoneda_elementary(ElementaryPoint::term);
  Specification eq = detail::equation_spec();
  switch (tag) {
    case RuleTag::composition:
      return frac(yoneda_elementary(ElementaryPoint::cons), yoneda_elementary(ElementaryPoint::comp), term,
                  {{"Y", "Z"}}, {{"f", "g.f"}});
    case RuleTag::identity:
      return frac(yoneda_elementary(ElementaryPoint::type), yoneda_elementary(ElementaryPoint::selid), term,
                  {{"Y", "X"}}, {{"f", "id_X"}});
    case RuleTag::binary_product:
      return frac(yoneda_elementary(ElementaryPoint::type_pair), yoneda_elementary(ElementaryPoint::binary_product),
                  yoneda_elementary(ElementaryPoint::binary_cone), {{"X", "Y1*Y2"}}, {{"f1", "p1"}, {"f2", "p2"}});
    case RuleTag::binary_tuple:
      return frac(yoneda_elementary(ElementaryPoint::binary_cone), yoneda_elementary(ElementaryPoint::binary_tuple),
                  term, {{"Y", "Y1*Y2"}}, {{"f", "<f1,f2>"}});
    case RuleTag::terminal_type:
      return frac(yoneda_elementary(ElementaryPoint::unit), yoneda_elementary(ElementaryPoint::terminal),
                  yoneda_elementary(ElementaryPoint::type), {{"X", "1"}}, {});
    case RuleTag::collapsing:
      return frac(yoneda_elementary(ElementaryPoint::type), yoneda_elementary(ElementaryPoint::collapsing), term,
                  {{"Y", "1"}}, {{"f", "tu_X"}});
    case RuleTag::reflexivity:
      return frac(term, term, eq, {}, {{"u", "f"}, {"v", "f"}});
    case RuleTag::symmetry:
      return frac(eq, eq, eq, {}, {{"u", "v"}, {"v", "u"}});
    case RuleTag::transitivity: {
      Specification h = eq;
      h.add_term("w", "X", "Y");
      h.add_equation("v", "w");
      Specification ext = h;
      ext.add_equation("u", "w");
      return frac(h, ext, eq, {}, {{"u", "u"}, {"v", "w"}});
    }
    case RuleTag::congruence_composition: {
      Specification h;
      for (const char* t : {"X", "Y", "Z"}) h.add_type(t);
      h.add_term("f1", "X", "Y");
      h.add_term("f2", "X", "Y");
      h.add_term("g1", "Y", "Z");
      h.add_term("g2", "Y", "Z");
      h.add_term("h1", "X", "Z");
      h.add_term("h2", "X", "Z");
      h.compositions[{"f1", "g1"}] = "h1";
      h.compositions[{"f2", "g2"}] = "h2";
      h.add_equation("f1", "f2");
      h.add_equation("g1", "g2");
      Specification ext = h;
      ext.add_equation("h1", "h2");
      return frac(h, ext, eq, {{"Y", "Z"}}, {{"u", "h1"}, {"v", "h2"}});
    }
    case RuleTag::congruence_tuple: {
      Specification h;
      for (const char* t : {"X", "Y1", "Y2"}) h.add_type(t);
      elementary::add_product(h, "Y1", "Y2");
      h.add_term("f1", "X", "Y1");
      h.add_term("f2", "X", "Y1");
      h.add_term("g1", "X", "Y2");
      h.add_term("g2", "X", "Y2");
      h.add_term("t1", "X", "Y1*Y2");
      h.add_term("t2", "X", "Y1*Y2");
      h.tuples[{"f1", "g1"}] = "t1";
      h.tuples[{"f2", "g2"}] = "t2";
      h.add_equation("f1", "f2");
      h.add_equation("g1", "g2");
      Specification ext = h;
      ext.add_equation("t1", "t2");
      return frac(h, ext, eq, {{"Y", "Y1*Y2"}}, {{"u", "t1"}, {"v", "t2"}});
    }
  }
  throw Error(ErrorKind::invalid_spec, "unknown rule");
}

/// Renames the types and terms of `s` outside `keep` after their structural
/// role (composite, tuple, identity, collapsing, product, projection, terminal).
inline SpecMorphism structural_rename(const Specification& s, const std::set<std::string>& keep_types,
                                      const std::set<std::string>& keep_terms) {
  NameMap tmap, fmap;
  std::set<std::string> used;
  for (const auto& t : keep_types) used.insert(t);
  for (const auto& f : keep_terms) used.insert(f);
  auto T = [&](const std::string& t) -> std::optional<std::string> {
    if (keep_types.count(t)) return t;
    auto it = tmap.find(t);
    if (it == tmap.end()) return std::nullopt;
    return it->second;
  };
  auto F = [&](const std::string& f) -> std::optional<std::string> {
    if (keep_terms.count(f)) return f;
    auto it = fmap.find(f);
    if (it == fmap.end()) return std::nullopt;
    return it->second;
  };
  auto assign = [&](NameMap& map, const std::string& old, const std::string& base) {
    std::string n = names::fresh(base, used);
    used.insert(n);
    map[old] = n;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& t : s.types) {
      if (T(t)) continue;
      if (s.terminal && *s.terminal == t) {
        assign(tmap, t, "1");
        changed = true;
        continue;
      }
      for (const auto& [site, cone] : s.products_at(t)) {
        auto a = T(site.first), b = T(site.second);
        if (a && b) {
          assign(tmap, t, names::product(*a, *b));
          changed = true;
          break;
        }
      }
    }
    for (const auto& [site, cone] : s.products) {
      auto v = T(cone.vertex);
      if (!v) continue;
      if (!F(cone.first)) { assign(fmap, cone.first, "p1_" + names::wrap(*v)); changed = true; }
      if (!F(cone.second)) { assign(fmap, cone.second, "p2_" + names::wrap(*v)); changed = true; }
    }
    for (const auto& [x, id] : s.identities)
      if (!F(id) && T(x)) { assign(fmap, id, names::identity(*T(x))); changed = true; }
    for (const auto& [x, c] : s.collapsings)
      if (!F(c) && T(x)) { assign(fmap, c, names::collapsing(*T(x))); changed = true; }
    for (const auto& [site, h] : s.compositions)
      if (!F(h) && F(site.first) && F(site.second)) {
        assign(fmap, h, names::composite(*F(site.first), *F(site.second)));
        changed = true;
      }
    for (const auto& [site, t] : s.tuples)
      if (!F(t) && F(site.first) && F(site.second)) {
        assign(fmap, t, names::tuple(*F(site.first), *F(site.second)));
        changed = true;
      }
  }
  // Anything without a structural role keeps its name when free.
  for (const auto& t : s.types)
    if (!T(t)) assign(tmap, t, t);
  for (const auto& [f, _] : s.terms)
    if (!F(f)) assign(fmap, f, f);
  return rename(s, tmap, fmap);
}

/// Result of one inference step: the extended specification, the entailment
/// `step: s -> result`, and the instance of the rule's conclusion.
struct StepResult {
  Specification result;
  SpecMorphism step;
  Fraction instance;  // numerator: conclusion -> result, denominator: s -> result
};

inline StepResult apply_rule(const InferenceRule& rule, const Specification& s, const SpecMorphism& match) {
  if (!(match.source == rule.hypothesis()) || !(match.target == s))
    throw Error(ErrorKind::no_match, "match does not go from the rule hypothesis to the specification");
  if (auto v = validate_morphism(match); !v.empty()) throw Error(ErrorKind::no_match, v.front());
  PushoutResult po = pushout(match, rule.fraction.denominator);
  std::set<std::string> keep_types, keep_terms;
  for (const auto& [_, t] : po.in1.types) keep_types.insert(t);
  for (const auto& [_, f] : po.in1.terms) keep_terms.insert(f);
  SpecMorphism ren = structural_rename(po.object, keep_types, keep_terms);
  SpecMorphism step = compose(po.in1, ren);
  SpecMorphism conclusion = compose(compose(rule.fraction.numerator, po.in2), ren);
  return {ren.target, step, Fraction{conclusion, step}};
}

/// Convenience: the match given by hypothesis names. Unlisted names map to themselves.
inline StepResult apply_rule(RuleTag tag, const Specification& s, const NameMap& types, const NameMap& terms) {
  InferenceRule rule = inference_rule(tag);
  return apply_rule(rule, s, detail::morphism(rule.hypothesis(), s, types, terms));
}

inline Fraction identity_fraction(const Specification& s) { return {identity_morphism(s), identity_morphism(s)}; }

/// Composite of ρ1: S -> S1 and ρ2: S1 -> S2 (numerators from S, S1; denominators from S1, S2).
inline Fraction compose_fractions(const Fraction& r1, const Fraction& r2) {
  PushoutResult po = pushout(r1.denominator, r2.numerator);
  return {compose(r1.numerator, po.in1), compose(r2.denominator, po.in2)};
}

struct TraceEntry {
  std::string rule;
  std::vector<std::pair<std::string, std::string>> match;
  std::vector<std::string> generated;
  bool operator==(const TraceEntry&) const = default;
};

struct SaturationResult {
  Specification spec;
  SpecMorphism morphism;
  std::vector<TraceEntry> trace;
  std::map<std::string, int> depth;  // structural depth of every term
};

struct SaturationOptions {
  std::size_t term_cap = 100'000;
};

/// Closes `s` under the identity, collapsing, composition and tuple rules, up
/// to terms of structural depth `depth` (declared terms have depth 0).
/// Types are never added, so products and the terminal type stay as declared.
inline SaturationResult saturate(const Specification& s, int depth, SaturationOptions opts = {}) {
  if (auto v = validate(s); !v.empty()) throw Error(ErrorKind::invalid_spec, v.front());
  SaturationResult r{s, {}, {}, {}};
  Specification& out = r.spec;
  for (const auto& [f, _] : s.terms) r.depth[f] = 0;
  auto check_cap = [&] {
    if (out.terms.size() > opts.term_cap)
      throw Error(ErrorKind::budget_exceeded,
                  "saturation exceeded " + std::to_string(opts.term_cap) + " terms");
  };

  for (const auto& x : s.types)
    if (!out.identities.count(x)) {
      std::string id = materialize(out, Expr::identity(x));
      r.depth[id] = 0;
      r.trace.push_back({"identity", {{"X", x}}, {id}});
    }
  if (out.terminal)
    for (const auto& x : s.types)
      if (!out.collapsings.count(x)) {
        std::string c = materialize(out, Expr::collapse(x));
        r.depth[c] = 0;
        r.trace.push_back({"collapsing", {{"X", x}}, {c}});
      }

  for (int d = 1; d <= depth; ++d) {
    std::vector<std::pair<std::string, TermSig>> snapshot(out.terms.begin(), out.terms.end());
    std::map<std::string, std::vector<const std::pair<std::string, TermSig>*>> by_dom;
    for (const auto& e : snapshot) by_dom[e.second.dom].push_back(&e);
    for (const auto& [f, sf] : snapshot)
      for (const auto* ge : by_dom[sf.cod]) {
        const auto& [g, sg] = *ge;
        if (std::max(r.depth.at(f), r.depth.at(g)) != d - 1 || out.composite_of(f, g)) continue;
        std::string h = materialize(out, Expr::compose(Expr::atom(f), Expr::atom(g)));
        r.depth[h] = d;
        r.trace.push_back({"composition", {{"X", sf.dom}, {"Y", sf.cod}, {"Z", sg.cod}, {"f", f}, {"g", g}}, {h}});
        check_cap();
      }
    for (const auto& [f1, s1] : snapshot)
      for (const auto* f2e : by_dom[s1.dom]) {
        const auto& [f2, s2] = *f2e;
        const ProductCone* p = out.product_of(s1.cod, s2.cod);
        if (!p || std::max(r.depth.at(f1), r.depth.at(f2)) != d - 1 || out.tuple_of(f1, f2)) continue;
        std::string t = materialize(out, Expr::tuple(Expr::atom(f1), Expr::atom(f2)));
        r.depth[t] = d;
        r.trace.push_back({"binary-tuple",
                           {{"X", s1.dom}, {"Y1", s1.cod}, {"Y2", s2.cod}, {"f1", f1}, {"f2", f2}},
                           {t}});
        check_cap();
      }
  }
  r.morphism = inclusion(s, out);
  return r;
}

enum class TriState { equal, distinct_at_bound, unknown };

inline std::string_view to_string(TriState t) {
  switch (t) {
    case TriState::equal: return "Equal";
    case TriState::distinct_at_bound: return "DistinctAtBound";
    case TriState::unknown: return "Unknown";
  }
  return "";
}

struct EqualityVerdict {
  TriState state = TriState::unknown;
  std::optional<FiniteModel> countermodel;
  std::size_t rounds = 0;  // congruence rounds run before the verdict
};

struct EqualityOptions {
  Congruence::Options congruence{};
  bool search_countermodel = true;
  std::size_t max_carrier = 2;
  double countermodel_cap = 2e5;
};

/// Size assignments for the base types of `s` with every size in [lo, hi],
/// in lexicographic order.
inline std::vector<CarrierSizes> carrier_assignments(const Specification& s, std::size_t lo, std::size_t hi) {
  std::vector<CarrierSizes> out;
  std::vector<std::string> base = base_types(s);
  CarrierSizes cur;
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    if (i == base.size()) {
      out.push_back(cur);
      return;
    }
    for (std::size_t n = lo; n <= hi; ++n) {
      cur[base[i]] = n;
      go(i + 1);
    }
  };
  go(0);
  return out;
}

/// First model (carriers 1..max_carrier) in which some pair evaluates differently.
inline std::optional<FiniteModel> find_separating_model(const Specification& s,
                                                        const std::vector<std::pair<Expr, Expr>>& pairs,
                                                        const EqualityOptions& opts = {}) {
  for (const auto& sizes : carrier_assignments(s, 1, opts.max_carrier)) {
    std::vector<FiniteModel> models;
    try {
      models = enumerate_models(s, sizes, {}, {opts.countermodel_cap});
    } catch (const Error& e) {
      if (e.is_budget()) continue;
      throw;
    }
    for (const auto& m : models)
      for (const auto& [a, b] : pairs)
        if (evaluate(s, m, a) != evaluate(s, m, b)) return m;
  }
  return std::nullopt;
}

inline EqualityVerdict exprs_equal(const Specification& s, const Expr& e1, const Expr& e2, int depth,
                                   const EqualityOptions& opts = {}) {
  auto t1 = type_of(s, e1), t2 = type_of(s, e2);
  if (!t1 || !t2) throw Error(ErrorKind::invalid_spec, "ill-typed expression");
  if (*t1 != *t2) throw Error(ErrorKind::not_parallel, to_string(e1) + " and " + to_string(e2) + " are not parallel");
  EqualityVerdict v;
  Congruence g(s, opts.congruence);
  Congruence::Id a = g.add(e1), b = g.add(e2);
  while (!g.same(a, b) && v.rounds < static_cast<std::size_t>(std::max(depth, 0))) {
    ++v.rounds;
    if (!g.step()) break;
  }
  if (g.same(a, b)) {
    v.state = TriState::equal;
    return v;
  }
  if (opts.search_countermodel) v.countermodel = find_separating_model(s, {{e1, e2}}, opts);
  v.state = v.countermodel ? TriState::distinct_at_bound : TriState::unknown;
  return v;
}

inline EqualityVerdict terms_equal(const Specification& s, const std::string& t1, const std::string& t2, int depth,
                                   const EqualityOptions& opts = {}) {
  if (!s.has_term(t1) || !s.has_term(t2)) throw Error(ErrorKind::invalid_spec, "unknown term");
  if (s.sig(t1) != s.sig(t2)) throw Error(ErrorKind::not_parallel, t1 + " and " + t2 + " are not parallel");
  return exprs_equal(s, Expr::atom(t1), Expr::atom(t2), depth, opts);
}

struct EntailmentVerdict {
  TriState state = TriState::unknown;
  std::optional<FiniteModel> countermodel;  // a model of the source with no unique extension
  std::vector<std::string> unproven;         // obligations not derived at the bound
};

namespace detail {

// Models of `tau.target` that extend `m1` along `tau`, with carriers of new
// free types between 0 and `max_new`. Stops after `limit` extensions.
inline std::size_t count_extensions(const SpecMorphism& tau, const FiniteModel& m1, std::size_t max_new,
                                    std::size_t limit, double cap) {
  const Specification& s = tau.target;
  FiniteModel fixed;
  for (const auto& t : tau.source.types) {
    auto [it, fresh] = fixed.carriers.try_emplace(tau.type(t), m1.carriers.at(t));
    if (!fresh && it->second.size() != m1.carriers.at(t).size()) return 0;
  }
  for (const auto& [f, _] : tau.source.terms) {
    auto [it, fresh] = fixed.functions.try_emplace(tau.term(f), m1.functions.at(f));
    if (!fresh && it->second != m1.functions.at(f)) return 0;
  }
  std::vector<std::string> open;
  for (const auto& t : base_types(s))
    if (!fixed.carriers.count(t)) open.push_back(t);
  std::size_t count = 0;
  std::vector<std::size_t> sizes(open.size(), 0);
  while (true) {
    CarrierSizes cs;
    for (std::size_t i = 0; i < open.size(); ++i) cs[open[i]] = sizes[i];
    try {
      count += enumerate_models(s, cs, fixed, {cap}).size();
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::invalid_spec) throw;
    }
    if (count >= limit) return count;
    std::size_t pos = open.size();
    while (pos > 0 && ++sizes[pos - 1] > max_new) sizes[--pos] = 0;
    if (pos == 0) break;
  }
  return count;
}

}  // namespace detail

/// Whether `tau: S1 -> S` only adds content derivable from S1.
///
/// Every type and term of S is given a defining expression over S1 (through
/// τ, the marks of S, and equations with already defined terms), with new
/// product and terminal types of S allowed. All remaining marks and equations
/// of S become obligations checked by congruence at `depth` rounds.
///
/// `hints` are extra expressions over S added to the congruence graph, so
/// that instances of equations which no obligation mentions can take part.
inline EntailmentVerdict is_entailment(const SpecMorphism& tau, int depth, const EqualityOptions& opts = {},
                                       const std::vector<Expr>& hints = {}) {
  if (auto v = validate_morphism(tau); !v.empty()) throw Error(ErrorKind::invalid_spec, v.front());
  const Specification& s1 = tau.source;
  const Specification& s = tau.target;
  EntailmentVerdict verdict;

  Specification base = s1;
  std::map<std::string, std::string> tdef;
  bool definable = true;
  for (const auto& t : s1.types) {
    auto [it, fresh] = tdef.try_emplace(tau.type(t), t);
    if (!fresh) definable = false;  // τ identifies types
  }
  std::map<std::string, Expr> def;
  std::vector<std::pair<Expr, Expr>> obligations;
  std::vector<std::string> labels;
  auto oblige = [&](const Expr& a, const Expr& b, const std::string& what) {
    if (a == b) return;
    obligations.emplace_back(a, b);
    labels.push_back(what);
  };
  for (const auto& [f, _] : s1.terms) {
    const std::string& img = tau.term(f);
    auto [it, fresh] = def.try_emplace(img, Expr::atom(f));
    if (!fresh) oblige(it->second, Expr::atom(f), f + " = " + it->second.name);
  }

  // New derivable types: the terminal type and product vertices.
  bool changed = true;
  while (changed && definable) {
    changed = false;
    for (const auto& y : s.types) {
      if (tdef.count(y)) continue;
      if (s.terminal && *s.terminal == y) {
        if (!base.terminal) {
          std::string n = names::fresh(y, base.used_names());
          base.add_type(n);
          base.terminal = n;
        }
        tdef[y] = *base.terminal;
        changed = true;
        continue;
      }
      for (const auto& [site, cone] : s.products_at(y)) {
        auto a = tdef.find(site.first), b = tdef.find(site.second);
        if (a == tdef.end() || b == tdef.end()) continue;
        if (!base.product_of(a->second, b->second)) {
          std::string v = names::fresh(y, base.used_names());
          base.add_type(v);
          std::string p1 = names::fresh(cone.first, base.used_names());
          base.add_term(p1, v, a->second);
          std::string p2 = names::fresh(cone.second, base.used_names());
          base.add_term(p2, v, b->second);
          base.products[{a->second, b->second}] = {v, p1, p2};
        }
        tdef[y] = base.product_of(a->second, b->second)->vertex;
        changed = true;
        break;
      }
    }
  }
  if (definable && tdef.size() != s.types.size()) definable = false;
  // Structure claimed by S must be structure of the base.
  if (definable) {
    if (s.terminal && (!base.terminal || *base.terminal != tdef.at(*s.terminal))) definable = false;
    for (const auto& [site, cone] : s.products) {
      const ProductCone* p = base.product_of(tdef.at(site.first), tdef.at(site.second));
      if (!p || p->vertex != tdef.at(cone.vertex)) {
        definable = false;
        break;
      }
      for (const auto& [mine, theirs] : {std::pair{cone.first, p->first}, std::pair{cone.second, p->second}}) {
        auto [it, fresh] = def.try_emplace(mine, Expr::atom(theirs));
        if (!fresh) oblige(it->second, Expr::atom(theirs), mine + " is a projection");
      }
    }
  }

  if (definable) {
    auto D = [&](const std::string& f) -> const Expr* {
      auto it = def.find(f);
      return it == def.end() ? nullptr : &it->second;
    };
    changed = true;
    while (changed) {
      changed = false;
      auto offer = [&](const std::string& f, Expr e) {
        if (!def.count(f)) {
          def.emplace(f, std::move(e));
          changed = true;
        }
      };
      for (const auto& [x, id] : s.identities) offer(id, Expr::identity(tdef.at(x)));
      for (const auto& [x, c] : s.collapsings) offer(c, Expr::collapse(tdef.at(x)));
      for (const auto& [site, h] : s.compositions)
        if (D(site.first) && D(site.second)) offer(h, Expr::compose(*D(site.first), *D(site.second)));
      for (const auto& [site, t] : s.tuples)
        if (D(site.first) && D(site.second)) offer(t, Expr::tuple(*D(site.first), *D(site.second)));
      for (const auto& [a, b] : s.equations) {
        if (D(a) && !D(b)) offer(b, *D(a));
        if (D(b) && !D(a)) offer(a, *D(b));
      }
    }
    if (def.size() != s.terms.size()) definable = false;
  }

  if (definable) {
    for (const auto& [x, id] : s.identities) oblige(def.at(id), Expr::identity(tdef.at(x)), id + " is an identity");
    for (const auto& [x, c] : s.collapsings) oblige(def.at(c), Expr::collapse(tdef.at(x)), c + " is a collapsing");
    for (const auto& [site, h] : s.compositions)
      oblige(def.at(h), Expr::compose(def.at(site.first), def.at(site.second)), h + " is a composite");
    for (const auto& [site, t] : s.tuples)
      oblige(def.at(t), Expr::tuple(def.at(site.first), def.at(site.second)), t + " is a tuple");
    for (const auto& [a, b] : s.equations) oblige(def.at(a), def.at(b), a + " = " + b);

    Congruence g(base, opts.congruence);
    std::function<Expr(const Expr&)> over_base = [&](const Expr& e) -> Expr {
      switch (e.kind) {
        case Expr::Kind::atom: return def.at(e.name);
        case Expr::Kind::identity: return Expr::identity(tdef.at(e.name));
        case Expr::Kind::collapse: return Expr::collapse(tdef.at(e.name));
        case Expr::Kind::compose: return Expr::compose(over_base(e.args[0]), over_base(e.args[1]));
        case Expr::Kind::tuple: return Expr::tuple(over_base(e.args[0]), over_base(e.args[1]));
      }
      return e;
    };
    for (const auto& h : hints) g.add(over_base(h));
    std::vector<std::pair<Congruence::Id, Congruence::Id>> ids;
    for (const auto& [a, b] : obligations) ids.emplace_back(g.add(a), g.add(b));
    auto all_equal = [&] {
      return std::all_of(ids.begin(), ids.end(), [&](const auto& p) { return g.same(p.first, p.second); });
    };
    for (int r = 0; r < depth && !all_equal(); ++r)
      if (!g.step()) break;
    std::vector<std::pair<Expr, Expr>> open;
    for (std::size_t i = 0; i < ids.size(); ++i)
      if (!g.same(ids[i].first, ids[i].second)) {
        open.push_back(obligations[i]);
        verdict.unproven.push_back(labels[i]);
      }
    if (open.empty()) {
      verdict.state = TriState::equal;
      return verdict;
    }
    if (opts.search_countermodel)
      if (auto m = find_separating_model(base, open, opts)) {
        verdict.state = TriState::distinct_at_bound;
        verdict.countermodel = restrict_model(s1, *m);
        return verdict;
      }
    return verdict;
  }

  // No definitions: look for a source model without a unique extension.
  verdict.unproven.push_back("content of the target is not definable from the source");
  if (!opts.search_countermodel) return verdict;
  for (const auto& sizes : carrier_assignments(s1, 1, opts.max_carrier)) {
    std::vector<FiniteModel> models;
    try {
      models = enumerate_models(s1, sizes, {}, {opts.countermodel_cap});
    } catch (const Error& e) {
      if (e.is_budget()) continue;
      throw;
    }
    for (const auto& m : models) {
      std::size_t n;
      try {
        n = detail::count_extensions(tau, m, opts.max_carrier, 2, opts.countermodel_cap);
      } catch (const Error& e) {
        if (e.is_budget()) continue;
        throw;
      }
      if (n != 1) {
        verdict.state = TriState::distinct_at_bound;
        verdict.countermodel = m;
        return verdict;
      }
    }
  }
  return verdict;
}

}  // namespace dialog
