#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dialog/decorate.hpp"
#include "dialog/expr.hpp"
#include "dialog/inference.hpp"
#include "dialog/morphism.hpp"

namespace dialog {

/// A specification with a distinguished type of parameters.
struct ParameterizedSpecification {
  Specification base;
  std::string parameter_type;
  bool operator==(const ParameterizedSpecification&) const = default;
};

/// A parameterized specification with a distinguished constant `a : 1 -> A`.
struct ParameterizedSpecificationWithConstant {
  ParameterizedSpecification base;
  std::string parameter_constant;
  bool operator==(const ParameterizedSpecificationWithConstant&) const = default;

  const Specification& spec() const { return base.base; }
  const std::string& parameter_type() const { return base.parameter_type; }
};

inline std::vector<std::string> validate_parameterized(const ParameterizedSpecification& p) {
  std::vector<std::string> out = validate(p.base);
  if (!p.base.has_type(p.parameter_type)) out.push_back("parameter type " + p.parameter_type + " is not a type");
  return out;
}

inline std::vector<std::string> validate_parameterized(const ParameterizedSpecificationWithConstant& p) {
  std::vector<std::string> out = validate_parameterized(p.base);
  const Specification& s = p.spec();
  if (!s.terminal) {
    out.push_back("no terminal type for the parameter constant");
  } else if (!s.has_term(p.parameter_constant) ||
             s.sig(p.parameter_constant) != TermSig{*s.terminal, p.parameter_type()}) {
    out.push_back("parameter constant " + p.parameter_constant + " is not a term 1 -> " + p.parameter_type());
  }
  return out;
}

namespace detail {

inline std::string fresh_name(const Specification& s, const std::string& base) { return s.fresh_term_name(base); }

/// The product A×X with projections proj_X and eps_X, added when missing.
inline ProductCone parameter_product(Specification& s, const std::string& a, const std::string& x) {
  if (const ProductCone* p = s.product_of(a, x)) return *p;
  std::string v = fresh_name(s, names::product(a, x));
  s.add_type(v);
  std::string p1 = fresh_name(s, "proj_" + names::wrap(x));
  s.add_term(p1, v, a);
  std::string p2 = fresh_name(s, "eps_" + names::wrap(x));
  s.add_term(p2, v, x);
  s.products[{a, x}] = {v, p1, p2};
  return s.products.at({a, x});
}

inline Expr rename_expr(const Expr& e, const NameMap& types, const NameMap& terms) {
  auto get = [](const NameMap& m, const std::string& n) {
    auto it = m.find(n);
    return it == m.end() ? n : it->second;
  };
  switch (e.kind) {
    case Expr::Kind::atom: return Expr::atom(get(terms, e.name));
    case Expr::Kind::identity: return Expr::identity(get(types, e.name));
    case Expr::Kind::collapse: return Expr::collapse(get(types, e.name));
    case Expr::Kind::compose:
      return Expr::compose(rename_expr(e.args[0], types, terms), rename_expr(e.args[1], types, terms));
    case Expr::Kind::tuple:
      return Expr::tuple(rename_expr(e.args[0], types, terms), rename_expr(e.args[1], types, terms));
  }
  return e;
}

// The marked terms of `s` with the expression each one is marked as.
inline std::map<std::string, Expr> mark_sites(const Specification& s) {
  std::map<std::string, Expr> out;
  for (const auto& [x, id] : s.identities) out.emplace(id, Expr::identity(x));
  for (const auto& [x, c] : s.collapsings) out.emplace(c, Expr::collapse(x));
  for (const auto& [site, h] : s.compositions)
    out.emplace(h, Expr::compose(Expr::atom(site.first), Expr::atom(site.second)));
  for (const auto& [site, t] : s.tuples) out.emplace(t, Expr::tuple(Expr::atom(site.first), Expr::atom(site.second)));
  return out;
}

// Builds a morphism `source -> target` (extending `target`) from images of the
// unmarked terms; marked terms follow their marks, and source equations whose
// images are not yet related are added to the target as derived equations.
inline SpecMorphism extend_by_marks(const Specification& source, Specification target, NameMap types,
                                    const std::map<std::string, Expr>& atom_images) {
  std::map<std::string, Expr> marks = mark_sites(source);
  NameMap terms;
  for (const auto& [_, cone] : source.products) {
    const ProductCone* p = target.product_of(types.at(_.first), types.at(_.second));
    if (!p) throw Error(ErrorKind::invalid_spec, "product " + cone.vertex + " has no image");
    terms[cone.first] = p->first;
    terms[cone.second] = p->second;
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [f, _] : source.terms) {
      if (terms.count(f)) continue;
      auto m = marks.find(f);
      if (m == marks.end()) {
        terms[f] = materialize(target, atom_images.at(f));
        changed = true;
        continue;
      }
      const Expr& site = m->second;
      bool ready = site.args.empty() || (terms.count(site.args[0].name) && terms.count(site.args[1].name));
      if (!ready) continue;
      terms[f] = materialize(target, rename_expr(site, types, terms));
      changed = true;
    }
  }
  for (const auto& [a, b] : source.equations) {
    const std::string& ia = terms.at(a);
    const std::string& ib = terms.at(b);
    if (ia != ib) target.add_equation(ia, ib);
  }
  SpecMorphism out{source, std::move(target), std::move(types), std::move(terms)};
  if (auto v = validate_morphism(out); !v.empty()) throw Error(ErrorKind::invalid_spec, v.front());
  return out;
}

}  // namespace detail

/// Adds a fresh parameter type (named A unless that name is taken).
inline ParameterizedSpecification embed_A(const Specification& s) {
  ParameterizedSpecification p{s, s.fresh_term_name("A")};
  p.base.add_type(p.parameter_type);
  return p;
}

/// Adds the terminal type when missing and a fresh constant a : 1 -> A.
inline ParameterizedSpecificationWithConstant embed_a(const ParameterizedSpecification& p) {
  ParameterizedSpecificationWithConstant out{p, {}};
  Specification& s = out.base.base;
  if (!s.terminal) {
    std::string one = s.fresh_term_name("1");
    s.add_type(one);
    s.terminal = one;
  }
  out.parameter_constant = s.fresh_term_name("a");
  s.add_term(out.parameter_constant, *s.terminal, p.parameter_type);
  return out;
}

/// Output of the parameterization process.
struct Parameterization {
  ParameterizedSpecification spec;
  std::map<std::string, std::string> primed;  // general f -> f' : A×X -> Y

  /// f♯ : A×X -> Y, that is f' for general f and f∘eps_X for pure f.
  /// Adds A×X to `s` when it is needed.
  Expr sharp(Specification& s, const std::string& f) const {
    if (auto it = primed.find(f); it != primed.end()) return Expr::atom(it->second);
    ProductCone c = detail::parameter_product(s, spec.parameter_type, s.sig(f).dom);
    return Expr::compose(Expr::atom(c.second), Expr::atom(f));
  }

  /// Rows (f, f♯) for every term of the decorated source, in name order.
  std::vector<std::pair<std::string, std::string>> lift_table(const Specification& source) const {
    std::vector<std::pair<std::string, std::string>> out;
    Specification scratch = spec.base;
    for (const auto& [f, _] : source.terms) out.emplace_back(f, to_string(sharp(scratch, f)));
    return out;
  }
};

/// Replaces every general term f : X -> Y by f' : A×X -> Y. Types and pure
/// terms are unchanged; composites, tuples and equations involving general
/// terms are translated through ♯.
inline Parameterization parameterize(const DecoratedSpecification& d) {
  if (auto v = validate(d.base); !v.empty()) throw Error(ErrorKind::invalid_spec, v.front());
  if (auto v = validate_decorated(d); !v.empty()) throw Error(ErrorKind::purity_violation, v.front());
  Parameterization p;
  p.spec.parameter_type = d.base.fresh_term_name("A");
  Specification& out = p.spec.base;
  out = pure_part(d);
  out.add_type(p.spec.parameter_type);
  const std::string& A = p.spec.parameter_type;
  auto used = [&](const std::string& n) { return out.name_used(n) || d.base.name_used(n); };

  for (const auto& [f, sig] : d.base.terms) {
    if (d.is_pure(f)) continue;
    ProductCone c = detail::parameter_product(out, A, sig.dom);
    std::string name = names::wrap(f) + "'";
    while (used(name)) name += '\'';
    out.add_term(name, c.vertex, sig.cod);
    p.primed[f] = name;
  }

  // Names `target` as the feature `e` when its site is free, else equates them.
  auto define = [&](const std::string& target, const Expr& e) {
    if (e.kind == Expr::Kind::compose || e.kind == Expr::Kind::tuple) {
      std::string a = materialize(out, e.args[0]);
      std::string b = materialize(out, e.args[1]);
      auto& marks = e.kind == Expr::Kind::compose ? out.compositions : out.tuples;
      auto it = marks.find({a, b});
      if (it == marks.end()) {
        marks[{a, b}] = target;
        return;
      }
      if (it->second != target) out.add_equation(it->second, target);
      return;
    }
    std::string n = materialize(out, e);
    if (n != target) out.add_equation(n, target);
  };
  auto rhs_of = [&](const std::string& h) -> std::string {
    if (auto it = p.primed.find(h); it != p.primed.end()) return it->second;
    return materialize(out, p.sharp(out, h));
  };

  for (const auto& [site, h] : d.base.compositions) {
    const auto& [f, g] = site;
    if (d.is_pure(f) && d.is_pure(g) && d.is_pure(h)) continue;
    ProductCone cx = detail::parameter_product(out, A, d.base.sig(f).dom);
    detail::parameter_product(out, A, d.base.sig(f).cod);
    // (g∘f)♯ = g♯ ∘ <proj_X, f♯>
    Expr e = Expr::compose(Expr::tuple(Expr::atom(cx.first), p.sharp(out, f)), p.sharp(out, g));
    define(rhs_of(h), e);
  }
  for (const auto& [site, t] : d.base.tuples) {
    const auto& [f1, f2] = site;
    if (d.is_pure(f1) && d.is_pure(f2) && d.is_pure(t)) continue;
    Expr e = Expr::tuple(p.sharp(out, f1), p.sharp(out, f2));
    define(rhs_of(t), e);
  }
  for (const auto& [a, b] : d.base.equations) {
    if (d.is_pure(a) && d.is_pure(b)) continue;
    std::string la = rhs_of(a), lb = rhs_of(b);
    if (la != lb) out.add_equation(la, lb);
  }
  return p;
}

/// The morphism induced by a decorated morphism `u : d1 -> d2` between the
/// parameterized specifications. Its target extends parameterize(d2) by the
/// composites with eps needed for general terms sent to pure ones.
inline SpecMorphism parameterize_morphism(const SpecMorphism& u, const DecoratedSpecification& d1,
                                          const DecoratedSpecification& d2) {
  if (auto v = validate_decorated_morphism(u, d1, d2); !v.empty()) {
    bool purity = v.front().rfind("pure term", 0) == 0;
    throw Error(purity ? ErrorKind::purity_violation : ErrorKind::invalid_spec, v.front());
  }
  Parameterization p1 = parameterize(d1), p2 = parameterize(d2);
  const Specification& s1 = p1.spec.base;
  Specification target = p2.spec.base;
  const std::string& A1 = p1.spec.parameter_type;
  const std::string& A2 = p2.spec.parameter_type;

  NameMap types;
  for (const auto& t : d1.base.types) types[t] = u.type(t);
  types[A1] = A2;
  for (const auto& [site, cone] : s1.products)
    if (site.first == A1 && !d1.base.has_type(cone.vertex))
      types[cone.vertex] = detail::parameter_product(target, A2, u.type(site.second)).vertex;

  std::map<std::string, Expr> atoms;
  for (const auto& f : d1.pure_terms) atoms.emplace(f, Expr::atom(u.term(f)));
  for (const auto& [f, fp] : p1.primed) atoms.emplace(fp, p2.sharp(target, u.term(f)));
  return detail::extend_by_marks(s1, std::move(target), std::move(types), atoms);
}

/// Whether parameterizing the all-pure decoration of `s` gives embed_A(s),
/// up to an isomorphism fixing the parameter type.
inline bool check_param_restricts_to_embed(const Specification& s) {
  ParameterizedSpecification a = parameterize(purify(s)).spec;
  ParameterizedSpecification b = embed_A(s);
  return iso_search(a.base, b.base, 200'000, {{a.parameter_type, b.parameter_type}}).found();
}

/// ℓ(f) = f' ∘ <a∘tu_X, id_X> for a general term f : X -> Y, as an
/// expression over embed_a(parameterize(d)).
inline Expr ell_formula(const Parameterization& p, const ParameterizedSpecificationWithConstant& pa,
                        const TermSig& sig, const std::string& f) {
  Expr pair = Expr::tuple(Expr::compose(Expr::collapse(sig.dom), Expr::atom(pa.parameter_constant)),
                          Expr::identity(sig.dom));
  return Expr::compose(pair, Expr::atom(p.primed.at(f)));
}

struct EllResult {
  SpecMorphism morphism;                      // embed_a(embed_A(undecorate d)) -> extended target
  ParameterizedSpecificationWithConstant source;
  ParameterizedSpecificationWithConstant target;  // embed_a(parameterize(d)) before extension
  Parameterization parameterization;
};

/// The parameter passing morphism. Pure terms are fixed; an unmarked general
/// term f goes to f' ∘ <a∘tu_X, id_X>, and marked terms go to the
/// corresponding feature of the images.
inline EllResult ell(const DecoratedSpecification& d) {
  Parameterization p = parameterize(d);
  auto src = embed_a(embed_A(d.base));
  auto tgt = embed_a(p.spec);
  Specification ext = tgt.spec();

  NameMap types;
  for (const auto& t : d.base.types) types[t] = t;
  types[src.parameter_type()] = tgt.parameter_type();
  types[*src.spec().terminal] = *ext.terminal;
  std::map<std::string, Expr> atoms;
  for (const auto& [f, sig] : d.base.terms)
    atoms.emplace(f, d.is_pure(f) ? Expr::atom(f) : ell_formula(p, tgt, sig, f));
  atoms.emplace(src.parameter_constant, Expr::atom(tgt.parameter_constant));
  SpecMorphism m = detail::extend_by_marks(src.spec(), std::move(ext), std::move(types), atoms);
  return {std::move(m), std::move(src), std::move(tgt), std::move(p)};
}

/// Instances a♯ ∘ <a∘tu_X, id_X> and b♯ ∘ <a∘tu_X, id_X> of the translated
/// equations a = b with a general member. They are the congruence terms
/// that relate ℓ(a) and ℓ(b) in the extended target.
inline std::vector<Expr> ell_hints(const EllResult& e, const DecoratedSpecification& d) {
  std::vector<Expr> out;
  Specification scratch = e.morphism.target;
  for (const auto& [a, b] : d.base.equations) {
    if (d.is_pure(a) && d.is_pure(b)) continue;
    const std::string& x = d.base.sig(a).dom;
    Expr k = Expr::tuple(Expr::compose(Expr::collapse(x), Expr::atom(e.target.parameter_constant)),
                         Expr::identity(x));
    out.push_back(Expr::compose(k, e.parameterization.sharp(scratch, a)));
    out.push_back(Expr::compose(k, e.parameterization.sharp(scratch, b)));
  }
  return out;
}

/// Naturality of ℓ along a decorated morphism `u : d1 -> d2`, checked on every
/// term of the source with congruence at `depth` rounds: ℓ(d2) after u equals
/// the parameterized u after ℓ(d1).
inline bool check_ell_natural(const SpecMorphism& u, const DecoratedSpecification& d1,
                              const DecoratedSpecification& d2, int depth = 4) {
  SpecMorphism pu = parameterize_morphism(u, d1, d2);
  EllResult e1 = ell(d1), e2 = ell(d2);

  // Work in embed_a of the extended parameterized d2, with A×X for every type.
  ParameterizedSpecificationWithConstant work =
      embed_a(ParameterizedSpecification{pu.target, e2.parameterization.spec.parameter_type});
  Specification& w = work.base.base;
  for (const auto& t : d2.base.types) detail::parameter_product(w, work.parameter_type(), t);

  NameMap types = pu.types, terms = pu.terms;
  types[*e1.target.spec().terminal] = *w.terminal;
  terms[e1.target.parameter_constant] = work.parameter_constant;
  NameMap ell2_names{{e2.target.parameter_constant, work.parameter_constant}};
  NameMap ell2_types{{*e2.target.spec().terminal, *w.terminal}};

  auto ell_expr = [](const EllResult& e, const DecoratedSpecification& d, const std::string& f) {
    if (f == e.source.parameter_constant) return Expr::atom(e.target.parameter_constant);
    if (d.is_pure(f)) return Expr::atom(f);
    return ell_formula(e.parameterization, e.target, d.base.sig(f), f);
  };

  for (const auto& [f, _] : e1.source.spec().terms) {
    std::string uf = f == e1.source.parameter_constant ? e2.source.parameter_constant : u.term(f);
    Expr left = detail::rename_expr(ell_expr(e2, d2, uf), ell2_types, ell2_names);
    Expr right = detail::rename_expr(ell_expr(e1, d1, f), types, terms);
    EqualityOptions opts;
    opts.search_countermodel = false;
    if (exprs_equal(w, left, right, depth, opts).state != TriState::equal) return false;
  }
  return true;
}

}  // namespace dialog
