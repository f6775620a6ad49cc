#pragma once

#include <algorithm>
#include <array>
#include <set>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "dialog/expr.hpp"
#include "dialog/spec.hpp"

namespace dialog {

using NameMap = std::map<std::string, std::string>;

/// A morphism of finite-product sketches: maps types to types and terms to
/// terms, preserving dom/cod, potential features and equations.
struct SpecMorphism {
  Specification source;
  Specification target;
  NameMap types;
  NameMap terms;

  bool operator==(const SpecMorphism&) const = default;

  const std::string& type(const std::string& t) const {
    auto it = types.find(t);
    if (it == types.end()) throw Error(ErrorKind::invalid_spec, "morphism does not map type " + t);
    return it->second;
  }
  const std::string& term(const std::string& f) const {
    auto it = terms.find(f);
    if (it == terms.end()) throw Error(ErrorKind::invalid_spec, "morphism does not map term " + f);
    return it->second;
  }
};

inline std::vector<std::string> validate_morphism(const SpecMorphism& m) {
  std::vector<std::string> out;
  const Specification& s = m.source;
  const Specification& t = m.target;
  auto ty = [&](const std::string& x) -> std::string {
    auto it = m.types.find(x);
    return it == m.types.end() ? std::string() : it->second;
  };
  auto tm = [&](const std::string& f) -> std::string {
    auto it = m.terms.find(f);
    return it == m.terms.end() ? std::string() : it->second;
  };

  for (const auto& x : s.types) {
    if (!m.types.count(x)) out.push_back("type " + x + " is not mapped");
    else if (!t.has_type(ty(x))) out.push_back("type " + x + " maps outside the target");
  }
  for (const auto& [f, sig] : s.terms) {
    if (!m.terms.count(f)) {
      out.push_back("term " + f + " is not mapped");
      continue;
    }
    auto it = t.terms.find(tm(f));
    if (it == t.terms.end()) {
      out.push_back("term " + f + " maps outside the target");
      continue;
    }
    if (it->second != TermSig{ty(sig.dom), ty(sig.cod)})
      out.push_back("term " + f + " is not mapped to a term " + ty(sig.dom) + " -> " + ty(sig.cod));
  }
  if (!out.empty()) return out;

  for (const auto& [x, id] : s.identities) {
    auto it = t.identities.find(ty(x));
    if (it == t.identities.end() || it->second != tm(id))
      out.push_back("identity " + id + " is not preserved");
  }
  for (const auto& [site, h] : s.compositions) {
    auto r = t.composite_of(tm(site.first), tm(site.second));
    if (!r || *r != tm(h)) out.push_back("composition " + h + " is not preserved");
  }
  for (const auto& [site, cone] : s.products) {
    const ProductCone* p = t.product_of(ty(site.first), ty(site.second));
    if (!p || *p != ProductCone{ty(cone.vertex), tm(cone.first), tm(cone.second)})
      out.push_back("product " + cone.vertex + " is not preserved");
  }
  for (const auto& [site, tup] : s.tuples) {
    auto r = t.tuple_of(tm(site.first), tm(site.second));
    if (!r || *r != tm(tup)) out.push_back("tuple " + tup + " is not preserved");
  }
  if (s.terminal && (!t.terminal || *t.terminal != ty(*s.terminal)))
    out.push_back("terminal type " + *s.terminal + " is not preserved");
  for (const auto& [x, c] : s.collapsings) {
    auto it = t.collapsings.find(ty(x));
    if (it == t.collapsings.end() || it->second != tm(c))
      out.push_back("collapsing " + c + " is not preserved");
  }
  for (const auto& [a, b] : s.equations) {
    if (tm(a) != tm(b) && !t.has_equation(tm(a), tm(b)))
      out.push_back("equation " + a + " = " + b + " is not preserved");
  }
  return out;
}

inline SpecMorphism identity_morphism(const Specification& s) {
  SpecMorphism m{s, s, {}, {}};
  for (const auto& x : s.types) m.types[x] = x;
  for (const auto& [f, _] : s.terms) m.terms[f] = f;
  return m;
}

/// Name-preserving morphism from `sub` into `super`.
inline SpecMorphism inclusion(const Specification& sub, const Specification& super) {
  SpecMorphism m = identity_morphism(sub);
  m.target = super;
  return m;
}

/// g∘f: first `f`, then `g`.
inline SpecMorphism compose(const SpecMorphism& f, const SpecMorphism& g) {
  if (!(f.target == g.source))
    throw Error(ErrorKind::source_target_mismatch, "target of the first morphism is not the source of the second");
  SpecMorphism out{f.source, g.target, {}, {}};
  for (const auto& [x, y] : f.types) out.types[x] = g.type(y);
  for (const auto& [x, y] : f.terms) out.terms[x] = g.term(y);
  return out;
}

inline Expr map_expr(const SpecMorphism& m, const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::atom: return Expr::atom(m.term(e.name));
    case Expr::Kind::identity: return Expr::identity(m.type(e.name));
    case Expr::Kind::collapse: return Expr::collapse(m.type(e.name));
    case Expr::Kind::compose: return Expr::compose(map_expr(m, e.args[0]), map_expr(m, e.args[1]));
    case Expr::Kind::tuple: return Expr::tuple(map_expr(m, e.args[0]), map_expr(m, e.args[1]));
  }
  return e;
}

/// Applies a renaming to `s`. Unmapped names are kept. The maps must be injective.
inline SpecMorphism rename(const Specification& s, const NameMap& type_map, const NameMap& term_map) {
  auto ty = [&](const std::string& x) {
    auto it = type_map.find(x);
    return it == type_map.end() ? x : it->second;
  };
  auto tm = [&](const std::string& f) {
    auto it = term_map.find(f);
    return it == term_map.end() ? f : it->second;
  };
  Specification r;
  for (const auto& x : s.types) r.add_type(ty(x));
  for (const auto& [f, sig] : s.terms) r.add_term(tm(f), ty(sig.dom), ty(sig.cod));
  for (const auto& [x, id] : s.identities) r.identities[ty(x)] = tm(id);
  for (const auto& [site, h] : s.compositions) r.compositions[{tm(site.first), tm(site.second)}] = tm(h);
  for (const auto& [site, c] : s.products)
    r.products[{ty(site.first), ty(site.second)}] = {ty(c.vertex), tm(c.first), tm(c.second)};
  for (const auto& [site, t] : s.tuples) r.tuples[{tm(site.first), tm(site.second)}] = tm(t);
  if (s.terminal) r.terminal = ty(*s.terminal);
  for (const auto& [x, c] : s.collapsings) r.collapsings[ty(x)] = tm(c);
  for (const auto& [a, b] : s.equations) r.add_equation(tm(a), tm(b));
  SpecMorphism m{s, r, {}, {}};
  for (const auto& x : s.types) m.types[x] = ty(x);
  for (const auto& [f, _] : s.terms) m.terms[f] = tm(f);
  if (r.types.size() != s.types.size() || r.terms.size() != s.terms.size())
    throw Error(ErrorKind::name_clash, "renaming is not injective");
  return m;
}

namespace detail {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n = 0) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

}  // namespace detail

struct PushoutResult {
  Specification object;
  SpecMorphism in1;
  SpecMorphism in2;
  /// Features at a common site whose results were identified to keep features unique.
  std::vector<std::string> merged_features;
};

/// Pushout of `f: S0 -> S1` and `g: S0 -> S2`.
///
/// The result is the disjoint union of S1 and S2 quotiented by f(x) ~ g(x).
/// The quotient is closed so that merged terms have merged endpoints and so
/// that two features landing on one site have their results identified.
/// A class keeps its smallest S1 name when it has one, otherwise its smallest
/// S2 name, primed if that clashes.
inline PushoutResult pushout(const SpecMorphism& f, const SpecMorphism& g) {
  if (!(f.source == g.source))
    throw Error(ErrorKind::source_target_mismatch, "pushout legs do not share a source");
  const Specification& s1 = f.target;
  const Specification& s2 = g.target;

  std::vector<std::string> type_names;
  std::vector<int> type_side;
  std::map<std::string, std::size_t> type_ix1, type_ix2;
  for (const auto& x : s1.types) { type_ix1[x] = type_names.size(); type_names.push_back(x); type_side.push_back(1); }
  for (const auto& x : s2.types) { type_ix2[x] = type_names.size(); type_names.push_back(x); type_side.push_back(2); }
  std::vector<std::string> term_names;
  std::vector<int> term_side;
  std::map<std::string, std::size_t> term_ix1, term_ix2;
  for (const auto& [x, _] : s1.terms) { term_ix1[x] = term_names.size(); term_names.push_back(x); term_side.push_back(1); }
  for (const auto& [x, _] : s2.terms) { term_ix2[x] = term_names.size(); term_names.push_back(x); term_side.push_back(2); }

  auto tix = [&](int side, const std::string& x) { return side == 1 ? type_ix1.at(x) : type_ix2.at(x); };
  auto fix = [&](int side, const std::string& x) { return side == 1 ? term_ix1.at(x) : term_ix2.at(x); };

  detail::UnionFind types(type_names.size());
  detail::UnionFind terms(term_names.size());
  for (const auto& x : f.source.types) types.unite(tix(1, f.type(x)), tix(2, g.type(x)));
  for (const auto& [x, _] : f.source.terms) terms.unite(fix(1, f.term(x)), fix(2, g.term(x)));

  std::vector<std::string> merged;
  auto sig_of = [&](std::size_t e) -> const TermSig& {
    return term_side[e] == 1 ? s1.sig(term_names[e]) : s2.sig(term_names[e]);
  };

  bool changed = true;
  while (changed) {
    changed = false;
    // Merged terms force merged endpoints.
    std::map<std::size_t, std::pair<std::size_t, std::size_t>> ends;
    for (std::size_t e = 0; e < term_names.size(); ++e) {
      const auto& sg = sig_of(e);
      std::size_t d = types.find(tix(term_side[e], sg.dom));
      std::size_t c = types.find(tix(term_side[e], sg.cod));
      auto [it, fresh] = ends.try_emplace(terms.find(e), d, c);
      if (!fresh) {
        changed |= types.unite(it->second.first, d);
        changed |= types.unite(it->second.second, c);
      }
    }
    // Feature uniqueness per site.
    auto settle_term = [&](auto& table, const auto& key, std::size_t result, const std::string& what) {
      auto [it, fresh] = table.try_emplace(key, result);
      if (!fresh && terms.find(it->second) != terms.find(result)) {
        merged.push_back(what + " " + term_names[it->second] + " ~ " + term_names[result]);
        changed |= terms.unite(it->second, result);
      }
    };
    std::map<std::size_t, std::size_t> ids, cols;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> comps, tups;
    std::map<std::pair<std::size_t, std::size_t>, std::array<std::size_t, 3>> prods;
    std::optional<std::size_t> terminal;
    for (int side : {1, 2}) {
      const Specification& s = side == 1 ? s1 : s2;
      for (const auto& [x, id] : s.identities)
        settle_term(ids, types.find(tix(side, x)), fix(side, id), "identity");
      for (const auto& [x, c] : s.collapsings)
        settle_term(cols, types.find(tix(side, x)), fix(side, c), "collapsing");
      for (const auto& [site, h] : s.compositions)
        settle_term(comps, std::pair{terms.find(fix(side, site.first)), terms.find(fix(side, site.second))},
                    fix(side, h), "composition");
      for (const auto& [site, t] : s.tuples)
        settle_term(tups, std::pair{terms.find(fix(side, site.first)), terms.find(fix(side, site.second))},
                    fix(side, t), "tuple");
      for (const auto& [site, cone] : s.products) {
        std::pair key{types.find(tix(side, site.first)), types.find(tix(side, site.second))};
        std::array<std::size_t, 3> val{tix(side, cone.vertex), fix(side, cone.first), fix(side, cone.second)};
        auto [it, fresh] = prods.try_emplace(key, val);
        if (!fresh) {
          bool c = types.unite(it->second[0], val[0]);
          c |= terms.unite(it->second[1], val[1]);
          c |= terms.unite(it->second[2], val[2]);
          if (c) merged.push_back("product " + type_names[it->second[0]] + " ~ " + type_names[val[0]]);
          changed |= c;
        }
      }
      if (s.terminal) {
        std::size_t t = tix(side, *s.terminal);
        if (terminal && types.unite(*terminal, t)) {
          merged.push_back("terminal " + type_names[*terminal] + " ~ " + type_names[t]);
          changed = true;
        }
        if (!terminal) terminal = t;
      }
    }
  }

  // Naming.
  auto choose = [](auto& uf, const std::vector<std::string>& nm, const std::vector<int>& side) {
    std::map<std::size_t, std::pair<std::optional<std::string>, std::optional<std::string>>> best;
    for (std::size_t e = 0; e < nm.size(); ++e) {
      auto& slot = side[e] == 1 ? best[uf.find(e)].first : best[uf.find(e)].second;
      if (!slot || nm[e] < *slot) slot = nm[e];
    }
    return best;
  };
  auto type_best = choose(types, type_names, type_side);
  auto term_best = choose(terms, term_names, term_side);
  std::set<std::string> reserved;
  for (const auto& [_, b] : type_best) if (b.first) reserved.insert(*b.first);
  for (const auto& [_, b] : term_best) if (b.first) reserved.insert(*b.first);
  std::map<std::size_t, std::string> type_name, term_name;
  auto assign = [&](auto& best, auto& out) {
    std::vector<std::pair<std::string, std::size_t>> pending;
    for (const auto& [cls, b] : best) {
      if (b.first) out[cls] = *b.first;
      else pending.emplace_back(*b.second, cls);
    }
    std::sort(pending.begin(), pending.end());
    for (const auto& [nm, cls] : pending) {
      out[cls] = names::fresh(nm, reserved);
      reserved.insert(out[cls]);
    }
  };
  assign(type_best, type_name);
  assign(term_best, term_name);

  auto T = [&](int side, const std::string& x) { return type_name.at(types.find(tix(side, x))); };
  auto F = [&](int side, const std::string& x) { return term_name.at(terms.find(fix(side, x))); };

  Specification out;
  for (int side : {1, 2}) {
    const Specification& s = side == 1 ? s1 : s2;
    for (const auto& x : s.types) out.add_type(T(side, x));
    for (const auto& [x, sg] : s.terms) out.add_term(F(side, x), T(side, sg.dom), T(side, sg.cod));
    for (const auto& [x, id] : s.identities) out.identities[T(side, x)] = F(side, id);
    for (const auto& [x, c] : s.collapsings) out.collapsings[T(side, x)] = F(side, c);
    for (const auto& [site, h] : s.compositions) out.compositions[{F(side, site.first), F(side, site.second)}] = F(side, h);
    for (const auto& [site, t] : s.tuples) out.tuples[{F(side, site.first), F(side, site.second)}] = F(side, t);
    for (const auto& [site, c] : s.products)
      out.products[{T(side, site.first), T(side, site.second)}] = {T(side, c.vertex), F(side, c.first), F(side, c.second)};
    if (s.terminal) out.terminal = T(side, *s.terminal);
    for (const auto& [a, b] : s.equations)
      if (F(side, a) != F(side, b)) out.add_equation(F(side, a), F(side, b));
  }

  PushoutResult r{out, SpecMorphism{s1, out, {}, {}}, SpecMorphism{s2, out, {}, {}}, merged};
  for (const auto& x : s1.types) r.in1.types[x] = T(1, x);
  for (const auto& [x, _] : s1.terms) r.in1.terms[x] = F(1, x);
  for (const auto& x : s2.types) r.in2.types[x] = T(2, x);
  for (const auto& [x, _] : s2.terms) r.in2.terms[x] = F(2, x);
  return r;
}

/// The unique candidate mediating morphism out of a pushout for the cospan
/// (h1, h2), if it is well defined and a morphism.
inline std::optional<SpecMorphism> mediating_morphism(const PushoutResult& po, const SpecMorphism& h1,
                                                      const SpecMorphism& h2) {
  SpecMorphism m{po.object, h1.target, {}, {}};
  auto put = [](NameMap& map, const std::string& k, const std::string& v) {
    auto [it, fresh] = map.try_emplace(k, v);
    return fresh || it->second == v;
  };
  for (const auto& [x, y] : po.in1.types) if (!put(m.types, y, h1.type(x))) return std::nullopt;
  for (const auto& [x, y] : po.in2.types) if (!put(m.types, y, h2.type(x))) return std::nullopt;
  for (const auto& [x, y] : po.in1.terms) if (!put(m.terms, y, h1.term(x))) return std::nullopt;
  for (const auto& [x, y] : po.in2.terms) if (!put(m.terms, y, h2.term(x))) return std::nullopt;
  if (!validate_morphism(m).empty()) return std::nullopt;
  return m;
}

/// All morphisms `s -> t`, by backtracking. Throws BudgetExceeded past `budget` search nodes.
inline std::vector<SpecMorphism> enumerate_morphisms(const Specification& s, const Specification& t,
                                                     std::size_t budget = 1'000'000) {
  std::vector<std::string> src_types(s.types.begin(), s.types.end());
  std::vector<std::string> src_terms;
  for (const auto& [f, _] : s.terms) src_terms.push_back(f);
  std::vector<SpecMorphism> out;
  SpecMorphism cur{s, t, {}, {}};
  std::size_t nodes = 0;

  std::function<void(std::size_t)> terms_from = [&](std::size_t i) {
    if (++nodes > budget) throw Error(ErrorKind::budget_exceeded, "morphism enumeration budget exhausted");
    if (i == src_terms.size()) {
      if (validate_morphism(cur).empty()) out.push_back(cur);
      return;
    }
    const TermSig& sg = s.sig(src_terms[i]);
    TermSig want{cur.types.at(sg.dom), cur.types.at(sg.cod)};
    for (const auto& [g, tsg] : t.terms) {
      if (tsg != want) continue;
      cur.terms[src_terms[i]] = g;
      terms_from(i + 1);
    }
    cur.terms.erase(src_terms[i]);
  };
  std::function<void(std::size_t)> types_from = [&](std::size_t i) {
    if (++nodes > budget) throw Error(ErrorKind::budget_exceeded, "morphism enumeration budget exhausted");
    if (i == src_types.size()) {
      terms_from(0);
      return;
    }
    for (const auto& y : t.types) {
      cur.types[src_types[i]] = y;
      types_from(i + 1);
    }
    cur.types.erase(src_types[i]);
  };
  types_from(0);
  return out;
}

struct IsoResult {
  enum class Status { found, not_isomorphic, unknown };
  Status status = Status::unknown;
  std::optional<SpecMorphism> forward;
  std::optional<SpecMorphism> backward;

  bool found() const { return status == Status::found; }
};

namespace detail {

// Colour refinement over both specifications with a shared palette, so equal
// colours mean equal local structure up to the current refinement depth.
struct Colouring {
  std::map<std::string, int> type_colour;
  std::map<std::string, int> term_colour;
};

inline std::pair<Colouring, Colouring> refine_colours(const Specification& a, const Specification& b,
                                                      const NameMap& fixed_types) {
  std::map<std::string, int> palette;
  auto colour_of = [&](const std::string& key) {
    auto [it, _] = palette.try_emplace(key, static_cast<int>(palette.size()));
    return it->second;
  };
  auto initial = [&](const Specification& s, bool is_a) {
    Colouring c;
    for (const auto& x : s.types) {
      std::string key = "T";
      key += (s.terminal && *s.terminal == x) ? "1" : "0";
      key += s.identities.count(x) ? "i" : "-";
      key += s.collapsings.count(x) ? "c" : "-";
      key += "v" + std::to_string(s.products_at(x).size());
      // Pinned types get a colour of their own on both sides.
      for (const auto& [fa, fb] : fixed_types)
        if ((is_a ? fa : fb) == x) key += "#" + fa;
      c.type_colour[x] = colour_of(key);
    }
    for (const auto& [f, _] : s.terms) {
      std::string key = "F";
      int id = 0, comp = 0, tup = 0, proj = 0, col = 0, eq = 0, arg = 0;
      for (const auto& [x, t] : s.identities) id += t == f;
      for (const auto& [site, h] : s.compositions) { comp += h == f; arg += (site.first == f) + 2 * (site.second == f); }
      for (const auto& [site, t] : s.tuples) { tup += t == f; arg += 4 * ((site.first == f) + (site.second == f)); }
      for (const auto& [site, cone] : s.products) proj += (cone.first == f) + 2 * (cone.second == f);
      for (const auto& [x, t] : s.collapsings) col += t == f;
      for (const auto& [l, r] : s.equations) eq += (l == f) + (r == f);
      key += std::to_string(id) + "," + std::to_string(comp) + "," + std::to_string(tup) + "," +
             std::to_string(proj) + "," + std::to_string(col) + "," + std::to_string(eq) + "," + std::to_string(arg);
      c.term_colour[f] = colour_of(key);
    }
    return c;
  };
  Colouring ca = initial(a, true), cb = initial(b, false);

  auto step = [&](const Specification& s, const Colouring& c) {
    Colouring n;
    std::map<std::string, std::vector<std::string>> type_keys;
    for (const auto& x : s.types) type_keys[x] = {"t" + std::to_string(c.type_colour.at(x))};
    std::map<std::string, std::vector<std::string>> term_keys;
    for (const auto& [f, sg] : s.terms) {
      term_keys[f] = {"f" + std::to_string(c.term_colour.at(f)), "d" + std::to_string(c.type_colour.at(sg.dom)),
                      "c" + std::to_string(c.type_colour.at(sg.cod))};
      type_keys[sg.dom].push_back("out" + std::to_string(c.term_colour.at(f)));
      type_keys[sg.cod].push_back("in" + std::to_string(c.term_colour.at(f)));
    }
    auto tc = [&](const std::string& f) { return std::to_string(c.term_colour.at(f)); };
    auto yc = [&](const std::string& x) { return std::to_string(c.type_colour.at(x)); };
    for (const auto& [site, h] : s.compositions) {
      term_keys[h].push_back("=" + tc(site.first) + ";" + tc(site.second));
      term_keys[site.first].push_back("c1:" + tc(site.second) + ">" + tc(h));
      term_keys[site.second].push_back("c2:" + tc(site.first) + ">" + tc(h));
    }
    for (const auto& [site, t] : s.tuples) {
      term_keys[t].push_back("<" + tc(site.first) + "," + tc(site.second));
      term_keys[site.first].push_back("t1:" + tc(site.second) + ">" + tc(t));
      term_keys[site.second].push_back("t2:" + tc(site.first) + ">" + tc(t));
    }
    for (const auto& [site, cone] : s.products) {
      type_keys[cone.vertex].push_back("x" + yc(site.first) + "*" + yc(site.second));
      type_keys[site.first].push_back("l" + yc(site.second) + ">" + yc(cone.vertex));
      type_keys[site.second].push_back("r" + yc(site.first) + ">" + yc(cone.vertex));
    }
    for (const auto& [l, r] : s.equations) {
      term_keys[l].push_back("e" + tc(r));
      term_keys[r].push_back("e" + tc(l));
    }
    for (auto& [x, keys] : type_keys) {
      std::sort(keys.begin() + 1, keys.end());
      std::string k;
      for (const auto& p : keys) k += p + "|";
      n.type_colour[x] = colour_of(k);
    }
    for (auto& [f, keys] : term_keys) {
      std::sort(keys.begin() + 3, keys.end());
      std::string k;
      for (const auto& p : keys) k += p + "|";
      n.term_colour[f] = colour_of(k);
    }
    return n;
  };
  auto classes = [](const Colouring& c) {
    std::set<int> t, f;
    for (const auto& [_, v] : c.type_colour) t.insert(v);
    for (const auto& [_, v] : c.term_colour) f.insert(v);
    return t.size() + f.size();
  };
  for (int round = 0; round < 32; ++round) {
    std::size_t before = classes(ca) + classes(cb);
    Colouring na = step(a, ca), nb = step(b, cb);
    ca = std::move(na);
    cb = std::move(nb);
    if (classes(ca) + classes(cb) == before && round > 0) break;
  }
  return {ca, cb};
}

}  // namespace detail

/// Searches for an isomorphism `a ≅ b`, optionally pinning some types.
/// Differences in cardinalities or colour histograms are definitive; running
/// out of `budget` search nodes yields `unknown`.
inline IsoResult iso_search(const Specification& a, const Specification& b, std::size_t budget = 200'000,
                            const NameMap& fixed_types = {}) {
  IsoResult res;
  if (counts(a) != counts(b)) {
    res.status = IsoResult::Status::not_isomorphic;
    return res;
  }
  for (const auto& [x, y] : fixed_types)
    if (!a.has_type(x) || !b.has_type(y)) {
      res.status = IsoResult::Status::not_isomorphic;
      return res;
    }
  auto [ca, cb] = detail::refine_colours(a, b, fixed_types);
  auto histogram = [](const std::map<std::string, int>& m) {
    std::map<int, int> h;
    for (const auto& [_, v] : m) ++h[v];
    return h;
  };
  if (histogram(ca.type_colour) != histogram(cb.type_colour) ||
      histogram(ca.term_colour) != histogram(cb.term_colour)) {
    res.status = IsoResult::Status::not_isomorphic;
    return res;
  }

  // Most constrained first: small colour classes.
  auto order_by_class = [](const std::map<std::string, int>& colours) {
    std::map<int, int> size;
    for (const auto& [_, v] : colours) ++size[v];
    std::vector<std::string> order;
    for (const auto& [k, _] : colours) order.push_back(k);
    std::stable_sort(order.begin(), order.end(), [&](const auto& x, const auto& y) {
      return size[colours.at(x)] < size[colours.at(y)];
    });
    return order;
  };
  std::vector<std::string> type_order = order_by_class(ca.type_colour);
  std::vector<std::string> term_order = order_by_class(ca.term_colour);

  SpecMorphism fwd{a, b, {}, {}};
  std::set<std::string> used_types, used_terms;
  std::size_t nodes = 0;
  bool exhausted = false;

  std::function<bool(std::size_t)> terms_from = [&](std::size_t i) -> bool {
    if (++nodes > budget) { exhausted = true; return false; }
    if (i == term_order.size()) {
      if (!validate_morphism(fwd).empty()) return false;
      SpecMorphism bwd{b, a, {}, {}};
      for (const auto& [x, y] : fwd.types) bwd.types[y] = x;
      for (const auto& [x, y] : fwd.terms) bwd.terms[y] = x;
      if (!validate_morphism(bwd).empty()) return false;
      res.backward = bwd;
      return true;
    }
    const std::string& f = term_order[i];
    const TermSig& sg = a.sig(f);
    TermSig want{fwd.types.at(sg.dom), fwd.types.at(sg.cod)};
    int colour = ca.term_colour.at(f);
    for (const auto& [g, gs] : b.terms) {
      if (gs != want || used_terms.count(g) || cb.term_colour.at(g) != colour) continue;
      fwd.terms[f] = g;
      used_terms.insert(g);
      if (terms_from(i + 1)) return true;
      used_terms.erase(g);
      fwd.terms.erase(f);
      if (exhausted) return false;
    }
    return false;
  };
  std::function<bool(std::size_t)> types_from = [&](std::size_t i) -> bool {
    if (++nodes > budget) { exhausted = true; return false; }
    if (i == type_order.size()) return terms_from(0);
    const std::string& x = type_order[i];
    int colour = ca.type_colour.at(x);
    for (const auto& y : b.types) {
      if (used_types.count(y) || cb.type_colour.at(y) != colour) continue;
      if (auto it = fixed_types.find(x); it != fixed_types.end() && it->second != y) continue;
      fwd.types[x] = y;
      used_types.insert(y);
      if (types_from(i + 1)) return true;
      used_types.erase(y);
      fwd.types.erase(x);
      if (exhausted) return false;
    }
    return false;
  };

  if (types_from(0)) {
    res.status = IsoResult::Status::found;
    res.forward = fwd;
  } else {
    res.status = exhausted ? IsoResult::Status::unknown : IsoResult::Status::not_isomorphic;
  }
  return res;
}

inline bool isomorphic(const Specification& a, const Specification& b, const NameMap& fixed_types = {}) {
  return iso_search(a, b, 200'000, fixed_types).found();
}

}  // namespace dialog
