#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dialog/expr.hpp"
#include "dialog/morphism.hpp"
#include "dialog/spec.hpp"

namespace dialog {

/// A set-valued model with finite carriers. Elements are indices into the
/// carrier; labels are for display. Product carriers are lists of pairs in
/// lexicographic order, so the pair (i, j) of Y1 x Y2 sits at i * |Y2| + j.
struct FiniteModel {
  std::map<std::string, std::vector<std::string>> carriers;
  std::map<std::string, std::vector<std::size_t>> functions;

  bool operator==(const FiniteModel&) const = default;
  auto operator<=>(const FiniteModel&) const = default;

  std::size_t size(const std::string& type) const { return carriers.at(type).size(); }
};

using CarrierSizes = std::map<std::string, std::size_t>;

inline std::vector<std::string> numbered_labels(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(std::to_string(i));
  return v;
}

inline std::vector<std::string> pair_labels(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> v;
  for (const auto& x : a)
    for (const auto& y : b) v.push_back("(" + x + "," + y + ")");
  return v;
}

/// Types whose carrier is determined by the others: the terminal type and product vertices.
inline bool is_derived_type(const Specification& s, const std::string& t) {
  return (s.terminal && *s.terminal == t) || !s.products_at(t).empty();
}

inline std::vector<std::string> base_types(const Specification& s) {
  std::vector<std::string> out;
  for (const auto& t : s.types)
    if (!is_derived_type(s, t)) out.push_back(t);
  return out;
}

/// Carriers of all types from labels of the base types (or from `fixed`).
inline std::map<std::string, std::vector<std::string>> derive_carriers(
    const Specification& s, const std::map<std::string, std::vector<std::string>>& base) {
  std::map<std::string, std::vector<std::string>> out;
  std::set<std::string> visiting;
  std::function<const std::vector<std::string>&(const std::string&)> get =
      [&](const std::string& t) -> const std::vector<std::string>& {
    if (auto it = out.find(t); it != out.end()) return it->second;
    if (s.terminal && *s.terminal == t) {
      if (!s.products_at(t).empty())
        throw Error(ErrorKind::invalid_spec, "terminal type " + t + " is also a product vertex");
      return out[t] = {"*"};
    }
    auto prods = s.products_at(t);
    if (prods.size() > 1) throw Error(ErrorKind::invalid_spec, "type " + t + " is the vertex of two products");
    if (prods.size() == 1) {
      if (!visiting.insert(t).second) throw Error(ErrorKind::invalid_spec, "cyclic product at " + t);
      auto v = pair_labels(get(prods[0].first.first), get(prods[0].first.second));
      visiting.erase(t);
      return out[t] = std::move(v);
    }
    auto it = base.find(t);
    if (it == base.end()) throw Error(ErrorKind::unassigned, "no carrier for type " + t);
    return out[t] = it->second;
  };
  for (const auto& t : s.types) get(t);
  return out;
}

inline std::map<std::string, std::vector<std::string>> derive_carriers(const Specification& s,
                                                                       const CarrierSizes& sizes) {
  std::map<std::string, std::vector<std::string>> base;
  for (const auto& [t, n] : sizes) base[t] = numbered_labels(n);
  return derive_carriers(s, base);
}

namespace detail {

// Functions of marked terms that follow from the carriers and other functions.
// Returns false on a conflict with an already assigned table.
inline bool propagate(const Specification& s, FiniteModel& m) {
  bool changed = true;
  auto put = [&](const std::string& f, std::vector<std::size_t> table) {
    auto [it, fresh] = m.functions.try_emplace(f, std::move(table));
    if (fresh) {
      changed = true;
      return true;
    }
    return it->second == table;
  };
  bool ok = true;
  // Structural ones first.
  for (const auto& [x, id] : s.identities) {
    std::vector<std::size_t> t(m.size(x));
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = i;
    ok = ok && put(id, t);
  }
  for (const auto& [site, cone] : s.products) {
    std::size_t n2 = m.size(site.second);
    std::vector<std::size_t> a(m.size(cone.vertex)), b(m.size(cone.vertex));
    for (std::size_t i = 0; i < a.size(); ++i) {
      a[i] = i / n2;
      b[i] = i % n2;
    }
    ok = ok && put(cone.first, a) && put(cone.second, b);
  }
  for (const auto& [x, c] : s.collapsings) ok = ok && put(c, std::vector<std::size_t>(m.size(x), 0));
  while (ok && changed) {
    changed = false;
    for (const auto& [site, h] : s.compositions) {
      auto f = m.functions.find(site.first), g = m.functions.find(site.second);
      if (f == m.functions.end() || g == m.functions.end()) continue;
      std::vector<std::size_t> t(f->second.size());
      for (std::size_t i = 0; i < t.size(); ++i) t[i] = g->second[f->second[i]];
      ok = ok && put(h, t);
    }
    for (const auto& [site, tup] : s.tuples) {
      auto f1 = m.functions.find(site.first), f2 = m.functions.find(site.second);
      if (f1 == m.functions.end() || f2 == m.functions.end()) continue;
      std::size_t n2 = m.size(s.sig(site.second).cod);
      std::vector<std::size_t> t(f1->second.size());
      for (std::size_t i = 0; i < t.size(); ++i) t[i] = f1->second[i] * n2 + f2->second[i];
      ok = ok && put(tup, t);
    }
  }
  return ok;
}

// Terms whose function is not forced by a potential feature.
inline std::vector<std::string> free_terms(const Specification& s) {
  std::set<std::string> forced;
  for (const auto& [_, id] : s.identities) forced.insert(id);
  for (const auto& [_, c] : s.collapsings) forced.insert(c);
  for (const auto& [_, h] : s.compositions) forced.insert(h);
  for (const auto& [_, t] : s.tuples) forced.insert(t);
  for (const auto& [_, cone] : s.products) {
    forced.insert(cone.first);
    forced.insert(cone.second);
  }
  std::vector<std::string> out;
  for (const auto& [f, _] : s.terms)
    if (!forced.count(f)) out.push_back(f);
  return out;
}

}  // namespace detail

inline std::vector<std::string> check_model(const Specification& s, const FiniteModel& m) {
  for (const auto& t : s.types)
    if (!m.carriers.count(t)) throw Error(ErrorKind::unassigned, "no carrier for type " + t);
  for (const auto& [f, _] : s.terms)
    if (!m.functions.count(f)) throw Error(ErrorKind::unassigned, "no function for term " + f);

  std::vector<std::string> out;
  for (const auto& [f, sig] : s.terms) {
    const auto& t = m.functions.at(f);
    if (t.size() != m.size(sig.dom)) out.push_back("term " + f + ": table does not cover " + sig.dom);
    else if (std::any_of(t.begin(), t.end(), [&](std::size_t y) { return y >= m.size(sig.cod); }))
      out.push_back("term " + f + ": value outside " + sig.cod);
  }
  if (!out.empty()) return out;

  if (s.terminal && m.size(*s.terminal) != 1) out.push_back("terminal type " + *s.terminal + " is not a singleton");
  for (const auto& [site, cone] : s.products) {
    std::size_t n1 = m.size(site.first), n2 = m.size(site.second);
    if (m.size(cone.vertex) != n1 * n2) {
      out.push_back("product " + cone.vertex + " is not the set of pairs");
      continue;
    }
    const auto& a = m.functions.at(cone.first);
    const auto& b = m.functions.at(cone.second);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != i / n2 || b[i] != i % n2) {
        out.push_back("product " + cone.vertex + ": projections are not the coordinate projections");
        break;
      }
  }
  if (!out.empty()) return out;

  for (const auto& [x, id] : s.identities) {
    const auto& t = m.functions.at(id);
    for (std::size_t i = 0; i < t.size(); ++i)
      if (t[i] != i) {
        out.push_back("identity " + id + " is not the identity");
        break;
      }
  }
  for (const auto& [site, h] : s.compositions) {
    const auto& f = m.functions.at(site.first);
    const auto& g = m.functions.at(site.second);
    const auto& t = m.functions.at(h);
    for (std::size_t i = 0; i < t.size(); ++i)
      if (t[i] != g[f[i]]) {
        out.push_back("composition " + h + " is not the composite");
        break;
      }
  }
  for (const auto& [site, tup] : s.tuples) {
    const auto& f1 = m.functions.at(site.first);
    const auto& f2 = m.functions.at(site.second);
    const auto& t = m.functions.at(tup);
    std::size_t n2 = m.size(s.sig(site.second).cod);
    for (std::size_t i = 0; i < t.size(); ++i)
      if (t[i] != f1[i] * n2 + f2[i]) {
        out.push_back("tuple " + tup + " is not the pairing");
        break;
      }
  }
  for (const auto& [a, b] : s.equations)
    if (m.functions.at(a) != m.functions.at(b)) out.push_back("equation " + a + " = " + b + " fails");
  return out;
}

/// Pointwise value of an expression, as a table over the domain's carrier.
inline std::vector<std::size_t> evaluate(const Specification& s, const FiniteModel& m, const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::atom: return m.functions.at(e.name);
    case Expr::Kind::identity: {
      std::vector<std::size_t> t(m.size(e.name));
      for (std::size_t i = 0; i < t.size(); ++i) t[i] = i;
      return t;
    }
    case Expr::Kind::collapse: return std::vector<std::size_t>(m.size(e.name), 0);
    case Expr::Kind::compose: {
      auto f = evaluate(s, m, e.args[0]);
      auto g = evaluate(s, m, e.args[1]);
      for (auto& x : f) x = g.at(x);
      return f;
    }
    case Expr::Kind::tuple: {
      auto f1 = evaluate(s, m, e.args[0]);
      auto f2 = evaluate(s, m, e.args[1]);
      auto sig = type_of(s, e.args[1]);
      if (!sig) throw Error(ErrorKind::invalid_spec, "ill-typed expression " + to_string(e));
      std::size_t n2 = m.size(sig->cod);
      for (std::size_t i = 0; i < f1.size(); ++i) f1[i] = f1[i] * n2 + f2.at(i);
      return f1;
    }
  }
  return {};
}

struct EnumerationOptions {
  double cap = 1e7;  // candidate assignments of free terms
};

/// All models of `s` whose base carriers are given and which extend `fixed`,
/// in lexicographic order of the free terms' tables (terms by name, entry 0
/// most significant).
inline std::vector<FiniteModel> enumerate_models(const Specification& s, const CarrierSizes& base_carriers,
                                                 const FiniteModel& fixed = {}, EnumerationOptions opts = {}) {
  std::map<std::string, std::vector<std::string>> base;
  for (const auto& [t, n] : base_carriers) base[t] = numbered_labels(n);
  for (const auto& [t, labels] : fixed.carriers) base[t] = labels;

  FiniteModel start;
  start.carriers = derive_carriers(s, base);
  for (const auto& [t, labels] : fixed.carriers)
    if (s.has_type(t) && start.carriers.at(t).size() != labels.size())
      throw Error(ErrorKind::invalid_spec, "fixed carrier of " + t + " disagrees with its structure");
  for (const auto& [f, table] : fixed.functions)
    if (s.has_term(f)) start.functions[f] = table;

  std::vector<std::string> free;
  for (const auto& f : detail::free_terms(s))
    if (!start.functions.count(f)) free.push_back(f);
  double candidates = 1;
  for (const auto& f : free) {
    const auto& sig = s.sig(f);
    for (std::size_t i = 0; i < start.size(sig.dom); ++i) candidates *= static_cast<double>(start.size(sig.cod));
    if (candidates > opts.cap)
      throw Error(ErrorKind::search_space_too_large,
                  "more than " + std::to_string(static_cast<long long>(opts.cap)) + " candidate models");
  }

  std::vector<FiniteModel> out;
  auto consistent = [&](const FiniteModel& m) {
    for (const auto& [a, b] : s.equations) {
      auto ia = m.functions.find(a), ib = m.functions.find(b);
      if (ia != m.functions.end() && ib != m.functions.end() && ia->second != ib->second) return false;
    }
    return true;
  };
  std::function<void(std::size_t, FiniteModel)> go = [&](std::size_t i, FiniteModel m) {
    if (!detail::propagate(s, m) || !consistent(m)) return;
    if (i == free.size()) {
      if (check_model(s, m).empty()) out.push_back(std::move(m));
      return;
    }
    const auto& sig = s.sig(free[i]);
    std::size_t n = m.size(sig.dom), k = m.size(sig.cod);
    if (n > 0 && k == 0) return;
    std::vector<std::size_t> table(n, 0);
    while (true) {
      FiniteModel next = m;
      next.functions[free[i]] = table;
      go(i + 1, std::move(next));
      // Odometer with the last entry least significant.
      std::size_t pos = n;
      while (pos > 0 && ++table[pos - 1] == k) table[--pos] = 0;
      if (pos == 0) break;
    }
  };
  go(0, start);
  return out;
}

/// Per-type components of a model homomorphism.
struct ModelHom {
  std::map<std::string, std::vector<std::size_t>> components;
  bool operator==(const ModelHom&) const = default;
};

/// All homomorphisms `m -> n`. Components of product and terminal types are
/// forced; components listed in `fixed` are used as given.
inline std::vector<ModelHom> hom_search(const Specification& s, const FiniteModel& m, const FiniteModel& n,
                                        const std::map<std::string, std::vector<std::size_t>>& fixed = {},
                                        double cap = 1e7) {
  std::vector<std::string> free;
  double candidates = 1;
  for (const auto& t : base_types(s)) {
    if (fixed.count(t)) continue;
    free.push_back(t);
    for (std::size_t i = 0; i < m.size(t); ++i) candidates *= static_cast<double>(n.size(t));
    if (candidates > cap) throw Error(ErrorKind::search_space_too_large, "too many candidate homomorphisms");
  }

  std::vector<ModelHom> out;
  ModelHom h;
  for (const auto& [t, c] : fixed)
    if (s.has_type(t)) h.components[t] = c;

  // Fills in the forced components that can be computed; false on conflict.
  auto derive = [&](ModelHom& hom) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& t : s.types) {
        if (hom.components.count(t)) continue;
        if (s.terminal && *s.terminal == t) {
          hom.components[t] = {0};
          changed = true;
          continue;
        }
        auto prods = s.products_at(t);
        if (prods.empty()) continue;
        const auto& [y1, y2] = prods[0].first;
        auto c1 = hom.components.find(y1), c2 = hom.components.find(y2);
        if (c1 == hom.components.end() || c2 == hom.components.end()) continue;
        std::size_t m2 = m.size(y2), n2 = n.size(y2);
        std::vector<std::size_t> c(m.size(t));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = c1->second[i / m2] * n2 + c2->second[i % m2];
        hom.components[t] = c;
        changed = true;
      }
    }
  };
  auto commutes = [&](const ModelHom& hom) {
    for (const auto& [f, sig] : s.terms) {
      auto hd = hom.components.find(sig.dom), hc = hom.components.find(sig.cod);
      if (hd == hom.components.end() || hc == hom.components.end()) continue;
      const auto& mf = m.functions.at(f);
      const auto& nf = n.functions.at(f);
      for (std::size_t x = 0; x < mf.size(); ++x)
        if (hc->second[mf[x]] != nf[hd->second[x]]) return false;
    }
    return true;
  };

  std::function<void(std::size_t, ModelHom)> go = [&](std::size_t i, ModelHom hom) {
    derive(hom);
    if (!commutes(hom)) return;
    if (i == free.size()) {
      out.push_back(std::move(hom));
      return;
    }
    std::size_t a = m.size(free[i]), b = n.size(free[i]);
    if (a > 0 && b == 0) return;
    std::vector<std::size_t> c(a, 0);
    while (true) {
      ModelHom next = hom;
      next.components[free[i]] = c;
      go(i + 1, std::move(next));
      std::size_t pos = a;
      while (pos > 0 && ++c[pos - 1] == b) c[--pos] = 0;
      if (pos == 0) break;
    }
  };
  go(0, h);
  return out;
}

/// The model of `u.source` obtained by precomposing with `u`.
inline FiniteModel restrict_model(const SpecMorphism& u, const FiniteModel& m) {
  FiniteModel out;
  for (const auto& t : u.source.types) out.carriers[t] = m.carriers.at(u.type(t));
  for (const auto& [f, _] : u.source.terms) out.functions[f] = m.functions.at(u.term(f));
  return out;
}

/// Restriction of `m` to the types and terms of a subspecification.
inline FiniteModel restrict_model(const Specification& sub, const FiniteModel& m) {
  FiniteModel out;
  for (const auto& t : sub.types) out.carriers[t] = m.carriers.at(t);
  for (const auto& [f, _] : sub.terms) out.functions[f] = m.functions.at(f);
  return out;
}

/// Completes a model whose free terms are all given by computing the marked terms.
inline FiniteModel complete_model(const Specification& s, FiniteModel m) {
  if (!detail::propagate(s, m)) throw Error(ErrorKind::invalid_spec, "model conflicts with marked features");
  return m;
}

}  // namespace dialog
