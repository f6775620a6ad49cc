#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "dialog/error.hpp"

namespace dialog {

struct SketchArrow {
  std::string source;
  std::string target;
  auto operator<=>(const SketchArrow&) const = default;
};

/// Non-empty chain of arrows, applied left to right: {a, b} is b∘a.
using ArrowPath = std::vector<std::string>;

/// A potential limit cone: a finite base diagram and one projection per base node.
struct SketchCone {
  struct Edge {
    std::size_t from;
    std::size_t to;
    ArrowPath path;
    auto operator<=>(const Edge&) const = default;
  };
  std::vector<std::string> nodes;
  std::vector<Edge> edges;
  std::vector<ArrowPath> projections;
  auto operator<=>(const SketchCone&) const = default;
};

/// A potential tuple: `arrow` into the vertex of `cone`, with one leg per base node.
struct SketchTuple {
  std::string cone;
  std::vector<ArrowPath> legs;
  auto operator<=>(const SketchTuple&) const = default;
};

struct LimitSketch {
  std::set<std::string> points;
  std::map<std::string, SketchArrow> arrows;
  std::map<std::string, std::string> identities;                              // point -> arrow
  std::map<std::pair<std::string, std::string>, std::string> compositions;    // (f, g) -> g∘f
  std::map<std::string, SketchCone> cones;                                    // keyed by vertex
  std::map<std::string, SketchTuple> tuples;                                  // keyed by arrow
  std::set<std::string> monos;
  std::vector<std::pair<ArrowPath, ArrowPath>> equalities;

  bool operator==(const LimitSketch&) const = default;

  void add_arrow(const std::string& name, const std::string& source, const std::string& target) {
    arrows[name] = {source, target};
  }
};

namespace detail {

// Source and target of a path, or nullopt-like empty strings when malformed.
inline std::pair<std::string, std::string> path_ends(const LimitSketch& sk, const ArrowPath& p) {
  if (p.empty()) return {};
  std::string src, cur;
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto it = sk.arrows.find(p[i]);
    if (it == sk.arrows.end()) return {};
    if (i == 0) src = it->second.source;
    else if (it->second.source != cur) return {};
    cur = it->second.target;
  }
  return {src, cur};
}

inline std::string show_path(const ArrowPath& p) {
  std::string out = "[";
  for (std::size_t i = 0; i < p.size(); ++i) out += (i ? "," : "") + p[i];
  return out + "]";
}

}  // namespace detail

inline std::vector<std::string> validate_sketch(const LimitSketch& sk) {
  std::vector<std::string> out;
  auto check_path = [&](const std::string& what, const ArrowPath& p, const std::string& src,
                        const std::string& tgt) {
    auto [s, t] = detail::path_ends(sk, p);
    if (s.empty()) out.push_back(what + ": path " + detail::show_path(p) + " is not composable");
    else if (s != src || t != tgt)
      out.push_back(what + ": path " + detail::show_path(p) + " goes " + s + " -> " + t + ", expected " + src +
                    " -> " + tgt);
  };

  for (const auto& [a, ar] : sk.arrows) {
    if (!sk.points.count(ar.source)) out.push_back("arrow " + a + ": unknown source " + ar.source);
    if (!sk.points.count(ar.target)) out.push_back("arrow " + a + ": unknown target " + ar.target);
  }
  for (const auto& [x, a] : sk.identities) {
    auto it = sk.arrows.find(a);
    if (it == sk.arrows.end()) out.push_back("identity at " + x + ": unknown arrow " + a);
    else if (it->second.source != x || it->second.target != x)
      out.push_back("identity at " + x + ": arrow " + a + " is " + it->second.source + " -> " + it->second.target);
  }
  for (const auto& [site, h] : sk.compositions) {
    auto f = sk.arrows.find(site.first), g = sk.arrows.find(site.second), hh = sk.arrows.find(h);
    if (f == sk.arrows.end() || g == sk.arrows.end() || hh == sk.arrows.end()) {
      out.push_back("composition " + h + ": unknown arrow");
      continue;
    }
    if (f->second.target != g->second.source)
      out.push_back("composition " + h + ": " + site.first + " and " + site.second + " are not consecutive");
    else if (hh->second != SketchArrow{f->second.source, g->second.target})
      out.push_back("composition " + h + ": arrow has the wrong source or target");
  }
  for (const auto& [v, cone] : sk.cones) {
    if (!sk.points.count(v)) out.push_back("cone at " + v + ": unknown vertex");
    if (cone.projections.size() != cone.nodes.size()) {
      out.push_back("cone at " + v + ": one projection per base node is required");
      continue;
    }
    for (std::size_t i = 0; i < cone.nodes.size(); ++i)
      check_path("cone at " + v + " projection " + std::to_string(i), cone.projections[i], v, cone.nodes[i]);
    for (const auto& e : cone.edges) {
      if (e.from >= cone.nodes.size() || e.to >= cone.nodes.size()) {
        out.push_back("cone at " + v + ": edge refers to a missing node");
        continue;
      }
      check_path("cone at " + v + " base edge", e.path, cone.nodes[e.from], cone.nodes[e.to]);
    }
  }
  std::set<std::pair<std::string, std::vector<ArrowPath>>> tuple_sites;
  for (const auto& [a, tup] : sk.tuples) {
    auto it = sk.arrows.find(a);
    auto c = sk.cones.find(tup.cone);
    if (it == sk.arrows.end() || c == sk.cones.end()) {
      out.push_back("tuple " + a + ": unknown arrow or cone");
      continue;
    }
    if (it->second.target != tup.cone) out.push_back("tuple " + a + ": target is not the cone vertex " + tup.cone);
    if (tup.legs.size() != c->second.nodes.size()) {
      out.push_back("tuple " + a + ": one leg per base node is required");
      continue;
    }
    for (std::size_t i = 0; i < tup.legs.size(); ++i)
      check_path("tuple " + a + " leg " + std::to_string(i), tup.legs[i], it->second.source, c->second.nodes[i]);
    if (!tuple_sites.insert({tup.cone, tup.legs}).second)
      out.push_back("tuple " + a + ": a second tuple on the same legs");
  }
  for (const auto& m : sk.monos)
    if (!sk.arrows.count(m)) out.push_back("mono mark on unknown arrow " + m);
  for (const auto& [l, r] : sk.equalities) {
    auto el = detail::path_ends(sk, l), er = detail::path_ends(sk, r);
    if (el.first.empty() || er.first.empty()) out.push_back("equality " + detail::show_path(l) + " = " +
                                                            detail::show_path(r) + ": path is not composable");
    else if (el != er)
      out.push_back("equality " + detail::show_path(l) + " = " + detail::show_path(r) + ": paths are not parallel");
  }
  return out;
}

/// A set-valued realization with finite sets. Elements are identified by
/// position; labels are for display and for reading specifications back.
struct FiniteRealization {
  std::map<std::string, std::vector<std::string>> sets;
  std::map<std::string, std::vector<std::size_t>> maps;
  bool operator==(const FiniteRealization&) const = default;

  std::size_t size(const std::string& point) const { return sets.at(point).size(); }
  std::size_t apply(const ArrowPath& p, std::size_t x) const {
    for (const auto& a : p) x = maps.at(a).at(x);
    return x;
  }
};

/// All tuples of the finite limit of the realized base of `cone`.
inline std::vector<std::vector<std::size_t>> finite_limit(const SketchCone& cone, const FiniteRealization& r) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> cur(cone.nodes.size());
  std::function<void(std::size_t)> go = [&](std::size_t i) {
    for (const auto& e : cone.edges) {
      std::size_t hi = std::max(e.from, e.to);
      if (hi + 1 == i && r.apply(e.path, cur[e.from]) != cur[e.to]) return;
    }
    if (i == cone.nodes.size()) {
      out.push_back(cur);
      return;
    }
    for (std::size_t x = 0; x < r.size(cone.nodes[i]); ++x) {
      cur[i] = x;
      go(i + 1);
    }
  };
  go(0);
  return out;
}

inline std::vector<std::string> check_realization(const LimitSketch& sk, const FiniteRealization& r) {
  for (const auto& p : sk.points)
    if (!r.sets.count(p)) throw Error(ErrorKind::unassigned_point, "no set for point " + p);
  for (const auto& [a, _] : sk.arrows)
    if (!r.maps.count(a)) throw Error(ErrorKind::unassigned_arrow, "no function for arrow " + a);

  std::vector<std::string> out;
  for (const auto& [a, ar] : sk.arrows) {
    const auto& table = r.maps.at(a);
    std::size_t n = r.size(ar.source), m = r.size(ar.target);
    if (table.size() != n) out.push_back("arrow " + a + ": table has the wrong size");
    else if (std::any_of(table.begin(), table.end(), [&](std::size_t y) { return y >= m; }))
      out.push_back("arrow " + a + ": value outside the target set");
  }
  if (!out.empty()) return out;

  for (const auto& [x, a] : sk.identities)
    for (std::size_t e = 0; e < r.size(x); ++e)
      if (r.maps.at(a)[e] != e) {
        out.push_back("identity " + a + " is not realized as the identity");
        break;
      }
  for (const auto& [site, h] : sk.compositions)
    for (std::size_t e = 0; e < r.size(sk.arrows.at(h).source); ++e)
      if (r.apply({site.first, site.second}, e) != r.maps.at(h)[e]) {
        out.push_back("composition " + h + " is not realized as the composite");
        break;
      }
  for (const auto& [v, cone] : sk.cones) {
    auto limit = finite_limit(cone, r);
    std::set<std::vector<std::size_t>> hit;
    bool commutes = true;
    for (std::size_t e = 0; e < r.size(v); ++e) {
      std::vector<std::size_t> t;
      for (const auto& p : cone.projections) t.push_back(r.apply(p, e));
      for (const auto& ed : cone.edges)
        if (r.apply(ed.path, t[ed.from]) != t[ed.to]) commutes = false;
      hit.insert(t);
    }
    if (!commutes) out.push_back("cone at " + v + ": projections do not commute with the base");
    else if (hit.size() != r.size(v) || hit.size() != limit.size())
      out.push_back("cone at " + v + ": not a limit (" + std::to_string(r.size(v)) + " elements, limit has " +
                    std::to_string(limit.size()) + ")");
  }
  for (const auto& [a, tup] : sk.tuples) {
    const SketchCone& cone = sk.cones.at(tup.cone);
    for (std::size_t e = 0; e < r.size(sk.arrows.at(a).source); ++e) {
      bool ok = true;
      for (std::size_t i = 0; i < cone.nodes.size(); ++i)
        if (r.apply(cone.projections[i], r.maps.at(a)[e]) != r.apply(tup.legs[i], e)) ok = false;
      if (!ok) {
        out.push_back("tuple " + a + " is not realized as the mediating function");
        break;
      }
    }
  }
  for (const auto& a : sk.monos) {
    const auto& t = r.maps.at(a);
    if (std::set<std::size_t>(t.begin(), t.end()).size() != t.size())
      out.push_back("mono " + a + " is not injective");
  }
  for (const auto& [l, rr] : sk.equalities) {
    const std::string& src = sk.arrows.at(l.front()).source;
    for (std::size_t e = 0; e < r.size(src); ++e)
      if (r.apply(l, e) != r.apply(rr, e)) {
        out.push_back("equality " + detail::show_path(l) + " = " + detail::show_path(rr) + " fails");
        break;
      }
  }
  return out;
}

struct SketchMorphism {
  LimitSketch source;
  LimitSketch target;
  std::map<std::string, std::string> points;
  std::map<std::string, std::string> arrows;
};

inline std::vector<std::string> validate_sketch_morphism(const SketchMorphism& m) {
  std::vector<std::string> out;
  auto pt = [&](const std::string& p) {
    auto it = m.points.find(p);
    return it == m.points.end() ? std::string() : it->second;
  };
  auto ar = [&](const std::string& a) {
    auto it = m.arrows.find(a);
    return it == m.arrows.end() ? std::string() : it->second;
  };
  auto path = [&](const ArrowPath& p) {
    ArrowPath q;
    for (const auto& a : p) q.push_back(ar(a));
    return q;
  };
  for (const auto& p : m.source.points)
    if (!m.target.points.count(pt(p))) out.push_back("point " + p + " is not mapped into the target");
  for (const auto& [a, arrow] : m.source.arrows) {
    auto it = m.target.arrows.find(ar(a));
    if (it == m.target.arrows.end()) out.push_back("arrow " + a + " is not mapped into the target");
    else if (it->second != SketchArrow{pt(arrow.source), pt(arrow.target)})
      out.push_back("arrow " + a + ": endpoints are not preserved");
  }
  if (!out.empty()) return out;
  for (const auto& [x, a] : m.source.identities) {
    auto it = m.target.identities.find(pt(x));
    if (it == m.target.identities.end() || it->second != ar(a)) out.push_back("identity " + a + " is not preserved");
  }
  for (const auto& [site, h] : m.source.compositions) {
    auto it = m.target.compositions.find({ar(site.first), ar(site.second)});
    if (it == m.target.compositions.end() || it->second != ar(h)) out.push_back("composition " + h + " is not preserved");
  }
  for (const auto& [v, cone] : m.source.cones) {
    auto it = m.target.cones.find(pt(v));
    bool ok = it != m.target.cones.end() && it->second.nodes.size() == cone.nodes.size() &&
              it->second.edges.size() == cone.edges.size();
    if (ok) {
      for (std::size_t i = 0; i < cone.nodes.size(); ++i)
        ok = ok && it->second.nodes[i] == pt(cone.nodes[i]) && it->second.projections[i] == path(cone.projections[i]);
      for (std::size_t i = 0; i < cone.edges.size(); ++i)
        ok = ok && it->second.edges[i] == SketchCone::Edge{cone.edges[i].from, cone.edges[i].to, path(cone.edges[i].path)};
    }
    if (!ok) out.push_back("cone at " + v + " is not preserved");
  }
  for (const auto& [a, tup] : m.source.tuples) {
    auto it = m.target.tuples.find(ar(a));
    bool ok = it != m.target.tuples.end() && it->second.cone == pt(tup.cone) && it->second.legs.size() == tup.legs.size();
    for (std::size_t i = 0; ok && i < tup.legs.size(); ++i) ok = it->second.legs[i] == path(tup.legs[i]);
    if (!ok) out.push_back("tuple " + a + " is not preserved");
  }
  for (const auto& a : m.source.monos)
    if (!m.target.monos.count(ar(a))) out.push_back("mono mark on " + a + " is not preserved");
  for (const auto& [l, r] : m.source.equalities) {
    auto pl = path(l), pr = path(r);
    bool ok = pl == pr;
    for (const auto& [tl, tr] : m.target.equalities) ok = ok || (tl == pl && tr == pr) || (tl == pr && tr == pl);
    if (!ok) out.push_back("equality " + detail::show_path(l) + " = " + detail::show_path(r) + " is not preserved");
  }
  return out;
}

/// Realization of the source obtained by precomposing with `m`.
inline FiniteRealization restrict_realization(const SketchMorphism& m, const FiniteRealization& r) {
  FiniteRealization out;
  for (const auto& p : m.source.points) out.sets[p] = r.sets.at(m.points.at(p));
  for (const auto& [a, _] : m.source.arrows) out.maps[a] = r.maps.at(m.arrows.at(a));
  return out;
}

}  // namespace dialog
