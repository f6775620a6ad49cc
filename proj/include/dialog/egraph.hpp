#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "dialog/expr.hpp"
#include "dialog/spec.hpp"

namespace dialog {

struct CongruenceOptions {
  std::size_t node_cap = 400'000;
};

/// Congruence closure over the terms of a specification, extended with the
/// equational laws of categories with chosen finite products.
///
/// Classes are typed by (dom, cod). Seeds are the declared terms, the marks
/// (identities, composites, tuples, collapsings) and the equations. Each call
/// to `step` applies one round of the laws to the current graph:
///   identity        id . f = f = f . id
///   associativity   (h . g) . f = h . (g . f), both directions
///   beta            p_i . <f1, f2> = f_i
///   fusion          <f1, f2> . h = <f1 . h, f2 . h>
///   eta             h = <p1 . h, p2 . h> for h into a product vertex
///   terminal        h = tu[X] for h : X -> 1
/// followed by a congruence rebuild.
class Congruence {
 public:
  using Options = CongruenceOptions;
  using Id = std::uint32_t;

  explicit Congruence(const Specification& s, Options opts = Options{}) : s_(s), opts_(opts) {
    for (const auto& t : s.types) {
      type_ix_[t] = static_cast<Id>(type_names_.size());
      type_names_.push_back(t);
    }
    for (const auto& [f, _] : s.terms) {
      term_ix_[f] = static_cast<Id>(term_names_.size());
      term_names_.push_back(f);
    }
    for (const auto& [site, cone] : s.products) {
      Record r{type_ix_.at(site.first), type_ix_.at(site.second), type_ix_.at(cone.vertex),
               term_ix_.at(cone.first), term_ix_.at(cone.second)};
      record_of_site_[{r.y1, r.y2}] = records_.size();
      records_.push_back(r);
    }
    if (s.terminal) terminal_ = type_ix_.at(*s.terminal);

    for (const auto& [f, _] : s.terms) atom(f);
    for (const auto& [x, id] : s.identities) merge(atom(id), add_node({Op::identity, type_ix_.at(x), 0}));
    for (const auto& [x, c] : s.collapsings) merge(atom(c), add_node({Op::collapse, type_ix_.at(x), 0}));
    for (const auto& [site, h] : s.compositions)
      merge(atom(h), add_node({Op::compose, atom(site.first), atom(site.second)}));
    for (const auto& [site, t] : s.tuples) merge(atom(t), add_node({Op::tuple, atom(site.first), atom(site.second)}));
    for (const auto& [a, b] : s.equations) merge(atom(a), atom(b));
    rebuild();
  }

  Id atom(const std::string& f) {
    auto it = term_ix_.find(f);
    if (it == term_ix_.end()) throw Error(ErrorKind::invalid_spec, "unknown term " + f);
    return add_node({Op::atom, it->second, 0});
  }

  /// Adds an expression and returns its class. Throws on ill-typed input.
  Id add(const Expr& e) {
    switch (e.kind) {
      case Expr::Kind::atom: return atom(e.name);
      case Expr::Kind::identity: return add_node({Op::identity, type_id(e.name), 0});
      case Expr::Kind::collapse:
        if (!terminal_) throw Error(ErrorKind::invalid_spec, "no terminal type for " + to_string(e));
        return add_node({Op::collapse, type_id(e.name), 0});
      case Expr::Kind::compose: {
        Id f = add(e.args[0]), g = add(e.args[1]);
        if (sig_[find(f)].cod != sig_[find(g)].dom)
          throw Error(ErrorKind::invalid_spec, "ill-typed composite " + to_string(e));
        return add_node({Op::compose, f, g});
      }
      case Expr::Kind::tuple: {
        Id f1 = add(e.args[0]), f2 = add(e.args[1]);
        const Sig &a = sig_[find(f1)], &b = sig_[find(f2)];
        if (a.dom != b.dom || !record_of_site_.count({a.cod, b.cod}))
          throw Error(ErrorKind::invalid_spec, "ill-typed tuple " + to_string(e));
        return add_node({Op::tuple, f1, f2});
      }
    }
    return 0;
  }

  Id find(Id c) const {
    while (parent_[c] != c) c = parent_[c];
    return c;
  }

  bool same(Id a, Id b) const { return find(a) == find(b); }

  std::size_t node_count() const { return nodes_.size(); }

  /// Applies one round of the laws. Returns false when nothing changed.
  bool step() {
    std::size_t before_nodes = nodes_.size();
    std::size_t before_merges = merges_;
    index();
    std::size_t n0 = nodes_.size();
    for (std::size_t i = 0; i < n0; ++i) {
      if (!alive_[i]) continue;
      const Node n = canon(nodes_[i]);
      Id cls = find(node_class_[i]);
      if (n.op != Op::compose) continue;
      Id a = find(n.a), b = find(n.b);
      if (has_identity(a)) merge(cls, b);
      if (has_identity(b)) merge(cls, a);
      for (std::size_t j : nodes_in(b)) {
        Node inner = canon(nodes_[j]);
        if (inner.op == Op::compose) merge(cls, add_node({Op::compose, add_node({Op::compose, a, inner.a}), inner.b}));
        if (inner.op == Op::tuple)
          merge(cls, add_node({Op::tuple, add_node({Op::compose, a, inner.a}), add_node({Op::compose, a, inner.b})}));
        if (inner.op == Op::atom) {
          // Beta: b is a projection and a is a tuple of the same product.
          for (std::size_t k : nodes_in(a)) {
            Node t = canon(nodes_[k]);
            if (t.op != Op::tuple) continue;
            const Record& r = records_[record_of(t)];
            if (inner.a == r.p1) merge(cls, t.a);
            if (inner.a == r.p2) merge(cls, t.b);
          }
        }
      }
      for (std::size_t j : nodes_in(a)) {
        Node inner = canon(nodes_[j]);
        if (inner.op == Op::compose) merge(cls, add_node({Op::compose, inner.a, add_node({Op::compose, inner.b, b})}));
      }
      check_cap();
    }
    // Class-level laws over the classes present at the start of the round.
    std::vector<Id> roots;
    for (const auto& [root, _] : members_) roots.push_back(root);
    for (Id c : roots) {
      Sig sg = sig_[find(c)];
      if (terminal_ && sg.cod == *terminal_ && !has_op(c, Op::collapse))
        merge(c, add_node({Op::collapse, sg.dom, 0}));
      for (std::size_t r = 0; r < records_.size(); ++r) {
        if (records_[r].vertex != sg.cod || has_tuple_of(c, r)) continue;
        Id p1 = add_node({Op::atom, records_[r].p1, 0});
        Id p2 = add_node({Op::atom, records_[r].p2, 0});
        merge(c, add_node({Op::tuple, add_node({Op::compose, c, p1}), add_node({Op::compose, c, p2})}));
      }
      check_cap();
    }
    rebuild();
    return nodes_.size() != before_nodes || merges_ != before_merges;
  }

  /// Runs up to `rounds` rounds, stopping early at a fixpoint.
  std::size_t run(std::size_t rounds) {
    std::size_t done = 0;
    while (done < rounds && step()) ++done;
    return done;
  }

  /// Declared terms grouped by class, each group sorted by name.
  std::vector<std::vector<std::string>> term_classes() const {
    std::map<Id, std::vector<std::string>> groups;
    for (std::size_t i = 0; i < term_names_.size(); ++i) {
      auto it = hashcons_.find(Node{Op::atom, static_cast<Id>(i), 0});
      if (it != hashcons_.end()) groups[find(it->second)].push_back(term_names_[i]);
    }
    std::vector<std::vector<std::string>> out;
    for (auto& [_, g] : groups) out.push_back(std::move(g));
    return out;
  }

 private:
  enum class Op : std::uint8_t { atom, identity, collapse, compose, tuple };
  struct Node {
    Op op;
    Id a;
    Id b;
    bool operator==(const Node&) const = default;
  };
  struct NodeHash {
    std::size_t operator()(const Node& n) const {
      return (static_cast<std::size_t>(n.op) * 0x9e3779b97f4a7c15ULL) ^ (static_cast<std::size_t>(n.a) << 21) ^
             (static_cast<std::size_t>(n.b) * 0x100000001b3ULL);
    }
  };
  struct Sig {
    Id dom;
    Id cod;
  };
  struct Record {
    Id y1, y2, vertex, p1, p2;
  };

  Id type_id(const std::string& t) const {
    auto it = type_ix_.find(t);
    if (it == type_ix_.end()) throw Error(ErrorKind::invalid_spec, "unknown type " + t);
    return it->second;
  }

  Node canon(Node n) const {
    if (n.op == Op::compose || n.op == Op::tuple) {
      n.a = find(n.a);
      n.b = find(n.b);
    }
    return n;
  }

  Sig sig_of(const Node& n) const {
    switch (n.op) {
      case Op::atom: {
        const TermSig& t = s_.sig(term_names_[n.a]);
        return {type_ix_.at(t.dom), type_ix_.at(t.cod)};
      }
      case Op::identity: return {n.a, n.a};
      case Op::collapse: return {n.a, *terminal_};
      case Op::compose: return {sig_[find(n.a)].dom, sig_[find(n.b)].cod};
      case Op::tuple: {
        const Sig &x = sig_[find(n.a)], &y = sig_[find(n.b)];
        return {x.dom, records_[record_of_site_.at({x.cod, y.cod})].vertex};
      }
    }
    return {};
  }

  std::size_t record_of(const Node& tuple) const {
    return record_of_site_.at({sig_[find(tuple.a)].cod, sig_[find(tuple.b)].cod});
  }

  Id add_node(Node n) {
    n = canon(n);
    if (auto it = hashcons_.find(n); it != hashcons_.end()) return find(it->second);
    Id c = static_cast<Id>(parent_.size());
    parent_.push_back(c);
    sig_.push_back(sig_of(n));
    nodes_.push_back(n);
    node_class_.push_back(c);
    alive_.push_back(true);
    hashcons_.emplace(n, c);
    return c;
  }

  void merge(Id a, Id b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (sig_[a].dom != sig_[b].dom || sig_[a].cod != sig_[b].cod)
      throw Error(ErrorKind::invalid_spec, "internal error: merging classes of different types");
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    ++merges_;
  }

  void rebuild() {
    bool changed = true;
    while (changed) {
      changed = false;
      hashcons_.clear();
      for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!alive_[i]) continue;
        nodes_[i] = canon(nodes_[i]);
        Id c = find(node_class_[i]);
        auto [it, fresh] = hashcons_.emplace(nodes_[i], c);
        if (fresh) continue;
        if (find(it->second) != c) {
          merge(it->second, c);
          changed = true;
        } else {
          alive_[i] = false;
        }
      }
    }
    for (auto& [n, c] : hashcons_) c = find(c);
  }

  void index() {
    members_.clear();
    for (std::size_t i = 0; i < nodes_.size(); ++i)
      if (alive_[i]) members_[find(node_class_[i])].push_back(i);
  }

  const std::vector<std::size_t>& nodes_in(Id c) const {
    static const std::vector<std::size_t> none;
    auto it = members_.find(find(c));
    return it == members_.end() ? none : it->second;
  }

  bool has_op(Id c, Op op) const {
    for (std::size_t i : nodes_in(c))
      if (nodes_[i].op == op) return true;
    return false;
  }

  bool has_identity(Id c) const { return has_op(c, Op::identity); }

  bool has_tuple_of(Id c, std::size_t r) const {
    for (std::size_t i : nodes_in(c))
      if (nodes_[i].op == Op::tuple && record_of(nodes_[i]) == r) return true;
    return false;
  }

  void check_cap() const {
    if (nodes_.size() > opts_.node_cap)
      throw Error(ErrorKind::budget_exceeded,
                  "congruence graph exceeded " + std::to_string(opts_.node_cap) + " nodes");
  }

  const Specification& s_;
  Options opts_;
  std::map<std::string, Id> type_ix_, term_ix_;
  std::vector<std::string> type_names_, term_names_;
  std::vector<Record> records_;
  std::map<std::pair<Id, Id>, std::size_t> record_of_site_;
  std::optional<Id> terminal_;

  std::vector<Id> parent_;
  std::vector<Sig> sig_;
  std::vector<Node> nodes_;
  std::vector<Id> node_class_;
  std::vector<bool> alive_;
  std::unordered_map<Node, Id, NodeHash> hashcons_;
  std::map<Id, std::vector<std::size_t>> members_;
  std::size_t merges_ = 0;
};

}  // namespace dialog
