#ifndef TGP_TESTS_SUPPORT_HPP
#define TGP_TESTS_SUPPORT_HPP

#include "tgp/io.hpp"

#include <random>

namespace tgp::test {

inline std::string fixture(const std::string &name) { return std::string(TGP_FIXTURES) + "/" + name; }

inline Specification load_spec(const std::string &name) { return parse_spec(read_file(fixture(name))); }
inline Graph load_model(const std::string &name) { return parse_model(read_file(fixture(name))); }
inline TripleGraph load_triple(const std::string &name) { return parse_triple(read_file(fixture(name))); }

inline const Pattern &pattern(const Specification &s, const std::string &name) {
  const Pattern *p = s.find(name);
  if (!p)
    throw std::runtime_error("no pattern " + name);
  return *p;
}

inline const AnnotatedPattern &annotated(const std::vector<AnnotatedPattern> &list, const std::string &name) {
  for (const auto &a : list)
    if (a.pattern.name == name)
      return a;
  throw std::runtime_error("no annotated pattern " + name);
}

inline std::vector<std::string> names(const std::vector<AnnotatedPattern> &list) {
  std::vector<std::string> out;
  for (const auto &a : list)
    out.push_back(a.pattern.name);
  return out;
}

// A: e A->A, f A->B. Small enough for exhaustive checks, has loops and parallel edges.
inline TypeGraph small_types() {
  TypeGraph t;
  t.node_types = {"A", "B"};
  t.edge_types = {{"e", {"A", "A"}}, {"f", {"A", "B"}}};
  return t;
}

inline Graph random_graph(std::mt19937_64 &rng, std::size_t max_nodes, std::size_t max_edges,
                          const std::string &prefix = "") {
  const TypeGraph types = small_types();
  Graph g;
  std::uniform_int_distribution<std::size_t> nn(0, max_nodes), ne(0, max_edges), coin(0, 1);
  const std::size_t n = nn(rng);
  std::vector<std::string> as, bs;
  for (std::size_t i = 0; i < n; ++i) {
    const bool a = coin(rng) == 0 || i == 0;
    const std::string id = prefix + "n" + std::to_string(i);
    g.add_node(id, a ? "A" : "B");
    (a ? as : bs).push_back(id);
  }
  if (as.empty())
    return g;
  const std::size_t m = ne(rng);
  for (std::size_t i = 0; i < m; ++i) {
    std::uniform_int_distribution<std::size_t> pa(0, as.size() - 1);
    const std::string src = as[pa(rng)];
    if (!bs.empty() && coin(rng)) {
      std::uniform_int_distribution<std::size_t> pb(0, bs.size() - 1);
      g.add_edge(prefix + "e" + std::to_string(i), "f", src, bs[pb(rng)]);
    } else {
      g.add_edge(prefix + "e" + std::to_string(i), "e", src, as[pa(rng)]);
    }
  }
  return g;
}

/// Random closed sub-selection of `g`: random nodes plus random edges among them.
inline IdSet random_closed_subset(std::mt19937_64 &rng, const Graph &g) {
  std::bernoulli_distribution keep(0.6);
  IdSet ids;
  for (const auto &[id, _] : g.nodes())
    if (keep(rng))
      ids.insert(id);
  for (const auto &[id, e] : g.edges())
    if (ids.count(e.source) && ids.count(e.target) && keep(rng))
      ids.insert(id);
  return ids;
}

/// Renames every element of `g` with a prefix, reversing the id order.
inline Graph renamed(const Graph &g, const std::string &prefix) {
  Graph out;
  auto name = [&](const std::string &id) { return prefix + "~" + id; };
  for (const auto &[id, t] : g.nodes())
    out.add_node(name(id), t);
  for (const auto &[id, e] : g.edges())
    out.add_edge(name(id), e.type, name(e.source), name(e.target));
  return out;
}

/// Source A, target B, e: A->A and f: B->B, corr "rel" unconstrained.
inline MetamodelTriple small_metamodel() {
  MetamodelTriple mm;
  mm.source.node_types = {"A"};
  mm.source.edge_types = {{"e", {"A", "A"}}};
  mm.target.node_types = {"B"};
  mm.target.edge_types = {{"f", {"B", "B"}}};
  return mm;
}

inline TripleGraph random_triple(std::mt19937_64 &rng, std::size_t max_nodes, std::size_t max_edges) {
  TripleGraph t;
  std::uniform_int_distribution<std::size_t> nn(0, max_nodes), ne(0, max_edges);
  auto side = [&](Graph &g, const std::string &p, const std::string &type, const std::string &edge) {
    const std::size_t n = nn(rng);
    for (std::size_t i = 0; i < n; ++i)
      g.add_node(p + std::to_string(i), type);
    if (n == 0)
      return;
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    const std::size_t m = ne(rng);
    for (std::size_t i = 0; i < m; ++i)
      g.add_edge(p + "e" + std::to_string(i), edge, p + std::to_string(pick(rng)), p + std::to_string(pick(rng)));
  };
  side(t.source, "a", "A", "e");
  side(t.target, "b", "B", "f");
  if (!t.source.nodes().empty() && !t.target.nodes().empty()) {
    std::uniform_int_distribution<std::size_t> ps(0, t.source.nodes().size() - 1),
        pt(0, t.target.nodes().size() - 1), nc(0, 2);
    const std::size_t c = nc(rng);
    for (std::size_t i = 0; i < c; ++i)
      t.add_corr("k" + std::to_string(i), "rel", "a" + std::to_string(ps(rng)), "b" + std::to_string(pt(rng)));
  }
  return t;
}

/// Random sub-triple: drops elements at random, then anything left dangling.
inline TripleGraph random_subtriple(std::mt19937_64 &rng, const TripleGraph &x) {
  std::bernoulli_distribution keep_it(0.65);
  IdSet keep;
  for (const auto &id : x.ids())
    if (keep_it(rng))
      keep.insert(id);
  auto closed = [&](const std::string &a, const std::string &b) { return keep.count(a) && keep.count(b); };
  for (const auto &[id, e] : x.source.edges())
    if (!closed(e.source, e.target))
      keep.erase(id);
  for (const auto &[id, e] : x.target.edges())
    if (!closed(e.source, e.target))
      keep.erase(id);
  for (const auto &[id, c] : x.corr)
    if (!closed(c.source, c.target))
      keep.erase(id);
  return subtriple(x, keep);
}

/// Every triple over `mm` with at most `max_elements` nodes, edges and corr nodes in
/// total, parallel edges and parallel corr nodes included. Isomorphic copies repeat.
inline void for_each_host(const MetamodelTriple &mm, std::size_t max_elements,
                          const std::function<void(const TripleGraph &)> &visit) {
  struct Slot {
    Side side;
    std::string type, from, to;
  };
  std::vector<std::pair<Side, std::string>> kinds;
  for (const auto &t : mm.source.node_types)
    kinds.push_back({Side::Source, t});
  for (const auto &t : mm.target.node_types)
    kinds.push_back({Side::Target, t});

  std::vector<std::size_t> counts(kinds.size(), 0);
  std::function<void(std::size_t, std::size_t)> nodes = [&](std::size_t k, std::size_t left) {
    if (k < kinds.size()) {
      for (std::size_t n = 0; n <= left; ++n) {
        counts[k] = n;
        nodes(k + 1, left - n);
      }
      counts[k] = 0;
      return;
    }
    TripleGraph base;
    std::map<std::string, std::vector<std::string>> src_of, tgt_of;
    for (std::size_t i = 0; i < kinds.size(); ++i)
      for (std::size_t n = 0; n < counts[i]; ++n) {
        const std::string id = (kinds[i].first == Side::Source ? "s" : "t") + kinds[i].second + std::to_string(n);
        base.side(kinds[i].first).add_node(id, kinds[i].second);
        (kinds[i].first == Side::Source ? src_of : tgt_of)[kinds[i].second].push_back(id);
      }
    std::vector<Slot> slots;
    auto edges = [&](Side side, const TypeGraph &tg, std::map<std::string, std::vector<std::string>> &of) {
      for (const auto &[et, ends] : tg.edge_types)
        for (const auto &x : of[ends.source])
          for (const auto &y : of[ends.target])
            slots.push_back({side, et, x, y});
    };
    edges(Side::Source, mm.source, src_of);
    edges(Side::Target, mm.target, tgt_of);
    for (const auto &[x, _] : base.source.nodes())
      for (const auto &[y, __] : base.target.nodes())
        for (const auto &[ct, c] : mm.corr_types)
          if ((!c.source_type || *c.source_type == base.source.node_type(x)) &&
              (!c.target_type || *c.target_type == base.target.node_type(y)))
            slots.push_back({Side::Corr, ct, x, y});
    // multisets of slots, non-decreasing index order
    TripleGraph h = base;
    std::size_t serial = 0;
    std::function<void(std::size_t, std::size_t)> extend = [&](std::size_t from, std::size_t budget) {
      visit(h);
      if (budget == 0)
        return;
      for (std::size_t i = from; i < slots.size(); ++i) {
        const Slot &sl = slots[i];
        const std::string id = "x" + std::to_string(serial++);
        const TripleGraph saved = h;
        if (sl.side == Side::Corr)
          h.add_corr(id, sl.type, sl.from, sl.to);
        else
          h.side(sl.side).add_edge(id, sl.type, sl.from, sl.to);
        extend(i, budget - 1);
        h = saved;
      }
    };
    extend(0, left);
  };
  nodes(0, max_elements);
}

// Toy patterns over small_metamodel().

inline TripleGraph square(const std::string &a, const std::string &b, const std::string &k) {
  TripleGraph t;
  t.source.add_node(a, "A");
  t.target.add_node(b, "B");
  t.add_corr(k, "rel", a, b);
  return t;
}

// a -k- b, forbidding an e-loop on a
inline Pattern ab() {
  Pattern p;
  p.name = "AB";
  p.positive = square("a", "b", "k");
  TripleGraph loop = p.positive;
  loop.source.add_edge("l", "e", "a", "a");
  p.neg_pre.push_back({"noLoop", loop});
  return p;
}

// two related squares joined by e on the source and f on the target
inline Pattern ef() {
  Pattern p;
  p.name = "EF";
  p.positive = square("a1", "b1", "k1");
  p.positive.source.add_node("a2", "A");
  p.positive.target.add_node("b2", "B");
  p.positive.add_corr("k2", "rel", "a2", "b2");
  p.positive.source.add_edge("e", "e", "a1", "a2");
  p.positive.target.add_edge("f", "f", "b1", "b2");
  return p;
}

// a looped square that requires the square itself
inline Pattern loops() {
  Pattern p;
  p.name = "LL";
  p.kind = PatternKind::C;
  p.positive = square("a", "b", "k");
  p.pre = p.positive;
  p.positive.source.add_edge("la", "e", "a", "a");
  p.positive.target.add_edge("lb", "f", "b", "b");
  return p;
}

inline Pattern ef_composite() {
  Pattern p = ef();
  p.name = "EFc";
  p.kind = PatternKind::C;
  p.pre = subtriple(p.positive, {"a1", "b1", "k1"});
  return p;
}

// forbids an f-loop
inline Pattern no_loop_b() {
  Pattern n;
  n.name = "noLoopB";
  n.kind = PatternKind::N;
  TripleGraph f;
  f.target.add_node("y", "B");
  f.target.add_edge("l", "f", "y", "y");
  n.neg_post.push_back({"noLoopB", f});
  return n;
}

inline Specification with(const Specification &s, const std::vector<Pattern> &extra) {
  Specification out = s;
  for (const auto &p : extra)
    out.patterns.push_back(p);
  return out;
}

struct Agreement {
  std::size_t hosts = 0;
  std::size_t satisfying = 0;   // hosts satisfying the first specification
  std::size_t disagreements = 0;
  std::size_t wrong_way = 0;    // first satisfied, second not
  std::optional<TripleGraph> example;
};

/// Compares satisfaction of two specifications over every host up to `max_elements`.
inline Agreement compare_on_hosts(const Specification &a, const Specification &b, std::size_t max_elements) {
  Agreement r;
  auto visit = [&](const TripleGraph &h) {
    ++r.hosts;
    const bool sa = check_spec(h, a).satisfied(), sb = check_spec(h, b).satisfied();
    r.satisfying += sa;
    if (sa != sb) {
      ++r.disagreements;
      if (sa)
        ++r.wrong_way;
      if (!r.example)
        r.example = h;
    }
  };
  for_each_host(a.metamodel, max_elements, visit);
  return r;
}

} // namespace tgp::test

#endif // TGP_TESTS_SUPPORT_HPP
