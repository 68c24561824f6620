#include "tgp/graph.hpp"

#include <algorithm>
#include <unordered_map>

namespace tgp {

std::vector<std::string> TypeGraph::validate() const {
  std::vector<std::string> out;
  for (const auto &[name, et] : edge_types) {
    if (!node_types.count(et.source))
      out.push_back("edge type '" + name + "' has undeclared source node type '" + et.source + "'");
    if (!node_types.count(et.target))
      out.push_back("edge type '" + name + "' has undeclared target node type '" + et.target + "'");
    if (node_types.count(name))
      out.push_back("type name '" + name + "' is used for both a node and an edge type");
  }
  return out;
}

void Graph::add_node(const std::string &id, const std::string &type) {
  if (id.empty())
    throw GraphError("empty node id");
  if (contains(id))
    throw GraphError("duplicate id '" + id + "'");
  nodes_.emplace(id, type);
}

void Graph::add_edge(const std::string &id, const std::string &type, const std::string &source,
                     const std::string &target) {
  if (id.empty())
    throw GraphError("empty edge id");
  if (contains(id))
    throw GraphError("duplicate id '" + id + "'");
  if (!has_node(source) || !has_node(target))
    throw GraphError("edge '" + id + "' has a dangling endpoint");
  edges_.emplace(id, Edge{type, source, target});
}

const std::string &Graph::node_type(const std::string &id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end())
    throw GraphError("unknown node '" + id + "'");
  return it->second;
}

const Edge &Graph::edge(const std::string &id) const {
  auto it = edges_.find(id);
  if (it == edges_.end())
    throw GraphError("unknown edge '" + id + "'");
  return it->second;
}

IdSet Graph::ids() const {
  IdSet out;
  for (const auto &[id, _] : nodes_)
    out.insert(id);
  for (const auto &[id, _] : edges_)
    out.insert(id);
  return out;
}

std::vector<std::string> validate_graph(const Graph &g, const TypeGraph &types) {
  std::vector<std::string> out;
  for (const auto &[id, type] : g.nodes())
    if (!types.node_types.count(type))
      out.push_back("node '" + id + "' has undeclared type '" + type + "'");
  for (const auto &[id, e] : g.edges()) {
    auto it = types.edge_types.find(e.type);
    if (it == types.edge_types.end()) {
      out.push_back("edge '" + id + "' has undeclared type '" + e.type + "'");
      continue;
    }
    if (g.node_type(e.source) != it->second.source || g.node_type(e.target) != it->second.target)
      out.push_back("edge '" + id + "' endpoints do not match edge type '" + e.type + "'");
  }
  return out;
}

Graph subgraph(const Graph &g, const IdSet &ids) {
  Graph out(g.types());
  for (const auto &[id, type] : g.nodes())
    if (ids.count(id))
      out.add_node(id, type);
  for (const auto &[id, e] : g.edges())
    if (ids.count(id))
      out.add_edge(id, e.type, e.source, e.target);
  return out;
}

bool is_subgraph(const Graph &small, const Graph &big) {
  for (const auto &[id, type] : small.nodes()) {
    auto it = big.nodes().find(id);
    if (it == big.nodes().end() || it->second != type)
      return false;
  }
  for (const auto &[id, e] : small.edges()) {
    auto it = big.edges().find(id);
    if (it == big.edges().end() || !(it->second == e))
      return false;
  }
  return true;
}

std::optional<std::string> GraphMorphism::apply(const std::string &id) const {
  if (auto it = nodes.find(id); it != nodes.end())
    return it->second;
  if (auto it = edges.find(id); it != edges.end())
    return it->second;
  return std::nullopt;
}

GraphMorphism identity(const Graph &g) {
  GraphMorphism f;
  for (const auto &[id, _] : g.nodes())
    f.nodes.emplace(id, id);
  for (const auto &[id, _] : g.edges())
    f.edges.emplace(id, id);
  return f;
}

GraphMorphism compose(const GraphMorphism &second, const GraphMorphism &first) {
  GraphMorphism out;
  for (const auto &[from, mid] : first.nodes)
    if (auto it = second.nodes.find(mid); it != second.nodes.end())
      out.nodes.emplace(from, it->second);
  for (const auto &[from, mid] : first.edges)
    if (auto it = second.edges.find(mid); it != second.edges.end())
      out.edges.emplace(from, it->second);
  return out;
}

bool is_injective(const GraphMorphism &f) {
  IdSet seen;
  for (const auto &[_, to] : f.nodes)
    if (!seen.insert(to).second)
      return false;
  seen.clear();
  for (const auto &[_, to] : f.edges)
    if (!seen.insert(to).second)
      return false;
  return true;
}

bool is_morphism(const GraphMorphism &f, const Graph &dom, const Graph &cod) {
  if (f.nodes.size() != dom.nodes().size() || f.edges.size() != dom.edges().size())
    return false;
  for (const auto &[id, type] : dom.nodes()) {
    auto it = f.nodes.find(id);
    if (it == f.nodes.end() || !cod.has_node(it->second) || cod.node_type(it->second) != type)
      return false;
  }
  for (const auto &[id, e] : dom.edges()) {
    auto it = f.edges.find(id);
    if (it == f.edges.end() || !cod.has_edge(it->second))
      return false;
    const Edge &img = cod.edge(it->second);
    if (img.type != e.type || img.source != f.nodes.at(e.source) || img.target != f.nodes.at(e.target))
      return false;
  }
  return true;
}

IdSet image(const GraphMorphism &f) {
  IdSet out;
  for (const auto &[_, to] : f.nodes)
    out.insert(to);
  for (const auto &[_, to] : f.edges)
    out.insert(to);
  return out;
}

namespace {

// Index-based copy of a graph used by the matcher.
struct Compact {
  std::vector<const std::string *> node_ids;
  std::vector<int> node_type;
  std::vector<const std::string *> edge_ids;
  std::vector<int> edge_type, src, tgt;
  std::vector<std::vector<int>> out_edges, in_edges;
  std::unordered_map<std::string, int> node_index, edge_index;

  Compact(const Graph &g, std::unordered_map<std::string, int> &interner) {
    auto intern = [&](const std::string &t) {
      auto [it, _] = interner.emplace(t, static_cast<int>(interner.size()));
      return it->second;
    };
    for (const auto &[id, type] : g.nodes()) {
      node_index.emplace(id, static_cast<int>(node_ids.size()));
      node_ids.push_back(&id);
      node_type.push_back(intern(type));
    }
    out_edges.resize(node_ids.size());
    in_edges.resize(node_ids.size());
    for (const auto &[id, e] : g.edges()) {
      int idx = static_cast<int>(edge_ids.size());
      edge_index.emplace(id, idx);
      edge_ids.push_back(&id);
      edge_type.push_back(intern("\x01" + e.type));
      src.push_back(node_index.at(e.source));
      tgt.push_back(node_index.at(e.target));
      out_edges[src.back()].push_back(idx);
      in_edges[tgt.back()].push_back(idx);
    }
  }
};

class Matcher {
public:
  Matcher(const Graph &pattern, const Graph &host, const GraphMorphism &anchor,
          const std::function<bool(const GraphMorphism &)> &visit)
      : p_(pattern, interner_), h_(host, interner_), visit_(visit) {
    node_map_.assign(p_.node_ids.size(), -1);
    edge_map_.assign(p_.edge_ids.size(), -1);
    host_node_used_.assign(h_.node_ids.size(), false);
    host_edge_used_.assign(h_.edge_ids.size(), false);
    by_type_.resize(interner_.size());
    for (int i = 0; i < static_cast<int>(h_.node_ids.size()); ++i)
      by_type_[h_.node_type[i]].push_back(i);
    feasible_ = seed(anchor);
    if (feasible_)
      plan();
  }

  bool run() {
    if (!feasible_)
      return true;
    return search(0);
  }

private:
  enum class StepKind { Node, Edge };
  struct Step {
    StepKind kind;
    int index;
  };

  bool bind_node(int p, int h) {
    if (p_.node_type[p] != h_.node_type[h])
      return false;
    if (node_map_[p] == h)
      return true;
    if (node_map_[p] != -1 || host_node_used_[h])
      return false;
    node_map_[p] = h;
    host_node_used_[h] = true;
    return true;
  }

  bool seed(const GraphMorphism &anchor) {
    for (const auto &[pid, hid] : anchor.nodes) {
      auto pi = p_.node_index.find(pid);
      auto hi = h_.node_index.find(hid);
      if (pi == p_.node_index.end() || hi == h_.node_index.end())
        throw GraphError("anchor maps unknown node '" + pid + "' -> '" + hid + "'");
      if (!bind_node(pi->second, hi->second))
        throw GraphError("anchor is not a consistent partial monomorphism at '" + pid + "'");
    }
    for (const auto &[pid, hid] : anchor.edges) {
      auto pi = p_.edge_index.find(pid);
      auto hi = h_.edge_index.find(hid);
      if (pi == p_.edge_index.end() || hi == h_.edge_index.end())
        throw GraphError("anchor maps unknown edge '" + pid + "' -> '" + hid + "'");
      int pe = pi->second, he = hi->second;
      if (p_.edge_type[pe] != h_.edge_type[he] || host_edge_used_[he] || !bind_node(p_.src[pe], h_.src[he]) ||
          !bind_node(p_.tgt[pe], h_.tgt[he]))
        throw GraphError("anchor is not a consistent partial monomorphism at '" + pid + "'");
      edge_map_[pe] = he;
      host_edge_used_[he] = true;
    }
    return true;
  }

  // Node order: anchored first, then greedily by connectivity to placed nodes.
  void plan() {
    const int n = static_cast<int>(p_.node_ids.size());
    std::vector<bool> placed(n, false);
    auto push_edges_for = [&](int node) {
      auto consider = [&](int e) {
        if (edge_map_[e] != -1)
          return;
        if (placed[p_.src[e]] && placed[p_.tgt[e]])
          steps_.push_back({StepKind::Edge, e});
      };
      for (int e : p_.out_edges[node])
        consider(e);
      for (int e : p_.in_edges[node])
        if (p_.src[e] != node)
          consider(e);
    };
    for (int i = 0; i < n; ++i)
      if (node_map_[i] != -1) {
        placed[i] = true;
        push_edges_for(i);
      }
    for (;;) {
      int best = -1;
      long best_conn = -1;
      std::size_t best_cands = 0;
      for (int i = 0; i < n; ++i) {
        if (placed[i])
          continue;
        long conn = 0;
        for (int e : p_.out_edges[i])
          conn += placed[p_.tgt[e]];
        for (int e : p_.in_edges[i])
          conn += placed[p_.src[e]];
        std::size_t cands = by_type_[p_.node_type[i]].size();
        if (best == -1 || conn > best_conn || (conn == best_conn && cands < best_cands)) {
          best = i;
          best_conn = conn;
          best_cands = cands;
        }
      }
      if (best == -1)
        break;
      placed[best] = true;
      steps_.push_back({StepKind::Node, best});
      push_edges_for(best);
    }
  }

  bool emit() {
    GraphMorphism f;
    for (std::size_t i = 0; i < node_map_.size(); ++i)
      f.nodes.emplace(*p_.node_ids[i], *h_.node_ids[node_map_[i]]);
    for (std::size_t i = 0; i < edge_map_.size(); ++i)
      f.edges.emplace(*p_.edge_ids[i], *h_.edge_ids[edge_map_[i]]);
    return visit_(f);
  }

  bool search(std::size_t step) {
    if (step == steps_.size())
      return emit();
    const Step &s = steps_[step];
    if (s.kind == StepKind::Node) {
      const int p = s.index;
      for (int h : by_type_[p_.node_type[p]]) {
        if (host_node_used_[h])
          continue;
        if (h_.out_edges[h].size() < p_.out_edges[p].size() || h_.in_edges[h].size() < p_.in_edges[p].size())
          continue;
        node_map_[p] = h;
        host_node_used_[h] = true;
        bool go_on = search(step + 1);
        host_node_used_[h] = false;
        node_map_[p] = -1;
        if (!go_on)
          return false;
      }
      return true;
    }
    const int e = s.index;
    const int hs = node_map_[p_.src[e]], ht = node_map_[p_.tgt[e]];
    for (int he : h_.out_edges[hs]) {
      if (host_edge_used_[he] || h_.tgt[he] != ht || h_.edge_type[he] != p_.edge_type[e])
        continue;
      edge_map_[e] = he;
      host_edge_used_[he] = true;
      bool go_on = search(step + 1);
      host_edge_used_[he] = false;
      edge_map_[e] = -1;
      if (!go_on)
        return false;
    }
    return true;
  }

  std::unordered_map<std::string, int> interner_;
  Compact p_, h_;
  const std::function<bool(const GraphMorphism &)> &visit_;
  std::vector<std::vector<int>> by_type_;
  std::vector<int> node_map_, edge_map_;
  std::vector<bool> host_node_used_, host_edge_used_;
  std::vector<Step> steps_;
  bool feasible_ = true;
};

void check_type_graphs(const Graph &a, const Graph &b) {
  if (a.types() && b.types() && a.types() != b.types() && !(*a.types() == *b.types()))
    throw GraphError("graphs are typed over different type graphs");
}

} // namespace

bool for_each_monomorphism(const Graph &pattern, const Graph &host, const GraphMorphism &anchor,
                           const std::function<bool(const GraphMorphism &)> &visit) {
  check_type_graphs(pattern, host);
  if (pattern.nodes().size() > host.nodes().size() || pattern.edges().size() > host.edges().size())
    return true;
  Matcher m(pattern, host, anchor, visit);
  return m.run();
}

std::vector<GraphMorphism> find_monomorphisms(const Graph &pattern, const Graph &host,
                                              const GraphMorphism &anchor) {
  std::vector<GraphMorphism> out;
  for_each_monomorphism(pattern, host, anchor, [&](const GraphMorphism &f) {
    out.push_back(f);
    return true;
  });
  return out;
}

std::optional<GraphMorphism> find_monomorphism(const Graph &pattern, const Graph &host,
                                               const GraphMorphism &anchor) {
  std::optional<GraphMorphism> out;
  for_each_monomorphism(pattern, host, anchor, [&](const GraphMorphism &f) {
    out = f;
    return false;
  });
  return out;
}

bool has_monomorphism(const Graph &pattern, const Graph &host, const GraphMorphism &anchor) {
  return find_monomorphism(pattern, host, anchor).has_value();
}

std::optional<GraphMorphism> are_isomorphic(const Graph &a, const Graph &b) {
  if (a.nodes().size() != b.nodes().size() || a.edges().size() != b.edges().size())
    return std::nullopt;
  return find_monomorphism(a, b);
}

std::vector<GraphMorphism> automorphisms(const Graph &g) { return find_monomorphisms(g, g); }

namespace {

void require_apex_leg(const Graph &apex, const Graph &obj, const GraphMorphism &leg, const char *what) {
  if (!is_morphism(leg, apex, obj))
    throw GraphError(std::string(what) + ": apex mismatch");
  if (!is_injective(leg))
    throw GraphError(std::string(what) + ": legs must be injective");
}

} // namespace

Pushout pushout(const Graph &apex, const Graph &left_obj, const GraphMorphism &left, const Graph &right_obj,
                const GraphMorphism &right) {
  require_apex_leg(apex, left_obj, left, "pushout");
  require_apex_leg(apex, right_obj, right, "pushout");

  // right-image element -> apex element
  IdMap right_back;
  for (const auto &[m, r] : right.nodes)
    right_back.emplace(r, m);
  for (const auto &[m, r] : right.edges)
    right_back.emplace(r, m);

  Pushout po{left_obj, identity(left_obj), {}};
  po.object.set_types(left_obj.types() ? left_obj.types() : right_obj.types());
  IdSet taken = left_obj.ids();

  auto fresh = [&](const std::string &id) {
    std::string name = "b:" + id;
    while (taken.count(name) || right_obj.contains(name))
      name = "b:" + name;
    taken.insert(name);
    return name;
  };
  auto image_of = [&](const std::string &rid) -> std::string {
    if (auto it = right_back.find(rid); it != right_back.end())
      return left.apply(it->second).value();
    return po.from_right.apply(rid).value();
  };

  for (const auto &[id, type] : right_obj.nodes()) {
    if (auto it = right_back.find(id); it != right_back.end()) {
      po.from_right.nodes.emplace(id, left.nodes.at(it->second));
      continue;
    }
    std::string name = fresh(id);
    po.object.add_node(name, type);
    po.from_right.nodes.emplace(id, name);
  }
  for (const auto &[id, e] : right_obj.edges()) {
    if (auto it = right_back.find(id); it != right_back.end()) {
      po.from_right.edges.emplace(id, left.edges.at(it->second));
      continue;
    }
    std::string name = fresh(id);
    po.object.add_edge(name, e.type, image_of(e.source), image_of(e.target));
    po.from_right.edges.emplace(id, name);
  }
  return po;
}

Pullback pullback(const Graph &left_obj, const GraphMorphism &left, const Graph &right_obj,
                  const GraphMorphism &right, const Graph &codomain) {
  if (!is_morphism(left, left_obj, codomain) || !is_morphism(right, right_obj, codomain))
    throw GraphError("pullback: codomain mismatch");
  if (!is_injective(left) || !is_injective(right))
    throw GraphError("pullback: legs must be injective");

  IdMap right_back;
  for (const auto &[r, c] : right.nodes)
    right_back.emplace(c, r);
  for (const auto &[r, c] : right.edges)
    right_back.emplace(c, r);

  Pullback pb;
  pb.object.set_types(left_obj.types());
  for (const auto &[id, type] : left_obj.nodes())
    if (auto it = right_back.find(left.nodes.at(id)); it != right_back.end()) {
      pb.object.add_node(id, type);
      pb.to_left.nodes.emplace(id, id);
      pb.to_right.nodes.emplace(id, it->second);
    }
  for (const auto &[id, e] : left_obj.edges())
    if (auto it = right_back.find(left.edges.at(id)); it != right_back.end()) {
      pb.object.add_edge(id, e.type, e.source, e.target);
      pb.to_left.edges.emplace(id, id);
      pb.to_right.edges.emplace(id, it->second);
    }
  return pb;
}

} // namespace tgp
