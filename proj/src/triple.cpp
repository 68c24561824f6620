#include "tgp/triple.hpp"

namespace tgp {

const char *to_string(Side s) {
  switch (s) {
  case Side::Source:
    return "source";
  case Side::Target:
    return "target";
  case Side::Corr:
    return "corr";
  }
  return "?";
}

const char *to_string(Direction d) { return d == Direction::Forward ? "forward" : "backward"; }

std::vector<std::string> MetamodelTriple::validate() const {
  std::vector<std::string> out;
  for (auto &v : source.validate())
    out.push_back("source types: " + v);
  for (auto &v : target.validate())
    out.push_back("target types: " + v);
  if (corr_types.empty())
    out.push_back("no correspondence type declared");
  for (const auto &[name, ct] : corr_types) {
    if (ct.source_type && !source.node_types.count(*ct.source_type))
      out.push_back("corr type '" + name + "' constrains to undeclared source type '" + *ct.source_type + "'");
    if (ct.target_type && !target.node_types.count(*ct.target_type))
      out.push_back("corr type '" + name + "' constrains to undeclared target type '" + *ct.target_type + "'");
  }
  return out;
}

void TripleGraph::add_corr(const std::string &id, const std::string &type, const std::string &source_node,
                           const std::string &target_node) {
  if (id.empty())
    throw GraphError("empty correspondence id");
  if (contains(id))
    throw GraphError("duplicate id '" + id + "'");
  if (!source.has_node(source_node))
    throw GraphError("correspondence '" + id + "' has dangling cs anchor '" + source_node + "'");
  if (!target.has_node(target_node))
    throw GraphError("correspondence '" + id + "' has dangling ct anchor '" + target_node + "'");
  corr.emplace(id, CorrNode{type, source_node, target_node});
}

IdSet TripleGraph::ids() const {
  IdSet out = source.ids();
  out.merge(target.ids());
  for (const auto &[id, _] : corr)
    out.insert(id);
  return out;
}

std::vector<std::string> validate_structure(const TripleGraph &t) {
  std::vector<std::string> out;
  IdSet seen;
  auto check_id = [&](const std::string &id) {
    if (id.find('#') != std::string::npos)
      out.push_back("id '" + id + "' contains the reserved character '#'");
    if (!seen.insert(id).second)
      out.push_back("id '" + id + "' is used more than once");
  };
  for (const auto &id : t.source.ids())
    check_id(id);
  for (const auto &id : t.target.ids())
    check_id(id);
  for (const auto &[id, k] : t.corr) {
    check_id(id);
    if (!t.source.has_node(k.source))
      out.push_back("correspondence '" + id + "': dangling cs anchor '" + k.source + "'");
    if (!t.target.has_node(k.target))
      out.push_back("correspondence '" + id + "': dangling ct anchor '" + k.target + "'");
  }
  return out;
}

std::vector<std::string> validate_triple(const TripleGraph &t, const MetamodelTriple &mm) {
  std::vector<std::string> out = validate_structure(t);
  for (auto &v : validate_graph(t.source, mm.source))
    out.push_back("source: " + v);
  for (auto &v : validate_graph(t.target, mm.target))
    out.push_back("target: " + v);
  for (const auto &[id, k] : t.corr) {
    auto it = mm.corr_types.find(k.type);
    if (it == mm.corr_types.end()) {
      out.push_back("correspondence '" + id + "' has undeclared type '" + k.type + "'");
      continue;
    }
    if (it->second.source_type && t.source.has_node(k.source) &&
        t.source.node_type(k.source) != *it->second.source_type)
      out.push_back("correspondence '" + id + "' anchors a '" + t.source.node_type(k.source) +
                    "' node but type '" + k.type + "' requires '" + *it->second.source_type + "'");
    if (it->second.target_type && t.target.has_node(k.target) &&
        t.target.node_type(k.target) != *it->second.target_type)
      out.push_back("correspondence '" + id + "' anchors a '" + t.target.node_type(k.target) +
                    "' node but type '" + k.type + "' requires '" + *it->second.target_type + "'");
  }
  return out;
}

TripleGraph restrict(const TripleGraph &t, Side side) {
  TripleGraph out;
  out.source.set_types(t.source.types());
  out.target.set_types(t.target.types());
  switch (side) {
  case Side::Source:
    out.source = t.source;
    break;
  case Side::Target:
    out.target = t.target;
    break;
  case Side::Corr:
    for (const auto &[id, k] : t.corr) {
      if (!out.source.has_node(k.source))
        out.source.add_node(k.source, t.source.node_type(k.source));
      if (!out.target.has_node(k.target))
        out.target.add_node(k.target, t.target.node_type(k.target));
      out.corr.emplace(id, k);
    }
    break;
  }
  return out;
}

TripleGraph subtriple(const TripleGraph &t, const IdSet &ids) {
  TripleGraph out;
  out.source = subgraph(t.source, ids);
  out.target = subgraph(t.target, ids);
  for (const auto &[id, k] : t.corr)
    if (ids.count(id))
      out.add_corr(id, k.type, k.source, k.target);
  return out;
}

bool is_subtriple(const TripleGraph &small, const TripleGraph &big) {
  if (!is_subgraph(small.source, big.source) || !is_subgraph(small.target, big.target))
    return false;
  for (const auto &[id, k] : small.corr) {
    auto it = big.corr.find(id);
    if (it == big.corr.end() || !(it->second == k))
      return false;
  }
  return true;
}

TripleGraph unite(const TripleGraph &a, const TripleGraph &b) {
  TripleGraph out = a;
  auto merge_graph = [](Graph &into, const Graph &from) {
    for (const auto &[id, type] : from.nodes()) {
      if (into.has_node(id)) {
        if (into.node_type(id) != type)
          throw GraphError("unite: conflicting node '" + id + "'");
        continue;
      }
      into.add_node(id, type);
    }
    for (const auto &[id, e] : from.edges()) {
      if (into.has_edge(id)) {
        if (!(into.edge(id) == e))
          throw GraphError("unite: conflicting edge '" + id + "'");
        continue;
      }
      into.add_edge(id, e.type, e.source, e.target);
    }
  };
  merge_graph(out.source, b.source);
  merge_graph(out.target, b.target);
  for (const auto &[id, k] : b.corr) {
    if (auto it = out.corr.find(id); it != out.corr.end()) {
      if (!(it->second == k))
        throw GraphError("unite: conflicting correspondence '" + id + "'");
      continue;
    }
    out.add_corr(id, k.type, k.source, k.target);
  }
  return out;
}

std::optional<std::string> TripleMorphism::apply(const std::string &id) const {
  if (auto r = source.apply(id))
    return r;
  if (auto r = target.apply(id))
    return r;
  if (auto it = corr.find(id); it != corr.end())
    return it->second;
  return std::nullopt;
}

TripleMorphism identity(const TripleGraph &t) {
  TripleMorphism f{identity(t.source), identity(t.target), {}};
  for (const auto &[id, _] : t.corr)
    f.corr.emplace(id, id);
  return f;
}

TripleMorphism inclusion(const TripleGraph &small) { return identity(small); }

TripleMorphism compose(const TripleMorphism &second, const TripleMorphism &first) {
  TripleMorphism out{compose(second.source, first.source), compose(second.target, first.target), {}};
  for (const auto &[from, mid] : first.corr)
    if (auto it = second.corr.find(mid); it != second.corr.end())
      out.corr.emplace(from, it->second);
  return out;
}

bool is_injective(const TripleMorphism &f) {
  if (!is_injective(f.source) || !is_injective(f.target))
    return false;
  IdSet seen;
  for (const auto &[_, to] : f.corr)
    if (!seen.insert(to).second)
      return false;
  return true;
}

Graph flatten(const TripleGraph &t) {
  Graph g;
  for (const auto &[id, type] : t.source.nodes())
    g.add_node(id, "s/" + type);
  for (const auto &[id, type] : t.target.nodes())
    g.add_node(id, "t/" + type);
  for (const auto &[id, k] : t.corr)
    g.add_node(id, "c/" + k.type);
  for (const auto &[id, e] : t.source.edges())
    g.add_edge(id, "s/" + e.type, e.source, e.target);
  for (const auto &[id, e] : t.target.edges())
    g.add_edge(id, "t/" + e.type, e.source, e.target);
  for (const auto &[id, k] : t.corr) {
    g.add_edge(id + "#cs", "cs", id, k.source);
    g.add_edge(id + "#ct", "ct", id, k.target);
  }
  return g;
}

TripleGraph unflatten(const Graph &g) {
  TripleGraph t;
  std::map<std::string, CorrNode> pending;
  for (const auto &[id, type] : g.nodes()) {
    const std::string kind = type.substr(0, 2), name = type.substr(2);
    if (kind == "s/")
      t.source.add_node(id, name);
    else if (kind == "t/")
      t.target.add_node(id, name);
    else if (kind == "c/")
      pending[id].type = name;
    else
      throw GraphError("unflatten: malformed node type '" + type + "'");
  }
  for (const auto &[id, e] : g.edges()) {
    if (e.type == "cs")
      pending.at(e.source).source = e.target;
    else if (e.type == "ct")
      pending.at(e.source).target = e.target;
    else if (e.type.rfind("s/", 0) == 0)
      t.source.add_edge(id, e.type.substr(2), e.source, e.target);
    else if (e.type.rfind("t/", 0) == 0)
      t.target.add_edge(id, e.type.substr(2), e.source, e.target);
    else
      throw GraphError("unflatten: malformed edge type '" + e.type + "'");
  }
  for (const auto &[id, k] : pending)
    t.add_corr(id, k.type, k.source, k.target);
  return t;
}

GraphMorphism flatten(const TripleMorphism &f) {
  GraphMorphism g;
  g.nodes = f.source.nodes;
  g.nodes.insert(f.target.nodes.begin(), f.target.nodes.end());
  g.edges = f.source.edges;
  g.edges.insert(f.target.edges.begin(), f.target.edges.end());
  for (const auto &[from, to] : f.corr) {
    g.nodes.emplace(from, to);
    g.edges.emplace(from + "#cs", to + "#cs");
    g.edges.emplace(from + "#ct", to + "#ct");
  }
  return g;
}

TripleMorphism unflatten(const GraphMorphism &f, const TripleGraph &domain) {
  TripleMorphism t;
  for (const auto &[id, _] : domain.source.nodes())
    t.source.nodes.emplace(id, f.nodes.at(id));
  for (const auto &[id, _] : domain.source.edges())
    t.source.edges.emplace(id, f.edges.at(id));
  for (const auto &[id, _] : domain.target.nodes())
    t.target.nodes.emplace(id, f.nodes.at(id));
  for (const auto &[id, _] : domain.target.edges())
    t.target.edges.emplace(id, f.edges.at(id));
  for (const auto &[id, _] : domain.corr)
    t.corr.emplace(id, f.nodes.at(id));
  return t;
}

bool is_morphism(const TripleMorphism &f, const TripleGraph &dom, const TripleGraph &cod) {
  if (!is_morphism(f.source, dom.source, cod.source) || !is_morphism(f.target, dom.target, cod.target))
    return false;
  if (f.corr.size() != dom.corr.size())
    return false;
  for (const auto &[id, k] : dom.corr) {
    auto it = f.corr.find(id);
    if (it == f.corr.end())
      return false;
    auto ck = cod.corr.find(it->second);
    if (ck == cod.corr.end() || ck->second.type != k.type)
      return false;
    if (f.source.nodes.at(k.source) != ck->second.source || f.target.nodes.at(k.target) != ck->second.target)
      return false;
  }
  return true;
}

IdSet image(const TripleMorphism &f) {
  IdSet out = image(f.source);
  out.merge(image(f.target));
  for (const auto &[_, to] : f.corr)
    out.insert(to);
  return out;
}

TripleGraph image_triple(const TripleMorphism &f, const TripleGraph &cod) { return subtriple(cod, image(f)); }

TripleGraph rename(const TripleGraph &t, const TripleMorphism &f) {
  TripleGraph out;
  auto ren = [&](const IdMap &m, const std::string &id) {
    auto it = m.find(id);
    if (it == m.end())
      throw GraphError("rename: no image for '" + id + "'");
    return it->second;
  };
  for (const auto &[id, type] : t.source.nodes())
    out.source.add_node(ren(f.source.nodes, id), type);
  for (const auto &[id, e] : t.source.edges())
    out.source.add_edge(ren(f.source.edges, id), e.type, ren(f.source.nodes, e.source),
                        ren(f.source.nodes, e.target));
  for (const auto &[id, type] : t.target.nodes())
    out.target.add_node(ren(f.target.nodes, id), type);
  for (const auto &[id, e] : t.target.edges())
    out.target.add_edge(ren(f.target.edges, id), e.type, ren(f.target.nodes, e.source),
                        ren(f.target.nodes, e.target));
  for (const auto &[id, k] : t.corr)
    out.add_corr(ren(f.corr, id), k.type, ren(f.source.nodes, k.source), ren(f.target.nodes, k.target));
  return out;
}

TripleMorphism invert(const TripleMorphism &f) {
  auto inv = [](const IdMap &m) {
    IdMap out;
    for (const auto &[a, b] : m)
      out.emplace(b, a);
    return out;
  };
  return {{inv(f.source.nodes), inv(f.source.edges)}, {inv(f.target.nodes), inv(f.target.edges)}, inv(f.corr)};
}

IdMap unified(const TripleMorphism &f) {
  IdMap out = f.source.nodes;
  out.insert(f.source.edges.begin(), f.source.edges.end());
  out.insert(f.target.nodes.begin(), f.target.nodes.end());
  out.insert(f.target.edges.begin(), f.target.edges.end());
  out.insert(f.corr.begin(), f.corr.end());
  return out;
}

TripleMorphism split(const IdMap &m, const TripleGraph &domain) {
  TripleMorphism t;
  auto get = [&](const std::string &id) {
    auto it = m.find(id);
    if (it == m.end())
      throw GraphError("split: no image for '" + id + "'");
    return it->second;
  };
  for (const auto &[id, _] : domain.source.nodes())
    t.source.nodes.emplace(id, get(id));
  for (const auto &[id, _] : domain.source.edges())
    t.source.edges.emplace(id, get(id));
  for (const auto &[id, _] : domain.target.nodes())
    t.target.nodes.emplace(id, get(id));
  for (const auto &[id, _] : domain.target.edges())
    t.target.edges.emplace(id, get(id));
  for (const auto &[id, _] : domain.corr)
    t.corr.emplace(id, get(id));
  return t;
}

bool FlatHost::for_each(const Graph &flat_pattern, const TripleGraph &pattern, const TripleMorphism &anchor,
                        const std::function<bool(const TripleMorphism &)> &visit) const {
  return for_each_monomorphism(flat_pattern, flat_, flatten(anchor),
                               [&](const GraphMorphism &g) { return visit(unflatten(g, pattern)); });
}

bool FlatHost::has(const Graph &flat_pattern, const TripleMorphism &anchor) const {
  return has_monomorphism(flat_pattern, flat_, flatten(anchor));
}

std::vector<TripleMorphism> find_monomorphisms(const TripleGraph &pattern, const TripleGraph &host,
                                               const TripleMorphism &anchor) {
  std::vector<TripleMorphism> out;
  for_each_monomorphism(flatten(pattern), flatten(host), flatten(anchor), [&](const GraphMorphism &g) {
    out.push_back(unflatten(g, pattern));
    return true;
  });
  return out;
}

std::optional<TripleMorphism> find_monomorphism(const TripleGraph &pattern, const TripleGraph &host,
                                                const TripleMorphism &anchor) {
  if (auto g = find_monomorphism(flatten(pattern), flatten(host), flatten(anchor)))
    return unflatten(*g, pattern);
  return std::nullopt;
}

bool has_monomorphism(const TripleGraph &pattern, const TripleGraph &host, const TripleMorphism &anchor) {
  return has_monomorphism(flatten(pattern), flatten(host), flatten(anchor));
}

std::optional<TripleMorphism> are_isomorphic(const TripleGraph &a, const TripleGraph &b) {
  if (auto g = are_isomorphic(flatten(a), flatten(b)))
    return unflatten(*g, a);
  return std::nullopt;
}

std::vector<TripleMorphism> automorphisms(const TripleGraph &t) { return find_monomorphisms(t, t); }

TriplePushout triple_pushout(const TripleGraph &apex, const TripleGraph &left_obj, const TripleMorphism &left,
                             const TripleGraph &right_obj, const TripleMorphism &right) {
  if (!is_morphism(left, apex, left_obj) || !is_morphism(right, apex, right_obj))
    throw GraphError("triple pushout: apex mismatch");
  Pushout po = pushout(flatten(apex), flatten(left_obj), flatten(left), flatten(right_obj), flatten(right));
  TriplePushout out;
  out.object = unflatten(po.object);
  out.from_left = unflatten(po.from_left, left_obj);
  out.from_right = unflatten(po.from_right, right_obj);
  return out;
}

TriplePullback triple_pullback(const TripleGraph &left_obj, const TripleMorphism &left,
                               const TripleGraph &right_obj, const TripleMorphism &right,
                               const TripleGraph &codomain) {
  if (!is_morphism(left, left_obj, codomain) || !is_morphism(right, right_obj, codomain))
    throw GraphError("triple pullback: codomain mismatch");
  Pullback pb = pullback(flatten(left_obj), flatten(left), flatten(right_obj), flatten(right), flatten(codomain));
  TriplePullback out;
  out.object = unflatten(pb.object);
  out.to_left = unflatten(pb.to_left, out.object);
  out.to_right = unflatten(pb.to_right, out.object);
  return out;
}

namespace {

TripleMorphism restrict_morphism(const TripleMorphism &f, Side side) {
  TripleMorphism out;
  if (side == Side::Source)
    out.source = f.source;
  else
    out.target = f.target;
  return out;
}

} // namespace

GluedSide glue_over_side(const TripleGraph &c, const TripleGraph &q, const TripleMorphism &q_embed, Side side) {
  if (side == Side::Corr)
    throw GraphError("glue_over_side: side must be source or target");
  if (!is_morphism(q_embed, c, q) || !is_injective(q_embed))
    throw GraphError("glue_over_side: embedding C -> Q must be an injective triple morphism");
  const TripleGraph c_side = restrict(c, side);
  const TripleGraph q_side = restrict(q, side);
  TriplePushout po = triple_pushout(c_side, c, inclusion(c_side), q_side, restrict_morphism(q_embed, side));

  // mediating morphism into Q: C-part through q, Q|x-part back to its original ids
  TripleMorphism to_q;
  auto add = [&](const std::string &from, const std::string &to, const TripleGraph &obj) {
    if (obj.source.has_node(from))
      to_q.source.nodes[from] = to;
    else if (obj.source.has_edge(from))
      to_q.source.edges[from] = to;
    else if (obj.target.has_node(from))
      to_q.target.nodes[from] = to;
    else if (obj.target.has_edge(from))
      to_q.target.edges[from] = to;
    else
      to_q.corr[from] = to;
  };
  for (const auto &id : c.ids())
    add(po.from_left.apply(id).value(), q_embed.apply(id).value(), po.object);
  for (const auto &id : q_side.ids())
    add(po.from_right.apply(id).value(), id, po.object);
  return {po.object, po.from_left, to_q};
}

TripleGraph directed_part(const TripleGraph &c, const TripleGraph &q, Side side) {
  IdSet ids = c.ids();
  ids.merge(restrict(q, side).ids());
  return subtriple(q, ids);
}

} // namespace tgp
