#include "tgp/analysis.hpp"

namespace tgp {

std::vector<Conflict> find_conflicts(const Specification &s) {
  std::vector<Conflict> out;
  for (const auto &p : s.patterns) {
    if (p.kind == PatternKind::N)
      continue;
    for (const auto &n : s.patterns)
      if (n.kind == PatternKind::N)
        if (auto w = find_monomorphism(n.forbidden(), p.positive))
          out.push_back({p.name, n.name, *w});
  }
  return out;
}

// Q ⊆ C_i by ids, so an iso compatible with the embedding exists iff the sizes agree.
std::vector<Finding> find_tautologies(const Specification &s) {
  std::vector<Finding> out;
  for (const auto &p : s.patterns) {
    if (p.kind == PatternKind::N)
      continue;
    for (const auto &c : p.neg_pre)
      if (c.graph.size() == p.positive.size()) {
        out.push_back({p.name, "negative pre-condition '" + c.name + "' equals the positive graph"});
        break;
      }
    if (p.kind == PatternKind::C && p.pre.size() == p.positive.size())
      out.push_back({p.name, "positive pre-condition equals the positive graph"});
  }
  return out;
}

std::vector<Finding> find_contradictions(const Specification &s) {
  std::vector<Finding> out;
  for (const auto &p : s.patterns)
    for (const auto &c : p.neg_post)
      if (c.graph.size() == p.positive.size()) {
        out.push_back({p.name, "negative post-condition '" + c.name + "' equals the positive graph"});
        break;
      }
  return out;
}

std::pair<Coverage, Coverage> language_covering(const Specification &s) {
  auto cover = [&](const TypeGraph &types, Side side) {
    Coverage c;
    for (const auto &p : s.patterns) {
      if (p.kind == PatternKind::N)
        continue;
      const Graph &g = p.positive.side(side);
      for (const auto &[_, t] : g.nodes())
        c.covered_nodes.insert(t);
      for (const auto &[_, e] : g.edges())
        c.covered_edges.insert(e.type);
    }
    for (const auto &t : types.node_types)
      if (!c.covered_nodes.count(t))
        c.uncovered_nodes.insert(t);
    for (const auto &[t, _] : types.edge_types)
      if (!c.covered_edges.count(t))
        c.uncovered_edges.insert(t);
    return c;
  };
  return {cover(s.metamodel.source, Side::Source), cover(s.metamodel.target, Side::Target)};
}

AnalysisReport analyze(const Specification &s) {
  AnalysisReport r;
  r.conflicts = find_conflicts(s);
  r.tautologies = find_tautologies(s);
  r.contradictions = find_contradictions(s);
  std::tie(r.source, r.target) = language_covering(s);
  r.undecided = {"forward/backward/relational functionality: undecided, only language covering is checked",
                 "contradiction of the whole specification: undecided, only single patterns are checked"};
  return r;
}

ProbeResult hippocratic_probe(const Specification &s, const TripleGraph &host) {
  ProbeResult r;
  if (!check_spec(host, s).satisfied()) {
    r.message = "host does not satisfy the specification, probe not applicable";
    return r;
  }
  r.applicable = true;
  for (Direction dir : {Direction::Forward, Direction::Backward})
    for (const auto &rule : generate_rules(s, dir)) {
      auto m = find_applicable(rule, host);
      if (!m.empty()) {
        r.pass = false;
        r.offending = m.front();
        r.message = "rule '" + rule.name + "' is applicable on a consistent host";
        return r;
      }
    }
  r.message = "no rule applicable";
  return r;
}

} // namespace tgp
