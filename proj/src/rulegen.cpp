#include "tgp/rulegen.hpp"

#include <algorithm>

namespace tgp {

LeftExtension left_extension(const TripleGraph &lhs, const TripleGraph &rhs, const TripleGraph &dep) {
  TriplePullback pb = triple_pullback(lhs, inclusion(lhs), dep, inclusion(dep), rhs);
  TriplePushout po = triple_pushout(pb.object, lhs, pb.to_left, dep, pb.to_right);
  // back into the ids of R: lhs ids are kept by the pushout, dep-only ids come back from from_right
  IdMap back;
  for (const auto &id : lhs.ids())
    back[po.from_left.apply(id).value()] = id;
  for (const auto &id : dep.ids())
    back[po.from_right.apply(id).value()] = id;
  return {pb.object, rename(po.object, split(back, po.object))};
}

bool is_causal(const Pattern &p) { return p.pre.size() < p.positive.size(); }

std::string rule_name(const std::string &pattern, Direction dir) {
  return pattern + (dir == Direction::Forward ? ":fwd" : ":bwd");
}

TGGRule derive_rule(const AnnotatedPattern &a, Direction dir) {
  const Pattern &p = a.pattern;
  if (p.positive.empty())
    throw DeductionError("pattern '" + p.name + "' has an empty positive graph, no rule can be derived");
  const DirectedBase db = directed_base(p, dir);
  TGGRule r;
  r.name = rule_name(p.name, dir);
  r.direction = dir;
  r.provenance = p.name;
  r.lhs = db.base;
  r.rhs = p.positive;
  auto add_nac = [&](const std::string &name, const TripleGraph &g) {
    for (const auto &n : r.nacs)
      if (n.graph.size() == g.size() && has_monomorphism(g, n.graph, identity(r.lhs)))
        return;
    r.nacs.push_back({name, g});
  };
  add_nac("RHS", r.rhs);
  for (const auto &c : db.neg_pre)
    if (!c.excluded)
      add_nac(c.name, c.graph);
  for (const auto &d : a.deps)
    add_nac(d.name, left_extension(r.lhs, r.rhs, d.graph).object);
  r.posts = p.neg_post;
  return r;
}

std::vector<TGGRule> derive_rules(const std::vector<AnnotatedPattern> &patterns, Direction dir) {
  std::vector<TGGRule> out;
  for (const auto &a : patterns)
    if (is_causal(a.pattern))
      out.push_back(derive_rule(a, dir));
  return out;
}

std::vector<TGGRule> generate_rules(const Specification &s, Direction dir, const PipelineOptions &opts) {
  return derive_rules(run_deduction_pipeline(s, opts), dir);
}

} // namespace tgp
