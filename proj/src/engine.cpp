#include "tgp/engine.hpp"

#include <random>

namespace tgp {

namespace {

struct CompiledRule {
  const TGGRule *rule;
  Graph lhs;
  std::vector<std::pair<std::string, Graph>> nacs;
};

CompiledRule compile(const TGGRule &r) {
  CompiledRule c{&r, flatten(r.lhs), {}};
  for (const auto &n : r.nacs)
    c.nacs.emplace_back(n.name, flatten(n.graph));
  return c;
}

void collect(const CompiledRule &c, const FlatHost &host, bool keep_blocked, std::vector<RuleMatch> &out) {
  host.for_each(c.lhs, c.rule->lhs, {}, [&](const TripleMorphism &m) {
    RuleMatch rm{c.rule->name, m, std::nullopt};
    for (const auto &[name, g] : c.nacs)
      if (host.has(g, m)) {
        rm.blocked_by = name;
        break;
      }
    if (keep_blocked || !rm.blocked_by)
      out.push_back(std::move(rm));
    return true;
  });
}

std::string fresh(const std::string &base, const TripleGraph &host, const IdSet &taken) {
  std::string id = base;
  while (host.contains(id) || taken.count(id))
    id += "_";
  return id;
}

} // namespace

std::vector<RuleMatch> find_matches(const TGGRule &r, const TripleGraph &host) {
  std::vector<RuleMatch> out;
  collect(compile(r), FlatHost(host), true, out);
  return out;
}

std::vector<RuleMatch> find_applicable(const TGGRule &r, const TripleGraph &host) {
  std::vector<RuleMatch> out;
  collect(compile(r), FlatHost(host), false, out);
  return out;
}

TripleGraph apply(const TGGRule &r, const TripleMorphism &match, const TripleGraph &host, std::size_t step,
                  TripleGraph *added) {
  TriplePushout po = triple_pushout(r.lhs, host, match, r.rhs, inclusion(r.lhs));
  IdMap names;
  IdSet taken, created;
  for (const auto &id : host.ids())
    names[id] = id;
  for (const auto &id : r.rhs.ids()) {
    const std::string in_po = po.from_right.apply(id).value();
    if (names.count(in_po))
      continue;
    const std::string n = fresh(id + "_" + std::to_string(step), host, taken);
    taken.insert(n);
    created.insert(n);
    names[in_po] = n;
  }
  TripleGraph result = rename(po.object, split(names, po.object));
  TripleMorphism comatch = compose(split(names, po.object), po.from_right);
  for (const auto &post : r.posts)
    if (has_monomorphism(post.graph, result, comatch))
      throw EngineError("rule '" + r.name + "' would create an occurrence of its post-condition '" + post.name +
                        "'");
  if (added) {
    // created elements plus the existing nodes they attach to
    IdSet ids = created;
    for (const auto &id : created) {
      if (auto it = result.corr.find(id); it != result.corr.end()) {
        ids.insert(it->second.source);
        ids.insert(it->second.target);
      }
      for (const Graph *g : {&result.source, &result.target})
        if (g->has_edge(id)) {
          ids.insert(g->edge(id).source);
          ids.insert(g->edge(id).target);
        }
    }
    *added = subtriple(result, ids);
  }
  return result;
}

SaturationResult saturate(const std::vector<TGGRule> &rules, const TripleGraph &start,
                          std::optional<std::uint64_t> seed, std::size_t max_steps) {
  std::vector<CompiledRule> compiled;
  for (const auto &r : rules)
    compiled.push_back(compile(r));
  std::optional<std::mt19937_64> rng;
  if (seed)
    rng.emplace(*seed);
  SaturationResult out{start, {}, {}};
  // matches whose application would create a forbidden post-condition occurrence
  std::set<std::pair<std::string, IdMap>> rejected;
  std::size_t step = 1;
  for (std::size_t round = 0;; ++round) {
    if (round > max_steps)
      throw EngineError("saturation exceeded " + std::to_string(max_steps) + " steps");
    const FlatHost host(out.result);
    std::vector<RuleMatch> candidates;
    std::vector<const TGGRule *> owners;
    for (const auto &c : compiled) {
      std::vector<RuleMatch> found;
      collect(c, host, false, found);
      for (auto &m : found)
        if (!rejected.count({c.rule->name, unified(m.match)})) {
          candidates.push_back(std::move(m));
          owners.push_back(c.rule);
        }
      if (!rng && !candidates.empty())
        break;
    }
    if (candidates.empty())
      break;
    std::size_t pick = 0;
    if (rng)
      pick = std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(*rng);
    TraceStep ts{owners[pick]->name, candidates[pick].match, {}};
    try {
      out.result = apply(*owners[pick], ts.match, out.result, step, &ts.added);
    } catch (const EngineError &e) {
      out.diagnostics.push_back(e.what());
      rejected.insert({owners[pick]->name, unified(ts.match)});
      continue;
    }
    ++step;
    out.trace.push_back(std::move(ts));
  }
  return out;
}

std::size_t termination_bound(const std::vector<TGGRule> &rules, const TripleGraph &final_graph) {
  const FlatHost host(final_graph);
  std::size_t most = 0;
  for (const auto &r : rules) {
    std::size_t n = 0;
    host.for_each(flatten(r.lhs), r.lhs, {}, [&](const TripleMorphism &) {
      ++n;
      return true;
    });
    most = std::max(most, n);
  }
  return rules.size() * most;
}

TripleGraph replay(const Trace &trace, const TripleGraph &start) {
  TripleGraph g = start;
  for (const auto &s : trace)
    g = unite(g, s.added);
  return g;
}

TransformResult transform(const Specification &s, const Graph &model, Direction dir, const TransformOptions &opts) {
  const Side side = input_side(dir);
  const TypeGraph &types = side == Side::Source ? s.metamodel.source : s.metamodel.target;
  if (auto errs = validate_graph(model, types); !errs.empty())
    throw InputError("model is not typed over the " + std::string(to_string(side)) + " metamodel: " + errs.front());
  for (const auto &id : model.ids())
    if (id.find('#') != std::string::npos)
      throw InputError("model id '" + id + "' contains the reserved character '#'");

  TransformResult out;
  out.rules = generate_rules(s, dir, PipelineOptions{opts.np_deduction});
  TripleGraph start;
  start.side(side) = model;
  SaturationResult sat = saturate(out.rules, start, opts.seed);
  out.result = sat.result;
  out.trace = sat.trace;
  out.diagnostics = sat.diagnostics;

  if (!(out.result.side(side) == model))
    throw DomainError("the " + std::string(to_string(side)) + " model was modified by the transformation", {});
  out.report = check_spec(out.result, s);
  if (!out.report.satisfied()) {
    auto violated = out.report.violated_patterns();
    std::string msg = "source outside domain or specification not FIP/BIP; violated patterns:";
    for (const auto &v : violated)
      msg += " " + v;
    for (const auto &d : sat.diagnostics)
      msg += "\n  rejected application: " + d;
    throw DomainError(msg, violated);
  }
  return out;
}

} // namespace tgp
