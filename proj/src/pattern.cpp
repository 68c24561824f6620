#include "tgp/pattern.hpp"

#include <algorithm>

namespace tgp {

const char *to_string(PatternKind k) {
  switch (k) {
  case PatternKind::S:
    return "S";
  case PatternKind::C:
    return "C";
  case PatternKind::N:
    return "N";
  }
  return "?";
}

const char *to_string(MatchStatus s) {
  switch (s) {
  case MatchStatus::Positive:
    return "positive";
  case MatchStatus::Negative:
    return "negative";
  case MatchStatus::Violated:
    return "violated";
  }
  return "?";
}

std::vector<std::string> validate_pattern(const Pattern &p, const MetamodelTriple &mm) {
  std::vector<std::string> out;
  auto err = [&](const std::string &msg) { out.push_back("pattern '" + p.name + "': " + msg); };
  if (p.name.empty())
    out.push_back("pattern without a name");
  auto typed = [&](const TripleGraph &t, const std::string &what) {
    for (auto &v : validate_triple(t, mm))
      err(what + ": " + v);
  };
  typed(p.positive, "positive graph");
  typed(p.pre, "positive pre-condition");
  if (!is_subtriple(p.pre, p.positive))
    err("positive pre-condition is not included in the positive graph (every element must reuse a positive id)");
  auto conditions = [&](const std::vector<NamedCondition> &cs, const std::string &what) {
    IdSet names;
    for (const auto &c : cs) {
      typed(c.graph, what + " '" + c.name + "'");
      if (!names.insert(c.name).second)
        err("duplicate " + what + " name '" + c.name + "'");
      if (!is_subtriple(p.positive, c.graph))
        err(what + " '" + c.name + "' does not contain the whole positive graph (embedding not total)");
    }
  };
  conditions(p.neg_pre, "negative pre-condition");
  conditions(p.neg_post, "negative post-condition");
  switch (p.kind) {
  case PatternKind::S:
    if (!p.pre.empty())
      err("S-pattern with a positive pre-condition");
    break;
  case PatternKind::C:
    if (p.pre.empty())
      err("C-pattern without a positive pre-condition");
    break;
  case PatternKind::N:
    if (!p.positive.empty() || !p.pre.empty() || !p.neg_pre.empty() || p.neg_post.size() != 1)
      err("N-pattern must consist of exactly one forbidden graph");
    break;
  }
  return out;
}

std::vector<std::string> Specification::validate(bool initial) const {
  std::vector<std::string> out = metamodel.validate();
  IdSet names;
  for (const auto &p : patterns) {
    if (!names.insert(p.name).second)
      out.push_back("duplicate pattern name '" + p.name + "'");
    for (auto &v : validate_pattern(p, metamodel))
      out.push_back(v);
    if (initial && p.kind != PatternKind::N && !p.neg_post.empty())
      out.push_back("pattern '" + p.name +
                    "': only N-patterns may have negative post-conditions in a specification");
  }
  return out;
}

const Pattern *Specification::find(const std::string &name) const {
  for (const auto &p : patterns)
    if (p.name == name)
      return &p;
  return nullptr;
}

TripleGraph mirror(const TripleGraph &t) {
  TripleGraph out;
  out.source = t.target;
  out.target = t.source;
  for (const auto &[id, k] : t.corr)
    out.corr.emplace(id, CorrNode{k.type, k.target, k.source});
  return out;
}

MetamodelTriple mirror(const MetamodelTriple &mm) {
  MetamodelTriple out{mm.target, mm.source, {}};
  for (const auto &[name, ct] : mm.corr_types)
    out.corr_types[name] = CorrType{ct.target_type, ct.source_type};
  return out;
}

Pattern mirror(const Pattern &p) {
  Pattern out{p.name, p.kind, mirror(p.pre), mirror(p.positive), {}, {}};
  for (const auto &c : p.neg_pre)
    out.neg_pre.push_back({c.name, mirror(c.graph)});
  for (const auto &c : p.neg_post)
    out.neg_post.push_back({c.name, mirror(c.graph)});
  return out;
}

Specification mirror(const Specification &s) {
  Specification out{mirror(s.metamodel), {}};
  for (const auto &p : s.patterns)
    out.patterns.push_back(mirror(p));
  return out;
}

} // namespace tgp
