#include "tgp/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace tgp {

using Json = nlohmann::ordered_json;

namespace {

Json parse_json(const std::string &text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error &e) {
    // nlohmann reports a byte offset; turn it into line/column
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("syntax error at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                     e.what());
  }
}

const Json &expect_object(const Json &j, const std::string &what) {
  if (!j.is_object())
    throw ParseError(what + ": expected a JSON object at the top level");
  return j;
}

template <class F> auto guarded(const std::string &what, F &&f) {
  try {
    return f();
  } catch (const Json::exception &e) {
    throw ParseError(what + ": " + e.what());
  } catch (const GraphError &e) {
    throw ParseError(what + ": " + e.what());
  }
}

const Json &field(const Json &j, const char *key) {
  static const Json empty;
  auto it = j.find(key);
  return it == j.end() ? empty : *it;
}

std::vector<Json> items(const Json &j, const char *key) {
  const Json &a = field(j, key);
  if (a.is_null())
    return {};
  if (!a.is_array())
    throw ParseError(std::string("'") + key + "' must be a list");
  return {a.begin(), a.end()};
}

// graphs

Json graph_json(const Graph &g) {
  Json nodes = Json::array(), edges = Json::array();
  for (const auto &[id, type] : g.nodes())
    nodes.push_back({{"id", id}, {"type", type}});
  for (const auto &[id, e] : g.edges())
    edges.push_back({{"id", id}, {"type", e.type}, {"source", e.source}, {"target", e.target}});
  return {{"nodes", nodes}, {"edges", edges}};
}

Graph graph_from(const Json &j) {
  Graph g;
  if (j.is_null())
    return g;
  for (const auto &n : items(j, "nodes"))
    g.add_node(n.at("id").get<std::string>(), n.at("type").get<std::string>());
  for (const auto &e : items(j, "edges"))
    g.add_edge(e.at("id").get<std::string>(), e.at("type").get<std::string>(), e.at("source").get<std::string>(),
               e.at("target").get<std::string>());
  return g;
}

Json triple_json(const TripleGraph &t) {
  Json corr = Json::array();
  for (const auto &[id, k] : t.corr)
    corr.push_back({{"id", id}, {"type", k.type}, {"source", k.source}, {"target", k.target}});
  return {{"source", graph_json(t.source)}, {"target", graph_json(t.target)}, {"corr", corr}};
}

TripleGraph triple_from(const Json &j) {
  TripleGraph t;
  if (j.is_null())
    return t;
  t.source = graph_from(field(j, "source"));
  t.target = graph_from(field(j, "target"));
  for (const auto &c : items(j, "corr"))
    t.add_corr(c.at("id").get<std::string>(), c.value("type", std::string(default_corr_type)),
               c.at("source").get<std::string>(), c.at("target").get<std::string>());
  for (const auto &v : validate_structure(t))
    throw ParseError(v);
  return t;
}

Json map_json(const IdMap &m) {
  Json j = Json::object();
  for (const auto &[a, b] : m)
    j[a] = b;
  return j;
}

IdMap map_from(const Json &j) {
  IdMap m;
  if (j.is_null())
    return m;
  for (const auto &[a, b] : j.items())
    m[a] = b.get<std::string>();
  return m;
}

Json morphism_json(const TripleMorphism &f) {
  return {{"source", {{"nodes", map_json(f.source.nodes)}, {"edges", map_json(f.source.edges)}}},
          {"target", {{"nodes", map_json(f.target.nodes)}, {"edges", map_json(f.target.edges)}}},
          {"corr", map_json(f.corr)}};
}

TripleMorphism morphism_from(const Json &j) {
  TripleMorphism f;
  f.source.nodes = map_from(field(field(j, "source"), "nodes"));
  f.source.edges = map_from(field(field(j, "source"), "edges"));
  f.target.nodes = map_from(field(field(j, "target"), "nodes"));
  f.target.edges = map_from(field(field(j, "target"), "edges"));
  f.corr = map_from(field(j, "corr"));
  return f;
}

// metamodel and patterns

Json types_json(const TypeGraph &t) {
  Json edges = Json::array();
  for (const auto &[name, e] : t.edge_types)
    edges.push_back({{"name", name}, {"source", e.source}, {"target", e.target}});
  return {{"nodeTypes", t.node_types}, {"edgeTypes", edges}};
}

TypeGraph types_from(const Json &j) {
  TypeGraph t;
  if (j.is_null())
    return t;
  for (const auto &n : items(j, "nodeTypes"))
    if (!t.node_types.insert(n.get<std::string>()).second)
      throw ParseError("node type '" + n.get<std::string>() + "' declared twice");
  for (const auto &e : items(j, "edgeTypes")) {
    auto name = e.at("name").get<std::string>();
    if (!t.edge_types.emplace(name, EdgeType{e.at("source").get<std::string>(), e.at("target").get<std::string>()})
             .second)
      throw ParseError("edge type '" + name + "' declared twice");
  }
  return t;
}

Json metamodel_json(const MetamodelTriple &mm) {
  Json corr = Json::array();
  for (const auto &[name, ct] : mm.corr_types) {
    Json c = {{"name", name}};
    if (ct.source_type)
      c["sourceType"] = *ct.source_type;
    if (ct.target_type)
      c["targetType"] = *ct.target_type;
    corr.push_back(c);
  }
  return {{"source", types_json(mm.source)}, {"target", types_json(mm.target)}, {"corrTypes", corr}};
}

MetamodelTriple metamodel_from(const Json &j) {
  MetamodelTriple mm;
  mm.source = types_from(field(j, "source"));
  mm.target = types_from(field(j, "target"));
  if (j.contains("corrTypes")) {
    mm.corr_types.clear();
    for (const auto &c : items(j, "corrTypes")) {
      CorrType ct;
      if (c.contains("sourceType"))
        ct.source_type = c.at("sourceType").get<std::string>();
      if (c.contains("targetType"))
        ct.target_type = c.at("targetType").get<std::string>();
      mm.corr_types[c.at("name").get<std::string>()] = ct;
    }
  }
  return mm;
}

Json conditions_json(const std::vector<NamedCondition> &cs) {
  Json a = Json::array();
  for (const auto &c : cs)
    a.push_back({{"name", c.name}, {"graph", triple_json(c.graph)}});
  return a;
}

std::vector<NamedCondition> conditions_from(const Json &j, const char *key) {
  std::vector<NamedCondition> out;
  for (const auto &c : items(j, key))
    out.push_back({c.at("name").get<std::string>(), triple_from(c.at("graph"))});
  return out;
}

PatternKind kind_from(const std::string &k) {
  if (k == "S")
    return PatternKind::S;
  if (k == "C")
    return PatternKind::C;
  if (k == "N")
    return PatternKind::N;
  throw ParseError("unknown pattern kind '" + k + "' (expected S, C or N)");
}

Json pattern_json(const Pattern &p) {
  Json j = {{"name", p.name}, {"kind", to_string(p.kind)}, {"positive", triple_json(p.positive)}};
  if (!p.pre.empty())
    j["pre"] = triple_json(p.pre);
  j["negPre"] = conditions_json(p.neg_pre);
  j["negPost"] = conditions_json(p.neg_post);
  return j;
}

Pattern pattern_from(const Json &j) {
  Pattern p;
  p.name = j.at("name").get<std::string>();
  try {
    p.kind = kind_from(j.at("kind").get<std::string>());
    p.positive = triple_from(field(j, "positive"));
    p.pre = triple_from(field(j, "pre"));
    p.neg_pre = conditions_from(j, "negPre");
    p.neg_post = conditions_from(j, "negPost");
  } catch (const Error &e) {
    throw ParseError("pattern '" + p.name + "': " + e.what());
  }
  return p;
}

Json report_json(const SatisfactionReport &r) {
  Json results = Json::array();
  for (const auto &pr : r.results) {
    Json ms = Json::array();
    for (const auto &m : pr.matches)
      ms.push_back({{"status", to_string(m.status)}, {"reason", m.reason}, {"match", morphism_json(m.match)}});
    results.push_back({{"pattern", pr.pattern},
                       {"direction", to_string(pr.direction)},
                       {"satisfied", pr.satisfied()},
                       {"vacuous", pr.vacuous()},
                       {"matches", ms}});
  }
  return {{"satisfied", r.satisfied()}, {"results", results}};
}

MatchStatus status_from(const std::string &s) {
  if (s == "positive")
    return MatchStatus::Positive;
  if (s == "negative")
    return MatchStatus::Negative;
  if (s == "violated")
    return MatchStatus::Violated;
  throw ParseError("unknown match status '" + s + "'");
}

} // namespace

Direction parse_direction(const std::string &s) {
  if (s == "forward")
    return Direction::Forward;
  if (s == "backward")
    return Direction::Backward;
  throw ParseError("unknown direction '" + s + "' (expected forward or backward)");
}

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw ParseError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text))
    throw ParseError("cannot write '" + path + "'");
}

Specification parse_spec(const std::string &text) {
  const Json j = expect_object(parse_json(text), "specification");
  if (!j.contains("metamodel"))
    throw ParseError("specification: missing 'metamodel'");
  Specification s = guarded("specification", [&] {
    Specification s;
    s.metamodel = metamodel_from(field(j, "metamodel"));
    for (const auto &p : items(j, "patterns"))
      s.patterns.push_back(pattern_from(p));
    return s;
  });
  if (auto errs = s.validate(true); !errs.empty()) {
    std::string msg = "invalid specification:";
    for (const auto &e : errs)
      msg += "\n  " + e;
    throw ParseError(msg);
  }
  return s;
}

std::string write_spec(const Specification &s) {
  Json ps = Json::array();
  for (const auto &p : s.patterns)
    ps.push_back(pattern_json(p));
  return Json{{"metamodel", metamodel_json(s.metamodel)}, {"patterns", ps}}.dump(2) + "\n";
}

Graph parse_model(const std::string &text) {
  const Json j = expect_object(parse_json(text), "model");
  return guarded("model", [&] { return graph_from(j); });
}

std::string write_model(const Graph &g) { return graph_json(g).dump(2) + "\n"; }

TripleGraph parse_triple(const std::string &text) {
  const Json j = expect_object(parse_json(text), "triple graph");
  return guarded("triple graph", [&] { return triple_from(j); });
}

std::string write_triple(const TripleGraph &t) { return triple_json(t).dump(2) + "\n"; }

RuleDocument parse_rules(const std::string &text) {
  const Json j = expect_object(parse_json(text), "rule document");
  return guarded("rule document", [&] {
    RuleDocument d;
    d.direction = parse_direction(j.at("direction").get<std::string>());
    for (const auto &r : items(j, "rules")) {
      TGGRule rule;
      rule.name = r.at("name").get<std::string>();
      rule.direction = d.direction;
      rule.provenance = r.value("provenance", std::string());
      rule.lhs = triple_from(field(r, "lhs"));
      rule.rhs = triple_from(field(r, "rhs"));
      rule.nacs = conditions_from(r, "nacs");
      rule.posts = conditions_from(r, "posts");
      d.rules.push_back(std::move(rule));
    }
    return d;
  });
}

std::string write_rules(const RuleDocument &d) {
  Json rules = Json::array();
  for (const auto &r : d.rules)
    rules.push_back({{"name", r.name},
                     {"provenance", r.provenance},
                     {"lhs", triple_json(r.lhs)},
                     {"rhs", triple_json(r.rhs)},
                     {"nacs", conditions_json(r.nacs)},
                     {"posts", conditions_json(r.posts)}});
  return Json{{"direction", to_string(d.direction)}, {"rules", rules}}.dump(2) + "\n";
}

SatisfactionReport parse_report(const std::string &text) {
  const Json j = parse_json(text);
  return guarded("report", [&] {
    SatisfactionReport r;
    for (const auto &pr : items(j, "results")) {
      PatternResult res{pr.at("pattern").get<std::string>(), parse_direction(pr.at("direction").get<std::string>()),
                        {}};
      for (const auto &m : items(pr, "matches"))
        res.matches.push_back(
            {morphism_from(m.at("match")), status_from(m.at("status").get<std::string>()), m.value("reason", "")});
      r.results.push_back(std::move(res));
    }
    return r;
  });
}

std::string write_report(const SatisfactionReport &r) { return report_json(r).dump(2) + "\n"; }

std::string report_text(const SatisfactionReport &r) {
  std::ostringstream out;
  for (const auto &pr : r.results) {
    out << pr.pattern << " " << to_string(pr.direction) << ": "
        << (pr.vacuous() ? "vacuous" : pr.satisfied() ? "satisfied" : "VIOLATED") << "\n";
    for (const auto &m : pr.matches) {
      out << "  " << to_string(m.status);
      const IdMap u = unified(m.match);
      if (u.empty())
        out << " (empty match)";
      else
        out << " at";
      for (const auto &[from, to] : u)
        out << " " << from << "->" << to;
      if (!m.reason.empty())
        out << " (" << m.reason << ")";
      out << "\n";
    }
  }
  out << (r.satisfied() ? "specification satisfied" : "specification VIOLATED") << "\n";
  return out.str();
}

std::vector<AnnotatedPattern> parse_annotated(const std::string &text) {
  const Json j = parse_json(text);
  return guarded("annotated patterns", [&] {
    std::vector<AnnotatedPattern> out;
    for (const auto &a : items(j, "patterns")) {
      AnnotatedPattern ap;
      ap.pattern = pattern_from(a);
      ap.origin = a.value("origin", std::string("initial"));
      for (const auto &p : items(a, "parents"))
        ap.parents.push_back({p.at("name").get<std::string>(), morphism_from(p.at("embedding"))});
      for (const auto &d : items(a, "deps"))
        ap.deps.push_back({d.at("name").get<std::string>(), triple_from(d.at("graph"))});
      for (const auto &n : items(a, "notes"))
        ap.notes.push_back(n.get<std::string>());
      out.push_back(std::move(ap));
    }
    return out;
  });
}

std::string write_annotated(const std::vector<AnnotatedPattern> &patterns) {
  Json ps = Json::array();
  for (const auto &a : patterns) {
    Json j = pattern_json(a.pattern);
    j["origin"] = a.origin;
    Json parents = Json::array();
    for (const auto &p : a.parents)
      parents.push_back({{"name", p.name}, {"embedding", morphism_json(p.embedding)}});
    j["parents"] = parents;
    Json deps = Json::array();
    for (const auto &d : a.deps)
      deps.push_back({{"name", d.name}, {"graph", triple_json(d.graph)}});
    j["deps"] = deps;
    j["notes"] = a.notes;
    j["provenance"] = a.provenance();
    ps.push_back(j);
  }
  return Json{{"count", patterns.size()}, {"patterns", ps}}.dump(2) + "\n";
}

std::string write_analysis(const AnalysisReport &r) {
  Json conflicts = Json::array();
  for (const auto &c : r.conflicts)
    conflicts.push_back({{"positive", c.positive}, {"negative", c.negative}, {"witness", morphism_json(c.witness)}});
  auto findings = [](const std::vector<Finding> &fs) {
    Json a = Json::array();
    for (const auto &f : fs)
      a.push_back({{"pattern", f.pattern}, {"form", f.form}});
    return a;
  };
  auto coverage = [](const Coverage &c) {
    return Json{{"coveredNodeTypes", c.covered_nodes},
                {"uncoveredNodeTypes", c.uncovered_nodes},
                {"coveredEdgeTypes", c.covered_edges},
                {"uncoveredEdgeTypes", c.uncovered_edges}};
  };
  return Json{{"conflicts", conflicts},
              {"tautologies", findings(r.tautologies)},
              {"contradictions", findings(r.contradictions)},
              {"languageCovering", {{"source", coverage(r.source)}, {"target", coverage(r.target)}}},
              {"undecided", r.undecided}}
             .dump(2) +
         "\n";
}

std::string write_trace(const Trace &t) {
  Json steps = Json::array();
  for (const auto &s : t)
    steps.push_back({{"rule", s.rule}, {"match", morphism_json(s.match)}, {"added", triple_json(s.added)}});
  return Json{{"steps", steps}}.dump(2) + "\n";
}

} // namespace tgp
