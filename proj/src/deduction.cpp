#include "tgp/deduction.hpp"

#include <algorithm>

namespace tgp {

std::vector<std::string> AnnotatedPattern::provenance() const {
  std::vector<std::string> out{"origin: " + origin};
  for (const auto &p : parents)
    out.push_back("parent: " + p.name);
  out.insert(out.end(), notes.begin(), notes.end());
  return out;
}

namespace {

/// a, b both extend `base` by id inclusion; iso compatible with the identity on base.
bool same_extension(const TripleGraph &a, const TripleGraph &b, const TripleGraph &base) {
  return a.size() == b.size() && has_monomorphism(a, b, identity(base));
}

bool match_conditions(const std::vector<NamedCondition> &as, const std::vector<NamedCondition> &bs,
                      const TripleMorphism &phi, std::size_t i, std::vector<bool> &used) {
  if (i == as.size())
    return true;
  for (std::size_t j = 0; j < bs.size(); ++j) {
    if (used[j] || as[i].graph.size() != bs[j].graph.size())
      continue;
    if (!has_monomorphism(as[i].graph, bs[j].graph, phi))
      continue;
    used[j] = true;
    if (match_conditions(as, bs, phi, i + 1, used))
      return true;
    used[j] = false;
  }
  return false;
}

std::string unique_name(const std::vector<NamedCondition> &existing, const std::string &base) {
  auto taken = [&](const std::string &n) {
    return std::any_of(existing.begin(), existing.end(), [&](const NamedCondition &c) { return c.name == n; });
  };
  if (!taken(base))
    return base;
  for (int k = 2;; ++k)
    if (!taken(base + "(" + std::to_string(k) + ")"))
      return base + "(" + std::to_string(k) + ")";
}

/// Pushes every negative pre-condition of `src` along `into`: Q_src -> qprime.
void push_conditions(const Pattern &src, const TripleMorphism &into, const TripleGraph &qprime,
                     std::vector<NamedCondition> &dst) {
  for (const auto &c : src.neg_pre) {
    TriplePushout po = triple_pushout(src.positive, qprime, into, c.graph, identity(src.positive));
    bool dup = std::any_of(dst.begin(), dst.end(),
                           [&](const NamedCondition &d) { return same_extension(po.object, d.graph, qprime); });
    if (!dup)
      dst.push_back({unique_name(dst, c.name), po.object});
  }
}

void add_dep(AnnotatedPattern &a, const std::string &name, const TripleGraph &g) {
  for (const auto &d : a.deps)
    if (d.graph == g)
      return;
  // already required by the pre-condition: as a NAC it would block every match
  if (is_morphism(identity(g), g, a.pattern.pre)) {
    a.notes.push_back("dependency '" + name + "' dropped: included in the positive pre-condition");
    return;
  }
  a.deps.push_back({name, g});
}

std::string derived_name(const std::string &a, const std::string &b, std::size_t k, std::size_t n) {
  std::string name = a + "." + b;
  if (n > 1)
    name += "[" + std::to_string(k + 1) + "]";
  return name;
}

std::vector<AnnotatedPattern> annotate(const AnnotatedPattern &a1, const AnnotatedPattern &a2, bool composite) {
  const Pattern &p1 = a1.pattern, &p2 = a2.pattern;
  const bool self = p1.name == p2.name;
  AnnotatedPattern r1 = a1, r2 = a2;
  std::vector<AnnotatedPattern> derived;
  const auto spans = mi(p1.positive, p2.positive);
  for (std::size_t k = 0; k < spans.size(); ++k) {
    const MioSpan &span = spans[k];
    Deduced d = composite ? c_deduce(p1, p2, span) : s_deduce(p1, p2, span);
    d.pattern.name = derived_name(p1.name, p2.name, k, spans.size());
    add_dep(r1, d.pattern.name, span.apex);
    add_dep(self ? r1 : r2, d.pattern.name, image_triple(span.right, p2.positive));
    AnnotatedPattern out;
    out.pattern = d.pattern;
    out.origin = composite ? "C-deduction" : "S-deduction";
    out.parents = {{p1.name, d.from_first}, {p2.name, d.from_second}};
    out.notes.push_back(out.origin + " of '" + p1.name + "' and '" + p2.name + "' over a common part of " +
                        std::to_string(span.apex.size()) + " elements");
    derived.push_back(std::move(out));
  }
  if (self)
    r2 = r1;
  std::vector<AnnotatedPattern> result{r1, r2};
  result.insert(result.end(), derived.begin(), derived.end());
  return result;
}

bool is_positive(const Pattern &p) { return p.kind != PatternKind::N; }

} // namespace

bool pattern_isomorphic(const Pattern &a, const Pattern &b) {
  if (a.kind != b.kind || a.positive.size() != b.positive.size() || a.pre.size() != b.pre.size() ||
      a.neg_pre.size() != b.neg_pre.size() || a.neg_post.size() != b.neg_post.size())
    return false;
  const IdSet pre_b = b.pre.ids();
  for (const auto &phi : find_monomorphisms(a.positive, b.positive)) {
    const IdMap u = unified(phi);
    IdSet pre_img;
    for (const auto &id : a.pre.ids())
      pre_img.insert(u.at(id));
    if (pre_img != pre_b)
      continue;
    std::vector<bool> used_pre(b.neg_pre.size()), used_post(b.neg_post.size());
    if (match_conditions(a.neg_pre, b.neg_pre, phi, 0, used_pre) &&
        match_conditions(a.neg_post, b.neg_post, phi, 0, used_post))
      return true;
  }
  return false;
}

Specification pw(const Specification &s, std::vector<std::string> *log) {
  Specification out = s;
  auto &ps = out.patterns;
  for (int round = 0;; ++round) {
    if (round > 64)
      throw DeductionError("pre-condition weakening does not stabilise");
    bool changed = false;
    for (std::size_t i = 0; i < ps.size(); ++i)
      for (std::size_t j = 0; j < ps.size(); ++j) {
        if (i == j || ps[i].kind != PatternKind::S || ps[j].kind != PatternKind::S || ps[i].positive.empty())
          continue;
        const Pattern p1 = ps[i];
        Pattern &p2 = ps[j];
        for (const auto &e : find_monomorphisms(p1.positive, p2.positive))
          for (const auto &c : p1.neg_pre) {
            bool subsumed = std::any_of(p2.neg_pre.begin(), p2.neg_pre.end(), [&](const NamedCondition &d) {
              return has_monomorphism(c.graph, d.graph, e);
            });
            if (subsumed)
              continue;
            TriplePushout po = triple_pushout(p1.positive, p2.positive, e, c.graph, identity(p1.positive));
            std::string name = unique_name(p2.neg_pre, c.name);
            p2.neg_pre.push_back({name, po.object});
            changed = true;
            if (log)
              log->push_back("PW: '" + p2.name + "' gains negative pre-condition '" + name + "' from '" + p1.name +
                             "'");
          }
      }
    if (!changed)
      break;
  }
  return out;
}

Deduced s_deduce(const Pattern &p1, const Pattern &p2, const MioSpan &span) {
  if (span.apex.empty())
    throw DeductionError("S-deduction over an empty common part");
  TriplePushout po = triple_pushout(span.apex, p1.positive, span.left, p2.positive, span.right);
  Deduced d;
  d.pattern.name = p1.name + "." + p2.name;
  d.pattern.kind = PatternKind::C;
  d.pattern.positive = po.object;
  d.pattern.pre = image_triple(compose(po.from_left, span.left), po.object);
  push_conditions(p1, po.from_left, po.object, d.pattern.neg_pre);
  push_conditions(p2, po.from_right, po.object, d.pattern.neg_pre);
  d.from_first = po.from_left;
  d.from_second = po.from_right;
  return d;
}

Deduced c_deduce(const Pattern &p1, const Pattern &p2, const MioSpan &span) {
  Deduced d = s_deduce(p1, p2, span);
  // M^c: the part of M lying in both pre-conditions; P^c is the glued image of C1, C2 and M
  IdSet ids = d.pattern.pre.ids();
  for (const auto &id : p1.pre.ids())
    ids.insert(d.from_first.apply(id).value());
  for (const auto &id : p2.pre.ids())
    ids.insert(d.from_second.apply(id).value());
  d.pattern.pre = subtriple(d.pattern.positive, ids);
  return d;
}

std::vector<AnnotatedPattern> s_annotate(const AnnotatedPattern &a1, const AnnotatedPattern &a2) {
  if (a1.pattern.kind != PatternKind::S || a2.pattern.kind != PatternKind::S)
    throw DeductionError("S-annotation needs two S-patterns");
  return annotate(a1, a2, false);
}

std::vector<AnnotatedPattern> c_annotate(const AnnotatedPattern &a1, const AnnotatedPattern &a2) {
  if (!is_positive(a1.pattern) || !is_positive(a2.pattern))
    throw DeductionError("C-annotation needs two positive patterns");
  return annotate(a1, a2, true);
}

Pattern n_deduce(const Pattern &p, const Pattern &np) {
  if (np.kind != PatternKind::N)
    throw DeductionError("N-deduction needs an N-pattern");
  Pattern out = p;
  const auto spans = mi(p.positive, np.forbidden());
  for (std::size_t k = 0; k < spans.size(); ++k) {
    TriplePushout po = triple_pushout(spans[k].apex, p.positive, spans[k].left, np.forbidden(), spans[k].right);
    bool dup = std::any_of(out.neg_post.begin(), out.neg_post.end(), [&](const NamedCondition &c) {
      return same_extension(po.object, c.graph, p.positive);
    });
    if (!dup)
      out.neg_post.push_back({unique_name(out.neg_post, np.name), po.object});
  }
  return out;
}

TripleGraph completion(const TripleGraph &m, const TripleGraph &t) {
  if (!is_subtriple(m, t))
    throw DeductionError("completion: the graph is not embedded in the completing graph");
  IdSet related;
  for (const auto &[_, k] : t.corr) {
    related.insert(k.source);
    related.insert(k.target);
  }
  IdSet nodes;
  for (const auto &[id, _] : m.source.nodes())
    nodes.insert(id);
  for (const auto &[id, _] : m.target.nodes())
    nodes.insert(id);
  for (const auto &[id, _] : m.corr) {
    nodes.insert(m.corr.at(id).source);
    nodes.insert(m.corr.at(id).target);
  }
  for (const Graph *g : {&t.source, &t.target})
    for (const auto &[id, _] : g->nodes())
      if (!related.count(id))
        nodes.insert(id);
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto &[_, k] : t.corr)
      if (nodes.count(k.source) != nodes.count(k.target)) {
        nodes.insert(k.source);
        nodes.insert(k.target);
        changed = true;
      }
  }
  IdSet ids = nodes;
  for (const auto &[id, k] : t.corr)
    if (nodes.count(k.source) && nodes.count(k.target))
      ids.insert(id);
  for (const Graph *g : {&t.source, &t.target})
    for (const auto &[id, e] : g->edges())
      if (nodes.count(e.source) && nodes.count(e.target))
        ids.insert(id);
  return subtriple(t, ids);
}

namespace {

struct Decomposition {
  MioSpan span;
  TripleGraph half; // S1 as a sub-triple of S
  std::string description;
};

std::vector<Decomposition> decompositions(const TripleGraph &q, const TripleGraph &s) {
  std::vector<Decomposition> out;
  const IdSet all = s.ids();
  const auto spans = mi(q, s);
  for (std::size_t k = 0; k < spans.size(); ++k) {
    TripleGraph half = image_triple(spans[k].right, s);
    if (half.size() == s.size())
      continue;
    for (const auto &iota : find_monomorphisms(half, s)) {
      IdSet cover = half.ids();
      cover.merge(image(iota));
      if (cover != all)
        continue;
      out.push_back({spans[k], half,
                     "common part " + std::to_string(k + 1) + " of " + std::to_string(spans.size()) + " (" +
                         std::to_string(half.size()) + " elements) glued with an isomorphic copy gives the forbidden graph"});
      break;
    }
  }
  return out;
}

std::optional<NpResult> reuse(const Pattern &p, const Pattern &np, bool composite) {
  if (np.kind != PatternKind::N)
    throw DeductionError("NP-deduction needs an N-pattern");
  if (p.positive.empty())
    return std::nullopt;
  const auto ds = decompositions(p.positive, np.forbidden());
  if (ds.empty())
    return std::nullopt;
  NpResult r;
  r.reused = completion(ds.front().span.apex, p.positive);
  r.pattern = p;
  r.pattern.name = p.name + "." + np.name;
  r.pattern.kind = PatternKind::C;
  // P_s = C +_{B1} C(S1, Q) with B1 = C x_Q C(S1, Q); for sub-triples of Q that is their union
  r.pattern.pre = composite ? unite(p.pre, r.reused) : r.reused;
  for (const auto &d : ds)
    r.decompositions.push_back(d.description);
  return r;
}

} // namespace

std::optional<NpResult> np_deduce(const Pattern &p, const Pattern &np) { return reuse(p, np, false); }

std::optional<NpResult> cnp_deduce(const Pattern &p, const Pattern &np) { return reuse(p, np, true); }

std::vector<AnnotatedPattern> np_annotate(const AnnotatedPattern &a, const AnnotatedPattern &an) {
  const bool composite = a.pattern.kind == PatternKind::C;
  auto r = composite ? cnp_deduce(a.pattern, an.pattern) : np_deduce(a.pattern, an.pattern);
  if (!r)
    return {a, an};
  AnnotatedPattern updated = a;
  add_dep(updated, r->pattern.name, r->reused);
  AnnotatedPattern derived;
  derived.pattern = r->pattern;
  derived.origin = composite ? "CNP-deduction" : "NP-deduction";
  derived.parents = {{a.pattern.name, identity(a.pattern.positive)}};
  derived.notes.push_back(derived.origin + " of '" + a.pattern.name + "' and '" + an.pattern.name + "'");
  for (const auto &d : r->decompositions)
    derived.notes.push_back("decomposition: " + d);
  return {updated, an, derived};
}

} // namespace tgp
