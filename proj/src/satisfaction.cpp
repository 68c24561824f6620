#include "tgp/pattern.hpp"

#include <algorithm>

namespace tgp {

DirectedBase directed_base(const Pattern &p, Direction dir) {
  const Side side = input_side(dir);
  DirectedBase out;
  out.base = directed_part(p.pre, p.positive, side);
  for (const auto &c : p.neg_pre) {
    DirectedCondition d{c.name, directed_part(p.pre, c.graph, side), false};
    // the base sits inside N^x_i, so an isomorphism means the condition adds nothing in this direction
    d.excluded = are_isomorphic(d.graph, out.base).has_value();
    out.neg_pre.push_back(std::move(d));
  }
  return out;
}

bool PatternResult::satisfied() const {
  return std::none_of(matches.begin(), matches.end(),
                      [](const BaseMatch &m) { return m.status == MatchStatus::Violated; });
}

bool SatisfactionReport::satisfied() const {
  return std::all_of(results.begin(), results.end(), [](const PatternResult &r) { return r.satisfied(); });
}

std::vector<std::string> SatisfactionReport::violated_patterns() const {
  std::vector<std::string> out;
  for (const auto &r : results)
    if (!r.satisfied() && std::find(out.begin(), out.end(), r.pattern) == out.end())
      out.push_back(r.pattern);
  return out;
}

namespace {

struct Flat {
  std::string name;
  TripleGraph triple;
  Graph graph;
};

PatternResult check_on(const FlatHost &host, const Pattern &p, Direction dir) {
  const DirectedBase db = directed_base(p, dir);
  std::vector<Flat> pres;
  for (const auto &c : db.neg_pre)
    if (!c.excluded)
      pres.push_back({c.name, c.graph, flatten(c.graph)});
  std::vector<Flat> posts;
  for (const auto &c : p.neg_post)
    posts.push_back({c.name, c.graph, flatten(c.graph)});
  const Graph flat_base = flatten(db.base);
  const Graph flat_q = flatten(p.positive);

  PatternResult result{p.name, dir, {}};
  host.for_each(flat_base, db.base, {}, [&](const TripleMorphism &mb) {
    BaseMatch bm{mb, MatchStatus::Violated, ""};
    for (const auto &n : pres)
      if (host.has(n.graph, mb)) {
        bm.status = MatchStatus::Negative;
        bm.reason = n.name;
        break;
      }
    if (bm.status != MatchStatus::Negative) {
      bool any = false;
      std::string hit;
      host.for_each(flat_q, p.positive, mb, [&](const TripleMorphism &m) {
        any = true;
        for (const auto &c : posts)
          if (host.has(c.graph, m)) {
            hit = c.name;
            return true;
          }
        bm.status = MatchStatus::Positive;
        return false;
      });
      if (bm.status != MatchStatus::Positive)
        bm.reason = any ? "every occurrence hits post-condition '" + hit + "'" : "no occurrence of the positive graph";
    }
    result.matches.push_back(std::move(bm));
    return true;
  });
  return result;
}

} // namespace

PatternResult check_pattern(const TripleGraph &host, const Pattern &p, Direction dir) {
  return check_on(FlatHost(host), p, dir);
}

SatisfactionReport check_spec(const TripleGraph &host, const Specification &s) {
  const FlatHost flat(host);
  std::vector<const Pattern *> order;
  for (const auto &p : s.patterns)
    order.push_back(&p);
  std::stable_sort(order.begin(), order.end(), [](const Pattern *a, const Pattern *b) { return a->name < b->name; });
  SatisfactionReport report;
  for (const Pattern *p : order) {
    report.results.push_back(check_on(flat, *p, Direction::Forward));
    report.results.push_back(check_on(flat, *p, Direction::Backward));
  }
  return report;
}

} // namespace tgp
