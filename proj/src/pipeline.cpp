#include "tgp/deduction.hpp"

#include <algorithm>

namespace tgp {

namespace {

const AnnotatedPattern *find_iso(const std::vector<AnnotatedPattern> &list, const Pattern &p) {
  for (const auto &a : list)
    if (pattern_isomorphic(a.pattern, p))
      return &a;
  return nullptr;
}

std::size_t index_of(const std::vector<AnnotatedPattern> &list, const std::string &name) {
  for (std::size_t i = 0; i < list.size(); ++i)
    if (list[i].pattern.name == name)
      return i;
  throw DeductionError("unknown pattern '" + name + "'");
}

/// Appends a derived pattern unless an isomorphic one already exists. Dependencies
/// named after the derivation are renamed to whatever pattern ends up covering it.
void add_derived(std::vector<AnnotatedPattern> &list, AnnotatedPattern d, std::initializer_list<std::size_t> owners) {
  const std::string derived_as = d.pattern.name;
  std::string kept;
  if (const AnnotatedPattern *twin = find_iso(list, d.pattern)) {
    kept = twin->pattern.name;
    list[index_of(list, kept)].notes.push_back("also derived as '" + derived_as + "' (" + d.origin + "), kept once");
  } else {
    while (std::any_of(list.begin(), list.end(), [&](const AnnotatedPattern &a) { return a.pattern.name == d.pattern.name; }))
      d.pattern.name += "'";
    kept = d.pattern.name;
    list.push_back(std::move(d));
  }
  if (kept == derived_as)
    return;
  for (std::size_t o : owners)
    for (auto &dep : list[o].deps)
      if (dep.name == derived_as)
        dep.name = kept;
}

constexpr std::size_t max_patterns = 200;

bool positive(const AnnotatedPattern &a) { return a.pattern.kind != PatternKind::N; }

} // namespace

std::vector<AnnotatedPattern> run_deduction_pipeline(const Specification &s, const PipelineOptions &opts) {
  if (auto errs = s.validate(true); !errs.empty())
    throw DeductionError("invalid specification: " + errs.front());

  // 1. pre-condition weakening
  std::vector<std::string> pw_log;
  const Specification weakened = pw(s, &pw_log);
  std::vector<AnnotatedPattern> list;
  for (const auto &p : weakened.patterns) {
    AnnotatedPattern a;
    a.pattern = p;
    for (const auto &line : pw_log)
      if (line.find("'" + p.name + "' gains") != std::string::npos)
        a.notes.push_back(line);
    list.push_back(std::move(a));
  }
  const std::size_t initial = list.size();

  // 2. S/C-annotation over pairs, self-pairs included, until no new pattern appears
  for (std::size_t j = 0; j < list.size(); ++j)
    for (std::size_t i = 0; i <= j; ++i) {
      if (!positive(list[i]) || !positive(list[j]))
        continue;
      const bool both_s = list[i].pattern.kind == PatternKind::S && list[j].pattern.kind == PatternKind::S;
      auto res = both_s ? s_annotate(list[i], list[j]) : c_annotate(list[i], list[j]);
      list[i] = res[0];
      list[j] = res[1];
      for (std::size_t k = 2; k < res.size(); ++k)
        add_derived(list, res[k], {i, j});
      if (list.size() > max_patterns)
        throw DeductionError("annotation did not close within " + std::to_string(max_patterns) + " patterns");
    }

  // 3. NP-annotation on initial and derived positive patterns
  if (opts.np_deduction) {
    const std::size_t upto = list.size();
    for (std::size_t i = 0; i < upto; ++i) {
      if (!positive(list[i]))
        continue;
      for (std::size_t n = 0; n < initial; ++n) {
        if (list[n].pattern.kind != PatternKind::N)
          continue;
        auto res = np_annotate(list[i], list[n]);
        list[i] = res[0];
        if (res.size() > 2)
          add_derived(list, res[2], {i});
      }
    }
  }

  // 4. N-deduction, then the N-patterns go away
  for (auto &a : list) {
    if (!positive(a))
      continue;
    for (std::size_t n = 0; n < initial; ++n)
      if (list[n].pattern.kind == PatternKind::N) {
        const std::size_t before = a.pattern.neg_post.size();
        a.pattern = n_deduce(a.pattern, list[n].pattern);
        if (a.pattern.neg_post.size() > before)
          a.notes.push_back("N-deduction with '" + list[n].pattern.name + "' adds " +
                            std::to_string(a.pattern.neg_post.size() - before) + " negative post-condition(s)");
      }
  }
  list.erase(std::remove_if(list.begin(), list.end(), [](const AnnotatedPattern &a) { return !positive(a); }),
             list.end());

  // 5. derived patterns inherit their parents' dependencies
  for (auto &a : list) {
    if (a.origin == "initial")
      continue;
    for (const auto &link : a.parents) {
      const AnnotatedPattern &parent = list[index_of(list, link.name)];
      for (const auto &dep : parent.deps) {
        TripleGraph moved = rename(dep.graph, [&] {
          IdMap u = unified(link.embedding);
          for (const auto &id : dep.graph.ids())
            if (!u.count(id))
              throw DeductionError("dependency of '" + parent.pattern.name + "' outside its positive graph");
          return split(u, dep.graph);
        }());
        // included along the parent embedding, not merely embeddable somewhere in the pre
        if (is_morphism(identity(moved), moved, a.pattern.pre)) {
          a.notes.push_back("dependency '" + dep.name + "' of '" + parent.pattern.name +
                            "' not inherited: included in the positive pre-condition");
          continue;
        }
        if (std::any_of(a.deps.begin(), a.deps.end(), [&](const Dependency &d) { return d.graph == moved; }))
          continue;
        a.deps.push_back({dep.name, moved});
        a.notes.push_back("inherits dependency '" + dep.name + "' from '" + parent.pattern.name + "'");
      }
    }
  }
  return list;
}

} // namespace tgp
