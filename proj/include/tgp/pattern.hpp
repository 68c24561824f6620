#ifndef TGP_PATTERN_HPP
#define TGP_PATTERN_HPP

#include "tgp/triple.hpp"

namespace tgp {

enum class PatternKind { S, C, N };
const char *to_string(PatternKind k);

/// A negative pre- or post-condition. `graph` contains every id of the pattern's
/// positive graph, so the embedding Q -> graph is the id inclusion.
struct NamedCondition {
  std::string name;
  TripleGraph graph;
  bool operator==(const NamedCondition &) const = default;
};

/// pre ⊆ positive and positive ⊆ every condition graph, all by id inclusion.
struct Pattern {
  std::string name;
  PatternKind kind = PatternKind::S;
  TripleGraph pre;
  TripleGraph positive;
  std::vector<NamedCondition> neg_pre;
  std::vector<NamedCondition> neg_post;

  /// The forbidden graph of an N-pattern.
  const TripleGraph &forbidden() const { return neg_post.at(0).graph; }
  bool operator==(const Pattern &) const = default;
};

std::vector<std::string> validate_pattern(const Pattern &p, const MetamodelTriple &mm);

struct Specification {
  MetamodelTriple metamodel;
  std::vector<Pattern> patterns;

  /// `initial` additionally enforces that only N-patterns carry post-conditions.
  std::vector<std::string> validate(bool initial = true) const;
  const Pattern *find(const std::string &name) const;
  bool operator==(const Specification &) const = default;
};

struct DirectedCondition {
  std::string name;
  TripleGraph graph; // N^x_i as a sub-triple of C_i
  bool excluded = false;
};

struct DirectedBase {
  TripleGraph base; // P_x as a sub-triple of Q
  std::vector<DirectedCondition> neg_pre;
};

DirectedBase directed_base(const Pattern &p, Direction dir);

enum class MatchStatus { Positive, Negative, Violated };
const char *to_string(MatchStatus s);

struct BaseMatch {
  TripleMorphism match; // P_x -> host
  MatchStatus status = MatchStatus::Violated;
  std::string reason;   // blocking pre-condition, or why no clean witness exists
  bool operator==(const BaseMatch &) const = default;
};

struct PatternResult {
  std::string pattern;
  Direction direction = Direction::Forward;
  std::vector<BaseMatch> matches;

  bool satisfied() const;
  bool vacuous() const { return matches.empty(); }
  bool operator==(const PatternResult &) const = default;
};

struct SatisfactionReport {
  std::vector<PatternResult> results; // sorted by pattern name, forward before backward

  bool satisfied() const;
  std::vector<std::string> violated_patterns() const;
  bool operator==(const SatisfactionReport &) const = default;
};

PatternResult check_pattern(const TripleGraph &host, const Pattern &p, Direction dir);
SatisfactionReport check_spec(const TripleGraph &host, const Specification &s);

/// Swaps source and target everywhere.
TripleGraph mirror(const TripleGraph &t);
MetamodelTriple mirror(const MetamodelTriple &mm);
Pattern mirror(const Pattern &p);
Specification mirror(const Specification &s);

} // namespace tgp

#endif // TGP_PATTERN_HPP
