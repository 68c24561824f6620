#ifndef TGP_ANALYSIS_HPP
#define TGP_ANALYSIS_HPP

#include "tgp/engine.hpp"

namespace tgp {

struct Conflict {
  std::string positive;
  std::string negative;
  TripleMorphism witness; // forbidden graph -> positive graph
};

struct Finding {
  std::string pattern;
  std::string form;
};

struct Coverage {
  std::set<std::string> covered_nodes, uncovered_nodes;
  std::set<std::string> covered_edges, uncovered_edges;
};

struct AnalysisReport {
  std::vector<Conflict> conflicts;
  std::vector<Finding> tautologies;
  std::vector<Finding> contradictions;
  Coverage source;
  Coverage target;
  std::vector<std::string> undecided;
};

std::vector<Conflict> find_conflicts(const Specification &s);
std::vector<Finding> find_tautologies(const Specification &s);
std::vector<Finding> find_contradictions(const Specification &s);
/// Types used by the positive graphs of the (non N) patterns, per side.
std::pair<Coverage, Coverage> language_covering(const Specification &s);
AnalysisReport analyze(const Specification &s);

struct ProbeResult {
  bool applicable = false; // the host satisfies the specification, so the probe says something
  bool pass = true;
  std::optional<RuleMatch> offending;
  std::string message;
};

/// On a satisfying host no compiled forward or backward rule may be applicable.
ProbeResult hippocratic_probe(const Specification &s, const TripleGraph &host);

} // namespace tgp

#endif // TGP_ANALYSIS_HPP
