#ifndef TGP_ENGINE_HPP
#define TGP_ENGINE_HPP

#include "tgp/rulegen.hpp"

#include <cstdint>

namespace tgp {

/// A post-condition fired while applying a rule.
class EngineError : public Error {
public:
  using Error::Error;
};

/// The saturated result does not satisfy the specification.
class DomainError : public Error {
public:
  DomainError(const std::string &msg, std::vector<std::string> violated)
      : Error(msg), violated_(std::move(violated)) {}
  const std::vector<std::string> &violated() const { return violated_; }

private:
  std::vector<std::string> violated_;
};

/// The input model is not typed over the specification.
class InputError : public Error {
public:
  using Error::Error;
};

struct RuleMatch {
  std::string rule;
  TripleMorphism match; // L -> host
  std::optional<std::string> blocked_by;
};

/// Every match of the rule's lhs, applicable ones first-class, blocked ones tagged with the NAC.
std::vector<RuleMatch> find_matches(const TGGRule &r, const TripleGraph &host);
std::vector<RuleMatch> find_applicable(const TGGRule &r, const TripleGraph &host);

struct TraceStep {
  std::string rule;
  TripleMorphism match;
  TripleGraph added; // created elements and the nodes they attach to, with host ids
};
using Trace = std::vector<TraceStep>;

/// Pushout of lhs -> rhs along the match. New elements are named "<rhs id>_<step>".
/// Throws EngineError when a post-condition matches on the comatch.
TripleGraph apply(const TGGRule &r, const TripleMorphism &match, const TripleGraph &host, std::size_t step,
                  TripleGraph *added = nullptr);

struct SaturationResult {
  TripleGraph result;
  Trace trace;
  std::vector<std::string> diagnostics; // applications rejected by a post-condition
};

/// Applies rules until none is applicable. Without a seed the first rule (in list order)
/// with an applicable match fires at its first match; with a seed a random applicable pair fires.
/// A match whose application would fire a post-condition is rejected and reported, not applied.
SaturationResult saturate(const std::vector<TGGRule> &rules, const TripleGraph &start,
                          std::optional<std::uint64_t> seed = std::nullopt, std::size_t max_steps = 100000);

/// |rules| times the largest number of lhs matches of any rule in `final_graph`.
std::size_t termination_bound(const std::vector<TGGRule> &rules, const TripleGraph &final_graph);

/// Replays a trace from `start`.
TripleGraph replay(const Trace &trace, const TripleGraph &start);

struct TransformOptions {
  bool np_deduction = true;
  std::optional<std::uint64_t> seed;
};

struct TransformResult {
  TripleGraph result;
  Trace trace;
  std::vector<TGGRule> rules;
  SatisfactionReport report;
  std::vector<std::string> diagnostics;
};

/// Runs the operational transformation for `dir` from the given input-side model and
/// verifies the result against `s`. Throws InputError, EngineError or DomainError.
TransformResult transform(const Specification &s, const Graph &model, Direction dir,
                          const TransformOptions &opts = {});

} // namespace tgp

#endif // TGP_ENGINE_HPP
