#ifndef TGP_RULEGEN_HPP
#define TGP_RULEGEN_HPP

#include "tgp/deduction.hpp"

namespace tgp {

/// Non-deleting rule lhs ⊆ rhs. Every NAC graph contains lhs, every post-condition contains rhs.
struct TGGRule {
  std::string name;
  Direction direction = Direction::Forward;
  std::string provenance; // pattern the rule was compiled from
  TripleGraph lhs;
  TripleGraph rhs;
  std::vector<NamedCondition> nacs;
  std::vector<NamedCondition> posts;
  bool operator==(const TGGRule &) const = default;
};

struct LeftExtension {
  TripleGraph apex;   // B_k = L x_R D_k
  TripleGraph object; // S_k = L +_{B_k} D_k, expressed with the ids of R
};

/// lhs and dep are sub-triples of rhs.
LeftExtension left_extension(const TripleGraph &lhs, const TripleGraph &rhs, const TripleGraph &dep);

/// Creates something: the pre-condition is a proper part of the positive graph.
/// Self-gluings (pre = Q) are not causal; their rule would be the identity.
bool is_causal(const Pattern &p);

std::string rule_name(const std::string &pattern, Direction dir);

TGGRule derive_rule(const AnnotatedPattern &a, Direction dir);
/// One rule per causal pattern, in list order.
std::vector<TGGRule> derive_rules(const std::vector<AnnotatedPattern> &patterns, Direction dir);
std::vector<TGGRule> generate_rules(const Specification &s, Direction dir, const PipelineOptions &opts = {});

} // namespace tgp

#endif // TGP_RULEGEN_HPP
