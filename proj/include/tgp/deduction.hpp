#ifndef TGP_DEDUCTION_HPP
#define TGP_DEDUCTION_HPP

#include "tgp/pattern.hpp"

namespace tgp {

class DeductionError : public Error {
public:
  using Error::Error;
};

/// Common subobject of two triples: `apex` is a sub-triple of the first argument
/// (so `left` is an id inclusion) and `right` embeds it into the second.
struct MioSpan {
  TripleGraph apex;
  TripleMorphism left;
  TripleMorphism right;
};

/// Largest non-empty common sub-triples, one representative per span isomorphism class.
std::vector<MioSpan> mi(const TripleGraph &t1, const TripleGraph &t2);

/// A sub-triple of the pattern's positive graph whose presence defers the pattern to a derived one.
struct Dependency {
  std::string name;
  TripleGraph graph;
  bool operator==(const Dependency &) const = default;
};

/// Where a derived pattern comes from: `embedding` maps the parent's positive graph into ours.
struct ParentLink {
  std::string name;
  TripleMorphism embedding;
  bool operator==(const ParentLink &) const = default;
};

struct AnnotatedPattern {
  Pattern pattern;
  std::vector<Dependency> deps;
  std::string origin = "initial";
  std::vector<ParentLink> parents;
  std::vector<std::string> notes;

  std::vector<std::string> provenance() const;
  bool operator==(const AnnotatedPattern &) const = default;
};

/// Same positive graph up to an iso that also matches pre-condition, negative
/// pre-conditions and negative post-conditions (each as extensions of the positive graph).
bool pattern_isomorphic(const Pattern &a, const Pattern &b);

/// Pre-condition weakening over every ordered pair of patterns without positive pre-condition.
Specification pw(const Specification &s, std::vector<std::string> *log = nullptr);

struct Deduced {
  Pattern pattern;
  TripleMorphism from_first;  // Q1 -> Q1 +_M Q2
  TripleMorphism from_second; // Q2 -> Q1 +_M Q2
};

Deduced s_deduce(const Pattern &p1, const Pattern &p2, const MioSpan &span);
Deduced c_deduce(const Pattern &p1, const Pattern &p2, const MioSpan &span);

/// Returns the two inputs (with new deps) followed by one derived pattern per MIO.
std::vector<AnnotatedPattern> s_annotate(const AnnotatedPattern &a1, const AnnotatedPattern &a2);
std::vector<AnnotatedPattern> c_annotate(const AnnotatedPattern &a1, const AnnotatedPattern &a2);

Pattern n_deduce(const Pattern &p, const Pattern &np);

/// Completion of `m` inside `t`; `m` must be a sub-triple of `t`.
TripleGraph completion(const TripleGraph &m, const TripleGraph &t);

struct NpResult {
  Pattern pattern;            // the reuse pattern
  TripleGraph reused;         // completion(S1, Q) as a sub-triple of Q
  std::vector<std::string> decompositions; // every decomposition found, first one used
};

std::optional<NpResult> np_deduce(const Pattern &p, const Pattern &np);
std::optional<NpResult> cnp_deduce(const Pattern &p, const Pattern &np);

/// Returns `a` (with the reuse dep), `an`, and the derived pattern when one exists.
std::vector<AnnotatedPattern> np_annotate(const AnnotatedPattern &a, const AnnotatedPattern &an);

struct PipelineOptions {
  bool np_deduction = true;
};

std::vector<AnnotatedPattern> run_deduction_pipeline(const Specification &s, const PipelineOptions &opts = {});

} // namespace tgp

#endif // TGP_DEDUCTION_HPP
