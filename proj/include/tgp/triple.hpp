#ifndef TGP_TRIPLE_HPP
#define TGP_TRIPLE_HPP

#include "tgp/graph.hpp"

namespace tgp {

enum class Side { Source, Target, Corr };
enum class Direction { Forward, Backward };

inline Side input_side(Direction d) { return d == Direction::Forward ? Side::Source : Side::Target; }
const char *to_string(Side s);
const char *to_string(Direction d);

struct CorrType {
  std::optional<std::string> source_type;
  std::optional<std::string> target_type;
  bool operator==(const CorrType &) const = default;
};

inline constexpr const char *default_corr_type = "rel";

struct MetamodelTriple {
  TypeGraph source;
  TypeGraph target;
  std::map<std::string, CorrType> corr_types{{default_corr_type, CorrType{}}};

  std::vector<std::string> validate() const;
  bool operator==(const MetamodelTriple &) const = default;
};

struct CorrNode {
  std::string type;
  std::string source;
  std::string target;
  bool operator==(const CorrNode &) const = default;
};

/// Source and target graphs related through correspondence nodes. Correspondence
/// nodes carry no edges; their anchors must name existing source/target nodes.
/// Ids are unique across all three components.
struct TripleGraph {
  Graph source;
  Graph target;
  std::map<std::string, CorrNode> corr;

  void add_corr(const std::string &id, const std::string &type, const std::string &source_node,
                const std::string &target_node);

  Graph &side(Side s) { return s == Side::Source ? source : target; }
  const Graph &side(Side s) const { return s == Side::Source ? source : target; }

  std::size_t size() const { return source.size() + target.size() + corr.size(); }
  bool empty() const { return size() == 0; }
  bool contains(const std::string &id) const {
    return source.contains(id) || target.contains(id) || corr.count(id) != 0;
  }
  IdSet ids() const;

  bool operator==(const TripleGraph &) const = default;
};

/// Violations of `t` against `mm`; empty iff well typed.
std::vector<std::string> validate_triple(const TripleGraph &t, const MetamodelTriple &mm);
/// Structural checks only (anchors, id uniqueness).
std::vector<std::string> validate_structure(const TripleGraph &t);

/// The smallest well-formed triple containing the requested component.
TripleGraph restrict(const TripleGraph &t, Side side);

/// Sub-triple on the given ids. Throws when the selection is not closed.
TripleGraph subtriple(const TripleGraph &t, const IdSet &ids);
bool is_subtriple(const TripleGraph &small, const TripleGraph &big);
/// Union of two sub-triples of a common triple (they must agree on shared ids).
TripleGraph unite(const TripleGraph &a, const TripleGraph &b);

struct TripleMorphism {
  GraphMorphism source;
  GraphMorphism target;
  IdMap corr;

  std::optional<std::string> apply(const std::string &id) const;
  std::size_t size() const { return source.nodes.size() + source.edges.size() + target.nodes.size() +
                                    target.edges.size() + corr.size(); }
  bool operator==(const TripleMorphism &) const = default;
  auto operator<=>(const TripleMorphism &) const = default;
};

TripleMorphism identity(const TripleGraph &t);
TripleMorphism compose(const TripleMorphism &second, const TripleMorphism &first);
bool is_injective(const TripleMorphism &f);
/// Componentwise morphism that commutes with the correspondence anchors.
bool is_morphism(const TripleMorphism &f, const TripleGraph &dom, const TripleGraph &cod);
IdSet image(const TripleMorphism &f);
/// The image of `f` as a sub-triple of `cod`.
TripleGraph image_triple(const TripleMorphism &f, const TripleGraph &cod);
/// Renames every element of `t` through the injective map `f`.
TripleGraph rename(const TripleGraph &t, const TripleMorphism &f);
/// Inverse of an injective morphism, restricted to its image.
TripleMorphism invert(const TripleMorphism &f);
/// One map over all components (ids are unique across components).
IdMap unified(const TripleMorphism &f);
/// Splits a unified map back into components following `domain`.
TripleMorphism split(const IdMap &m, const TripleGraph &domain);

/// Single typed graph encoding of a triple: node types are prefixed by side and every
/// correspondence node gets two anchor edges ("cs", "ct"). Triple monomorphisms are
/// exactly the monomorphisms of the encodings.
Graph flatten(const TripleGraph &t);
TripleGraph unflatten(const Graph &g);
GraphMorphism flatten(const TripleMorphism &f);
TripleMorphism unflatten(const GraphMorphism &f, const TripleGraph &domain);

std::vector<TripleMorphism> find_monomorphisms(const TripleGraph &pattern, const TripleGraph &host,
                                               const TripleMorphism &anchor = {});
std::optional<TripleMorphism> find_monomorphism(const TripleGraph &pattern, const TripleGraph &host,
                                                const TripleMorphism &anchor = {});
bool has_monomorphism(const TripleGraph &pattern, const TripleGraph &host, const TripleMorphism &anchor = {});
std::optional<TripleMorphism> are_isomorphic(const TripleGraph &a, const TripleGraph &b);
std::vector<TripleMorphism> automorphisms(const TripleGraph &t);

/// A host prepared once for repeated matching.
class FlatHost {
public:
  explicit FlatHost(const TripleGraph &host) : host_(host), flat_(flatten(host)) {}
  const TripleGraph &triple() const { return host_; }
  const Graph &graph() const { return flat_; }

  bool for_each(const Graph &flat_pattern, const TripleGraph &pattern, const TripleMorphism &anchor,
                const std::function<bool(const TripleMorphism &)> &visit) const;
  bool has(const Graph &flat_pattern, const TripleMorphism &anchor) const;

private:
  TripleGraph host_;
  Graph flat_;
};

struct TriplePushout {
  TripleGraph object;
  TripleMorphism from_left;
  TripleMorphism from_right;
};

/// Componentwise pushout; left ids are preserved, right-only ids become "b:" + id.
TriplePushout triple_pushout(const TripleGraph &apex, const TripleGraph &left_obj, const TripleMorphism &left,
                             const TripleGraph &right_obj, const TripleMorphism &right);

struct TriplePullback {
  TripleGraph object;
  TripleMorphism to_left;
  TripleMorphism to_right;
};

TriplePullback triple_pullback(const TripleGraph &left_obj, const TripleMorphism &left,
                               const TripleGraph &right_obj, const TripleMorphism &right,
                               const TripleGraph &codomain);

/// Inclusion of a sub-triple (ids shared).
TripleMorphism inclusion(const TripleGraph &small);

struct GluedSide {
  TripleGraph object;    // C +_{C|x} Q|x
  TripleMorphism from_c; // C -> object
  TripleMorphism to_q;   // object -> Q, induced by the pushout
};

/// P_x = C +_{C|x} Q|x for x = source or target, with its induced embedding into Q.
GluedSide glue_over_side(const TripleGraph &c, const TripleGraph &q, const TripleMorphism &q_embed, Side side);

/// glue_over_side for id-inclusions C ⊆ Q, expressed as the sub-triple of Q it denotes.
TripleGraph directed_part(const TripleGraph &c, const TripleGraph &q, Side side);

} // namespace tgp

#endif // TGP_TRIPLE_HPP
