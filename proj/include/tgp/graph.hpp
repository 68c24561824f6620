#ifndef TGP_GRAPH_HPP
#define TGP_GRAPH_HPP

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tgp {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class GraphError : public Error {
public:
  using Error::Error;
};

using IdMap = std::map<std::string, std::string>;
using IdSet = std::set<std::string>;

struct EdgeType {
  std::string source;
  std::string target;
  bool operator==(const EdgeType &) const = default;
};

struct TypeGraph {
  std::set<std::string> node_types;
  std::map<std::string, EdgeType> edge_types;

  /// Empty when well formed.
  std::vector<std::string> validate() const;
  bool operator==(const TypeGraph &) const = default;
};

struct Edge {
  std::string type;
  std::string source;
  std::string target;
  bool operator==(const Edge &) const = default;
};

/// Unattributed typed multigraph. Node and edge ids share one namespace.
class Graph {
public:
  Graph() = default;
  explicit Graph(std::shared_ptr<const TypeGraph> types) : types_(std::move(types)) {}

  void add_node(const std::string &id, const std::string &type);
  void add_edge(const std::string &id, const std::string &type, const std::string &source,
                const std::string &target);

  const std::map<std::string, std::string> &nodes() const { return nodes_; }
  const std::map<std::string, Edge> &edges() const { return edges_; }

  bool has_node(const std::string &id) const { return nodes_.count(id) != 0; }
  bool has_edge(const std::string &id) const { return edges_.count(id) != 0; }
  bool contains(const std::string &id) const { return has_node(id) || has_edge(id); }
  const std::string &node_type(const std::string &id) const;
  const Edge &edge(const std::string &id) const;

  std::size_t size() const { return nodes_.size() + edges_.size(); }
  bool empty() const { return nodes_.empty() && edges_.empty(); }
  IdSet ids() const;

  const std::shared_ptr<const TypeGraph> &types() const { return types_; }
  void set_types(std::shared_ptr<const TypeGraph> types) { types_ = std::move(types); }

  /// Equality ignores the attached type graph.
  bool operator==(const Graph &o) const { return nodes_ == o.nodes_ && edges_ == o.edges_; }

private:
  std::shared_ptr<const TypeGraph> types_;
  std::map<std::string, std::string> nodes_;
  std::map<std::string, Edge> edges_;
};

/// Violations of `g` against `types`; empty when well typed.
std::vector<std::string> validate_graph(const Graph &g, const TypeGraph &types);

/// Subgraph on the given ids. Edges whose endpoints are missing are an error.
Graph subgraph(const Graph &g, const IdSet &ids);

/// True when every element of `small` occurs in `big` with the same id, type and endpoints.
bool is_subgraph(const Graph &small, const Graph &big);

struct GraphMorphism {
  IdMap nodes;
  IdMap edges;

  std::optional<std::string> apply(const std::string &id) const;
  bool empty() const { return nodes.empty() && edges.empty(); }
  bool operator==(const GraphMorphism &) const = default;
  auto operator<=>(const GraphMorphism &) const = default;
};

GraphMorphism identity(const Graph &g);
GraphMorphism compose(const GraphMorphism &second, const GraphMorphism &first);
bool is_injective(const GraphMorphism &f);
/// Total, type preserving and structure preserving from `dom` to `cod`.
bool is_morphism(const GraphMorphism &f, const Graph &dom, const Graph &cod);
IdSet image(const GraphMorphism &f);

/// Visits every injective, type-preserving morphism pattern -> host extending `anchor`.
/// Host candidates are explored by ascending id, so the order is deterministic.
/// The visitor returns false to stop; the function returns false when stopped early.
bool for_each_monomorphism(const Graph &pattern, const Graph &host, const GraphMorphism &anchor,
                           const std::function<bool(const GraphMorphism &)> &visit);

std::vector<GraphMorphism> find_monomorphisms(const Graph &pattern, const Graph &host,
                                              const GraphMorphism &anchor = {});
std::optional<GraphMorphism> find_monomorphism(const Graph &pattern, const Graph &host,
                                               const GraphMorphism &anchor = {});
bool has_monomorphism(const Graph &pattern, const Graph &host, const GraphMorphism &anchor = {});

std::optional<GraphMorphism> are_isomorphic(const Graph &a, const Graph &b);
std::vector<GraphMorphism> automorphisms(const Graph &g);

struct Pushout {
  Graph object;
  GraphMorphism from_left;
  GraphMorphism from_right;
};

/// Gluing of `left_obj` and `right_obj` along `apex`. Elements of `left_obj` keep
/// their ids; elements only in `right_obj` are renamed to "b:" + id.
Pushout pushout(const Graph &apex, const Graph &left_obj, const GraphMorphism &left,
                const Graph &right_obj, const GraphMorphism &right);

struct Pullback {
  Graph object;
  GraphMorphism to_left;
  GraphMorphism to_right;
};

/// Pullback of injective legs: the intersection of their images, carrying `left_obj` ids.
Pullback pullback(const Graph &left_obj, const GraphMorphism &left, const Graph &right_obj,
                  const GraphMorphism &right, const Graph &codomain);

} // namespace tgp

#endif // TGP_GRAPH_HPP
