#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "netdual/logscalar.hpp"

namespace netdual {

struct Edge {
  std::string id;
  std::string tail;
  std::string head;
  /// Absent means uncapped.
  std::optional<LogScalar> capacity;
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Directed acyclic multigraph with labelled nodes and edges.
class Network {
 public:
  Network() = default;
  /// Validates references, unique labels and acyclicity. Throws StructuralError.
  Network(std::vector<std::string> nodes, std::vector<Edge> edges);

  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(const std::string& id) const;
  std::optional<int> edge_index(const std::string& id) const;
  bool has_node(const std::string& node) const;
  /// Indices of edges entering / leaving `node`, ordered by edge id.
  const std::vector<int>& in_edges(const std::string& node) const;
  const std::vector<int>& out_edges(const std::string& node) const;
  /// Node order used throughout; ready nodes are taken in label order.
  const std::vector<std::string>& topo_order() const { return topo_; }
  /// Edge indices sorted by the position of their tail in topo_order(), then by id.
  const std::vector<int>& edge_order() const { return edge_order_; }

  friend bool operator==(const Network& a, const Network& b) {
    return a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<std::string> nodes_;
  std::vector<Edge> edges_;
  std::map<std::string, int> edge_pos_;
  std::map<std::string, std::vector<int>> in_, out_;
  std::vector<std::string> topo_;
  std::vector<int> edge_order_;
};

/// Deterministic topological order of the nodes; throws StructuralError on a cycle.
std::vector<std::string> topo_order(const std::vector<std::string>& nodes, const std::vector<Edge>& edges);

/// Sessions with one origin node each and a nonempty set of receiver nodes.
struct ConnectionRequirement {
  std::vector<std::string> sessions;
  std::map<std::string, std::string> origin;
  std::map<std::string, std::vector<std::string>> receivers;

  /// Throws StructuralError on dangling references, empty receiver sets or label
  /// clashes between sessions and edges.
  void validate(const Network& net) const;
  /// Sessions originating at `node`, in label order.
  std::vector<std::string> sessions_at(const std::string& node) const;
  /// (receiver, session) pairs in label order.
  std::vector<std::pair<std::string, std::string>> demands() const;
  friend bool operator==(const ConnectionRequirement&, const ConnectionRequirement&) = default;
};

/// Variables feeding a node, in canonical order: sessions originating there, then
/// entering edges, each sorted by label.
std::vector<std::string> node_feeds(const Network& net, const ConnectionRequirement& conn,
                                    const std::string& node);

/// Graphviz rendering: origins as open circles, receivers as double circles, other
/// nodes filled; edges labelled with id and capacity.
std::string to_dot(const Network& net, const ConnectionRequirement& conn);

}  // namespace netdual

namespace netdual {

/// Source rates (lambda) per session and capacities (omega) per edge. An edge with
/// no entry falls back to the network's own capacity.
struct RateCapacityTuple {
  std::map<std::string, LogScalar> rates;
  std::map<std::string, LogScalar> caps;

  /// Throws ArgumentError naming the first negative entry.
  void validate() const;
  /// The tuple's capacity for `e`, else the network's, else nullopt (uncapped).
  std::optional<LogScalar> capacity(const Edge& e) const;
  friend bool operator==(const RateCapacityTuple&, const RateCapacityTuple&) = default;
};

}  // namespace netdual
