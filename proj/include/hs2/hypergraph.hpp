#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hs2/types.hpp"

namespace hs2 {

/// Undirected hypergraph with a compressed incidence index.
///
/// Hyperedges are stored as sorted node sets in input order, so edge ids are
/// reproducible. Every hyperedge has at least two members and no two
/// hyperedges are equal as sets. Values are immutable once built.
class Hypergraph {
 public:
  Hypergraph() = default;

  /// Throws Error on n == 0, out-of-range ids, hyperedges with fewer than two
  /// distinct members, or duplicate hyperedges.
  Hypergraph(std::size_t n, const std::vector<std::vector<NodeId>>& edges);

  std::size_t num_nodes() const { return n_; }
  std::size_t num_edges() const { return edge_offsets_.empty() ? 0 : edge_offsets_.size() - 1; }

  std::span<const NodeId> edge(EdgeId e) const {
    return {edge_nodes_.data() + edge_offsets_[e], edge_offsets_[e + 1] - edge_offsets_[e]};
  }

  /// Incident hyperedge ids of v, ascending.
  std::span<const EdgeId> incident(NodeId v) const {
    return {node_edges_.data() + node_offsets_[v], node_offsets_[v + 1] - node_offsets_[v]};
  }

  std::vector<std::vector<NodeId>> edge_lists() const;

  bool is_two_uniform() const;

  /// Rebuilds the incidence index from the edge list and compares.
  bool incidence_consistent() const;

  friend bool operator==(const Hypergraph& a, const Hypergraph& b) {
    return a.n_ == b.n_ && a.edge_offsets_ == b.edge_offsets_ && a.edge_nodes_ == b.edge_nodes_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::size_t> edge_offsets_;
  std::vector<NodeId> edge_nodes_;
  std::vector<std::size_t> node_offsets_;
  std::vector<EdgeId> node_edges_;
};

/// A hypergraph restricted to a subset of live hyperedges. Cheap to copy;
/// does not own the mask.
class HypergraphView {
 public:
  HypergraphView(const Hypergraph& g) : g_(&g) {}  // NOLINT: implicit on purpose
  HypergraphView(const Hypergraph& g, std::span<const std::uint8_t> alive) : g_(&g), alive_(alive) {}

  const Hypergraph& graph() const { return *g_; }
  std::size_t num_nodes() const { return g_->num_nodes(); }
  bool alive(EdgeId e) const { return alive_.empty() || alive_[e] != 0; }

 private:
  const Hypergraph* g_;
  std::span<const std::uint8_t> alive_;
};

/// Path of hyperedges e_1..e_l joining source to target; junctions[i] lies in
/// edges[i] and edges[i + 1]. An empty edge list is the zero-length path from
/// a node to itself.
struct HyperPath {
  NodeId source = 0;
  NodeId target = 0;
  std::vector<EdgeId> edges;
  std::vector<NodeId> junctions;

  std::size_t length() const { return edges.size(); }
};

/// Checks the path against g: consecutive hyperedges meet at the recorded
/// junctions and the endpoints lie in the first and last hyperedge.
bool is_valid_path(const Hypergraph& g, const HyperPath& path);

/// Minimum-length path, or nullopt if u and v are disconnected.
/// Ties are broken lexicographically on (e_1, w_1, e_2, w_2, ...).
std::optional<HyperPath> shortest_path(HypergraphView g, NodeId u, NodeId v);

/// Multi-source BFS; entry is kInfinite for unreachable nodes and for nodes
/// farther than limit.
std::vector<Distance> distances_from(HypergraphView g, std::span<const NodeId> sources,
                                     Distance limit = kInfinite);

/// Component index per node; components are numbered by smallest member.
std::vector<std::uint32_t> component_ids(HypergraphView g);

/// Blocks sorted by smallest member, each block ascending.
std::vector<std::vector<NodeId>> connected_components(HypergraphView g);

struct EdgeRemoval {
  Hypergraph graph;
  std::vector<EdgeId> new_to_old;
  /// kRemovedEdge for deleted hyperedges.
  std::vector<EdgeId> old_to_new;
};

inline constexpr EdgeId kRemovedEdge = std::numeric_limits<EdgeId>::max();

EdgeRemoval remove_edges(const Hypergraph& g, std::span<const EdgeId> edge_ids);

/// Replaces every hyperedge by the clique on its members. Pairs appear in
/// order of first occurrence.
Hypergraph clique_expansion(const Hypergraph& g);

// Text format: "n m", then m lines of sorted node ids. '#' lines are comments.
Hypergraph read_hypergraph(std::istream& in);
Hypergraph read_hypergraph_file(const std::string& path);
void write_hypergraph(std::ostream& out, const Hypergraph& g);
void write_hypergraph_file(const std::string& path, const Hypergraph& g);

}  // namespace hs2
