#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "pls/rational.hpp"

namespace pls {

using NodeId = std::uint64_t;  // positive, pairwise distinct within a graph

enum class ErrorCode { Parse, Precondition, Budget };

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

struct Edge {
  NodeId u, v;  // normalized u < v
  Edge() : u(0), v(0) {}
  Edge(NodeId a, NodeId b) : u(a < b ? a : b), v(a < b ? b : a) {}
  auto operator<=>(const Edge&) const = default;
};

// --- Labels -----------------------------------------------------------------

struct PointerLabel {
  std::optional<NodeId> target;  // nullopt = bottom
  bool operator==(const PointerLabel&) const = default;
};
struct AdjListLabel {
  std::vector<NodeId> ids;  // kept sorted
  bool operator==(const AdjListLabel&) const = default;
  bool contains(NodeId id) const;
};
struct BoolLabel {
  bool value = false;
  bool operator==(const BoolLabel&) const = default;
};
struct RawLabel {
  std::vector<std::uint8_t> bytes;
  bool operator==(const RawLabel&) const = default;
};

using Label = std::variant<PointerLabel, AdjListLabel, BoolLabel, RawLabel>;

enum class LabelKind { Pointer, AdjList, Bool, Raw };

LabelKind label_kind(const Label& l);
std::string label_kind_name(LabelKind k);

// --- Graph ------------------------------------------------------------------

// Simple undirected graph with distinct node identities and optional exact
// rational edge weights (pairwise distinct when present). Immutable after
// construction; safe to share across threads.
class Graph {
 public:
  // Validates simplicity, id distinctness, weight distinctness, and (unless
  // allow_disconnected) connectivity.
  static Graph make(std::vector<NodeId> nodes, std::vector<Edge> edges,
                    std::vector<Rational> weights = {}, bool allow_disconnected = false);

  const std::vector<NodeId>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  bool weighted() const { return !weights_.empty(); }
  const std::vector<Rational>& weights() const { return weights_; }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool connected() const { return connected_; }

  bool has_node(NodeId id) const;
  bool has_edge(NodeId a, NodeId b) const;
  const std::vector<NodeId>& neighbors(NodeId id) const;
  Rational weight(NodeId a, NodeId b) const;
  std::size_t edge_index(NodeId a, NodeId b) const;

  // Rank of an edge's weight in the ascending global weight order, in [0, m).
  std::size_t weight_rank(NodeId a, NodeId b) const;
  const std::vector<Rational>& sorted_weights() const { return sorted_weights_; }

  NodeId max_id() const { return nodes_.empty() ? 0 : nodes_.back(); }
  NodeId min_id() const { return nodes_.front(); }

  bool operator==(const Graph& o) const {
    return nodes_ == o.nodes_ && edges_ == o.edges_ && weights_ == o.weights_;
  }

 private:
  std::vector<NodeId> nodes_;  // sorted ascending
  std::vector<Edge> edges_;    // sorted lexicographically
  std::vector<Rational> weights_;  // parallel to edges_, or empty
  std::vector<Rational> sorted_weights_;
  std::map<NodeId, std::vector<NodeId>> adj_;
  bool connected_ = true;
};

// --- Labeled graph ----------------------------------------------------------

struct LabeledGraph {
  Graph graph;
  std::map<NodeId, Label> labels;  // defined on exactly the node set

  const Label& label(NodeId id) const { return labels.at(id); }
};

LabeledGraph make_labeled(Graph g, std::map<NodeId, Label> labels);

// --- Instance file format (graph-core External Interfaces) -------------------

LabeledGraph parse_instance(const std::string& text, bool allow_disconnected = false);
std::string serialize_instance(const LabeledGraph& instance);

// Number of nodes at which the two labelings differ. Throws Precondition if
// the underlying graphs are not identical.
std::uint64_t edit_distance_between(const LabeledGraph& a, const LabeledGraph& b);

// BFS hop distances from a start node, following only the given edge set.
std::map<NodeId, std::uint64_t> bfs_distances(const Graph& g, NodeId start,
                                              const std::vector<Edge>& edges);

bool edges_connected_spanning(const Graph& g, const std::vector<Edge>& edges);
bool edges_acyclic(const std::vector<Edge>& edges);

}  // namespace pls
