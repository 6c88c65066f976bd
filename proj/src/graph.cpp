#include "pls/graph.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "json.hpp"

namespace pls {

bool AdjListLabel::contains(NodeId id) const {
  return std::binary_search(ids.begin(), ids.end(), id);
}

LabelKind label_kind(const Label& l) {
  switch (l.index()) {
    case 0: return LabelKind::Pointer;
    case 1: return LabelKind::AdjList;
    case 2: return LabelKind::Bool;
    default: return LabelKind::Raw;
  }
}

std::string label_kind_name(LabelKind k) {
  switch (k) {
    case LabelKind::Pointer: return "pointer";
    case LabelKind::AdjList: return "adjlist";
    case LabelKind::Bool: return "bool";
    case LabelKind::Raw: return "raw";
  }
  return "?";
}

Graph Graph::make(std::vector<NodeId> nodes, std::vector<Edge> edges,
                  std::vector<Rational> weights, bool allow_disconnected) {
  Graph g;
  std::sort(nodes.begin(), nodes.end());
  if (std::adjacent_find(nodes.begin(), nodes.end()) != nodes.end())
    throw Error(ErrorCode::Parse, "duplicate node id");
  if (!nodes.empty() && nodes.front() == 0)
    throw Error(ErrorCode::Parse, "node ids must be positive");
  if (nodes.empty()) throw Error(ErrorCode::Parse, "empty node set");

  if (!weights.empty() && weights.size() != edges.size())
    throw Error(ErrorCode::Parse, "weight count does not match edge count");

  // Sort edges (and the parallel weight list) lexicographically.
  std::vector<std::size_t> perm(edges.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end(),
            [&](std::size_t a, std::size_t b) { return edges[a] < edges[b]; });
  std::vector<Edge> sorted_edges;
  std::vector<Rational> sorted_w;
  for (std::size_t i : perm) {
    sorted_edges.push_back(edges[i]);
    if (!weights.empty()) sorted_w.push_back(weights[i]);
  }

  g.nodes_ = std::move(nodes);
  g.edges_ = std::move(sorted_edges);
  g.weights_ = std::move(sorted_w);

  for (NodeId id : g.nodes_) g.adj_[id] = {};
  for (const Edge& e : g.edges_) {
    if (e.u == e.v) throw Error(ErrorCode::Parse, "self-loop");
    if (!g.adj_.count(e.u) || !g.adj_.count(e.v))
      throw Error(ErrorCode::Parse, "edge endpoint is not a node");
    g.adj_[e.u].push_back(e.v);
    g.adj_[e.v].push_back(e.u);
  }
  if (std::adjacent_find(g.edges_.begin(), g.edges_.end()) != g.edges_.end())
    throw Error(ErrorCode::Parse, "parallel edge");
  for (auto& [id, nb] : g.adj_) std::sort(nb.begin(), nb.end());

  if (!g.weights_.empty()) {
    g.sorted_weights_ = g.weights_;
    std::sort(g.sorted_weights_.begin(), g.sorted_weights_.end());
    if (std::adjacent_find(g.sorted_weights_.begin(), g.sorted_weights_.end()) !=
        g.sorted_weights_.end())
      throw Error(ErrorCode::Parse, "duplicate edge weight");
    for (const Rational& w : g.sorted_weights_)
      if (!(Rational(0) < w)) throw Error(ErrorCode::Parse, "weights must be positive");
  }

  g.connected_ = edges_connected_spanning(g, g.edges_);
  if (!g.connected_ && !allow_disconnected)
    throw Error(ErrorCode::Parse, "graph is disconnected");
  return g;
}

bool Graph::has_node(NodeId id) const { return adj_.count(id) != 0; }

bool Graph::has_edge(NodeId a, NodeId b) const {
  if (a == b) return false;
  Edge e(a, b);
  return std::binary_search(edges_.begin(), edges_.end(), e);
}

const std::vector<NodeId>& Graph::neighbors(NodeId id) const {
  auto it = adj_.find(id);
  if (it == adj_.end()) throw Error(ErrorCode::Precondition, "unknown node id");
  return it->second;
}

std::size_t Graph::edge_index(NodeId a, NodeId b) const {
  Edge e(a, b);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || !(*it == e)) throw Error(ErrorCode::Precondition, "no such edge");
  return static_cast<std::size_t>(it - edges_.begin());
}

Rational Graph::weight(NodeId a, NodeId b) const {
  if (weights_.empty()) throw Error(ErrorCode::Precondition, "graph is unweighted");
  return weights_[edge_index(a, b)];
}

std::size_t Graph::weight_rank(NodeId a, NodeId b) const {
  Rational w = weight(a, b);
  auto it = std::lower_bound(sorted_weights_.begin(), sorted_weights_.end(), w);
  return static_cast<std::size_t>(it - sorted_weights_.begin());
}

LabeledGraph make_labeled(Graph g, std::map<NodeId, Label> labels) {
  if (labels.size() != g.node_count())
    throw Error(ErrorCode::Parse, "labeling does not cover exactly the node set");
  for (const auto& [id, l] : labels) {
    if (!g.has_node(id)) throw Error(ErrorCode::Parse, "label for unknown node");
    if (const auto* p = std::get_if<PointerLabel>(&l)) {
      if (p->target && !g.has_node(*p->target))
        throw Error(ErrorCode::Parse, "pointer label names a node outside the graph");
    }
  }
  return LabeledGraph{std::move(g), std::move(labels)};
}

// --- traversal helpers --------------------------------------------------------

std::map<NodeId, std::uint64_t> bfs_distances(const Graph& g, NodeId start,
                                              const std::vector<Edge>& edges) {
  std::map<NodeId, std::vector<NodeId>> adj;
  for (const Edge& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& [id, nb] : adj) std::sort(nb.begin(), nb.end());
  std::map<NodeId, std::uint64_t> dist;
  dist[start] = 0;
  std::deque<NodeId> q{start};
  while (!q.empty()) {
    NodeId v = q.front();
    q.pop_front();
    auto it = adj.find(v);
    if (it == adj.end()) continue;
    for (NodeId w : it->second)
      if (!dist.count(w)) {
        dist[w] = dist[v] + 1;
        q.push_back(w);
      }
  }
  (void)g;
  return dist;
}

bool edges_connected_spanning(const Graph& g, const std::vector<Edge>& edges) {
  if (g.node_count() == 0) return true;
  auto dist = bfs_distances(g, g.nodes().front(), edges);
  return dist.size() == g.node_count();
}

bool edges_acyclic(const std::vector<Edge>& edges) {
  std::map<NodeId, NodeId> uf;
  auto root = [&](NodeId x) {
    if (!uf.count(x)) uf[x] = x;
    while (uf[x] != x) {
      uf[x] = uf[uf[x]];
      x = uf[x];
    }
    return x;
  };
  for (const Edge& e : edges) {
    NodeId a = root(e.u), b = root(e.v);
    if (a == b) return false;
    uf[a] = b;
  }
  return true;
}

// --- instance file format ------------------------------------------------------

namespace {

using nlohmann::json;

RawLabel parse_raw_hex(const std::string& h) {
  if (h.size() % 2 != 0) throw Error(ErrorCode::Parse, "raw label hex must have even length");
  RawLabel l;
  auto hv = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    return -1;
  };
  for (std::size_t i = 0; i < h.size(); i += 2) {
    int a = hv(h[i]), b = hv(h[i + 1]);
    if (a < 0 || b < 0) throw Error(ErrorCode::Parse, "bad hex in raw label");
    l.bytes.push_back(static_cast<std::uint8_t>(a << 4 | b));
  }
  return l;
}

Label parse_label(const json& j, LabelKind kind) {
  switch (kind) {
    case LabelKind::Pointer:
      if (j.is_null()) return PointerLabel{std::nullopt};
      if (!j.is_number_unsigned()) throw Error(ErrorCode::Parse, "pointer label must be id or null");
      return PointerLabel{j.get<NodeId>()};
    case LabelKind::AdjList: {
      if (!j.is_array()) throw Error(ErrorCode::Parse, "adjlist label must be an id list");
      AdjListLabel l;
      for (const auto& x : j) {
        if (!x.is_number_unsigned()) throw Error(ErrorCode::Parse, "adjlist entries must be ids");
        l.ids.push_back(x.get<NodeId>());
      }
      std::sort(l.ids.begin(), l.ids.end());
      if (std::adjacent_find(l.ids.begin(), l.ids.end()) != l.ids.end())
        throw Error(ErrorCode::Parse, "duplicate id in adjlist label");
      return l;
    }
    case LabelKind::Bool:
      if (!j.is_number_unsigned() || j.get<int>() > 1)
        throw Error(ErrorCode::Parse, "bool label must be 0 or 1");
      return BoolLabel{j.get<int>() == 1};
    case LabelKind::Raw:
      if (!j.is_string()) throw Error(ErrorCode::Parse, "raw label must be a hex string");
      return parse_raw_hex(j.get<std::string>());
  }
  throw Error(ErrorCode::Parse, "bad label kind");
}

json label_to_json(const Label& l) {
  if (const auto* p = std::get_if<PointerLabel>(&l)) {
    if (!p->target) return nullptr;
    return *p->target;
  }
  if (const auto* a = std::get_if<AdjListLabel>(&l)) return a->ids;
  if (const auto* b = std::get_if<BoolLabel>(&l)) return b->value ? 1 : 0;
  const auto& r = std::get<RawLabel>(l);
  static const char* digits = "0123456789abcdef";
  std::string h;
  for (std::uint8_t byte : r.bytes) {
    h.push_back(digits[byte >> 4]);
    h.push_back(digits[byte & 0xf]);
  }
  return h;
}

LabelKind parse_kind_name(const std::string& s) {
  if (s == "pointer") return LabelKind::Pointer;
  if (s == "adjlist") return LabelKind::AdjList;
  if (s == "bool") return LabelKind::Bool;
  if (s == "raw") return LabelKind::Raw;
  throw Error(ErrorCode::Parse, "unknown label_kind: " + s);
}

}  // namespace

LabeledGraph parse_instance(const std::string& text, bool allow_disconnected) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("malformed instance file: ") + e.what());
  }
  if (!j.is_object() || !j.contains("label_kind") || !j.contains("nodes") || !j.contains("edges"))
    throw Error(ErrorCode::Parse, "instance file needs label_kind, nodes, edges");
  LabelKind kind = parse_kind_name(j["label_kind"].get<std::string>());

  std::vector<NodeId> nodes;
  std::map<NodeId, Label> labels;
  for (const auto& n : j["nodes"]) {
    if (!n.contains("id") || !n["id"].is_number_unsigned())
      throw Error(ErrorCode::Parse, "node without positive id");
    NodeId id = n["id"].get<NodeId>();
    nodes.push_back(id);
    if (!n.contains("label")) throw Error(ErrorCode::Parse, "node without label");
    if (labels.count(id)) throw Error(ErrorCode::Parse, "duplicate node id");
    labels[id] = parse_label(n["label"], kind);
  }

  std::vector<Edge> edges;
  std::vector<Rational> weights;
  bool any_weight = false, all_weight = true;
  for (const auto& e : j["edges"]) {
    if (!e.contains("u") || !e.contains("v"))
      throw Error(ErrorCode::Parse, "edge needs u and v");
    edges.emplace_back(e["u"].get<NodeId>(), e["v"].get<NodeId>());
    if (e.contains("weight")) {
      any_weight = true;
      const auto& w = e["weight"];
      if (w.is_number_integer())
        weights.emplace_back(w.get<std::int64_t>());
      else if (w.is_string())
        weights.push_back(Rational::parse(w.get<std::string>()));
      else
        throw Error(ErrorCode::Parse, "weight must be integer or \"p/q\" string");
    } else {
      all_weight = false;
    }
  }
  if (any_weight && !all_weight)
    throw Error(ErrorCode::Parse, "either all edges are weighted or none");

  Graph g = Graph::make(std::move(nodes), std::move(edges),
                        any_weight ? std::move(weights) : std::vector<Rational>{},
                        allow_disconnected);
  return make_labeled(std::move(g), std::move(labels));
}

std::string serialize_instance(const LabeledGraph& instance) {
  const Graph& g = instance.graph;
  LabelKind kind = g.node_count() ? label_kind(instance.labels.begin()->second) : LabelKind::Raw;
  for (const auto& [id, l] : instance.labels)
    if (label_kind(l) != kind)
      throw Error(ErrorCode::Precondition, "mixed label kinds cannot be serialized");

  nlohmann::ordered_json out;
  out["label_kind"] = label_kind_name(kind);
  out["nodes"] = json::array();
  for (NodeId id : g.nodes()) {  // canonical: sorted node order
    nlohmann::ordered_json n;
    n["id"] = id;
    n["label"] = label_to_json(instance.labels.at(id));
    out["nodes"].push_back(n);
  }
  out["edges"] = json::array();
  for (std::size_t i = 0; i < g.edge_count(); ++i) {  // canonical: lex edge order
    nlohmann::ordered_json e;
    e["u"] = g.edges()[i].u;
    e["v"] = g.edges()[i].v;
    if (g.weighted()) e["weight"] = g.weights()[i].str();
    out["edges"].push_back(e);
  }
  return out.dump(2) + "\n";
}

std::uint64_t edit_distance_between(const LabeledGraph& a, const LabeledGraph& b) {
  if (!(a.graph == b.graph))
    throw Error(ErrorCode::Precondition, "labelings live on different graphs");
  std::uint64_t d = 0;
  for (NodeId id : a.graph.nodes())
    if (!(a.labels.at(id) == b.labels.at(id))) ++d;
  return d;
}

}  // namespace pls
