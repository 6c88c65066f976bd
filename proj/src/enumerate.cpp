#include "pls/enumerate.hpp"

#include <algorithm>
#include <numeric>

namespace pls {

std::vector<Graph> all_connected_graphs(std::size_t n) {
  std::vector<NodeId> nodes(n);
  std::iota(nodes.begin(), nodes.end(), NodeId{1});
  std::vector<Edge> all_edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) all_edges.emplace_back(nodes[i], nodes[j]);

  std::vector<Graph> out;
  std::size_t m = all_edges.size();
  for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (1ULL << i)) edges.push_back(all_edges[i]);
    try {
      out.push_back(Graph::make(nodes, edges));
    } catch (const Error&) {
      // disconnected; skip
    }
  }
  return out;
}

namespace {

// Recursive include/exclude over the edge list with a union-find snapshot per
// level; prunes when the remaining edges cannot connect the graph.
struct TreeEnum {
  const Graph& g;
  const std::function<bool(const std::vector<Edge>&)>& cb;
  std::vector<Edge> chosen;
  std::map<NodeId, NodeId> uf;
  bool aborted = false;

  NodeId root(NodeId x) {
    while (uf[x] != x) {
      uf[x] = uf[uf[x]];
      x = uf[x];
    }
    return x;
  }

  void run() {
    for (NodeId v : g.nodes()) uf[v] = v;
    rec(0, g.node_count() - 1);
  }

  void rec(std::size_t i, std::size_t need) {
    if (aborted) return;
    if (need == 0) {
      if (!cb(chosen)) aborted = true;
      return;
    }
    if (i >= g.edge_count() || g.edge_count() - i < need) return;
    const Edge& e = g.edges()[i];
    NodeId a = root(e.u), b = root(e.v);
    if (a != b) {
      auto saved = uf;
      uf[a] = b;
      chosen.push_back(e);
      rec(i + 1, need - 1);
      chosen.pop_back();
      uf = std::move(saved);
    }
    rec(i + 1, need);
  }
};

}  // namespace

bool enumerate_spanning_trees(const Graph& g,
                              const std::function<bool(const std::vector<Edge>&)>& cb) {
  if (g.node_count() == 1) return cb({});
  TreeEnum te{g, cb, {}, {}};
  te.run();
  return !te.aborted;
}

std::uint64_t count_spanning_trees(const Graph& g) {
  std::uint64_t c = 0;
  enumerate_spanning_trees(g, [&](const std::vector<Edge>&) {
    ++c;
    return true;
  });
  return c;
}

bool enumerate_labelings(const Graph& g, const std::vector<std::vector<Label>>& domains,
                         const std::function<bool(const std::map<NodeId, Label>&)>& cb) {
  const auto& nodes = g.nodes();
  std::map<NodeId, Label> labeling;
  std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == nodes.size()) return cb(labeling);
    for (const Label& l : domains[i]) {
      labeling[nodes[i]] = l;
      if (!rec(i + 1)) return false;
    }
    labeling.erase(nodes[i]);
    return true;
  };
  return rec(0);
}

std::vector<Label> pointer_domain(const Graph& g, NodeId v) {
  std::vector<Label> d;
  d.push_back(PointerLabel{std::nullopt});
  for (NodeId w : g.neighbors(v)) d.push_back(PointerLabel{w});
  return d;
}

std::vector<Label> adjlist_domain(const Graph& g, NodeId v) {
  const auto& nb = g.neighbors(v);
  std::vector<Label> d;
  for (std::uint64_t mask = 0; mask < (1ULL << nb.size()); ++mask) {
    AdjListLabel l;
    for (std::size_t i = 0; i < nb.size(); ++i)
      if (mask & (1ULL << i)) l.ids.push_back(nb[i]);
    d.push_back(l);
  }
  return d;
}

std::vector<Label> bool_domain() { return {BoolLabel{false}, BoolLabel{true}}; }

Graph random_connected_graph(std::size_t n, Rng& rng) {
  std::vector<NodeId> nodes(n);
  std::iota(nodes.begin(), nodes.end(), NodeId{1});
  // random spanning tree (random attachment) plus random extra edges
  std::vector<Edge> edges;
  for (std::size_t i = 1; i < n; ++i)
    edges.emplace_back(nodes[i], nodes[rng.below(i)]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Edge e(nodes[i], nodes[j]);
      if (std::find(edges.begin(), edges.end(), e) == edges.end() && rng.below(3) == 0)
        edges.push_back(e);
    }
  return Graph::make(nodes, edges);
}

Graph random_connected_weighted_graph(std::size_t n, Rng& rng) {
  Graph g = random_connected_graph(n, rng);
  std::vector<Rational> weights;
  std::vector<std::int64_t> ranks(g.edge_count());
  std::iota(ranks.begin(), ranks.end(), 1);
  for (std::size_t i = ranks.size(); i > 1; --i)
    std::swap(ranks[i - 1], ranks[rng.below(i)]);
  for (std::int64_t r : ranks) weights.emplace_back(r);
  return Graph::make(g.nodes(), g.edges(), weights);
}

std::map<NodeId, Label> adjlist_labeling(const Graph& g, const std::vector<Edge>& edges) {
  std::map<NodeId, Label> labels;
  for (NodeId v : g.nodes()) labels[v] = AdjListLabel{};
  for (const Edge& e : edges) {
    std::get<AdjListLabel>(labels[e.u]).ids.push_back(e.v);
    std::get<AdjListLabel>(labels[e.v]).ids.push_back(e.u);
  }
  for (auto& [id, l] : labels) {
    auto& ids = std::get<AdjListLabel>(l).ids;
    std::sort(ids.begin(), ids.end());
  }
  return labels;
}

Graph circulant_graph(std::size_t m, const std::vector<std::size_t>& offsets, NodeId first_id) {
  std::vector<NodeId> nodes(m);
  std::iota(nodes.begin(), nodes.end(), first_id);
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t off : offsets) {
      if (off == 0 || off > m / 2) throw Error(ErrorCode::Precondition, "bad circulant offset");
      if (off == m - off && i >= m / 2) continue;  // half-offset: one edge each
      edges.emplace_back(nodes[i], nodes[(i + off) % m]);
    }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph::make(nodes, edges);
}

}  // namespace pls
