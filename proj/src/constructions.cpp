#include "pls/constructions.hpp"

#include <algorithm>

#include "pls/enumerate.hpp"

namespace pls {

Construction build_path_stp(std::size_t n) {
  if (n < 4 || n % 2 != 0)
    throw Error(ErrorCode::Precondition, "path splice needs an even n >= 4");
  std::vector<NodeId> nodes;
  std::vector<Edge> edges;
  for (NodeId v = 1; v <= n; ++v) {
    nodes.push_back(v);
    if (v > 1) edges.push_back(Edge(v - 1, v));
  }
  Graph g = Graph::make(nodes, edges, {});
  std::map<NodeId, Label> labels;
  for (NodeId v = 1; v <= n; ++v) {
    if (v == 1 || v == n)
      labels[v] = PointerLabel{std::nullopt};
    else if (v <= n / 2)
      labels[v] = PointerLabel{v - 1};
    else
      labels[v] = PointerLabel{v + 1};
  }
  // left half: certificates of the tree rooted at u_1; right half: rooted at u_n
  unsigned w = id_field_width(n);
  CertificateMap certs;
  for (NodeId v = 1; v <= n; ++v) {
    StCert c;
    if (v <= n / 2) {
      c = StCert{1, v == 1 ? 1 : v - 1, v - 1};
    } else {
      c = StCert{n, v == n ? n : v + 1, n - v};
    }
    Bits b;
    encode_st_cert(c, w, b);
    certs[v] = Certificate{b};
  }
  return Construction{LabeledGraph{std::move(g), std::move(labels)}, std::move(certs)};
}

Graph regular_circulant(std::size_t d, std::size_t m, NodeId first_id) {
  if (d < 2 || m <= d || (d * m) % 2 != 0)
    throw Error(ErrorCode::Precondition, "no circulant of degree " + std::to_string(d) +
                                             " on " + std::to_string(m) + " nodes");
  std::vector<std::size_t> offsets;
  for (std::size_t o = 1; o <= d / 2; ++o) offsets.push_back(o);
  if (d % 2 == 1) offsets.push_back(m / 2);
  return circulant_graph(m, offsets, first_id);
}

namespace {

// id -> id + offset on every node and edge
std::vector<Edge> shift_edges(const Graph& g, NodeId offset) {
  std::vector<Edge> out;
  for (const Edge& e : g.edges()) out.push_back(Edge(e.u + offset, e.v + offset));
  return out;
}

// the "graph glued to its own copy" member: remove {a, b} and its copy,
// connect a with its copy and b with its copy
LabeledGraph doubled_member(const Graph& g, NodeId a, NodeId b, NodeId offset) {
  std::vector<NodeId> nodes = g.nodes();
  for (NodeId v : g.nodes()) nodes.push_back(v + offset);
  std::vector<Edge> edges;
  for (const Edge& e : g.edges())
    if (!(e == Edge(a, b))) edges.push_back(e);
  for (const Edge& e : shift_edges(g, offset))
    if (!(e == Edge(a + offset, b + offset))) edges.push_back(e);
  edges.push_back(Edge(a, a + offset));
  edges.push_back(Edge(b, b + offset));
  Graph doubled = Graph::make(nodes, edges, {});
  auto labels = adjlist_labeling(doubled, doubled.edges());
  return LabeledGraph{std::move(doubled), std::move(labels)};
}

}  // namespace

Construction build_regular_glue(std::size_t d1, std::size_t m1, std::size_t d2,
                                std::size_t m2) {
  if (d1 == d2) throw Error(ErrorCode::Precondition, "glue needs two distinct degrees");
  Graph g1 = regular_circulant(d1, m1, 1);
  Graph g2 = regular_circulant(d2, m2, m1 + 1);
  NodeId u1 = 1, v1 = 2;          // an offset-1 edge of g1
  NodeId u2 = m1 + 1, v2 = m1 + 2;  // an offset-1 edge of g2
  NodeId copyOffset = m1 + m2;    // copies live above both originals

  // the glued nonmember: both originals, one edge each swapped for a bridge
  std::vector<NodeId> nodes = g1.nodes();
  for (NodeId v : g2.nodes()) nodes.push_back(v);
  std::vector<Edge> edges;
  for (const Edge& e : g1.edges())
    if (!(e == Edge(u1, v1))) edges.push_back(e);
  for (const Edge& e : g2.edges())
    if (!(e == Edge(u2, v2))) edges.push_back(e);
  edges.push_back(Edge(u1, u2));
  edges.push_back(Edge(v1, v2));
  Graph g3 = Graph::make(nodes, edges, {});
  auto labels = adjlist_labeling(g3, g3.edges());
  LabeledGraph instance{std::move(g3), std::move(labels)};

  // certificates copied from the two legitimately regular doubled members
  LabeledGraph member1 = doubled_member(g1, u1, v1, copyOffset);
  LabeledGraph member2 = doubled_member(g2, u2, v2, copyOffset);
  Certificate c1 = UniversalScheme::encode_instance(member1);
  Certificate c2 = UniversalScheme::encode_instance(member2);
  CertificateMap certs;
  for (NodeId v : g1.nodes()) certs[v] = c1;
  for (NodeId v : g2.nodes()) certs[v] = c2;
  return Construction{std::move(instance), std::move(certs)};
}

CertificateMap build_wrapper_fakes(const WrappedScheme& scheme, const LabeledGraph& instance) {
  if (auto honest = scheme.prove(instance)) return *honest;
  const Graph& g = instance.graph;
  NodeId root = g.min_id();
  auto dist = bfs_distances(g, root, g.edges());
  std::map<NodeId, StCert> tree;
  for (NodeId v : g.nodes()) {
    StCert c{root, v, dist.at(v)};
    if (v != root)
      for (NodeId w : g.neighbors(v))
        if (dist.at(w) + 1 == dist.at(v)) {
          c.parent = w;
          break;
        }
    tree[v] = c;
  }
  // inner verdicts with all-empty inner certificates
  std::map<NodeId, bool> accepts;
  for (NodeId v : g.nodes()) {
    LocalView view;
    view.id = v;
    view.label = instance.labels.at(v);
    for (NodeId w : g.neighbors(v)) {
      NeighborView nb;
      nb.id = w;
      nb.label = instance.labels.at(w);
      if (g.weighted()) nb.weight_rank = g.weight_rank(v, w);
      view.neighbors.push_back(nb);
    }
    accepts[v] = scheme.inner().verify_local(view);
  }
  // b(u) bottom-up: false once the inner verdict or any child turns false
  std::vector<NodeId> order = g.nodes();
  std::sort(order.begin(), order.end(),
            [&](NodeId a, NodeId b) { return dist.at(a) > dist.at(b); });
  std::map<NodeId, bool> bval;
  for (NodeId v : order) {
    bool b = accepts.at(v);
    for (NodeId w : g.neighbors(v))
      if (tree.at(w).parent == v && w != v && dist.at(w) == dist.at(v) + 1 && !bval.at(w))
        b = false;
    bval[v] = b;
  }
  CertificateMap certs;
  for (NodeId v : g.nodes())
    certs[v] = scheme.join(WrappedScheme::Parts{Certificate{}, tree.at(v), bval.at(v)});
  return certs;
}

}  // namespace pls
