#include "pls/schemes.hpp"

#include <algorithm>
#include <set>

#include "pls/mst.hpp"

namespace pls {

void encode_st_cert(const StCert& c, unsigned width, Bits& out) {
  out.append(c.root, width);
  out.append(c.parent, width);
  out.append(c.dist, width);
}

std::optional<StCert> decode_st_cert(BitReader& r, unsigned width) {
  auto i = r.read(width);
  auto p = r.read(width);
  auto d = r.read(width);
  if (!i || !p || !d) return std::nullopt;
  return StCert{*i, *p, *d};
}

namespace {

std::optional<std::uint64_t> decode_single_field(const Certificate& c, unsigned width) {
  if (c.bits.nbits != width) return std::nullopt;
  BitReader r(c.bits);
  return r.read(width);
}

std::optional<StCert> decode_st_exact(const Certificate& c, unsigned width) {
  if (c.bits.nbits != 3u * width) return std::nullopt;
  BitReader r(c.bits);
  return decode_st_cert(r, width);
}

const NeighborView* find_neighbor(const std::vector<NeighborView>& nbs, NodeId id) {
  for (const auto& nb : nbs)
    if (nb.id == id) return &nb;
  return nullptr;
}

// BFS parents over the given tree edges, rooted at the minimum id; parent of
// the root is itself. Deterministic: smallest-id parent on ties (trees have
// unique parents anyway).
std::map<NodeId, StCert> st_certs_for_tree(const Graph& g, const std::vector<Edge>& tree) {
  NodeId root = g.min_id();
  auto dist = bfs_distances(g, root, tree);
  std::map<NodeId, std::vector<NodeId>> adj;
  for (const Edge& e : tree) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::map<NodeId, StCert> out;
  for (NodeId v : g.nodes()) {
    StCert c;
    c.root = root;
    c.dist = dist.at(v);
    c.parent = v;
    if (v != root)
      for (NodeId w : adj[v])
        if (dist.at(w) + 1 == dist.at(v)) {
          c.parent = w;
          break;
        }
    out[v] = c;
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- acyclic

std::optional<CertificateMap> AcyclicScheme::prove(const LabeledGraph& instance) const {
  if (!decide_membership(LanguageId::Acyclic, instance)) return std::nullopt;
  // depth of each node along its pointer chain
  std::map<NodeId, std::uint64_t> depth;
  std::function<std::uint64_t(NodeId)> depth_of = [&](NodeId v) -> std::uint64_t {
    auto it = depth.find(v);
    if (it != depth.end()) return it->second;
    const auto& p = std::get<PointerLabel>(instance.labels.at(v));
    std::uint64_t d = p.target ? depth_of(*p.target) + 1 : 0;
    depth[v] = d;
    return d;
  };
  CertificateMap certs;
  unsigned w = ctx_.id_width();
  for (NodeId v : instance.graph.nodes()) {
    Bits b;
    b.append(depth_of(v), w);
    certs[v] = Certificate{b};
  }
  return certs;
}

bool AcyclicScheme::verify_local(const LocalView& view) const {
  const auto* p = std::get_if<PointerLabel>(&view.label);
  if (!p) return false;
  auto d = decode_single_field(view.cert, ctx_.id_width());
  if (!d) return false;
  if (!p->target) return *d == 0;
  const NeighborView* t = find_neighbor(view.neighbors, *p->target);
  if (!t) return false;
  auto dt = decode_single_field(t->cert, ctx_.id_width());
  return dt && *d >= 1 && *dt == *d - 1;
}

bool AcyclicScheme::rejects_partial(const PartialLocalView& view) const {
  const auto* p = std::get_if<PointerLabel>(&view.label);
  if (!p) return true;
  if (p->target && !find_neighbor(view.neighbors, *p->target)) return true;
  if (!view.cert) return false;
  auto d = decode_single_field(*view.cert, ctx_.id_width());
  if (!d) return true;
  if (!p->target) return *d != 0;
  for (std::size_t i = 0; i < view.neighbors.size(); ++i) {
    if (!view.neighbor_known[i] || view.neighbors[i].id != *p->target) continue;
    auto dt = decode_single_field(view.neighbors[i].cert, ctx_.id_width());
    if (!dt || *d == 0 || *dt != *d - 1) return true;
  }
  return false;
}

std::size_t AcyclicScheme::certificate_size_bound(std::size_t, NodeId max_id) const {
  return id_field_width(max_id);
}

// --------------------------------------------------------------------- st

namespace {

// label-layer checks shared by verify and the partial pruner; need no certs
bool st_labels_ok(NodeId self, const Label& label, const std::vector<NeighborView>& nbs) {
  const auto* a = std::get_if<AdjListLabel>(&label);
  if (!a) return false;
  for (NodeId w : a->ids)
    if (!find_neighbor(nbs, w)) return false;
  for (const auto& nb : nbs) {
    bool mine = a->contains(nb.id);
    const auto* na = std::get_if<AdjListLabel>(&nb.label);
    bool theirs = na && na->contains(self);
    if (mine != theirs) return false;
  }
  return true;
}

}  // namespace

std::optional<CertificateMap> StScheme::prove(const LabeledGraph& instance) const {
  if (!decide_membership(LanguageId::StL, instance)) return std::nullopt;
  std::set<Edge> tree;
  for (const auto& [v, l] : instance.labels)
    for (NodeId w : std::get<AdjListLabel>(l).ids) tree.insert(Edge(v, w));
  auto certs = st_certs_for_tree(instance.graph, {tree.begin(), tree.end()});
  CertificateMap out;
  unsigned w = ctx_.id_width();
  for (const auto& [v, c] : certs) {
    Bits b;
    encode_st_cert(c, w, b);
    out[v] = Certificate{b};
  }
  return out;
}

bool StScheme::verify_local(const LocalView& view) const {
  if (!st_labels_ok(view.id, view.label, view.neighbors)) return false;
  const auto& a = std::get<AdjListLabel>(view.label);
  unsigned w = ctx_.id_width();
  auto c = decode_st_exact(view.cert, w);
  if (!c) return false;
  std::map<NodeId, StCert> nc;
  for (const auto& nb : view.neighbors) {
    auto cc = decode_st_exact(nb.cert, w);
    if (!cc) return false;  // cannot confirm root agreement
    if (cc->root != c->root) return false;
    nc[nb.id] = *cc;
  }
  bool root = c->root == view.id;
  if (root) {
    if (c->parent != view.id || c->dist != 0) return false;
  } else {
    if (!a.contains(c->parent)) return false;
    const StCert& pc = nc.at(c->parent);
    if (c->dist == 0 || pc.dist != c->dist - 1) return false;
  }
  for (NodeId t : a.ids) {
    if (!root && t == c->parent) continue;
    const StCert& tc = nc.at(t);
    if (tc.parent != view.id || tc.dist != c->dist + 1) return false;
  }
  return true;
}

bool StScheme::rejects_partial(const PartialLocalView& view) const {
  if (!st_labels_ok(view.id, view.label, view.neighbors)) return true;
  if (!view.cert) return false;
  const auto& a = std::get<AdjListLabel>(view.label);
  unsigned w = ctx_.id_width();
  auto c = decode_st_exact(*view.cert, w);
  if (!c) return true;
  bool root = c->root == view.id;
  if (root && (c->parent != view.id || c->dist != 0)) return true;
  if (!root && (!a.contains(c->parent) || c->dist == 0)) return true;
  for (std::size_t i = 0; i < view.neighbors.size(); ++i) {
    if (!view.neighbor_known[i]) continue;
    const auto& nb = view.neighbors[i];
    auto cc = decode_st_exact(nb.cert, w);
    if (!cc || cc->root != c->root) return true;
    if (!root && nb.id == c->parent && cc->dist != c->dist - 1) return true;
    if (a.contains(nb.id) && !(!root && nb.id == c->parent) &&
        (cc->parent != view.id || cc->dist != c->dist + 1))
      return true;
  }
  return false;
}

std::size_t StScheme::certificate_size_bound(std::size_t, NodeId max_id) const {
  return 3u * id_field_width(max_id);
}

// -------------------------------------------------------------------- stp

std::optional<CertificateMap> StpScheme::prove(const LabeledGraph& instance) const {
  if (!decide_membership(LanguageId::StP, instance)) return std::nullopt;
  NodeId root = 0;
  for (const auto& [v, l] : instance.labels)
    if (!std::get<PointerLabel>(l).target) root = v;
  std::map<NodeId, std::uint64_t> depth;
  std::function<std::uint64_t(NodeId)> depth_of = [&](NodeId v) -> std::uint64_t {
    auto it = depth.find(v);
    if (it != depth.end()) return it->second;
    const auto& p = std::get<PointerLabel>(instance.labels.at(v));
    std::uint64_t d = p.target ? depth_of(*p.target) + 1 : 0;
    depth[v] = d;
    return d;
  };
  CertificateMap out;
  unsigned w = ctx_.id_width();
  for (NodeId v : instance.graph.nodes()) {
    const auto& p = std::get<PointerLabel>(instance.labels.at(v));
    StCert c{root, p.target ? *p.target : v, depth_of(v)};
    Bits b;
    encode_st_cert(c, w, b);
    out[v] = Certificate{b};
  }
  return out;
}

bool StpScheme::verify_local(const LocalView& view) const {
  const auto* p = std::get_if<PointerLabel>(&view.label);
  if (!p) return false;
  if (p->target && !find_neighbor(view.neighbors, *p->target)) return false;
  unsigned w = ctx_.id_width();
  auto c = decode_st_exact(view.cert, w);
  if (!c) return false;
  std::map<NodeId, StCert> nc;
  for (const auto& nb : view.neighbors) {
    auto cc = decode_st_exact(nb.cert, w);
    if (!cc || cc->root != c->root) return false;
    nc[nb.id] = *cc;
  }
  if (!p->target) {
    if (c->root != view.id || c->parent != view.id || c->dist != 0) return false;
  } else {
    const StCert& pc = nc.at(*p->target);
    if (c->parent != *p->target || c->dist == 0 || pc.dist != c->dist - 1) return false;
  }
  for (const auto& nb : view.neighbors) {
    const auto* np = std::get_if<PointerLabel>(&nb.label);
    if (!np || !np->target || *np->target != view.id) continue;
    const StCert& cc = nc.at(nb.id);
    if (cc.parent != view.id || cc.dist != c->dist + 1) return false;
  }
  return true;
}

bool StpScheme::rejects_partial(const PartialLocalView& view) const {
  const auto* p = std::get_if<PointerLabel>(&view.label);
  if (!p) return true;
  if (p->target && !find_neighbor(view.neighbors, *p->target)) return true;
  if (!view.cert) return false;
  unsigned w = ctx_.id_width();
  auto c = decode_st_exact(*view.cert, w);
  if (!c) return true;
  if (!p->target && (c->root != view.id || c->parent != view.id || c->dist != 0)) return true;
  if (p->target && (c->parent != *p->target || c->dist == 0)) return true;
  for (std::size_t i = 0; i < view.neighbors.size(); ++i) {
    if (!view.neighbor_known[i]) continue;
    const auto& nb = view.neighbors[i];
    auto cc = decode_st_exact(nb.cert, w);
    if (!cc || cc->root != c->root) return true;
    if (p->target && nb.id == *p->target && cc->dist != c->dist - 1) return true;
    const auto* np = std::get_if<PointerLabel>(&nb.label);
    if (np && np->target && *np->target == view.id &&
        (cc->parent != view.id || cc->dist != c->dist + 1))
      return true;
  }
  return false;
}

std::size_t StpScheme::certificate_size_bound(std::size_t, NodeId max_id) const {
  return 3u * id_field_width(max_id);
}

// -------------------------------------------------------------- universal

namespace {

constexpr unsigned kCountWidth = 16;
constexpr unsigned kIdWidth = 32;

void encode_label(const Label& l, Bits& out) {
  if (const auto* p = std::get_if<PointerLabel>(&l)) {
    out.append(0, 2);
    out.append(p->target ? 1 : 0, 1);
    if (p->target) out.append(*p->target, kIdWidth);
  } else if (const auto* a = std::get_if<AdjListLabel>(&l)) {
    out.append(1, 2);
    out.append(a->ids.size(), kCountWidth);
    for (NodeId w : a->ids) out.append(w, kIdWidth);
  } else if (const auto* b = std::get_if<BoolLabel>(&l)) {
    out.append(2, 2);
    out.append(b->value ? 1 : 0, 1);
  } else {
    const auto& r = std::get<RawLabel>(l);
    out.append(3, 2);
    out.append(r.bytes.size(), kCountWidth);
    for (std::uint8_t byte : r.bytes) out.append(byte, 8);
  }
}

std::optional<Label> decode_label(BitReader& r) {
  auto kind = r.read(2);
  if (!kind) return std::nullopt;
  switch (*kind) {
    case 0: {
      auto present = r.read(1);
      if (!present) return std::nullopt;
      if (!*present) return Label{PointerLabel{std::nullopt}};
      auto id = r.read(kIdWidth);
      if (!id || *id == 0) return std::nullopt;
      return Label{PointerLabel{*id}};
    }
    case 1: {
      auto cnt = r.read(kCountWidth);
      if (!cnt) return std::nullopt;
      AdjListLabel a;
      NodeId prev = 0;
      for (std::uint64_t i = 0; i < *cnt; ++i) {
        auto id = r.read(kIdWidth);
        if (!id || *id <= prev) return std::nullopt;  // ids strictly ascending
        a.ids.push_back(*id);
        prev = *id;
      }
      return Label{a};
    }
    case 2: {
      auto b = r.read(1);
      if (!b) return std::nullopt;
      return Label{BoolLabel{*b != 0}};
    }
    default: {
      auto len = r.read(kCountWidth);
      if (!len) return std::nullopt;
      RawLabel raw;
      for (std::uint64_t i = 0; i < *len; ++i) {
        auto byte = r.read(8);
        if (!byte) return std::nullopt;
        raw.bytes.push_back(static_cast<std::uint8_t>(*byte));
      }
      return Label{raw};
    }
  }
}

struct DecodedUniversal {
  LabeledGraph instance;
  // rank of edge (u,v) among the described weights, present when weighted
  std::map<Edge, std::size_t> ranks;
  bool weighted = false;
};

std::optional<DecodedUniversal> decode_universal(const Certificate& cert) {
  BitReader r(cert.bits);
  auto n = r.read(kCountWidth);
  if (!n || *n == 0) return std::nullopt;
  std::vector<NodeId> ids;
  NodeId prev = 0;
  for (std::uint64_t i = 0; i < *n; ++i) {
    auto id = r.read(kIdWidth);
    if (!id || *id <= prev) return std::nullopt;  // strictly ascending, positive
    ids.push_back(*id);
    prev = *id;
  }
  std::vector<std::vector<bool>> m(*n, std::vector<bool>(*n));
  for (std::uint64_t i = 0; i < *n; ++i)
    for (std::uint64_t j = 0; j < *n; ++j) {
      auto bit = r.read(1);
      if (!bit) return std::nullopt;
      m[i][j] = *bit != 0;
    }
  for (std::uint64_t i = 0; i < *n; ++i) {
    if (m[i][i]) return std::nullopt;
    for (std::uint64_t j = i + 1; j < *n; ++j)
      if (m[i][j] != m[j][i]) return std::nullopt;
  }
  std::vector<Edge> edges;
  for (std::uint64_t i = 0; i < *n; ++i)
    for (std::uint64_t j = i + 1; j < *n; ++j)
      if (m[i][j]) edges.emplace_back(ids[i], ids[j]);
  auto wflag = r.read(1);
  if (!wflag) return std::nullopt;
  DecodedUniversal out;
  out.weighted = *wflag != 0;
  std::vector<Rational> weights;
  if (out.weighted) {
    for (const Edge& e : edges) {
      auto rank = r.read(kCountWidth);
      if (!rank) return std::nullopt;
      out.ranks[e] = static_cast<std::size_t>(*rank);
      weights.emplace_back(static_cast<std::int64_t>(*rank) + 1);
    }
  }
  std::map<NodeId, Label> labels;
  for (std::uint64_t i = 0; i < *n; ++i) {
    auto l = decode_label(r);
    if (!l) return std::nullopt;
    labels[ids[i]] = *l;
  }
  if (!r.at_end()) return std::nullopt;
  try {
    Graph g = Graph::make(ids, edges, weights);
    out.instance = LabeledGraph{std::move(g), std::move(labels)};
  } catch (const Error&) {
    return std::nullopt;  // disconnected, duplicate ranks, ... : not a member description
  }
  return out;
}

}  // namespace

Certificate UniversalScheme::encode_instance(const LabeledGraph& instance) {
  const Graph& g = instance.graph;
  Bits b;
  b.append(g.node_count(), kCountWidth);
  for (NodeId v : g.nodes()) b.append(v, kIdWidth);
  for (NodeId u : g.nodes())
    for (NodeId v : g.nodes()) b.append(u != v && g.has_edge(u, v) ? 1 : 0, 1);
  b.append(g.weighted() ? 1 : 0, 1);
  if (g.weighted())
    for (const Edge& e : g.edges()) b.append(g.weight_rank(e.u, e.v), kCountWidth);
  for (NodeId v : g.nodes()) encode_label(instance.labels.at(v), b);
  return Certificate{b};
}

std::optional<CertificateMap> UniversalScheme::prove(const LabeledGraph& instance) const {
  bool member;
  try {
    member = decide_membership(lang_, instance);
  } catch (const Error&) {
    return std::nullopt;
  }
  if (!member) return std::nullopt;
  Certificate c = encode_instance(instance);
  CertificateMap out;
  for (NodeId v : instance.graph.nodes()) out[v] = c;
  return out;
}

bool UniversalScheme::verify_local(const LocalView& view) const {
  auto dec = decode_universal(view.cert);
  if (!dec) return false;
  for (const auto& nb : view.neighbors)
    if (!(nb.cert == view.cert)) return false;  // canonical encoding: equality = consistency
  const LabeledGraph& d = dec->instance;
  if (!d.labels.count(view.id)) return false;
  if (!(d.labels.at(view.id) == view.label)) return false;
  std::set<NodeId> claimed;
  for (NodeId w : d.graph.nodes())
    if (w != view.id && d.graph.has_edge(view.id, w)) claimed.insert(w);
  std::set<NodeId> actual;
  for (const auto& nb : view.neighbors) actual.insert(nb.id);
  if (claimed != actual) return false;
  for (const auto& nb : view.neighbors) {
    if (!(d.labels.at(nb.id) == nb.label)) return false;
    if (nb.weight_rank) {
      auto it = dec->ranks.find(Edge(view.id, nb.id));
      if (it == dec->ranks.end() || it->second != *nb.weight_rank) return false;
    } else if (dec->weighted) {
      return false;  // cert claims weights the instance does not have
    }
  }
  try {
    return decide_membership(lang_, d);
  } catch (const Error&) {
    return false;
  }
}

bool UniversalScheme::rejects_partial(const PartialLocalView& view) const {
  if (!view.cert) return false;
  for (std::size_t i = 0; i < view.neighbors.size(); ++i)
    if (view.neighbor_known[i] && !(view.neighbors[i].cert == *view.cert)) return true;
  LocalView full;
  full.id = view.id;
  full.label = view.label;
  full.cert = *view.cert;
  full.neighbors = view.neighbors;
  for (auto& nb : full.neighbors) nb.cert = *view.cert;  // best case: everyone agrees
  return !verify_local(full);
}

std::size_t UniversalScheme::certificate_size_bound(std::size_t n, NodeId) const {
  // n, id table, matrix, weight flag + ranks, labels (adjacency list worst case)
  return kCountWidth + n * kIdWidth + n * n + 1 + n * n * kCountWidth +
         n * (2 + kCountWidth + n * kIdWidth);
}

// ---------------------------------------------------------------- wrapped

Certificate WrappedScheme::join(const Parts& parts) const {
  Bits b;
  b.append(parts.inner.bits.nbits, 32);
  for (std::size_t i = 0; i < parts.inner.bits.nbits; ++i)
    b.append(parts.inner.bits.bit(i) ? 1 : 0, 1);
  encode_st_cert(parts.tree, ctx_.id_width(), b);
  b.append(parts.b ? 1 : 0, 1);
  return Certificate{b};
}

std::optional<WrappedScheme::Parts> WrappedScheme::split(const Certificate& cert) const {
  BitReader r(cert.bits);
  auto len = r.read(32);
  if (!len) return std::nullopt;
  Parts parts;
  for (std::uint64_t i = 0; i < *len; ++i) {
    auto bit = r.read(1);
    if (!bit) return std::nullopt;
    parts.inner.bits.append_bit(*bit != 0);
  }
  auto tc = decode_st_cert(r, ctx_.id_width());
  if (!tc) return std::nullopt;
  parts.tree = *tc;
  auto b = r.read(1);
  if (!b || !r.at_end()) return std::nullopt;
  parts.b = *b != 0;
  return parts;
}

std::optional<CertificateMap> WrappedScheme::prove(const LabeledGraph& instance) const {
  auto inner = inner_->prove(instance);
  if (!inner) return std::nullopt;
  const Graph& g = instance.graph;
  // BFS spanning tree of the communication graph from the minimum id
  auto dist = bfs_distances(g, g.min_id(), g.edges());
  std::vector<Edge> tree;
  for (NodeId v : g.nodes()) {
    if (v == g.min_id()) continue;
    for (NodeId w : g.neighbors(v))
      if (dist.at(w) + 1 == dist.at(v)) {
        tree.push_back(Edge(v, w));
        break;
      }
  }
  auto st = st_certs_for_tree(g, tree);
  CertificateMap out;
  for (NodeId v : g.nodes()) out[v] = join(Parts{inner->at(v), st.at(v), true});
  return out;
}

bool WrappedScheme::verify_local(const LocalView& view) const {
  auto own = split(view.cert);
  if (!own) return false;
  std::map<NodeId, Parts> nparts;
  for (const auto& nb : view.neighbors) {
    auto p = split(nb.cert);
    if (!p) return false;
    nparts.emplace(nb.id, std::move(*p));
  }
  // the embedded spanning-tree certificate must itself check out
  const StCert& t = own->tree;
  for (const auto& [id, p] : nparts)
    if (p.tree.root != t.root) return false;
  bool root = t.root == view.id;
  if (root) {
    if (t.parent != view.id || t.dist != 0) return false;
  } else {
    auto it = nparts.find(t.parent);
    if (it == nparts.end() || t.dist == 0 || it->second.tree.dist != t.dist - 1) return false;
  }
  // inner verdict on the unwrapped view
  LocalView innerView;
  innerView.id = view.id;
  innerView.label = view.label;
  innerView.cert = own->inner;
  for (const auto& nb : view.neighbors) {
    NeighborView iv = nb;
    iv.cert = nparts.at(nb.id).inner;
    innerView.neighbors.push_back(std::move(iv));
  }
  bool a = inner_->verify_local(innerView);
  bool child_false = false, children_true = true;
  for (const auto& [id, p] : nparts) {
    if (p.tree.parent != view.id || id == view.id) continue;
    if (p.tree.dist != t.dist + 1) continue;  // not a tree child of this node
    if (!p.b) {
      child_false = true;
      children_true = false;
    }
  }
  if (root) return a && !child_false;
  if (own->b) return a && children_true;
  return !a || child_false;
}

bool WrappedScheme::rejects_partial(const PartialLocalView& view) const {
  std::optional<Parts> own;
  if (view.cert) {
    own = split(*view.cert);
    if (!own) return true;
  }
  std::vector<std::optional<Parts>> nparts(view.neighbors.size());
  bool all_known = view.cert.has_value();
  for (std::size_t i = 0; i < view.neighbors.size(); ++i) {
    if (!view.neighbor_known[i]) {
      all_known = false;
      continue;
    }
    nparts[i] = split(view.neighbors[i].cert);
    if (!nparts[i]) return true;
  }
  if (all_known) {
    LocalView full;
    full.id = view.id;
    full.label = view.label;
    full.cert = *view.cert;
    full.neighbors = view.neighbors;
    return !verify_local(full);
  }
  // two known neighbors disagreeing on the root sink every own certificate
  std::optional<NodeId> seen_root;
  for (const auto& p : nparts) {
    if (!p) continue;
    if (seen_root && *seen_root != p->tree.root) return true;
    seen_root = p->tree.root;
  }
  if (!own) return false;

  const StCert& t = own->tree;
  bool root = t.root == view.id;
  bool parent_present = root;
  for (std::size_t i = 0; i < view.neighbors.size(); ++i) {
    if (view.neighbors[i].id == t.parent) parent_present = true;
    if (!nparts[i]) continue;
    if (nparts[i]->tree.root != t.root) return true;
    if (view.neighbors[i].id == t.parent && !root &&
        (t.dist == 0 || nparts[i]->tree.dist != t.dist - 1))
      return true;
  }
  if (!parent_present) return true;
  if (root && (t.parent != view.id || t.dist != 0)) return true;
  if (!root && t.dist == 0) return true;

  // a known false child sinks every verdict that demands true children
  if (root || own->b) {
    for (std::size_t i = 0; i < view.neighbors.size(); ++i) {
      if (!nparts[i]) continue;
      const Parts& p = *nparts[i];
      if (p.tree.parent == view.id && view.neighbors[i].id != view.id &&
          p.tree.dist == t.dist + 1 && !p.b)
        return true;
    }
    // these verdicts also demand an accepting inner run
    PartialLocalView innerView;
    innerView.id = view.id;
    innerView.label = view.label;
    innerView.cert = own->inner;
    innerView.neighbors = view.neighbors;
    innerView.neighbor_known = view.neighbor_known;
    for (std::size_t i = 0; i < view.neighbors.size(); ++i)
      if (nparts[i]) innerView.neighbors[i].cert = nparts[i]->inner;
    if (inner_->rejects_partial(innerView)) return true;
  }
  return false;
}

std::size_t WrappedScheme::certificate_size_bound(std::size_t n, NodeId max_id) const {
  return 32 + inner_->certificate_size_bound(n, max_id) + 3u * id_field_width(max_id) + 1;
}

// ---------------------------------------------------------------- factory

std::shared_ptr<const Scheme> make_scheme(const std::string& name, SchemeContext ctx) {
  if (name == "acyclic") return std::make_shared<AcyclicScheme>(ctx);
  if (name == "st") return std::make_shared<StScheme>(ctx);
  if (name == "stp") return std::make_shared<StpScheme>(ctx);
  if (name == "mst") return std::make_shared<MstScheme>(ctx);
  if (name.rfind("universal-", 0) == 0)
    return std::make_shared<UniversalScheme>(parse_language(name.substr(10)), ctx);
  if (name.rfind("wrapped-", 0) == 0)
    return std::make_shared<WrappedScheme>(make_scheme(name.substr(8), ctx), ctx);
  throw Error(ErrorCode::Precondition, "unknown scheme: " + name);
}

}  // namespace pls
