#include "pls/mst.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace pls {

unsigned mst_round_count(std::size_t n) {
  if (n <= 1) return 0;
  return static_cast<unsigned>(std::bit_width(n - 1));
}

Certificate encode_mst_cert(const MstCertData& data, unsigned w) {
  Bits b;
  b.append(data.rounds.size(), 8);
  for (const RoundRecord& r : data.rounds) {
    b.append(r.frag, w);
    b.append(r.t1.parent, w);
    b.append(r.t1.dist, w);
    b.append(r.t2.parent, w);
    b.append(r.t2.dist, w);
    b.append(r.moe_endpoint, w);
    b.append(r.moe_rank, kRankWidth);
  }
  encode_st_cert(data.final_tree, w, b);
  return Certificate{b};
}

std::optional<MstCertData> decode_mst_cert(const Certificate& cert, unsigned w) {
  BitReader r(cert.bits);
  auto count = r.read(8);
  if (!count) return std::nullopt;
  MstCertData out;
  for (std::uint64_t i = 0; i < *count; ++i) {
    RoundRecord rec;
    auto frag = r.read(w);
    auto p1 = r.read(w), d1 = r.read(w);
    auto p2 = r.read(w), d2 = r.read(w);
    auto me = r.read(w);
    auto mr = r.read(kRankWidth);
    if (!frag || !p1 || !d1 || !p2 || !d2 || !me || !mr) return std::nullopt;
    rec.frag = *frag;
    rec.t1 = TreePos{*p1, *d1};
    rec.t2 = TreePos{*p2, *d2};
    rec.moe_endpoint = *me;
    rec.moe_rank = *mr;
    out.rounds.push_back(rec);
  }
  auto fin = decode_st_cert(r, w);
  if (!fin || !r.at_end()) return std::nullopt;
  out.final_tree = *fin;
  return out;
}

namespace {

std::vector<Edge> labeled_tree_edges(const LabeledGraph& instance) {
  std::set<Edge> out;
  for (const auto& [v, l] : instance.labels)
    for (NodeId w : std::get<AdjListLabel>(l).ids) out.insert(Edge(v, w));
  return {out.begin(), out.end()};
}

struct BoruvkaRun {
  std::vector<FragmentRound> states;
  std::vector<std::map<NodeId, Edge>> moes;  // per merge round: fragment name -> chosen edge
};

BoruvkaRun run_boruvka(const LabeledGraph& instance) {
  const Graph& g = instance.graph;
  BoruvkaRun run;
  FragmentRound cur;
  for (NodeId v : g.nodes()) cur[v] = v;
  run.states.push_back(cur);
  while (true) {
    std::set<NodeId> names;
    for (const auto& [v, f] : cur) names.insert(f);
    if (names.size() == 1) break;
    // lightest outgoing edge of every fragment
    std::map<NodeId, Edge> moe;
    for (const Edge& e : g.edges()) {
      NodeId fu = cur[e.u], fv = cur[e.v];
      if (fu == fv) continue;
      for (NodeId f : {fu, fv}) {
        auto it = moe.find(f);
        if (it == moe.end() ||
            g.weight_rank(e.u, e.v) < g.weight_rank(it->second.u, it->second.v))
          moe.insert_or_assign(f, e);
      }
    }
    run.moes.push_back(moe);
    // merge along all chosen edges
    std::map<NodeId, NodeId> uf;
    for (NodeId f : names) uf[f] = f;
    auto root = [&](NodeId x) {
      while (uf[x] != x) {
        uf[x] = uf[uf[x]];
        x = uf[x];
      }
      return x;
    };
    for (const auto& [f, e] : moe) {
      NodeId a = root(cur[e.u]), b = root(cur[e.v]);
      if (a != b) uf[a] = b;
    }
    std::map<NodeId, NodeId> newName;  // merged component root -> minimum node id
    for (const auto& [v, f] : cur) {
      NodeId r = root(f);
      auto it = newName.find(r);
      if (it == newName.end() || v < it->second) newName.insert_or_assign(r, v);
    }
    for (auto& [v, f] : cur) f = newName.at(root(f));
    run.states.push_back(cur);
  }
  return run;
}

// parent/dist positions of a BFS tree over the given edges, rooted at root
std::map<NodeId, TreePos> tree_positions(const std::vector<NodeId>& nodes,
                                         const std::vector<Edge>& edges, NodeId root,
                                         const Graph& g) {
  auto dist = bfs_distances(g, root, edges);
  std::map<NodeId, std::vector<NodeId>> adj;
  for (const Edge& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::map<NodeId, TreePos> out;
  for (NodeId v : nodes) {
    TreePos t;
    t.dist = dist.at(v);
    t.parent = v;
    if (v != root)
      for (NodeId w : adj[v])
        if (dist.at(w) + 1 == dist.at(v)) {
          t.parent = w;
          break;
        }
    out[v] = t;
  }
  return out;
}

}  // namespace

std::vector<FragmentRound> boruvka_rounds(const LabeledGraph& instance) {
  if (!decide_membership(LanguageId::MstL, instance))
    throw Error(ErrorCode::Precondition, "instance is not a labeled minimum spanning tree");
  return run_boruvka(instance).states;
}

std::optional<CertificateMap> MstScheme::prove(const LabeledGraph& instance) const {
  bool member;
  try {
    member = decide_membership(LanguageId::MstL, instance);
  } catch (const Error&) {
    return std::nullopt;
  }
  if (!member) return std::nullopt;
  const Graph& g = instance.graph;
  auto tree = labeled_tree_edges(instance);
  BoruvkaRun run = run_boruvka(instance);
  unsigned R = mst_round_count(g.node_count());
  std::map<NodeId, MstCertData> data;
  for (NodeId v : g.nodes()) data[v].rounds.resize(R);

  for (unsigned r = 0; r < R; ++r) {
    const FragmentRound& state =
        run.states[std::min<std::size_t>(r, run.states.size() - 1)];
    bool merged = r >= run.moes.size();
    std::map<NodeId, std::vector<NodeId>> frags;
    for (const auto& [v, f] : state) frags[f].push_back(v);
    for (const auto& [f, members] : frags) {
      std::set<NodeId> inFrag(members.begin(), members.end());
      std::vector<Edge> inner;
      for (const Edge& e : tree)
        if (inFrag.count(e.u) && inFrag.count(e.v)) inner.push_back(e);
      auto t1 = tree_positions(members, inner, f, g);
      RoundRecord base;
      base.frag = f;
      std::map<NodeId, TreePos> t2;
      if (merged) {
        t2 = t1;
        base.moe_endpoint = 0;
        base.moe_rank = kMoeSentinelRank;
      } else {
        Edge e = run.moes[r].at(f);
        NodeId side = inFrag.count(e.u) ? e.u : e.v;
        base.moe_endpoint = side == e.u ? e.v : e.u;
        base.moe_rank = g.weight_rank(e.u, e.v);
        t2 = tree_positions(members, inner, side, g);
      }
      for (NodeId v : members) {
        RoundRecord rec = base;
        rec.t1 = t1.at(v);
        rec.t2 = t2.at(v);
        data[v].rounds[r] = rec;
      }
    }
  }

  // final field: spanning-tree certificate over the labeled edges
  NodeId root = g.min_id();
  auto fin = tree_positions({g.nodes().begin(), g.nodes().end()}, tree, root, g);
  CertificateMap out;
  for (NodeId v : g.nodes()) {
    data[v].final_tree = StCert{root, fin.at(v).parent, fin.at(v).dist};
    out[v] = encode_mst_cert(data[v], ctx_.id_width());
  }
  return out;
}

namespace {

bool mst_labels_ok(NodeId self, const Label& label, const std::vector<NeighborView>& nbs) {
  const auto* a = std::get_if<AdjListLabel>(&label);
  if (!a) return false;
  for (NodeId w : a->ids) {
    bool found = false;
    for (const auto& nb : nbs) found = found || nb.id == w;
    if (!found) return false;
  }
  for (const auto& nb : nbs) {
    bool mine = a->contains(nb.id);
    const auto* na = std::get_if<AdjListLabel>(&nb.label);
    bool theirs = na && na->contains(self);
    if (mine != theirs) return false;
  }
  return true;
}

}  // namespace

bool MstScheme::verify_local(const LocalView& view) const {
  if (!mst_labels_ok(view.id, view.label, view.neighbors)) return false;
  const auto& a = std::get<AdjListLabel>(view.label);
  unsigned w = ctx_.id_width();
  unsigned R = mst_round_count(ctx_.n);
  auto own = decode_mst_cert(view.cert, w);
  if (!own || own->rounds.size() != R) return false;
  std::map<NodeId, MstCertData> nc;
  std::map<NodeId, std::uint64_t> rank;
  for (const auto& nb : view.neighbors) {
    if (!nb.weight_rank) return false;  // the language is about weighted graphs
    rank[nb.id] = *nb.weight_rank;
    auto c = decode_mst_cert(nb.cert, w);
    if (!c || c->rounds.size() != R) return false;
    nc.emplace(nb.id, std::move(*c));
  }
  auto fid = [&](const MstCertData& c, unsigned r) {
    return r < R ? c.rounds[r].frag : c.final_tree.root;
  };

  // final spanning tree consists exactly of the labeled edges (condition 4)
  {
    const StCert& f = own->final_tree;
    for (const auto& [id, c] : nc)
      if (c.final_tree.root != f.root) return false;
    if (f.root == view.id) {
      if (f.parent != view.id || f.dist != 0) return false;
    } else {
      if (!a.contains(f.parent) || f.dist == 0) return false;
      if (nc.at(f.parent).final_tree.dist != f.dist - 1) return false;
    }
    for (NodeId t : a.ids) {
      if (f.root != view.id && t == f.parent) continue;
      const StCert& tc = nc.at(t).final_tree;
      if (tc.parent != view.id || tc.dist != f.dist + 1) return false;
    }
  }

  // once two adjacent nodes share a fragment they stay together (condition 1)
  for (const auto& [id, c] : nc) {
    bool joined = false;
    for (unsigned r = 0; r <= R; ++r) {
      bool eq = fid(*own, r) == fid(c, r);
      if (joined && !eq) return false;
      joined = joined || eq;
    }
  }

  for (unsigned r = 0; r < R; ++r) {
    const RoundRecord& rec = own->rounds[r];
    // tree1 is rooted at the fragment's name node
    if (rec.t1.dist == 0 && (view.id != rec.frag || rec.t1.parent != view.id)) return false;
    if (view.id == rec.frag && rec.t1.dist != 0) return false;
    if (rec.t1.dist != 0) {
      if (!a.contains(rec.t1.parent) || fid(nc.at(rec.t1.parent), r) != rec.frag) return false;
      if (nc.at(rec.t1.parent).rounds[r].t1.dist != rec.t1.dist - 1) return false;
    }
    if (rec.t2.dist == 0 && rec.t2.parent != view.id) return false;
    if (rec.t2.dist != 0) {
      if (!a.contains(rec.t2.parent) || fid(nc.at(rec.t2.parent), r) != rec.frag) return false;
      if (nc.at(rec.t2.parent).rounds[r].t2.dist != rec.t2.dist - 1) return false;
    }
    for (const auto& nb : view.neighbors) {
      const RoundRecord& other = nc.at(nb.id).rounds[r];
      if (other.frag == rec.frag) {
        // same fragment: agree on the announced outgoing edge
        if (other.moe_endpoint != rec.moe_endpoint || other.moe_rank != rec.moe_rank)
          return false;
        if (a.contains(nb.id)) {
          // tree edges inside the fragment are exactly the fragment trees' edges
          bool p1 = rec.t1.dist != 0 && nb.id == rec.t1.parent;
          bool c1 = other.t1.parent == view.id && other.t1.dist == rec.t1.dist + 1;
          if (!p1 && !c1) return false;
          bool p2 = rec.t2.dist != 0 && nb.id == rec.t2.parent;
          bool c2 = other.t2.parent == view.id && other.t2.dist == rec.t2.dist + 1;
          if (!p2 && !c2) return false;
        }
      } else {
        // cross-fragment edge: no lighter edge than the announced one (minimality)
        if (rec.sentinel()) return false;  // claimed no outgoing edge, yet here is one
        std::uint64_t rk = rank.at(nb.id);
        if (rk < rec.moe_rank) return false;
        if (rk == rec.moe_rank && !(rec.t2.dist == 0 && nb.id == rec.moe_endpoint))
          return false;
      }
    }
    if (rec.sentinel()) {
      if (rec.moe_rank != kMoeSentinelRank) return false;
    } else if (rec.t2.dist == 0) {
      // tree2 root duty: the announced edge exists, is a tree edge, and merges
      // the two fragments at the next round (conditions 2 and 3)
      if (!a.contains(rec.moe_endpoint)) return false;
      auto it = nc.find(rec.moe_endpoint);
      if (it == nc.end()) return false;
      if (rank.at(rec.moe_endpoint) != rec.moe_rank) return false;
      if (fid(it->second, r) == rec.frag) return false;
      if (fid(it->second, r + 1) != fid(*own, r + 1)) return false;
    }
  }
  return true;
}

bool MstScheme::rejects_partial(const PartialLocalView& view) const {
  if (!mst_labels_ok(view.id, view.label, view.neighbors)) return true;
  if (!view.cert) return false;
  unsigned w = ctx_.id_width();
  unsigned R = mst_round_count(ctx_.n);
  auto own = decode_mst_cert(*view.cert, w);
  if (!own || own->rounds.size() != R) return true;
  const auto& a = std::get<AdjListLabel>(view.label);
  for (unsigned r = 0; r < R; ++r) {
    const RoundRecord& rec = own->rounds[r];
    if (rec.t1.dist == 0 && (view.id != rec.frag || rec.t1.parent != view.id)) return true;
    if (view.id == rec.frag && rec.t1.dist != 0) return true;
    if (rec.t1.dist != 0 && !a.contains(rec.t1.parent)) return true;
    if (rec.t2.dist == 0 && rec.t2.parent != view.id) return true;
    if (rec.t2.dist != 0 && !a.contains(rec.t2.parent)) return true;
    if (rec.sentinel() && rec.moe_rank != kMoeSentinelRank) return true;
    if (!rec.sentinel() && rec.t2.dist == 0 && !a.contains(rec.moe_endpoint)) return true;
  }
  // known-neighbor consistency, reusing the full verifier on a best-case view
  // would be wrong here; check only certain single-edge conflicts
  for (std::size_t i = 0; i < view.neighbors.size(); ++i) {
    if (!view.neighbor_known[i]) continue;
    const auto& nb = view.neighbors[i];
    auto c = decode_mst_cert(nb.cert, w);
    if (!c || c->rounds.size() != R) return true;
    auto fid = [&](const MstCertData& d, unsigned r) {
      return r < R ? d.rounds[r].frag : d.final_tree.root;
    };
    if (c->final_tree.root != own->final_tree.root) return true;
    bool joined = false;
    for (unsigned r = 0; r <= R; ++r) {
      bool eq = fid(*own, r) == fid(*c, r);
      if (joined && !eq) return true;
      joined = joined || eq;
    }
    for (unsigned r = 0; r < R; ++r) {
      const RoundRecord& rec = own->rounds[r];
      const RoundRecord& other = c->rounds[r];
      if (other.frag == rec.frag) {
        if (other.moe_endpoint != rec.moe_endpoint || other.moe_rank != rec.moe_rank)
          return true;
        if (a.contains(nb.id)) {
          bool p1 = rec.t1.dist != 0 && nb.id == rec.t1.parent;
          bool c1 = other.t1.parent == view.id && other.t1.dist == rec.t1.dist + 1;
          if (!p1 && !c1) return true;
        }
      } else {
        if (rec.sentinel()) return true;
        if (nb.weight_rank) {
          std::uint64_t rk = *nb.weight_rank;
          if (rk < rec.moe_rank) return true;
          if (rk == rec.moe_rank && !(rec.t2.dist == 0 && nb.id == rec.moe_endpoint))
            return true;
        }
      }
    }
  }
  return false;
}

std::size_t MstScheme::certificate_size_bound(std::size_t n, NodeId max_id) const {
  unsigned w = id_field_width(max_id);
  return 8 + mst_round_count(n) * (6u * w + kRankWidth) + 3u * w;
}

}  // namespace pls
