#include "pls/languages.hpp"

#include <algorithm>
#include <set>

#include "pls/enumerate.hpp"

namespace pls {

LabelKind expected_label_kind(LanguageId lang) {
  switch (lang) {
    case LanguageId::Acyclic:
    case LanguageId::StP: return LabelKind::Pointer;
    case LanguageId::StL:
    case LanguageId::MstL:
    case LanguageId::Regular: return LabelKind::AdjList;
    case LanguageId::Leader: return LabelKind::Bool;
  }
  throw Error(ErrorCode::Precondition, "bad language id");
}

std::string language_name(LanguageId lang) {
  switch (lang) {
    case LanguageId::Acyclic: return "acyclic";
    case LanguageId::Leader: return "leader";
    case LanguageId::StP: return "st-p";
    case LanguageId::StL: return "st-l";
    case LanguageId::MstL: return "mst-l";
    case LanguageId::Regular: return "regular";
  }
  return "?";
}

LanguageId parse_language(const std::string& name) {
  if (name == "acyclic") return LanguageId::Acyclic;
  if (name == "leader") return LanguageId::Leader;
  if (name == "st-p" || name == "stp") return LanguageId::StP;
  if (name == "st-l" || name == "stl") return LanguageId::StL;
  if (name == "mst-l" || name == "mst") return LanguageId::MstL;
  if (name == "regular") return LanguageId::Regular;
  throw Error(ErrorCode::Precondition, "unknown language: " + name);
}

namespace {

void require_kind(LanguageId lang, const LabeledGraph& instance) {
  LabelKind want = expected_label_kind(lang);
  for (const auto& [id, l] : instance.labels)
    if (label_kind(l) != want)
      throw Error(ErrorCode::Precondition,
                  "label kind mismatch for " + language_name(lang) + ": node " +
                      std::to_string(id) + " carries a " + label_kind_name(label_kind(l)) +
                      " label");
}

// Pointer labels: every label names a neighbor or bottom.
bool pointers_well_formed(const LabeledGraph& x) {
  for (const auto& [id, l] : x.labels) {
    const auto& p = std::get<PointerLabel>(l);
    if (p.target && !x.graph.has_edge(id, *p.target)) return false;
  }
  return true;
}

// The pointer map, followed as a directed graph, has no directed cycle.
// (A mutual pair u<->v counts as a cycle: a consistent in-forest orientation
// cannot contain it, and depth certificates reject it.)
bool pointers_acyclic(const LabeledGraph& x) {
  std::map<NodeId, int> state;  // 0 unseen, 1 on stack, 2 done
  for (NodeId start : x.graph.nodes()) {
    NodeId v = start;
    std::vector<NodeId> stack;
    while (true) {
      int s = state.count(v) ? state[v] : 0;
      if (s == 2) break;
      if (s == 1) return false;  // hit the current chain: directed cycle
      state[v] = 1;
      stack.push_back(v);
      const auto& p = std::get<PointerLabel>(x.labels.at(v));
      if (!p.target) break;
      v = *p.target;
    }
    for (NodeId w : stack) state[w] = 2;
  }
  return true;
}

// Adjacency-list labels: subset of neighborhood, and symmetric.
bool adjlists_well_formed(const LabeledGraph& x) {
  for (const auto& [id, l] : x.labels) {
    const auto& a = std::get<AdjListLabel>(l);
    for (NodeId w : a.ids) {
      if (!x.graph.has_edge(id, w)) return false;
      if (!std::get<AdjListLabel>(x.labels.at(w)).contains(id)) return false;
    }
  }
  return true;
}

std::vector<Edge> adjlist_edges(const LabeledGraph& x) {
  std::set<Edge> out;
  for (const auto& [id, l] : x.labels)
    for (NodeId w : std::get<AdjListLabel>(l).ids) out.insert(Edge(id, w));
  return {out.begin(), out.end()};
}

std::vector<Edge> pointer_edges(const LabeledGraph& x) {
  std::set<Edge> out;
  for (const auto& [id, l] : x.labels) {
    const auto& p = std::get<PointerLabel>(l);
    if (p.target) out.insert(Edge(id, *p.target));
  }
  return {out.begin(), out.end()};
}

bool is_spanning_tree(const Graph& g, const std::vector<Edge>& edges) {
  return edges.size() + 1 == g.node_count() && edges_acyclic(edges) &&
         edges_connected_spanning(g, edges);
}

}  // namespace

bool decide_membership(LanguageId lang, const LabeledGraph& instance) {
  require_kind(lang, instance);
  if (!instance.graph.connected()) return false;
  switch (lang) {
    case LanguageId::Acyclic:
      return pointers_well_formed(instance) && pointers_acyclic(instance);
    case LanguageId::Leader: {
      std::size_t ones = 0;
      for (const auto& [id, l] : instance.labels)
        if (std::get<BoolLabel>(l).value) ++ones;
      return ones == 1;
    }
    case LanguageId::StP: {
      if (!pointers_well_formed(instance)) return false;
      std::size_t bottoms = 0;
      for (const auto& [id, l] : instance.labels)
        if (!std::get<PointerLabel>(l).target) ++bottoms;
      // Exactly one bottom guarantees the consistent orientation ST_p encodes.
      return bottoms == 1 && is_spanning_tree(instance.graph, pointer_edges(instance));
    }
    case LanguageId::StL:
      return adjlists_well_formed(instance) &&
             is_spanning_tree(instance.graph, adjlist_edges(instance));
    case LanguageId::MstL: {
      if (!instance.graph.weighted() && instance.graph.edge_count() > 0)
        throw Error(ErrorCode::Precondition, "mst-l needs a weighted graph");
      if (!adjlists_well_formed(instance)) return false;
      auto edges = adjlist_edges(instance);
      if (!is_spanning_tree(instance.graph, edges)) return false;
      auto mst = kruskal_mst(instance.graph);
      return edges == mst;  // weights distinct, so the MST is unique
    }
    case LanguageId::Regular: {
      if (!adjlists_well_formed(instance)) return false;
      std::size_t deg = std::get<AdjListLabel>(instance.labels.begin()->second).ids.size();
      for (const auto& [id, l] : instance.labels)
        if (std::get<AdjListLabel>(l).ids.size() != deg) return false;
      return true;
    }
  }
  throw Error(ErrorCode::Precondition, "bad language id");
}

std::vector<Edge> kruskal_mst(const Graph& g) {
  if (!g.weighted() && g.edge_count() > 0)
    throw Error(ErrorCode::Precondition, "kruskal needs weights");
  std::vector<std::size_t> order(g.edge_count());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return g.weights()[a] < g.weights()[b]; });
  std::map<NodeId, NodeId> uf;
  for (NodeId v : g.nodes()) uf[v] = v;
  auto root = [&](NodeId x) {
    while (uf[x] != x) {
      uf[x] = uf[uf[x]];
      x = uf[x];
    }
    return x;
  };
  std::vector<Edge> mst;
  for (std::size_t i : order) {
    const Edge& e = g.edges()[i];
    NodeId a = root(e.u), b = root(e.v);
    if (a != b) {
      uf[a] = b;
      mst.push_back(e);
    }
  }
  std::sort(mst.begin(), mst.end());
  return mst;
}

std::map<NodeId, Label> pointer_labeling_toward(const Graph& g, const std::vector<Edge>& tree,
                                                NodeId root) {
  auto dist = bfs_distances(g, root, tree);
  std::map<NodeId, std::vector<NodeId>> adj;
  for (const Edge& e : tree) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::map<NodeId, Label> labels;
  for (NodeId v : g.nodes()) {
    if (v == root) {
      labels[v] = PointerLabel{std::nullopt};
      continue;
    }
    NodeId parent = 0;
    for (NodeId w : adj[v])
      if (dist.at(w) + 1 == dist.at(v)) parent = w;
    labels[v] = PointerLabel{parent};
  }
  return labels;
}

namespace {

// Branch-and-bound over per-node label domains: minimize the number of nodes
// whose label changes, checking the language predicate at the leaves.
struct DomainSearch {
  const LabeledGraph& instance;
  LanguageId lang;
  std::uint64_t budget;
  std::uint64_t steps = 0;
  std::uint64_t best;
  std::map<NodeId, Label> current;

  std::uint64_t run() {
    best = instance.graph.node_count() + 1;
    rec(0, 0);
    return best;
  }

  void step() {
    if (++steps > budget) throw Error(ErrorCode::Budget, "edit-distance search budget exceeded");
  }

  // For REGULAR: prune on symmetry with already-assigned neighbors and on
  // mismatched degrees.
  bool regular_ok(NodeId v, const AdjListLabel& l, std::optional<std::size_t>& deg) {
    if (deg && l.ids.size() != *deg) return false;
    for (NodeId w : instance.graph.neighbors(v)) {
      auto it = current.find(w);
      if (it == current.end()) continue;
      bool vw = l.contains(w);
      bool wv = std::get<AdjListLabel>(it->second).contains(v);
      if (vw != wv) return false;
    }
    if (!deg) deg = l.ids.size();
    return true;
  }

  void rec(std::size_t i, std::uint64_t cost) {
    if (cost >= best) return;
    const auto& nodes = instance.graph.nodes();
    if (i == nodes.size()) {
      LabeledGraph cand{instance.graph, current};
      if (decide_membership(lang, cand)) best = cost;
      return;
    }
    NodeId v = nodes[i];
    std::vector<Label> domain = lang == LanguageId::Acyclic
                                    ? pointer_domain(instance.graph, v)
                                    : adjlist_domain(instance.graph, v);
    // regular degree propagated through recursion via a copy
    for (const Label& l : domain) {
      step();
      std::uint64_t c = cost + (l == instance.labels.at(v) ? 0 : 1);
      if (c >= best) continue;
      if (lang == LanguageId::Regular) {
        std::optional<std::size_t> deg;
        if (!current.empty())
          deg = std::get<AdjListLabel>(current.begin()->second).ids.size();
        if (!regular_ok(v, std::get<AdjListLabel>(l), deg)) continue;
      }
      current[v] = l;
      rec(i + 1, c);
      current.erase(v);
    }
  }
};

std::uint64_t leader_distance(const LabeledGraph& instance) {
  std::uint64_t ones = 0, ill = 0;
  for (const auto& [id, l] : instance.labels) {
    if (const auto* b = std::get_if<BoolLabel>(&l)) {
      if (b->value) ++ones;
    } else {
      ++ill;  // non-boolean label must be rewritten in any repair
    }
  }
  if (ones == 0) return ill > 0 ? ill : 1;  // promote one ill-formed node, or flip one
  return ill + ones - 1;
}

std::uint64_t tree_enum_distance(LanguageId lang, const LabeledGraph& instance,
                                 std::uint64_t budget) {
  const Graph& g = instance.graph;
  std::uint64_t best = g.node_count() + 1;
  std::uint64_t steps = 0;
  bool ok = enumerate_spanning_trees(g, [&](const std::vector<Edge>& tree) {
    if (++steps > budget) return false;
    if (lang == LanguageId::StP) {
      for (NodeId root : g.nodes()) {
        auto labels = pointer_labeling_toward(g, tree, root);
        std::uint64_t d = 0;
        for (NodeId v : g.nodes())
          if (!(labels.at(v) == instance.labels.at(v))) ++d;
        best = std::min(best, d);
      }
    } else {
      auto labels = adjlist_labeling(g, tree);
      std::uint64_t d = 0;
      for (NodeId v : g.nodes())
        if (!(labels.at(v) == instance.labels.at(v))) ++d;
      best = std::min(best, d);
    }
    return true;
  });
  if (!ok) throw Error(ErrorCode::Budget, "spanning-tree enumeration budget exceeded");
  return best;
}

}  // namespace

std::uint64_t edit_distance_to_language(LanguageId lang, const LabeledGraph& instance,
                                        std::uint64_t budget) {
  require_kind(lang, instance);
  switch (lang) {
    case LanguageId::Leader: return leader_distance(instance);
    case LanguageId::StL:
    case LanguageId::StP: return tree_enum_distance(lang, instance, budget);
    case LanguageId::MstL: {
      if (!instance.graph.weighted() && instance.graph.edge_count() > 0)
        throw Error(ErrorCode::Precondition, "mst-l needs a weighted graph");
      auto labels = adjlist_labeling(instance.graph, kruskal_mst(instance.graph));
      std::uint64_t d = 0;
      for (NodeId v : instance.graph.nodes())
        if (!(labels.at(v) == instance.labels.at(v))) ++d;
      return d;
    }
    case LanguageId::Acyclic:
    case LanguageId::Regular: {
      DomainSearch s{instance, lang, budget, 0, 0, {}};
      return s.run();
    }
  }
  throw Error(ErrorCode::Precondition, "bad language id");
}

void enumerate_member_labelings(LanguageId lang, const Graph& g,
                                const std::function<bool(const std::map<NodeId, Label>&)>& cb,
                                std::uint64_t budget) {
  std::uint64_t steps = 0;
  auto step = [&]() {
    if (++steps > budget) throw Error(ErrorCode::Budget, "member enumeration budget exceeded");
  };
  switch (lang) {
    case LanguageId::Leader: {
      for (NodeId leader : g.nodes()) {
        step();
        std::map<NodeId, Label> labels;
        for (NodeId v : g.nodes()) labels[v] = BoolLabel{v == leader};
        if (!cb(labels)) return;
      }
      return;
    }
    case LanguageId::StL: {
      enumerate_spanning_trees(g, [&](const std::vector<Edge>& tree) {
        step();
        return cb(adjlist_labeling(g, tree));
      });
      return;
    }
    case LanguageId::StP: {
      enumerate_spanning_trees(g, [&](const std::vector<Edge>& tree) {
        for (NodeId root : g.nodes()) {
          step();
          if (!cb(pointer_labeling_toward(g, tree, root))) return false;
        }
        return true;
      });
      return;
    }
    case LanguageId::MstL: {
      cb(adjlist_labeling(g, kruskal_mst(g)));
      return;
    }
    case LanguageId::Acyclic: {
      std::vector<std::vector<Label>> domains;
      for (NodeId v : g.nodes()) domains.push_back(pointer_domain(g, v));
      enumerate_labelings(g, domains, [&](const std::map<NodeId, Label>& labels) {
        step();
        LabeledGraph cand{g, labels};
        if (decide_membership(LanguageId::Acyclic, cand)) return cb(labels);
        return true;
      });
      return;
    }
    case LanguageId::Regular: {
      // symmetric edge subsets with equal degrees
      std::size_t m = g.edge_count();
      if (m > 62) throw Error(ErrorCode::Budget, "regular member enumeration too large");
      for (std::uint64_t mask = 0; mask < (1ULL << m); ++mask) {
        step();
        std::vector<Edge> sub;
        for (std::size_t i = 0; i < m; ++i)
          if (mask & (1ULL << i)) sub.push_back(g.edges()[i]);
        auto labels = adjlist_labeling(g, sub);
        LabeledGraph cand{g, labels};
        if (decide_membership(LanguageId::Regular, cand))
          if (!cb(labels)) return;
      }
      return;
    }
  }
}

}  // namespace pls
