#include "pls/oracles.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>

#include "json.hpp"
#include "pls/enumerate.hpp"

namespace pls {

namespace {

bool bits_less(const Bits& a, const Bits& b) {
  std::size_t common = std::min(a.nbits, b.nbits);
  for (std::size_t i = 0; i < common; ++i) {
    bool x = a.bit(i), y = b.bit(i);
    if (x != y) return y;
  }
  return a.nbits < b.nbits;
}

bool cert_less(const Certificate& a, const Certificate& b) { return bits_less(a.bits, b.bits); }

Certificate field_cert(std::uint64_t v, unsigned w) {
  Bits b;
  b.append(v, w);
  return Certificate{b};
}

void sort_unique(std::vector<Certificate>& v) {
  std::sort(v.begin(), v.end(), cert_less);
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// honest BFS spanning-tree certificates over the whole graph, rooted at the
// minimum id (matches the wrapped prover's tree)
std::vector<StCert> bfs_tree_certs(const Graph& g) {
  NodeId root = g.min_id();
  auto dist = bfs_distances(g, root, g.edges());
  std::vector<StCert> out;
  for (NodeId v : g.nodes()) {
    StCert c{root, v, dist.at(v)};
    if (v != root)
      for (NodeId w : g.neighbors(v))
        if (dist.at(w) + 1 == dist.at(v)) {
          c.parent = w;
          break;
        }
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::uint64_t CertSpace::total(std::uint64_t cap) const {
  std::uint64_t t = 1;
  for (const auto& d : domains) {
    if (d.empty()) return 0;
    if (t > (cap + 1) / d.size() + 1) return cap + 1;
    t *= d.size();
    if (t > cap) return cap + 1;
  }
  return t;
}

CertSpace cert_space_for(const Scheme& scheme, const LabeledGraph& instance,
                         std::uint64_t budget) {
  const Graph& g = instance.graph;
  const std::string name = scheme.name();
  unsigned w = id_field_width(g.max_id());
  std::size_t n = g.node_count();
  CertSpace space;
  space.nodes = g.nodes();

  if (name == "acyclic") {
    std::vector<Certificate> dom;
    for (std::uint64_t d = 0; d < n; ++d) dom.push_back(field_cert(d, w));
    space.domains.assign(n, dom);
    return space;
  }
  if (name == "st" || name == "stp") {
    std::vector<Certificate> dom;
    for (NodeId i : g.nodes())
      for (NodeId p : g.nodes())
        for (std::uint64_t d = 0; d < n; ++d) {
          Bits b;
          encode_st_cert(StCert{i, p, d}, w, b);
          dom.push_back(Certificate{b});
        }
    sort_unique(dom);
    space.domains.assign(n, dom);
    return space;
  }
  if (name.rfind("universal-", 0) == 0) {
    LanguageId lang = parse_language(name.substr(10));
    std::vector<Certificate> dom;
    enumerate_member_labelings(
        lang, g,
        [&](const std::map<NodeId, Label>& labels) {
          dom.push_back(UniversalScheme::encode_instance(LabeledGraph{g, labels}));
          return true;
        },
        budget);
    if (dom.empty()) dom.push_back(Certificate{});  // no members: only opaque junk to offer
    sort_unique(dom);
    space.domains.assign(n, dom);
    return space;
  }
  if (name == "mst") {
    LabeledGraph member{g, adjlist_labeling(g, kruskal_mst(g))};
    MstScheme honest(SchemeContext::of(g));
    auto certs = honest.prove(member);
    std::vector<Certificate> dom;
    if (certs)
      for (const auto& [v, c] : *certs) dom.push_back(c);
    if (dom.empty()) dom.push_back(Certificate{});
    sort_unique(dom);
    space.domains.assign(n, dom);
    return space;
  }
  if (name.rfind("wrapped-", 0) == 0) {
    SchemeContext ctx = SchemeContext::of(g);
    auto inner = make_scheme(name.substr(8), ctx);
    CertSpace innerSpace = cert_space_for(*inner, instance, budget);
    WrappedScheme wrapper(inner, ctx);
    auto trees = bfs_tree_certs(g);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<Certificate> dom;
      for (const StCert& t : trees)
        for (const Certificate& c : innerSpace.domains[i])
          for (bool b : {false, true})
            dom.push_back(wrapper.join(WrappedScheme::Parts{c, t, b}));
      sort_unique(dom);
      space.domains.push_back(std::move(dom));
    }
    return space;
  }
  throw Error(ErrorCode::Precondition, "no bounded certificate space for scheme " + name);
}

namespace {

struct Searcher {
  const Scheme& scheme;
  const LabeledGraph& instance;
  const CertSpace& space;
  std::size_t n;
  std::map<NodeId, std::size_t> idx;
  std::vector<std::vector<std::size_t>> nbIdx;        // neighbor indices per node
  std::vector<PartialLocalView> partial;              // reusable templates
  std::vector<const Certificate*> assign;
  std::vector<char> certain;
  std::size_t certainCount = 0;
  std::uint64_t best;
  std::vector<std::size_t> bestChoice;
  bool haveChoice = false;

  explicit Searcher(const Scheme& s, const LabeledGraph& inst, const CertSpace& sp)
      : scheme(s), instance(inst), space(sp), n(sp.nodes.size()) {
    for (std::size_t i = 0; i < n; ++i) idx[space.nodes[i]] = i;
    const Graph& g = instance.graph;
    nbIdx.resize(n);
    partial.resize(n);
    assign.assign(n, nullptr);
    certain.assign(n, 0);
    best = n + 1;
    for (std::size_t i = 0; i < n; ++i) {
      NodeId v = space.nodes[i];
      PartialLocalView& pv = partial[i];
      pv.id = v;
      pv.label = instance.labels.at(v);
      for (NodeId u : g.neighbors(v)) {
        NeighborView nb;
        nb.id = u;
        nb.label = instance.labels.at(u);
        if (g.weighted()) nb.weight_rank = g.weight_rank(v, u);
        pv.neighbors.push_back(nb);
        pv.neighbor_known.push_back(false);
        nbIdx[i].push_back(idx.at(u));
      }
    }
  }

  bool partial_rejects(std::size_t i) {
    PartialLocalView& pv = partial[i];
    pv.cert = assign[i] ? std::optional<Certificate>(*assign[i]) : std::nullopt;
    for (std::size_t j = 0; j < pv.neighbors.size(); ++j) {
      std::size_t k = nbIdx[i][j];
      pv.neighbor_known[j] = assign[k] != nullptr;
      if (assign[k]) pv.neighbors[j].cert = *assign[k];
    }
    return scheme.rejects_partial(pv);
  }

  std::uint64_t evaluate_leaf() {
    std::uint64_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
      LocalView view;
      view.id = space.nodes[i];
      view.label = partial[i].label;
      view.cert = *assign[i];
      view.neighbors = partial[i].neighbors;
      for (std::size_t j = 0; j < view.neighbors.size(); ++j)
        view.neighbors[j].cert = *assign[nbIdx[i][j]];
      if (!scheme.verify_local(view)) ++k;
    }
    return k;
  }

  void dfs(std::size_t i, std::vector<std::size_t>& choice) {
    if (best == 0 || certainCount >= best) return;
    if (i == n) {
      std::uint64_t k = evaluate_leaf();
      if (k < best) {
        best = k;
        bestChoice = choice;
        haveChoice = true;
      }
      return;
    }
    const auto& dom = space.domains[i];
    for (std::size_t c = 0; c < dom.size(); ++c) {
      assign[i] = &dom[c];
      choice.push_back(c);
      // partial verdicts are monotone in the known set: recheck only the
      // nodes whose views gained information
      std::vector<std::size_t> flipped;
      auto touch = [&](std::size_t j) {
        if (!certain[j] && partial_rejects(j)) {
          certain[j] = 1;
          ++certainCount;
          flipped.push_back(j);
        }
      };
      touch(i);
      for (std::size_t j : nbIdx[i]) touch(j);
      dfs(i + 1, choice);
      for (std::size_t j : flipped) {
        certain[j] = 0;
        --certainCount;
      }
      choice.pop_back();
      assign[i] = nullptr;
      if (best == 0) return;
    }
  }
};

CertificateMap map_from_choice(const CertSpace& space, const std::vector<std::size_t>& choice) {
  CertificateMap m;
  for (std::size_t i = 0; i < space.nodes.size(); ++i)
    m[space.nodes[i]] = space.domains[i][choice[i]];
  return m;
}

}  // namespace

SearchResult min_rejections(const Scheme& scheme, const LabeledGraph& instance,
                            const CertSpace& space, std::uint64_t budget,
                            const std::vector<CertificateMap>& seeds, std::uint64_t rng_seed) {
  if (auto honest = scheme.prove(instance))
    return SearchResult{0, std::move(*honest), true};

  std::size_t n = space.nodes.size();
  SearchResult result;
  result.k = n + 1;
  auto consider = [&](const CertificateMap& certs) {
    for (NodeId v : space.nodes)
      if (!certs.count(v)) return;
    Verdict vd = run_verifier(scheme, instance, certs);
    if (vd.rejections < result.k) {
      result.k = vd.rejections;
      result.witness = certs;
    }
  };
  for (const auto& s : seeds) consider(s);

  std::uint64_t total = space.total(budget);
  if (total > 0 && total <= budget) {
    Searcher s(scheme, instance, space);
    // label-only verdicts known before any certificate is placed
    for (std::size_t i = 0; i < n; ++i)
      if (s.partial_rejects(i)) {
        s.certain[i] = 1;
        ++s.certainCount;
      }
    s.best = result.k;
    std::vector<std::size_t> choice;
    s.dfs(0, choice);
    if (s.haveChoice && s.best < result.k) {
      result.k = s.best;
      result.witness = map_from_choice(space, s.bestChoice);
    }
    result.exhaustive = true;
    return result;
  }

  // budgeted search: random samples, then a greedy single-node descent
  Rng rng(rng_seed);
  if (result.witness.empty()) {
    CertificateMap empties;
    for (NodeId v : space.nodes) empties[v] = Certificate{};
    consider(empties);
  }
  std::uint64_t evals = 0;
  std::uint64_t sampleCap = std::min<std::uint64_t>(budget / (n + 1), 4000);
  for (std::uint64_t t = 0; t < sampleCap; ++t) {
    CertificateMap certs;
    for (std::size_t i = 0; i < n; ++i)
      certs[space.nodes[i]] = space.domains[i][rng.below(space.domains[i].size())];
    consider(certs);
    ++evals;
  }
  bool improved = true;
  while (improved && evals < budget && result.k > 0) {
    improved = false;
    for (std::size_t i = 0; i < n && evals < budget; ++i) {
      CertificateMap certs = result.witness;
      for (const Certificate& cand : space.domains[i]) {
        certs[space.nodes[i]] = cand;
        std::uint64_t before = result.k;
        consider(certs);
        ++evals;
        if (result.k < before) improved = true;
      }
    }
  }
  result.exhaustive = false;
  return result;
}

SensitivityReport sensitivity_sweep(
    const Scheme& scheme, LanguageId lang,
    const std::vector<std::pair<std::string, LabeledGraph>>& corpus, std::uint64_t budget,
    std::uint64_t rng_seed) {
  SensitivityReport report;
  report.note =
      "alpha bounds are relative to this corpus and the bounded certificate space; "
      "rows with exhaustive=false report an upper bound on min k";
  std::vector<std::optional<SweepRow>> rows(corpus.size());
  parallel_for(corpus.size(), [&](std::size_t i) {
    const auto& [id, inst] = corpus[i];
    std::uint64_t d = edit_distance_to_language(lang, inst, budget);
    if (d == 0) return;  // member: nothing to measure
    CertSpace space = cert_space_for(scheme, inst, budget);
    SearchResult res = min_rejections(scheme, inst, space, budget, {}, rng_seed + i);
    SweepRow row;
    row.instance_id = id;
    row.n = inst.graph.node_count();
    row.distance = d;
    row.k = res.k;
    row.ratio = static_cast<double>(res.k) / static_cast<double>(d);
    row.exhaustive = res.exhaustive;
    row.witness_file = id + ".witness.json";
    row.witness = std::move(res.witness);
    rows[i] = std::move(row);
  });
  bool any = false;
  double minRatio = 0.0;
  for (auto& r : rows) {
    if (!r) continue;
    if (!any || r->ratio < minRatio) minRatio = r->ratio;
    any = true;
    report.rows.push_back(std::move(*r));
  }
  report.min_ratio = any ? minRatio : 0.0;
  return report;
}

namespace {

std::string format_ratio(double r) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", r);
  return buf;
}

}  // namespace

std::string report_csv(const SensitivityReport& report) {
  std::ostringstream out;
  out << "# " << report.note << "\n";
  out << "instance-id,n,edit-distance,k-min,ratio,exhaustive,witness-file\n";
  for (const auto& row : report.rows)
    out << row.instance_id << ',' << row.n << ',' << row.distance << ',' << row.k << ','
        << format_ratio(row.ratio) << ',' << (row.exhaustive ? "true" : "false") << ','
        << row.witness_file << "\n";
  return out.str();
}

std::string report_json(const SensitivityReport& report) {
  nlohmann::ordered_json j;
  j["note"] = report.note;
  j["min_ratio"] = report.min_ratio;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    nlohmann::ordered_json r;
    r["instance_id"] = row.instance_id;
    r["n"] = row.n;
    r["edit_distance"] = row.distance;
    r["k_min"] = row.k;
    r["ratio"] = row.ratio;
    r["exhaustive"] = row.exhaustive;
    r["witness_file"] = row.witness_file;
    j["rows"].push_back(r);
  }
  return j.dump(2) + "\n";
}

std::string serialize_certs(const CertificateMap& certs) {
  nlohmann::ordered_json j;
  j["certificates"] = nlohmann::ordered_json::object();
  for (const auto& [v, c] : certs) {
    nlohmann::ordered_json e;
    e["hex"] = c.bits.hex();
    e["bits"] = c.bits.nbits;
    j["certificates"][std::to_string(v)] = e;
  }
  return j.dump(2) + "\n";
}

CertificateMap parse_certs(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("certificate file: ") + e.what());
  }
  if (!j.is_object() || !j.contains("certificates") || !j["certificates"].is_object())
    throw Error(ErrorCode::Parse, "certificate file: missing certificates object");
  CertificateMap out;
  for (const auto& [key, val] : j["certificates"].items()) {
    NodeId v;
    try {
      v = std::stoull(key);
    } catch (...) {
      throw Error(ErrorCode::Parse, "certificate file: bad node id " + key);
    }
    if (!val.is_object() || !val.contains("hex") || !val.contains("bits"))
      throw Error(ErrorCode::Parse, "certificate file: bad entry for node " + key);
    auto bits = Bits::from_hex(val["hex"].get<std::string>(), val["bits"].get<std::size_t>());
    if (!bits) throw Error(ErrorCode::Parse, "certificate file: bad hex for node " + key);
    out[v] = Certificate{*bits};
  }
  return out;
}

// ---------------------------------------------------------------- probe

namespace {

struct ProbeState {
  LanguageId lang;
  std::uint64_t budget;
  std::vector<ProbeResult>* results;

  // Checks one paste: members (g, la) and (gp, lb) cut along the node set S
  // with the maximal common edge set. Smaller common edge sets only enlarge
  // the boundary while the pasted labeling stays the same, so the maximal one
  // dominates both directions of the bound.
  void process(const LabeledGraph& a, const LabeledGraph& b, const std::vector<NodeId>& subset) {
    const Graph& g = a.graph;
    const Graph& gp = b.graph;
    std::set<NodeId> s(subset.begin(), subset.end());
    std::set<Edge> common;
    for (NodeId u : subset)
      for (NodeId v : subset)
        if (u < v && g.has_edge(u, v) && gp.has_edge(u, v)) common.insert(Edge(u, v));
    std::set<NodeId> boundary;
    for (NodeId u : subset) {
      for (NodeId v : g.neighbors(u))
        if (!common.count(Edge(u, v))) {
          boundary.insert(u);
          break;
        }
      for (NodeId v : gp.neighbors(u))
        if (!common.count(Edge(u, v))) {
          boundary.insert(u);
          break;
        }
    }
    std::map<NodeId, Label> pasted = a.labels;
    for (NodeId u : subset) pasted[u] = b.labels.at(u);
    LabeledGraph candidate{g, pasted};
    std::uint64_t dist;
    try {
      dist = edit_distance_to_language(lang, candidate, budget);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Budget) return;  // skip pastes too large to measure
      throw;
    }
    for (ProbeResult& r : *results) {
      ++r.checked;
      if (!r.violation &&
          static_cast<double>(dist) > r.beta * static_cast<double>(boundary.size())) {
        ProbeViolation v;
        v.instance_a = serialize_instance(a);
        v.instance_b = serialize_instance(b);
        v.subset = subset;
        v.pasted = serialize_instance(candidate);
        v.boundary = boundary.size();
        v.distance = dist;
        r.violation = v;
      }
    }
  }

  bool all_violated() const {
    for (const ProbeResult& r : *results)
      if (!r.violation) return false;
    return true;
  }
};

std::optional<std::map<NodeId, Label>> sample_member(LanguageId lang, const Graph& g, Rng& rng) {
  switch (lang) {
    case LanguageId::Leader: {
      NodeId leader = g.nodes()[rng.below(g.node_count())];
      std::map<NodeId, Label> labels;
      for (NodeId v : g.nodes()) labels[v] = BoolLabel{v == leader};
      return labels;
    }
    case LanguageId::StL:
    case LanguageId::StP:
    case LanguageId::Acyclic: {
      // random spanning tree: Kruskal over a shuffled edge order
      std::vector<Edge> order = g.edges();
      for (std::size_t i = order.size(); i > 1; --i)
        std::swap(order[i - 1], order[rng.below(i)]);
      std::map<NodeId, NodeId> uf;
      for (NodeId v : g.nodes()) uf[v] = v;
      auto root = [&](NodeId x) {
        while (uf[x] != x) {
          uf[x] = uf[uf[x]];
          x = uf[x];
        }
        return x;
      };
      std::vector<Edge> tree;
      for (const Edge& e : order) {
        NodeId x = root(e.u), y = root(e.v);
        if (x != y) {
          uf[x] = y;
          tree.push_back(e);
        }
      }
      if (lang == LanguageId::StL) return adjlist_labeling(g, tree);
      NodeId r = g.nodes()[rng.below(g.node_count())];
      return pointer_labeling_toward(g, tree, r);
    }
    case LanguageId::Regular: {
      if (rng.coin()) return adjlist_labeling(g, {});
      std::size_t deg = g.neighbors(g.nodes().front()).size();
      for (NodeId v : g.nodes())
        if (g.neighbors(v).size() != deg) return adjlist_labeling(g, {});
      return adjlist_labeling(g, g.edges());
    }
    case LanguageId::MstL: {
      if (!g.weighted()) return std::nullopt;
      return adjlist_labeling(g, kruskal_mst(g));
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<std::pair<std::string, LabeledGraph>> corrupted_corpus(LanguageId lang,
                                                                   std::size_t max_n,
                                                                   std::size_t count,
                                                                   std::uint64_t seed) {
  if (max_n < 2) throw Error(ErrorCode::Precondition, "corpus needs max_n >= 2");
  Rng rng(seed);
  std::vector<std::pair<std::string, LabeledGraph>> corpus;
  std::size_t attempts = 0;
  while (corpus.size() < count && attempts < count * 50) {
    ++attempts;
    std::size_t n = 2 + rng.below(max_n - 1);
    Graph g = lang == LanguageId::MstL ? random_connected_weighted_graph(n, rng)
                                       : random_connected_graph(n, rng);
    auto member = sample_member(lang, g, rng);
    if (!member) continue;
    std::map<NodeId, Label> labels = *member;
    std::size_t corruptions = 1 + rng.below(n);
    for (std::size_t c = 0; c < corruptions; ++c) {
      NodeId v = g.nodes()[rng.below(n)];
      switch (expected_label_kind(lang)) {
        case LabelKind::Pointer: {
          auto dom = pointer_domain(g, v);
          labels[v] = dom[rng.below(dom.size())];
          break;
        }
        case LabelKind::AdjList: {
          auto dom = adjlist_domain(g, v);
          labels[v] = dom[rng.below(dom.size())];
          break;
        }
        default:
          labels[v] = BoolLabel{rng.coin()};
      }
    }
    LabeledGraph inst{std::move(g), std::move(labels)};
    if (decide_membership(lang, inst)) continue;  // corruption happened to stay legal
    corpus.emplace_back(language_name(lang) + "-" + std::to_string(corpus.size()),
                        std::move(inst));
  }
  return corpus;
}

std::vector<ProbeResult> strong_local_stability_probe(LanguageId lang, std::size_t max_n,
                                                      const std::vector<double>& betas,
                                                      std::uint64_t budget,
                                                      std::uint64_t rng_seed) {
  std::vector<ProbeResult> results;
  for (double b : betas) results.push_back(ProbeResult{b, std::nullopt, 0});
  ProbeState state{lang, budget, &results};

  // exhaustive part: all pairs of connected graphs on {1..n}, all member
  // labelings, all node subsets
  for (std::size_t n = 1; n <= std::min<std::size_t>(max_n, 4); ++n) {
    auto graphs = all_connected_graphs(n);
    std::vector<std::vector<std::map<NodeId, Label>>> members(graphs.size());
    for (std::size_t i = 0; i < graphs.size(); ++i)
      enumerate_member_labelings(
          lang, graphs[i],
          [&](const std::map<NodeId, Label>& l) {
            members[i].push_back(l);
            return true;
          },
          budget);
    for (std::size_t i = 0; i < graphs.size(); ++i)
      for (std::size_t j = 0; j < graphs.size(); ++j)
        for (const auto& la : members[i])
          for (const auto& lb : members[j])
            for (std::uint64_t mask = 1; mask < (1ULL << n); ++mask) {
              std::vector<NodeId> subset;
              for (std::size_t p = 0; p < n; ++p)
                if (mask & (1ULL << p)) subset.push_back(graphs[i].nodes()[p]);
              state.process(LabeledGraph{graphs[i], la}, LabeledGraph{graphs[j], lb}, subset);
              if (state.all_violated()) return results;
            }
  }

  // seeded part for larger n
  Rng rng(rng_seed);
  for (std::size_t n = 5; n <= max_n; ++n) {
    if (lang == LanguageId::Regular && n >= 4) {
      // half of a cycle relabeled from the empty member: boundary 2, far paste
      Graph cyc = circulant_graph(n, {1});
      LabeledGraph full{cyc, adjlist_labeling(cyc, cyc.edges())};
      LabeledGraph empty{cyc, adjlist_labeling(cyc, {})};
      std::vector<NodeId> arc;
      for (NodeId v = 1; v <= n / 2; ++v) arc.push_back(v);
      state.process(full, empty, arc);
      state.process(empty, full, arc);
    }
    for (int trial = 0; trial < 100; ++trial) {
      Graph g = lang == LanguageId::MstL ? random_connected_weighted_graph(n, rng)
                                         : random_connected_graph(n, rng);
      Graph gp = lang == LanguageId::MstL ? random_connected_weighted_graph(n, rng)
                                          : random_connected_graph(n, rng);
      auto la = sample_member(lang, g, rng);
      auto lb = sample_member(lang, gp, rng);
      if (!la || !lb) continue;
      std::vector<NodeId> subset;
      for (NodeId v : g.nodes())
        if (rng.coin()) subset.push_back(v);
      if (subset.empty()) subset.push_back(g.nodes()[rng.below(n)]);
      state.process(LabeledGraph{g, *la}, LabeledGraph{gp, *lb}, subset);
      if (state.all_violated()) return results;
    }
  }
  return results;
}

}  // namespace pls
