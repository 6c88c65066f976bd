// Acceptance suite: one pass/fail line per criterion. Exit code is the number
// of failing criteria. Tolerances are hard-coded next to each check.

#include <atomic>
#include <cstdio>
#include <functional>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

#include "pls/constructions.hpp"
#include "pls/enumerate.hpp"
#include "pls/oracles.hpp"

using namespace pls;

namespace {

int failures = 0;

void report(int num, const std::string& what, bool ok, const std::string& detail = "") {
  std::printf("%s criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", num, what.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

// every labeling of the given kind over the graph's per-node domains
void for_each_labeling(const Graph& g, LabelKind kind,
                       const std::function<void(const std::map<NodeId, Label>&)>& fn) {
  std::vector<std::vector<Label>> domains;
  for (NodeId v : g.nodes()) {
    switch (kind) {
      case LabelKind::Pointer: domains.push_back(pointer_domain(g, v)); break;
      case LabelKind::AdjList: domains.push_back(adjlist_domain(g, v)); break;
      case LabelKind::Bool: domains.push_back(bool_domain()); break;
      case LabelKind::Raw: return;
    }
  }
  enumerate_labelings(g, domains, [&](const std::map<NodeId, Label>& l) {
    fn(l);
    return true;
  });
}

// small weighted variants of a graph: weights 1..m under seeded permutations
std::vector<Graph> weighted_variants(const Graph& g, int count, std::uint64_t seed) {
  std::vector<Graph> out;
  std::size_t m = g.edge_count();
  Rng rng(seed);
  for (int t = 0; t < count; ++t) {
    std::vector<Rational> w;
    for (std::size_t i = 0; i < m; ++i) w.emplace_back(static_cast<std::int64_t>(i + 1));
    for (std::size_t i = m; i > 1; --i) std::swap(w[i - 1], w[rng.below(i)]);
    out.push_back(Graph::make(g.nodes(), g.edges(), w));
    if (m <= 1) break;  // every permutation is the same weighting
  }
  return out;
}

struct Nonmember {
  LabeledGraph instance;
  LanguageId lang;
  std::string scheme;
};

// exhaustive nonmember pool for the n <= 4 soundness/sensitivity/ordering
// criteria, one entry per (scheme, nonmember labeling)
std::vector<Nonmember> exhaustive_pool(std::size_t max_n) {
  std::vector<Nonmember> pool;
  for (std::size_t n = 1; n <= max_n; ++n) {
    for (const Graph& g : all_connected_graphs(n)) {
      for_each_labeling(g, LabelKind::Pointer, [&](const std::map<NodeId, Label>& l) {
        LabeledGraph inst = make_labeled(g, l);
        if (!decide_membership(LanguageId::Acyclic, inst))
          pool.push_back({inst, LanguageId::Acyclic, "acyclic"});
        if (!decide_membership(LanguageId::StP, inst))
          pool.push_back({inst, LanguageId::StP, "stp"});
      });
      for_each_labeling(g, LabelKind::AdjList, [&](const std::map<NodeId, Label>& l) {
        LabeledGraph inst = make_labeled(g, l);
        if (!decide_membership(LanguageId::StL, inst))
          pool.push_back({inst, LanguageId::StL, "st"});
      });
      for (const Graph& wg : weighted_variants(g, 2, 17 * n + 1)) {
        for_each_labeling(wg, LabelKind::AdjList, [&](const std::map<NodeId, Label>& l) {
          LabeledGraph inst = make_labeled(wg, l);
          if (!decide_membership(LanguageId::MstL, inst))
            pool.push_back({inst, LanguageId::MstL, "mst"});
        });
      }
      for_each_labeling(g, LabelKind::Bool, [&](const std::map<NodeId, Label>& l) {
        LabeledGraph inst = make_labeled(g, l);
        if (!decide_membership(LanguageId::Leader, inst))
          pool.push_back({inst, LanguageId::Leader, "universal-leader"});
      });
    }
  }
  return pool;
}

struct PoolResult {
  std::uint64_t k = 0;
  std::uint64_t distance = 0;
  bool exhaustive = false;
  bool witness_consistent = false;
};

std::vector<PoolResult> search_pool(const std::vector<Nonmember>& pool) {
  std::vector<PoolResult> out(pool.size());
  parallel_for(pool.size(), [&](std::size_t i) {
    const Nonmember& nm = pool[i];
    auto scheme = make_scheme(nm.scheme, SchemeContext::of(nm.instance.graph));
    CertSpace space = cert_space_for(*scheme, nm.instance);
    SearchResult r = min_rejections(*scheme, nm.instance, space, kDefaultBudget);
    out[i].k = r.k;
    out[i].exhaustive = r.exhaustive;
    out[i].distance = edit_distance_to_language(nm.lang, nm.instance);
    out[i].witness_consistent =
        run_verifier(*scheme, nm.instance, r.witness).rejections == r.k;
  });
  return out;
}

// ------------------------------------------------------------- criterion 1

void criterion1() {
  std::atomic<std::uint64_t> checked{0};
  std::atomic<bool> ok{true};
  std::string first_failure;
  std::mutex mu;
  auto fail = [&](const std::string& what) {
    ok = false;
    std::lock_guard<std::mutex> lock(mu);
    if (first_failure.empty()) first_failure = what;
  };
  auto run_one = [&](const std::string& scheme_name, const LabeledGraph& inst) {
    auto scheme = make_scheme(scheme_name, SchemeContext::of(inst.graph));
    auto certs = scheme->prove(inst);
    if (!certs) {
      fail(scheme_name + ": prover refused a member");
      return;
    }
    if (run_verifier(*scheme, inst, *certs).rejections != 0)
      fail(scheme_name + ": honest certificates rejected");
    ++checked;
  };

  // all spanning trees of all connected graphs, n <= 6, under the st scheme
  for (std::size_t n = 2; n <= 6; ++n) {
    auto graphs = all_connected_graphs(n);
    parallel_for(graphs.size(), [&](std::size_t i) {
      enumerate_spanning_trees(graphs[i], [&](const std::vector<Edge>& tree) {
        run_one("st", make_labeled(graphs[i], adjlist_labeling(graphs[i], tree)));
        return ok.load();
      });
    });
  }
  // MST labelings of random distinct-weight graphs, n <= 8, 200 seeds
  parallel_for(200, [&](std::size_t i) {
    Rng rng(1000 + i);
    Graph g = random_connected_weighted_graph(2 + i % 7, rng);
    run_one("mst", make_labeled(g, adjlist_labeling(g, kruskal_mst(g))));
  });
  // every acyclic pointer labeling, n <= 5
  for (std::size_t n = 1; n <= 5; ++n) {
    auto graphs = all_connected_graphs(n);
    parallel_for(graphs.size(), [&](std::size_t i) {
      for_each_labeling(graphs[i], LabelKind::Pointer, [&](const std::map<NodeId, Label>& l) {
        LabeledGraph inst = make_labeled(graphs[i], l);
        if (decide_membership(LanguageId::Acyclic, inst)) run_one("acyclic", inst);
      });
    });
  }
  // every single-leader labeling, n <= 6, under the universal scheme
  for (std::size_t n = 1; n <= 6; ++n) {
    auto graphs = all_connected_graphs(n);
    parallel_for(graphs.size(), [&](std::size_t i) {
      enumerate_member_labelings(LanguageId::Leader, graphs[i],
                                 [&](const std::map<NodeId, Label>& l) {
                                   run_one("universal-leader", make_labeled(graphs[i], l));
                                   return true;
                                 });
    });
  }
  report(1, "completeness over enumerated member corpora", ok.load(),
         ok ? std::to_string(checked.load()) + " members accepted everywhere" : first_failure);
}

// -------------------------------------------------------- criteria 2, 3, 9

void criteria_2_3_9() {
  std::vector<Nonmember> pool = exhaustive_pool(4);
  std::vector<PoolResult> results = search_pool(pool);

  bool sound = true, all_exhaustive = true, witnesses = true;
  std::string detail2;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (!results[i].exhaustive) all_exhaustive = false;
    if (!results[i].witness_consistent) witnesses = false;
    if (results[i].k < 1) {
      sound = false;
      if (detail2.empty())
        detail2 = pool[i].scheme + " accepts a nonmember: " +
                  serialize_instance(pool[i].instance);
    }
  }
  report(2, "soundness, exhaustive certificate search at n <= 4",
         sound && all_exhaustive && witnesses,
         sound ? (all_exhaustive ? std::to_string(pool.size()) + " nonmembers all rejected"
                                 : "search fell back to sampling")
               : detail2);

  bool prop1 = true;
  std::string detail3;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (pool[i].scheme != "acyclic") continue;
    if (!(results[i].distance <= results[i].k)) {
      prop1 = false;
      if (detail3.empty())
        detail3 = "d=" + std::to_string(results[i].distance) + " > k=" +
                  std::to_string(results[i].k) + " on " + serialize_instance(pool[i].instance);
    }
  }
  report(3, "pointer-acyclicity sensitivity: edit distance <= k, exhaustive n <= 4", prop1,
         detail3);

  // ordering: the dedicated schemes never need more rejections than the
  // universal scheme on the same nonmember
  bool ordered = true;
  std::string detail9;
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < pool.size(); ++i)
    if (pool[i].scheme == "acyclic" || pool[i].scheme == "st") idx.push_back(i);
  std::vector<std::uint64_t> uniK(idx.size());
  parallel_for(idx.size(), [&](std::size_t j) {
    const Nonmember& nm = pool[idx[j]];
    std::string uni = "universal-" + language_name(nm.lang);
    auto scheme = make_scheme(uni, SchemeContext::of(nm.instance.graph));
    CertSpace space = cert_space_for(*scheme, nm.instance);
    uniK[j] = min_rejections(*scheme, nm.instance, space, kDefaultBudget).k;
  });
  for (std::size_t j = 0; j < idx.size(); ++j) {
    if (results[idx[j]].k > uniK[j]) {
      ordered = false;
      if (detail9.empty())
        detail9 = pool[idx[j]].scheme + " k=" + std::to_string(results[idx[j]].k) +
                  " > universal k=" + std::to_string(uniK[j]) + " on " +
                  serialize_instance(pool[idx[j]].instance);
    }
  }
  report(9, "dedicated schemes reject no more than the universal scheme, n <= 4", ordered,
         detail9);
}

// ------------------------------------------------------------- criterion 4

void criterion4() {
  auto corpus = corrupted_corpus(LanguageId::StL, 7, 500, 41);
  std::atomic<bool> ok{true};
  std::string detail;
  std::mutex mu;
  parallel_for(corpus.size(), [&](std::size_t i) {
    const LabeledGraph& inst = corpus[i].second;
    auto scheme = make_scheme("st", SchemeContext::of(inst.graph));
    CertSpace space = cert_space_for(*scheme, inst);
    SearchResult r = min_rejections(*scheme, inst, space, kDefaultBudget, {}, 41 + i);
    std::uint64_t d = edit_distance_to_language(LanguageId::StL, inst);
    if (!(d <= 4 * r.k)) {
      ok = false;
      std::lock_guard<std::mutex> lock(mu);
      if (detail.empty())
        detail = "d=" + std::to_string(d) + " > 4k=" + std::to_string(4 * r.k) + " on " +
                 corpus[i].first;
    }
  });
  report(4, "spanning-tree sensitivity: edit distance <= 4k over 500 corruptions, n <= 7",
         ok.load(), ok ? std::to_string(corpus.size()) + " instances" : detail);
}

// ------------------------------------------------------------- criterion 5

void criterion5() {
  auto corpus = corrupted_corpus(LanguageId::MstL, 6, 300, 43);
  std::atomic<bool> ok{true};
  std::string detail;
  std::mutex mu;
  parallel_for(corpus.size(), [&](std::size_t i) {
    const LabeledGraph& inst = corpus[i].second;
    auto scheme = make_scheme("mst", SchemeContext::of(inst.graph));
    CertSpace space = cert_space_for(*scheme, inst);
    // seed the adversary with the honest certificates of the true MST
    std::vector<CertificateMap> seeds;
    LabeledGraph member{inst.graph, adjlist_labeling(inst.graph, kruskal_mst(inst.graph))};
    if (auto honest = scheme->prove(member)) seeds.push_back(*honest);
    SearchResult r = min_rejections(*scheme, inst, space, kDefaultBudget, seeds, 43 + i);
    std::uint64_t d = edit_distance_to_language(LanguageId::MstL, inst);
    if (!(d <= 7 * r.k)) {
      ok = false;
      std::lock_guard<std::mutex> lock(mu);
      if (detail.empty())
        detail = "d=" + std::to_string(d) + " > 7k=" + std::to_string(7 * r.k) + " on " +
                 corpus[i].first;
    }
  });
  report(5, "minimum-spanning-tree sensitivity: edit distance <= 7k over 300 corruptions",
         ok.load(), ok ? std::to_string(corpus.size()) + " instances" : detail);
}

// ------------------------------------------------------------- criterion 6

void criterion6() {
  bool ok = true;
  std::string detail;
  for (std::size_t n = 4; n <= 64 && ok; n += 2) {
    Construction c = build_path_stp(n);
    StpScheme s(SchemeContext::of(c.instance.graph));
    Verdict v = run_verifier(s, c.instance, c.certs);
    if (v.rejections != 2) {
      ok = false;
      detail = "n=" + std::to_string(n) + ": k=" + std::to_string(v.rejections);
      break;
    }
    std::uint64_t d = edit_distance_to_language(LanguageId::StP, c.instance);
    bool exact = n <= 10 ? d == n / 2 : d >= n / 2;
    if (!exact) {
      ok = false;
      detail = "n=" + std::to_string(n) + ": distance " + std::to_string(d);
    }
  }
  report(6, "spliced path: exactly 2 rejections, distance n/2, even n in [4, 64]", ok, detail);
}

// ------------------------------------------------------------- criterion 7

void criterion7() {
  bool ok = true;
  std::string detail;
  {
    Construction c = build_regular_glue(2, 20, 3, 20);
    UniversalScheme s(LanguageId::Regular, SchemeContext::of(c.instance.graph));
    Verdict v = run_verifier(s, c.instance, c.certs);
    if (v.rejections > 14) {
      ok = false;
      detail = "m=20: k=" + std::to_string(v.rejections) + " > 14";
    }
    if (decide_membership(LanguageId::Regular, c.instance)) {
      ok = false;
      detail = "m=20: glue is regular";
    }
  }
  if (ok) {
    Construction c = build_regular_glue(2, 6, 3, 6);
    std::uint64_t d =
        edit_distance_to_language(LanguageId::Regular, c.instance, 4'000'000'000ULL);
    if (d < 6) {
      ok = false;
      detail = "m=6: exact distance " + std::to_string(d) + " < 6";
    }
  }
  report(7, "glued 2-regular/3-regular graphs: k <= 14 at m=20, distance >= m at m=6", ok,
         detail);
}

// ------------------------------------------------------------- criterion 8

void criterion8() {
  bool ok = true;
  std::string detail;
  // fake booleans on directed cycles: exactly one rejection
  for (std::size_t n = 3; n <= 64 && ok; ++n) {
    std::vector<NodeId> nodes;
    std::vector<Edge> edges;
    std::map<NodeId, Label> labels;
    for (NodeId v = 1; v <= n; ++v) {
      nodes.push_back(v);
      edges.push_back(Edge(v, v % n + 1));
      labels[v] = PointerLabel{v % n + 1};
    }
    LabeledGraph inst = make_labeled(Graph::make(nodes, edges), labels);
    SchemeContext ctx = SchemeContext::of(inst.graph);
    WrappedScheme w(make_scheme("acyclic", ctx), ctx);
    Verdict v = run_verifier(w, inst, build_wrapper_fakes(w, inst));
    if (v.rejections != 1) {
      ok = false;
      detail = "cycle n=" + std::to_string(n) + ": k=" + std::to_string(v.rejections);
    }
  }
  // completeness and soundness of the wrapped scheme at n <= 4
  std::atomic<bool> cs_ok{true};
  std::string cs_detail;
  std::mutex mu;
  for (std::size_t n = 1; n <= 4 && ok; ++n) {
    auto graphs = all_connected_graphs(n);
    parallel_for(graphs.size(), [&](std::size_t gi) {
      const Graph& g = graphs[gi];
      SchemeContext ctx = SchemeContext::of(g);
      auto scheme = make_scheme("wrapped-acyclic", ctx);
      for_each_labeling(g, LabelKind::Pointer, [&](const std::map<NodeId, Label>& l) {
        if (!cs_ok.load()) return;
        LabeledGraph inst = make_labeled(g, l);
        if (decide_membership(LanguageId::Acyclic, inst)) {
          auto certs = scheme->prove(inst);
          if (!certs || run_verifier(*scheme, inst, *certs).rejections != 0) {
            cs_ok = false;
            std::lock_guard<std::mutex> lock(mu);
            if (cs_detail.empty()) cs_detail = "incomplete on " + serialize_instance(inst);
          }
        } else {
          CertSpace space = cert_space_for(*scheme, inst);
          SearchResult r = min_rejections(*scheme, inst, space, kDefaultBudget);
          if (!r.exhaustive || r.k < 1) {
            cs_ok = false;
            std::lock_guard<std::mutex> lock(mu);
            if (cs_detail.empty())
              cs_detail = (r.exhaustive ? "unsound" : "not exhaustive") + std::string(" on ") +
                          serialize_instance(inst);
          }
        }
      });
    });
  }
  if (ok && !cs_ok.load()) {
    ok = false;
    detail = cs_detail;
  }
  report(8, "wrapper: one rejection on cycles up to 64; complete and sound at n <= 4", ok,
         detail);
}

// ------------------------------------------------------------ criterion 10

void criterion10() {
  bool ok = true;
  std::string detail;
  Rng rng(77);
  for (int t = 0; t < 50 && ok; ++t) {
    Graph g = random_connected_weighted_graph(2 + rng.below(7), rng);
    std::size_t n = g.node_count();
    unsigned w = id_field_width(g.max_id());
    // spanning-tree certificates: at most 3 id fields
    StScheme st(SchemeContext::of(g));
    LabeledGraph stInst = make_labeled(g, adjlist_labeling(g, kruskal_mst(g)));
    auto stCerts = st.prove(stInst);
    if (!stCerts) {
      ok = false;
      detail = "st prover refused a tree member";
      break;
    }
    for (const auto& [v, c] : *stCerts)
      if (c.bits.nbits > 3u * w || c.bits.nbits > st.certificate_size_bound(n, g.max_id())) {
        ok = false;
        detail = "st certificate exceeds 3 id fields";
      }
    // mst certificates: round count byte + per-round records + final tree
    MstScheme mst(SchemeContext::of(g));
    auto mstCerts = mst.prove(stInst);
    if (!mstCerts) {
      ok = false;
      detail = "mst prover refused a member";
      break;
    }
    std::size_t bound = 8 + mst_round_count(n) * (6u * w + kRankWidth) + 3u * w;
    if (bound != mst.certificate_size_bound(n, g.max_id())) {
      ok = false;
      detail = "mst bound formula drifted";
    }
    for (const auto& [v, c] : *mstCerts)
      if (c.bits.nbits > bound) {
        ok = false;
        detail = "mst certificate exceeds its bound";
      }
  }
  report(10, "certificate sizes match the documented encodings", ok, detail);
}

// ------------------------------------------------------------ criterion 11

void criterion11() {
  bool ok = true;
  std::string detail;
  // equal-degree pastes can strand far from the language
  auto reg = strong_local_stability_probe(LanguageId::Regular, 8, {0.5, 1.0}, kDefaultBudget, 2);
  for (const auto& r : reg)
    if (!r.violation) {
      ok = false;
      detail = "no violation found for the equal-degree language at beta=" +
               std::to_string(r.beta);
    }
  if (ok) {
    auto stl = strong_local_stability_probe(LanguageId::StL, 6, {9.0}, kDefaultBudget, 2);
    if (stl[0].violation) {
      ok = false;
      detail = "spanning-tree paste exceeded 9x boundary: " + stl[0].violation->pasted;
    }
    auto lead = strong_local_stability_probe(LanguageId::Leader, 6, {2.0}, kDefaultBudget, 2);
    if (lead[0].violation) {
      ok = false;
      detail = "leader paste exceeded 2x boundary: " + lead[0].violation->pasted;
    }
  }
  report(11, "stability probes: violation found for equal degrees, none for trees or leaders",
         ok, detail);
}

}  // namespace

int main() {
  criterion1();
  criteria_2_3_9();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion10();
  criterion11();
  if (failures == 0) std::printf("all 11 acceptance criteria passed\n");
  return failures;
}
