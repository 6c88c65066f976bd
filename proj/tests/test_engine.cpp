#include <atomic>
#include <vector>

#include "doctest.h"
#include "pls/engine.hpp"
#include "pls/enumerate.hpp"
#include "pls/schemes.hpp"

using namespace pls;

namespace {

LabeledGraph square_tree() {
  Graph g = Graph::make({1, 2, 3, 4}, {{1, 2}, {2, 3}, {3, 4}, {1, 4}});
  return make_labeled(g, {{1, PointerLabel{}},
                          {2, PointerLabel{1}},
                          {3, PointerLabel{2}},
                          {4, PointerLabel{1}}});
}

}  // namespace

TEST_CASE("build_views exposes sorted neighbors and per-node certificates") {
  LabeledGraph inst = square_tree();
  CertificateMap certs;
  for (NodeId v : inst.graph.nodes()) {
    Bits b;
    b.append(v, 8);
    certs[v] = Certificate{b};
  }
  auto views = build_views(inst, certs);
  REQUIRE(views.size() == 4);
  const LocalView& v1 = views.at(1);
  CHECK(v1.id == 1);
  REQUIRE(v1.neighbors.size() == 2);
  CHECK(v1.neighbors[0].id == 2);
  CHECK(v1.neighbors[1].id == 4);
  CHECK(v1.neighbors[0].cert == certs.at(2));
  CHECK(!v1.neighbors[0].weight_rank.has_value());  // unweighted instance

  certs.erase(3);
  CHECK_THROWS_AS(static_cast<void>(build_views(inst, certs)), Error);
}

TEST_CASE("build_views carries weight ranks on weighted instances") {
  Graph g = Graph::make({1, 2, 3}, {{1, 2}, {2, 3}}, {Rational(5), Rational(2)});
  LabeledGraph inst = make_labeled(
      g, {{1, AdjListLabel{{2}}}, {2, AdjListLabel{{1, 3}}}, {3, AdjListLabel{{2}}}});
  CertificateMap certs;
  for (NodeId v : g.nodes()) certs[v] = Certificate{};
  auto views = build_views(inst, certs);
  const LocalView& v2 = views.at(2);
  REQUIRE(v2.neighbors.size() == 2);
  CHECK(v2.neighbors[0].weight_rank == 1);  // edge {1,2}, weight 5, rank 1
  CHECK(v2.neighbors[1].weight_rank == 0);  // edge {2,3}, weight 2, rank 0
}

TEST_CASE("verifier verdicts are local") {
  // Changing node 3's certificate can only change verdicts within distance 1
  // of node 3.
  LabeledGraph inst = square_tree();
  auto scheme = make_scheme("stp", SchemeContext::of(inst.graph));
  auto honest = scheme->prove(inst);
  REQUIRE(honest.has_value());
  Verdict base = run_verifier(*scheme, inst, *honest);
  CHECK(base.rejections == 0);

  CertificateMap tampered = *honest;
  Bits junk;
  junk.append(0x7, 9);
  tampered[3] = Certificate{junk};
  Verdict after = run_verifier(*scheme, inst, tampered);
  for (NodeId v : inst.graph.nodes()) {
    bool near = (v == 3) || inst.graph.has_edge(v, 3);
    if (!near) CHECK(after.accepted.at(v) == base.accepted.at(v));
  }
  CHECK(after.rejections > 0);
  CHECK(after.rejecting_nodes().size() == after.rejections);
}

TEST_CASE("verifier is deterministic across runs") {
  LabeledGraph inst = square_tree();
  auto scheme = make_scheme("stp", SchemeContext::of(inst.graph));
  CertificateMap garbage;
  Rng rng(11);
  for (NodeId v : inst.graph.nodes()) {
    Bits b;
    b.append(rng.next() & 0x1FF, 9);
    garbage[v] = Certificate{b};
  }
  Verdict a = run_verifier(*scheme, inst, garbage);
  Verdict b = run_verifier(*scheme, inst, garbage);
  CHECK(a.accepted == b.accepted);
  CHECK(a.rejections == b.rejections);
}

TEST_CASE("check_completeness reports failing instances") {
  LabeledGraph good = square_tree();
  auto scheme = make_scheme("stp", SchemeContext::of(good.graph));
  CompletenessReport r = check_completeness(*scheme, {good});
  CHECK(r.ok());
  CHECK(r.checked == 1);

  // a nonmember makes the prover refuse, which counts as a failure
  LabeledGraph bad = good;
  bad.labels[1] = PointerLabel{2};
  bad.labels[2] = PointerLabel{1};
  CompletenessReport r2 = check_completeness(*scheme, {good, bad});
  CHECK(!r2.ok());
  CHECK(r2.failures.size() == 1);
}

TEST_CASE("parallel_for covers every index exactly once") {
  constexpr std::size_t kCount = 1000;
  std::vector<std::atomic<int>> hits(kCount);
  parallel_for(kCount, [&](std::size_t i) { hits[i].fetch_add(1); });
  for (std::size_t i = 0; i < kCount; ++i) CHECK(hits[i].load() == 1);
  CHECK(thread_limit() >= 1);
}
