#include <string>

#include "doctest.h"
#include "pls/enumerate.hpp"
#include "pls/graph.hpp"

using namespace pls;

namespace {

LabeledGraph tri(const char* extra = "") {
  std::string text = R"({"label_kind":"bool",
    "nodes":[{"id":1,"label":1},{"id":2,"label":0},{"id":3,"label":0}],
    "edges":[{"u":1,"v":2},{"u":2,"v":3},{"u":1,"v":3}]})";
  (void)extra;
  return parse_instance(text);
}

bool fails_with(const std::string& text, ErrorCode code) {
  try {
    parse_instance(text);
  } catch (const Error& e) {
    return e.code() == code;
  }
  return false;
}

}  // namespace

TEST_CASE("instance parse basics") {
  LabeledGraph g = tri();
  CHECK(g.graph.node_count() == 3);
  CHECK(g.graph.edge_count() == 3);
  CHECK(g.graph.connected());
  CHECK(g.graph.has_edge(1, 3));
  CHECK(!g.graph.has_edge(1, 1));
  CHECK(std::get<BoolLabel>(g.label(1)).value);
  CHECK(!std::get<BoolLabel>(g.label(2)).value);
}

TEST_CASE("parse rejects malformed input") {
  CHECK(fails_with("not json", ErrorCode::Parse));
  CHECK(fails_with(R"({"nodes":[],"edges":[]})", ErrorCode::Parse));  // missing label_kind
  // duplicate node id
  CHECK(fails_with(R"({"label_kind":"bool","nodes":[{"id":1,"label":0},{"id":1,"label":1}],
      "edges":[]})",
                   ErrorCode::Parse));
  // self-loop
  CHECK(fails_with(R"({"label_kind":"bool","nodes":[{"id":1,"label":0}],
      "edges":[{"u":1,"v":1}]})",
                   ErrorCode::Parse));
  // duplicate weight (weighted triangle 1,2,2)
  CHECK(fails_with(R"({"label_kind":"bool",
      "nodes":[{"id":1,"label":0},{"id":2,"label":0},{"id":3,"label":0}],
      "edges":[{"u":1,"v":2,"weight":1},{"u":2,"v":3,"weight":2},{"u":1,"v":3,"weight":2}]})",
                   ErrorCode::Parse));
  // disconnected without the flag
  std::string disc = R"({"label_kind":"bool",
      "nodes":[{"id":1,"label":0},{"id":2,"label":0},{"id":3,"label":0}],
      "edges":[{"u":1,"v":2}]})";
  CHECK(fails_with(disc, ErrorCode::Parse));
  LabeledGraph g = parse_instance(disc, /*allow_disconnected=*/true);
  CHECK(!g.graph.connected());
}

TEST_CASE("canonical serialization is order-independent") {
  std::string a = R"({"label_kind":"pointer",
      "nodes":[{"id":3,"label":null},{"id":1,"label":3},{"id":2,"label":3}],
      "edges":[{"u":3,"v":2},{"u":1,"v":3}]})";
  std::string b = R"({"label_kind":"pointer",
      "nodes":[{"id":1,"label":3},{"id":2,"label":3},{"id":3,"label":null}],
      "edges":[{"u":1,"v":3},{"u":2,"v":3}]})";
  CHECK(serialize_instance(parse_instance(a)) == serialize_instance(parse_instance(b)));
}

TEST_CASE("weights round-trip as exact rationals") {
  Rng rng(7);
  for (int t = 0; t < 20; ++t) {
    Graph g = random_connected_weighted_graph(2 + rng.below(6), rng);
    std::map<NodeId, Label> labels;
    for (NodeId v : g.nodes()) labels[v] = BoolLabel{rng.coin()};
    LabeledGraph inst = make_labeled(g, labels);
    LabeledGraph back = parse_instance(serialize_instance(inst));
    CHECK(back.graph == inst.graph);
    CHECK(back.graph.weights() == inst.graph.weights());
  }
  // fractional weights survive too
  std::string frac = R"({"label_kind":"bool",
      "nodes":[{"id":1,"label":0},{"id":2,"label":0}],
      "edges":[{"u":1,"v":2,"weight":"7/3"}]})";
  LabeledGraph g = parse_instance(frac);
  CHECK(g.graph.weight(1, 2) == Rational(7, 3));
  CHECK(parse_instance(serialize_instance(g)).graph.weight(1, 2) == Rational(7, 3));
}

TEST_CASE("weight ranks follow the ascending weight order") {
  std::string text = R"({"label_kind":"bool",
      "nodes":[{"id":1,"label":0},{"id":2,"label":0},{"id":3,"label":0}],
      "edges":[{"u":1,"v":2,"weight":5},{"u":2,"v":3,"weight":"1/2"},{"u":1,"v":3,"weight":2}]})";
  Graph g = parse_instance(text).graph;
  CHECK(g.weight_rank(2, 3) == 0);
  CHECK(g.weight_rank(1, 3) == 1);
  CHECK(g.weight_rank(1, 2) == 2);
}

TEST_CASE("edit distance between labelings") {
  LabeledGraph a = tri();
  LabeledGraph b = a;
  CHECK(edit_distance_between(a, b) == 0);
  b.labels[1] = BoolLabel{false};
  b.labels[3] = BoolLabel{true};
  CHECK(edit_distance_between(a, b) == 2);

  // different underlying graphs are a precondition error
  LabeledGraph c = parse_instance(R"({"label_kind":"bool",
      "nodes":[{"id":1,"label":1},{"id":2,"label":0},{"id":3,"label":0}],
      "edges":[{"u":1,"v":2},{"u":2,"v":3}]})");
  CHECK_THROWS_AS(static_cast<void>(edit_distance_between(a, c)), Error);
}

TEST_CASE("bfs distances and edge-set predicates") {
  Graph g = Graph::make({1, 2, 3, 4}, {{1, 2}, {2, 3}, {3, 4}, {1, 4}});
  auto d = bfs_distances(g, 1, g.edges());
  CHECK(d.at(1) == 0);
  CHECK(d.at(2) == 1);
  CHECK(d.at(3) == 2);
  CHECK(d.at(4) == 1);

  std::vector<Edge> path = {{1, 2}, {2, 3}, {3, 4}};
  CHECK(edges_connected_spanning(g, path));
  CHECK(edges_acyclic(path));
  CHECK(!edges_acyclic(g.edges()));
  CHECK(!edges_connected_spanning(g, {{1, 2}}));
}

TEST_CASE("make_labeled validates label coverage") {
  Graph g = Graph::make({1, 2}, {{1, 2}});
  CHECK_THROWS_AS(make_labeled(g, {{1, BoolLabel{}}}), Error);
  CHECK_THROWS_AS(make_labeled(g, {{1, PointerLabel{9}}, {2, PointerLabel{}}}), Error);
}
