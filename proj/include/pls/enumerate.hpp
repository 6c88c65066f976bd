#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "pls/graph.hpp"

namespace pls {

// Deterministic RNG (splitmix64). std::uniform_int_distribution is
// implementation-defined, and reports must be byte-identical under a seed.
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // uniform in [0, n), n > 0
  std::uint64_t below(std::uint64_t n) { return next() % n; }
  bool coin() { return next() & 1; }
};

// All connected simple graphs on the labeled node set {1, ..., n}.
std::vector<Graph> all_connected_graphs(std::size_t n);

// Enumerates all spanning trees of g as edge lists. Returns false if the
// callback aborts the enumeration.
bool enumerate_spanning_trees(const Graph& g,
                              const std::function<bool(const std::vector<Edge>&)>& cb);

std::uint64_t count_spanning_trees(const Graph& g);

// Per-node label domains enumerated as a cross product; cb gets a full
// labeling and returns false to abort.
bool enumerate_labelings(const Graph& g, const std::vector<std::vector<Label>>& domains,
                         const std::function<bool(const std::map<NodeId, Label>&)>& cb);

std::vector<Label> pointer_domain(const Graph& g, NodeId v);  // N(v) plus bottom
std::vector<Label> adjlist_domain(const Graph& g, NodeId v);  // all subsets of N(v)
std::vector<Label> bool_domain();

// Random connected graph on nodes {1..n} with distinct positive integer
// weights (a seeded permutation of 1..m).
Graph random_connected_weighted_graph(std::size_t n, Rng& rng);
Graph random_connected_graph(std::size_t n, Rng& rng);

// Adjacency-list labeling of the given tree edge set.
std::map<NodeId, Label> adjlist_labeling(const Graph& g, const std::vector<Edge>& edges);

// Circulant graph on m nodes (ids first_id..first_id+m-1) with the given
// offsets; offset m/2 contributes one edge per node pair.
Graph circulant_graph(std::size_t m, const std::vector<std::size_t>& offsets,
                      NodeId first_id = 1);

}  // namespace pls
