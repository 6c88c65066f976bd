#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "pls/graph.hpp"

namespace pls {

enum class LanguageId { Acyclic, Leader, StP, StL, MstL, Regular };

LabelKind expected_label_kind(LanguageId lang);
std::string language_name(LanguageId lang);
LanguageId parse_language(const std::string& name);

constexpr std::uint64_t kDefaultBudget = 50'000'000;

// Centralized membership decider. Throws Precondition on label-kind mismatch
// or a missing/non-distinct weight map for MST_L. Disconnected instances are
// nonmembers of every language.
bool decide_membership(LanguageId lang, const LabeledGraph& instance);

// Exact minimum number of node relabelings to reach a member of lang.
// Strategies: LEADER analytic; ST_L/MST_L/ST_P spanning-tree enumeration;
// ACYCLIC/REGULAR per-node label enumeration with branch-and-bound. Throws
// Budget when the search exceeds `budget` steps.
std::uint64_t edit_distance_to_language(LanguageId lang, const LabeledGraph& instance,
                                        std::uint64_t budget = kDefaultBudget);

// Enumerates member labelings of lang on the given graph; cb returns false to
// abort. Throws Budget if more than `budget` candidates are visited.
void enumerate_member_labelings(LanguageId lang, const Graph& g,
                                const std::function<bool(const std::map<NodeId, Label>&)>& cb,
                                std::uint64_t budget = kDefaultBudget);

// The unique MST of a weighted graph with distinct weights (Kruskal).
std::vector<Edge> kruskal_mst(const Graph& g);

// Pointer labeling of the tree edge set oriented toward root.
std::map<NodeId, Label> pointer_labeling_toward(const Graph& g, const std::vector<Edge>& tree,
                                                NodeId root);

}  // namespace pls
