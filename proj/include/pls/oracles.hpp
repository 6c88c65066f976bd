#pragma once

#include "pls/mst.hpp"
#include "pls/schemes.hpp"

namespace pls {

// Finite per-node certificate domains standing in for the "every certificate
// function" quantifier. Domains are listed in the search's tie-breaking
// (lexicographic) order.
struct CertSpace {
  std::vector<NodeId> nodes;
  std::vector<std::vector<Certificate>> domains;  // parallel to nodes
  // number of maps, saturated at cap + 1
  std::uint64_t total(std::uint64_t cap) const;
};

// Bounded space per scheme: distances over [0, n), ids over ids present in
// the instance, universal certificates over member labelings of the same
// graph, mst and wrapped-tree certificates over honest prover output
// cross-assigned between nodes.
CertSpace cert_space_for(const Scheme& scheme, const LabeledGraph& instance,
                         std::uint64_t budget = kDefaultBudget);

struct SearchResult {
  std::uint64_t k = 0;
  CertificateMap witness;
  bool exhaustive = false;
};

// Minimum rejection count over the space. Exhaustive (exact) when the space
// fits the budget; otherwise the best of the seeds, random samples, and a
// greedy descent, reported with exhaustive = false (an upper bound on min k).
SearchResult min_rejections(const Scheme& scheme, const LabeledGraph& instance,
                            const CertSpace& space, std::uint64_t budget,
                            const std::vector<CertificateMap>& seeds = {},
                            std::uint64_t rng_seed = 1);

struct SweepRow {
  std::string instance_id;
  std::size_t n = 0;
  std::uint64_t distance = 0;
  std::uint64_t k = 0;
  double ratio = 0.0;
  bool exhaustive = false;
  std::string witness_file;
  CertificateMap witness;
};

struct SensitivityReport {
  std::vector<SweepRow> rows;
  double min_ratio = 0.0;  // min over rows of k / distance
  std::string note;        // quantifier caveat, emitted in file headers
};

SensitivityReport sensitivity_sweep(
    const Scheme& scheme, LanguageId lang,
    const std::vector<std::pair<std::string, LabeledGraph>>& corpus, std::uint64_t budget,
    std::uint64_t rng_seed = 1);

// Seeded corpus of nonmembers: random connected graphs whose member labelings
// are corrupted at 1..n random nodes; only corruptions that leave the
// language are kept.
std::vector<std::pair<std::string, LabeledGraph>> corrupted_corpus(LanguageId lang,
                                                                   std::size_t max_n,
                                                                   std::size_t count,
                                                                   std::uint64_t seed);

// CSV columns: instance-id, n, edit-distance, k-min, ratio, exhaustive, witness-file
std::string report_csv(const SensitivityReport& report);
std::string report_json(const SensitivityReport& report);

std::string serialize_certs(const CertificateMap& certs);
CertificateMap parse_certs(const std::string& text);

struct ProbeViolation {
  std::string instance_a;  // serialized member (G, l)
  std::string instance_b;  // serialized member (G', l')
  std::vector<NodeId> subset;
  std::string pasted;  // serialized (G, l - l_H + l'_H)
  std::uint64_t boundary = 0;
  std::uint64_t distance = 0;
};

struct ProbeResult {
  double beta = 0.0;
  std::optional<ProbeViolation> violation;
  std::uint64_t checked = 0;
};

// Searches for pairs of member labelings whose paste along a common subgraph
// lands further from the language than beta times the paste boundary.
// Exhaustive for n <= 4; seeded samples for larger n up to max_n.
std::vector<ProbeResult> strong_local_stability_probe(LanguageId lang, std::size_t max_n,
                                                      const std::vector<double>& betas,
                                                      std::uint64_t budget = kDefaultBudget,
                                                      std::uint64_t rng_seed = 1);

}  // namespace pls
