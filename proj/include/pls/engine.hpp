#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pls/bits.hpp"
#include "pls/graph.hpp"

namespace pls {

struct Certificate {
  Bits bits;  // size accounted in bits; adversarial contents are arbitrary
  bool operator==(const Certificate&) const = default;
};

using CertificateMap = std::map<NodeId, Certificate>;

struct NeighborView {
  NodeId id = 0;
  Label label;
  Certificate cert;
  // rank of the connecting edge's weight among all edge weights (0-based),
  // present only on weighted instances
  std::optional<std::size_t> weight_rank;
};

struct LocalView {
  NodeId id = 0;
  Label label;
  Certificate cert;
  std::vector<NeighborView> neighbors;  // one per graph neighbor, sorted by id
};

// A view where some neighbor certificates are still unknown; used by the
// certificate-space search to recognize nodes that reject no matter how the
// missing certificates are filled in.
struct PartialLocalView {
  NodeId id = 0;
  Label label;
  std::optional<Certificate> cert;
  std::vector<NeighborView> neighbors;
  std::vector<bool> neighbor_known;  // parallel to neighbors
};

struct Verdict {
  std::map<NodeId, bool> accepted;
  std::size_t rejections = 0;
  std::vector<NodeId> rejecting_nodes() const;
};

class Scheme {
 public:
  virtual ~Scheme() = default;
  virtual std::string name() const = 0;
  // Defined only on members of the scheme's language; nullopt = refuse.
  virtual std::optional<CertificateMap> prove(const LabeledGraph& instance) const = 0;
  // Total: undecodable certificates reject, never throw.
  virtual bool verify_local(const LocalView& view) const = 0;
  virtual std::size_t certificate_size_bound(std::size_t n, NodeId max_id) const = 0;
  // True only if the node rejects for every completion of the unknown
  // certificates. Conservative default: never certain.
  virtual bool rejects_partial(const PartialLocalView&) const { return false; }
};

std::map<NodeId, LocalView> build_views(const LabeledGraph& instance, const CertificateMap& certs);

Verdict run_verifier(const Scheme& scheme, const LabeledGraph& instance,
                     const CertificateMap& certs);

struct CompletenessReport {
  // serialized instances where prover certificates were refused or rejected
  std::vector<std::string> failures;
  std::size_t checked = 0;
  bool ok() const { return failures.empty(); }
};

CompletenessReport check_completeness(const Scheme& scheme,
                                      const std::vector<LabeledGraph>& instances);

// Runs fn(i) for i in [0, count) across up to PLSLAB_THREADS workers
// (default: hardware concurrency). fn must be safe to call concurrently.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);
std::size_t thread_limit();

}  // namespace pls
