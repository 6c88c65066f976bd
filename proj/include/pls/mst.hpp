#pragma once

#include "pls/schemes.hpp"

namespace pls {

// node -> fragment name (minimum id in the fragment)
using FragmentRound = std::map<NodeId, NodeId>;

// Parallel Borůvka over the labeled tree of an MST_L member. Element 0 is the
// singleton assignment; each later element is the state after one merge round.
std::vector<FragmentRound> boruvka_rounds(const LabeledGraph& instance);

struct TreePos {
  NodeId parent = 0;  // self at the root
  std::uint64_t dist = 0;
  bool operator==(const TreePos&) const = default;
};

struct RoundRecord {
  NodeId frag = 0;  // fragment name = root id of tree1
  TreePos t1;       // spans the fragment, rooted at the name node
  TreePos t2;       // spans the fragment, rooted at the outgoing edge's endpoint
  NodeId moe_endpoint = 0;       // other endpoint of the lightest outgoing edge; 0 = none
  std::uint64_t moe_rank = 0;    // rank of its weight among all edge weights
  bool sentinel() const { return moe_endpoint == 0; }
  bool operator==(const RoundRecord&) const = default;
};

struct MstCertData {
  std::vector<RoundRecord> rounds;
  StCert final_tree;
  bool operator==(const MstCertData&) const = default;
};

constexpr std::uint64_t kMoeSentinelRank = 0xFFFF;
constexpr unsigned kRankWidth = 16;

Certificate encode_mst_cert(const MstCertData& data, unsigned id_width);
std::optional<MstCertData> decode_mst_cert(const Certificate& cert, unsigned id_width);

// rounds needed in every certificate: ceil(log2 n)
unsigned mst_round_count(std::size_t n);

class MstScheme : public Scheme {
 public:
  explicit MstScheme(SchemeContext ctx) : ctx_(ctx) {}
  std::string name() const override { return "mst"; }
  std::optional<CertificateMap> prove(const LabeledGraph& instance) const override;
  bool verify_local(const LocalView& view) const override;
  std::size_t certificate_size_bound(std::size_t n, NodeId max_id) const override;
  bool rejects_partial(const PartialLocalView& view) const override;

 private:
  SchemeContext ctx_;
};

}  // namespace pls
