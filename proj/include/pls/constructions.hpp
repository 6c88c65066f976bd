#pragma once

#include "pls/schemes.hpp"

namespace pls {

struct Construction {
  LabeledGraph instance;
  CertificateMap certs;
};

// Even path u_1..u_n whose two halves point away from the middle, with the
// two halves carrying certificates copied from the two whole-path members.
// The pointer-tree verifier rejects exactly at u_{n/2} and u_{n/2+1}.
Construction build_path_stp(std::size_t n);

// Two regular graphs of distinct degrees d1, d2 joined by a two-edge swap,
// labeled with their own adjacencies, carrying universal certificates copied
// from the two "graph plus its own copy" members. At most 2*d1 + 2*d2 + 4
// nodes reject while the distance to an all-equal-degree labeling is at
// least min(m1, m2).
Construction build_regular_glue(std::size_t d1, std::size_t m1, std::size_t d2,
                                std::size_t m2);

// d-regular circulant on m nodes (requires m > d and d*m even, d >= 2).
Graph regular_circulant(std::size_t d, std::size_t m, NodeId first_id = 1);

// Bottom-up fake booleans: inner certificates left empty, b(u) = false
// exactly when the inner verifier rejects at u or some tree child already
// carries false. On a nonmember only the tree root rejects; on a member the
// honest prover map is returned instead.
CertificateMap build_wrapper_fakes(const WrappedScheme& scheme, const LabeledGraph& instance);

}  // namespace pls
