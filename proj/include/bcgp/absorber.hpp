#pragma once

#include "bcgp/graph.hpp"

#include <vector>

namespace bcgp {

// (j,l,k)-absorber template on local vertex ids. The spine is a path P on
// s = j(2l+4)+l vertices; the augmented path Q spans V(P) plus the
// absorption vertex, with the first k and last k vertices of P and Q
// coinciding in order; the edge set is P^k union Q^k. Swapping P^k for Q^k
// inside any power of a cycle that contains P^k and avoids v absorbs v.
struct Absorber {
    int j = 0;
    int ell = 0;
    int k = 0;
    int s = 0;
    std::vector<int> spine;      // local ids 0..s-1 in path order
    int absorption_vertex = 0;   // local id s
    std::vector<int> augmented;  // length s+1
    Graph edges;                 // on s+1 local vertices

    int order() const { return s + 1; }
    std::vector<int> initial_endsequence() const;
    std::vector<int> final_endsequence() const;
    // local ids that must be adjacent to the absorption vertex
    std::vector<int> absorption_window() const;
};

// The explicit construction: Q inserts v mid-spine, so the union adds
// exactly the 2k edges from v to the surrounding window. Exact maximum
// 1-density is k + (3-k)/4 for k <= 3 and k for k >= 4, within the k + 1/3
// margin the stage parameterization assumes; checked mechanically in
// check_absorber_invariants rather than trusted.
Absorber build_absorber_template(int j, int ell, int k);

// Full invariant battery: the size identity, endsequence agreement, the
// edge-set definition, the mechanical swap test on a synthetic host, and
// the exact rational density bound d*(A) <= k + delta. Throws on violation.
void check_absorber_invariants(const Absorber& a, double delta = 1.0 / 3.0);

// An absorber embedded into host vertices: host[i] carries local id i.
struct EmbeddedAbsorber {
    std::vector<int> host;  // size s+1, indexed by local id
    std::vector<int> spine_hosts(const Absorber& tmpl) const;
    std::vector<int> augmented_hosts(const Absorber& tmpl) const;
    int absorption_host(const Absorber& tmpl) const { return host[tmpl.absorption_vertex]; }
};

// every template edge present in g under the embedding
bool embedded_absorber_ok(const Graph& g, const Absorber& tmpl, const EmbeddedAbsorber& emb);

}  // namespace bcgp
