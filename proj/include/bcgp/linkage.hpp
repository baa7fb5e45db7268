#pragma once

#include "bcgp/graph.hpp"

#include <optional>
#include <vector>

namespace bcgp {

// ordered k-tuples (A,B); all 2k vertices distinct
struct EndsequencePair {
    std::vector<int> A;
    std::vector<int> B;
};

struct LinkageFamily {
    std::vector<EndsequencePair> pairs;
};

// An (A,B)-linkage of length r: the k-th power of the path A-internal-B
// minus the edges inside A and inside B.
struct Linkage {
    EndsequencePair pair;
    std::vector<int> internal;  // r vertices in path order
    std::vector<Edge> edges;
};

std::vector<Edge> linkage_edges(const EndsequencePair& pair, const std::vector<int>& internal, int k);

struct LinkageSearchStats {
    long long nodes = 0;
    bool budget_exceeded = false;
};

// Backtracking over internal vertices in path order: every new vertex must
// be adjacent to the k preceding path vertices, and the tail must attach to
// B. Exceeding the node budget is a capacity signal (treated as not-found by
// strategies), reported through stats.
std::optional<Linkage> find_linkage(const Graph& g, const EndsequencePair& pair, int r, int k,
                                    const std::vector<int>& allowed, long long node_budget = 1'000'000,
                                    LinkageSearchStats* stats = nullptr);

// One linkage per pair, internals pairwise disjoint within `allowed`;
// sequential greedy with backtracking across pairs. The 4 r |family| <=
// |allowed| pool condition is the strategies' guard, not enforced here.
std::optional<std::vector<Linkage>> find_linkage_family(const Graph& g, const LinkageFamily& family,
                                                        int r, int k, const std::vector<int>& allowed,
                                                        long long node_budget = 1'000'000,
                                                        LinkageSearchStats* stats = nullptr);

}  // namespace bcgp
