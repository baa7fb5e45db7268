#pragma once

#include "bcgp/graph.hpp"
#include "bcgp/rng.hpp"

#include <vector>

namespace bcgp {

// Draws distinct uniform edges of K_n one at a time: the engine presents
// edges through this, and sample_process_prefix is a thin wrapper, so the
// two are the same distribution by construction.
//
// Sparse regime (expected fill < 70%) uses rejection against a bitset of
// used edge indices; beyond that a partial Fisher-Yates over the full index
// space, so full prefixes (t = M) terminate.
class ProcessSampler {
public:
    ProcessSampler(int n, long long t, Rng& rng);

    Edge next();
    long long remaining() const { return t_ - drawn_; }

private:
    long long M_;
    long long t_;
    long long drawn_;
    Rng& rng_;
    bool fisher_yates_;
    std::vector<std::uint64_t> used_;     // rejection path
    std::vector<std::uint32_t> indices_;  // fisher-yates path
};

EdgeSequence sample_process_prefix(int n, long long t, Rng& rng);
Graph sample_gnp(int n, double p, Rng& rng);
Graph sample_gnm(int n, long long m, Rng& rng);

}  // namespace bcgp
