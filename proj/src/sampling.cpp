#include "bcgp/sampling.hpp"

#include <numeric>
#include <stdexcept>

namespace bcgp {

ProcessSampler::ProcessSampler(int n, long long t, Rng& rng)
    : M_(complete_edge_count(n)), t_(t), drawn_(0), rng_(rng) {
    if (t < 0 || t > M_) throw std::invalid_argument("ProcessSampler: t out of range");
    fisher_yates_ = t_ > (M_ * 7) / 10;
    if (fisher_yates_) {
        indices_.resize(static_cast<std::size_t>(M_));
        std::iota(indices_.begin(), indices_.end(), 0u);
    } else {
        used_.assign(static_cast<std::size_t>((M_ + 63) / 64), 0);
    }
}

Edge ProcessSampler::next() {
    if (drawn_ >= t_) throw std::logic_error("ProcessSampler: exhausted");
    long long idx;
    if (fisher_yates_) {
        long long j = drawn_ + static_cast<long long>(rng_.below(static_cast<std::uint64_t>(M_ - drawn_)));
        std::swap(indices_[static_cast<std::size_t>(drawn_)], indices_[static_cast<std::size_t>(j)]);
        idx = indices_[static_cast<std::size_t>(drawn_)];
    } else {
        for (;;) {
            idx = static_cast<long long>(rng_.below(static_cast<std::uint64_t>(M_)));
            std::uint64_t& w = used_[static_cast<std::size_t>(idx >> 6)];
            std::uint64_t bit = 1ULL << (idx & 63);
            if (!(w & bit)) { w |= bit; break; }
        }
    }
    ++drawn_;
    return edge_from_index(idx);
}

EdgeSequence sample_process_prefix(int n, long long t, Rng& rng) {
    ProcessSampler s(n, t, rng);
    EdgeSequence seq;
    seq.n = n;
    seq.edges.reserve(static_cast<std::size_t>(t));
    for (long long i = 0; i < t; ++i) seq.edges.push_back(s.next());
    return seq;
}

Graph sample_gnp(int n, double p, Rng& rng) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("sample_gnp: p outside [0,1]");
    Graph g(n);
    if (p == 0.0) return g;
    for (int v = 1; v < n; ++v)
        for (int u = 0; u < v; ++u)
            if (rng.bernoulli(p)) g.add_edge(u, v);
    return g;
}

Graph sample_gnm(int n, long long m, Rng& rng) {
    long long M = complete_edge_count(n);
    if (m < 0 || m > M) throw std::invalid_argument("sample_gnm: m out of range");
    EdgeSequence seq = sample_process_prefix(n, m, rng);
    return seq.as_graph();
}

}  // namespace bcgp
