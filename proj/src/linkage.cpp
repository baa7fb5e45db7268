#include "bcgp/linkage.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace bcgp {

std::vector<Edge> linkage_edges(const EndsequencePair& pair, const std::vector<int>& internal, int k) {
    int ka = static_cast<int>(pair.A.size());
    int r = static_cast<int>(internal.size());
    std::vector<int> combined;
    combined.reserve(static_cast<std::size_t>(2 * ka + r));
    combined.insert(combined.end(), pair.A.begin(), pair.A.end());
    combined.insert(combined.end(), internal.begin(), internal.end());
    combined.insert(combined.end(), pair.B.begin(), pair.B.end());
    std::vector<Edge> out;
    int len = static_cast<int>(combined.size());
    for (int i = 0; i < len; ++i)
        for (int d = 1; d <= k && i + d < len; ++d) {
            int jj = i + d;
            bool both_in_a = jj < ka;
            bool both_in_b = i >= ka + r;
            if (both_in_a || both_in_b) continue;
            out.push_back(make_edge(combined[i], combined[jj]));
        }
    return out;
}

namespace {

struct LinkageDfs {
    const Graph& g;
    const EndsequencePair& pair;
    int r, k;
    const std::vector<int>& allowed;
    std::vector<bool>& used;  // global used set (shared across a family)
    long long& nodes;
    long long budget;
    bool& budget_hit;
    std::vector<int> internal;

    // combined path position of internal index i is k + i
    bool back_ok(int cand, int placed) const {
        int pos = k + placed;
        for (int q = std::max(0, pos - k); q < pos; ++q) {
            int other = (q < k) ? pair.A[q] : internal[q - k];
            if (!g.has_edge(cand, other)) return false;
        }
        return true;
    }

    bool tail_ok() const {
        int ka = k;
        int len = 2 * ka + r;
        for (int bi = 0; bi < ka; ++bi) {
            int pos = ka + r + bi;
            for (int q = std::max(0, pos - k); q < pos; ++q) {
                if (q >= ka + r) continue;  // inside B
                int other = (q < ka) ? pair.A[q] : internal[q - ka];
                if (!g.has_edge(pair.B[bi], other)) return false;
            }
        }
        (void)len;
        return true;
    }

    template <typename OnFound>
    bool run(int placed, const OnFound& on_found) {
        if (++nodes > budget) {
            budget_hit = true;
            return false;
        }
        if (placed == r) {
            if (!tail_ok()) return false;
            return on_found(internal);
        }
        for (int cand : allowed) {
            if (used[cand]) continue;
            if (!back_ok(cand, placed)) continue;
            used[cand] = true;
            internal.push_back(cand);
            bool done = run(placed + 1, on_found);
            internal.pop_back();
            used[cand] = false;
            if (done) return true;
            if (budget_hit) return false;
        }
        return false;
    }
};

void validate_pair(const EndsequencePair& pair, int k) {
    if (static_cast<int>(pair.A.size()) != k || static_cast<int>(pair.B.size()) != k)
        throw std::invalid_argument("linkage: endsequences must be k-tuples");
    std::vector<int> all = pair.A;
    all.insert(all.end(), pair.B.begin(), pair.B.end());
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end())
        throw std::invalid_argument("linkage: endsequence vertices must be distinct");
}

}  // namespace

std::optional<Linkage> find_linkage(const Graph& g, const EndsequencePair& pair, int r, int k,
                                    const std::vector<int>& allowed, long long node_budget,
                                    LinkageSearchStats* stats) {
    if (r < 0) throw std::invalid_argument("find_linkage: r must be >= 0");
    validate_pair(pair, k);
    for (int v : allowed)
        for (int a : pair.A)
            if (v == a) throw std::invalid_argument("find_linkage: allowed set meets A");
    for (int v : allowed)
        for (int b : pair.B)
            if (v == b) throw std::invalid_argument("find_linkage: allowed set meets B");

    std::vector<bool> used(g.n(), false);
    long long nodes = 0;
    bool budget_hit = false;
    LinkageDfs dfs{g, pair, r, k, allowed, used, nodes, node_budget, budget_hit, {}};
    std::optional<Linkage> out;
    dfs.run(0, [&](const std::vector<int>& internal) {
        Linkage l;
        l.pair = pair;
        l.internal = internal;
        l.edges = linkage_edges(pair, internal, k);
        out = std::move(l);
        return true;
    });
    if (stats) {
        stats->nodes += nodes;
        stats->budget_exceeded = stats->budget_exceeded || budget_hit;
    }
    return out;
}

std::optional<std::vector<Linkage>> find_linkage_family(const Graph& g, const LinkageFamily& family,
                                                        int r, int k, const std::vector<int>& allowed,
                                                        long long node_budget,
                                                        LinkageSearchStats* stats) {
    // callers that care about the 4 r |family| <= |allowed| pool condition
    // check it themselves; the search itself works on any pool
    for (const EndsequencePair& p : family.pairs) validate_pair(p, k);

    std::vector<bool> used(g.n(), false);
    long long nodes = 0;
    bool budget_hit = false;
    std::vector<std::vector<int>> internals(family.pairs.size());

    // nested DFS: pair i enumerates its linkages lazily; each complete one
    // recurses into pair i+1, undone on failure
    std::function<bool(std::size_t)> solve = [&](std::size_t i) -> bool {
        if (i == family.pairs.size()) return true;
        LinkageDfs dfs{g, family.pairs[i], r, k, allowed, used, nodes, node_budget, budget_hit, {}};
        return dfs.run(0, [&](const std::vector<int>& internal) {
            // the DFS already holds these internals in the shared used set
            bool done = solve(i + 1);
            if (done) internals[i] = internal;
            return done;
        });
    };

    bool ok = solve(0);
    if (stats) {
        stats->nodes += nodes;
        stats->budget_exceeded = stats->budget_exceeded || budget_hit;
    }
    if (!ok) return std::nullopt;
    std::vector<Linkage> out;
    for (std::size_t i = 0; i < family.pairs.size(); ++i) {
        Linkage l;
        l.pair = family.pairs[i];
        l.internal = internals[i];
        l.edges = linkage_edges(family.pairs[i], internals[i], k);
        out.push_back(std::move(l));
    }
    return out;
}

}  // namespace bcgp
