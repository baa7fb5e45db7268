#include "bcgp/checkers.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bcgp {

namespace {

constexpr int kCopyCap = 12;

void require_small(const Graph& f) {
    if (f.n() < 1 || f.n() > kCopyCap) throw std::length_error("pattern exceeds 12-vertex cap");
}

// vertex order for backtracking: each next vertex has as many already-placed
// neighbors as possible
std::vector<int> embed_order(const Graph& f) {
    int k = f.n();
    std::vector<int> order;
    std::vector<bool> placed(k, false);
    for (int step = 0; step < k; ++step) {
        int best = -1, best_back = -1, best_deg = -1;
        for (int v = 0; v < k; ++v) {
            if (placed[v]) continue;
            int back = 0;
            for (int u : f.neighbors(v))
                if (placed[u]) ++back;
            int deg = f.degree(v);
            if (back > best_back || (back == best_back && deg > best_deg)) {
                best = v;
                best_back = back;
                best_deg = deg;
            }
        }
        order.push_back(best);
        placed[best] = true;
    }
    return order;
}

struct Embedder {
    const Graph& g;
    const Graph& f;
    std::vector<int> order;                    // f-vertices in placement order
    std::vector<std::vector<int>> back_edges;  // for each step, indices into `map` that must be adjacent
    std::vector<int> map;                      // order position -> g vertex
    std::vector<bool> used;
    long long nodes = 0;
    long long budget;
    int forbidden = -1;  // g-vertex excluded from the image (for containment counts)

    Embedder(const Graph& g_, const Graph& f_, long long budget_)
        : g(g_), f(f_), order(embed_order(f_)), map(f_.n(), -1), used(g_.n(), false), budget(budget_) {
        int k = f.n();
        std::vector<int> pos(k, -1);
        for (int i = 0; i < k; ++i) pos[order[i]] = i;
        back_edges.resize(k);
        for (int i = 0; i < k; ++i)
            for (int u : f.neighbors(order[i]))
                if (pos[u] < i) back_edges[i].push_back(pos[u]);
    }

    // counts embeddings; if sink != nullptr, records each image tuple in
    // f-vertex order instead (dedup handled by the caller)
    long long run(std::vector<std::vector<int>>* sink) {
        count = 0;
        collect = sink;
        dfs(0);
        return count;
    }

    long long count = 0;
    std::vector<std::vector<int>>* collect = nullptr;

    void dfs(int step) {
        if (++nodes > budget) throw std::length_error("embedding search budget exceeded");
        int k = f.n();
        if (step == k) {
            ++count;
            if (collect) {
                std::vector<int> tuple(k);
                for (int i = 0; i < k; ++i) tuple[order[i]] = map[i];
                collect->push_back(std::move(tuple));
            }
            return;
        }
        if (back_edges[step].empty()) {
            for (int cand = 0; cand < g.n(); ++cand) {
                if (used[cand] || cand == forbidden) continue;
                if (g.degree(cand) < f.degree(order[step])) continue;
                place(step, cand);
            }
        } else {
            int anchor = map[back_edges[step][0]];
            for (int cand : g.neighbors(anchor)) {
                if (used[cand] || cand == forbidden) continue;
                bool ok = true;
                for (std::size_t j = 1; j < back_edges[step].size(); ++j)
                    if (!g.has_edge(cand, map[back_edges[step][j]])) {
                        ok = false;
                        break;
                    }
                if (ok) place(step, cand);
            }
        }
    }

    void place(int step, int cand) {
        map[step] = cand;
        used[cand] = true;
        dfs(step + 1);
        used[cand] = false;
        map[step] = -1;
    }
};

}  // namespace

long long count_embeddings(const Graph& g, const Graph& f) {
    require_small(f);
    Embedder e(g, f, 1LL << 62);
    return e.run(nullptr);
}

long long automorphism_count(const Graph& f) { return count_embeddings(f, f); }

long long count_copies_at(const Graph& g, const Graph& f, int v) {
    require_small(f);
    if (v < 0 || v >= g.n()) throw std::invalid_argument("count_copies_at: vertex out of range");
    long long aut = automorphism_count(f);
    Embedder all(g, f, 1LL << 62);
    long long total = all.run(nullptr);
    Embedder avoid(g, f, 1LL << 62);
    avoid.forbidden = v;
    long long without = avoid.run(nullptr);
    return (total - without) / aut;
}

long long count_copies(const Graph& g, const Graph& f) {
    return count_embeddings(g, f) / automorphism_count(f);
}

std::vector<long long> count_copies_at_all(const Graph& g, const Graph& f) {
    require_small(f);
    long long aut = automorphism_count(f);
    std::vector<long long> hits(g.n(), 0);
    std::vector<std::vector<int>> tuples;
    Embedder e(g, f, 1LL << 62);
    e.run(&tuples);
    for (const auto& t : tuples)
        for (int v : t) hits[v] += 1;
    for (auto& h : hits) h /= aut;
    return hits;
}

std::vector<std::vector<int>> enumerate_copy_sets(const Graph& g, const Graph& f, long long node_budget) {
    require_small(f);
    std::vector<std::vector<int>> tuples;
    Embedder e(g, f, node_budget);
    e.run(&tuples);
    // keep one embedding per vertex set
    std::set<std::vector<int>> seen;
    std::vector<std::vector<int>> out;
    for (auto& t : tuples) {
        std::vector<int> key = t;
        std::sort(key.begin(), key.end());
        if (seen.insert(key).second) out.push_back(std::move(t));
    }
    return out;
}

namespace {

struct CoverSearch {
    int n;
    int block;
    const std::vector<std::vector<int>>& sets;    // embedding tuples
    std::vector<std::vector<int>> incident;       // vertex -> set indices
    std::vector<bool> covered;
    std::vector<int> chosen;
    long long nodes = 0;
    long long budget;
    bool out_of_budget = false;

    CoverSearch(int n_, int block_, const std::vector<std::vector<int>>& sets_, long long budget_)
        : n(n_), block(block_), sets(sets_), incident(n_), covered(n_, false), budget(budget_) {
        for (std::size_t i = 0; i < sets.size(); ++i)
            for (int v : sets[i]) incident[v].push_back(static_cast<int>(i));
    }

    bool usable(int si) const {
        for (int v : sets[si])
            if (covered[v]) return false;
        return true;
    }

    bool dfs(int remaining) {
        if (remaining == 0) return true;
        if (++nodes > budget) {
            out_of_budget = true;
            return false;
        }
        // most-constrained uncovered vertex first
        int pick = -1;
        long long best = -1;
        for (int v = 0; v < n; ++v) {
            if (covered[v]) continue;
            long long c = 0;
            for (int si : incident[v])
                if (usable(si)) ++c;
            if (c == 0) return false;
            if (best < 0 || c < best) {
                best = c;
                pick = v;
            }
            if (best == 1) break;
        }
        for (int si : incident[pick]) {
            if (!usable(si)) continue;
            for (int v : sets[si]) covered[v] = true;
            chosen.push_back(si);
            if (dfs(remaining - block)) return true;
            chosen.pop_back();
            for (int v : sets[si]) covered[v] = false;
            if (out_of_budget) return false;
        }
        return false;
    }
};

}  // namespace

FactorResult has_f_factor(const Graph& g, const Graph& f, long long node_budget) {
    require_small(f);
    FactorResult res;
    if (f.n() == 0 || g.n() % f.n() != 0)
        throw std::invalid_argument("has_f_factor: v(F) must divide n");
    std::vector<std::vector<int>> sets;
    try {
        sets = enumerate_copy_sets(g, f, node_budget);
    } catch (const std::length_error&) {
        res.status = SearchStatus::Budget;
        return res;
    }
    CoverSearch cs(g.n(), f.n(), sets, node_budget);
    if (cs.dfs(g.n())) {
        res.status = SearchStatus::Found;
        for (int si : cs.chosen) res.witness.copies.push_back(sets[si]);
        return res;
    }
    res.status = cs.out_of_budget ? SearchStatus::Budget : SearchStatus::Exhausted;
    return res;
}

namespace {

struct PackSearch {
    int n;
    int block;
    const std::vector<std::vector<int>>& sets;
    std::vector<std::vector<int>> incident;
    std::vector<bool> covered;   // in a chosen copy
    std::vector<bool> excluded;  // branch: never covered
    std::vector<int> chosen;
    std::vector<int> best_chosen;
    long long best = 0;
    long long target;
    long long nodes = 0;
    long long budget;
    bool out_of_budget = false;
    bool reached_target = false;

    PackSearch(int n_, int block_, const std::vector<std::vector<int>>& sets_, long long target_,
               long long budget_)
        : n(n_), block(block_), sets(sets_), incident(n_), covered(n_, false), excluded(n_, false),
          target(target_), budget(budget_) {
        for (std::size_t i = 0; i < sets.size(); ++i)
            for (int v : sets[i]) incident[v].push_back(static_cast<int>(i));
    }

    bool usable(int si) const {
        for (int v : sets[si])
            if (covered[v] || excluded[v]) return false;
        return true;
    }

    void record() {
        if (static_cast<long long>(chosen.size()) > best) {
            best = static_cast<long long>(chosen.size());
            best_chosen = chosen;
            if (best >= target) reached_target = true;
        }
    }

    void dfs() {
        record();
        if (reached_target || out_of_budget) return;
        if (++nodes > budget) {
            out_of_budget = true;
            return;
        }
        int free_count = 0;
        int pick = -1;
        long long pick_c = -1;
        for (int v = 0; v < n; ++v) {
            if (covered[v] || excluded[v]) continue;
            ++free_count;
            long long c = 0;
            for (int si : incident[v])
                if (usable(si)) ++c;
            if (c > 0 && (pick_c < 0 || c < pick_c)) {
                pick_c = c;
                pick = v;
            }
        }
        if (pick < 0) return;  // no extendable vertex
        // fractional-style bound: every further copy burns `block` free vertices
        if (static_cast<long long>(chosen.size()) + free_count / block <= best) return;
        for (int si : incident[pick]) {
            if (!usable(si)) continue;
            for (int v : sets[si]) covered[v] = true;
            chosen.push_back(si);
            dfs();
            chosen.pop_back();
            for (int v : sets[si]) covered[v] = false;
            if (reached_target || out_of_budget) return;
        }
        excluded[pick] = true;
        dfs();
        excluded[pick] = false;
    }
};

}  // namespace

PackingResult max_disjoint_copies(const Graph& g, const Graph& f, long long target, long long node_budget) {
    require_small(f);
    PackingResult res;
    std::vector<std::vector<int>> sets;
    try {
        sets = enumerate_copy_sets(g, f, node_budget);
    } catch (const std::length_error&) {
        res.status = SearchStatus::Budget;
        return res;
    }
    PackSearch ps(g.n(), f.n(), sets, target, node_budget);
    ps.dfs();
    res.count = ps.best;
    for (int si : ps.best_chosen) res.witness.copies.push_back(sets[si]);
    if (ps.reached_target)
        res.status = SearchStatus::Found;
    else
        res.status = ps.out_of_budget ? SearchStatus::Budget : SearchStatus::Exhausted;
    return res;
}

bool verify_ham_power(const Graph& g, const std::vector<int>& order, int k) {
    int n = g.n();
    if (static_cast<int>(order.size()) != n) throw std::invalid_argument("verify_ham_power: order size");
    if (n <= 2 * k) throw std::invalid_argument("verify_ham_power: need n > 2k");
    std::vector<bool> seen(n, false);
    for (int v : order) {
        if (v < 0 || v >= n || seen[v]) throw std::invalid_argument("verify_ham_power: not a permutation");
        seen[v] = true;
    }
    for (int i = 0; i < n; ++i)
        for (int d = 1; d <= k; ++d)
            if (!g.has_edge(order[i], order[(i + d) % n])) return false;
    return true;
}

int min_degree(const Graph& g) {
    if (g.n() == 0) return 0;
    int md = g.degree(0);
    for (int v = 1; v < g.n(); ++v) md = std::min(md, g.degree(v));
    return md;
}

bool is_connected(const Graph& g) {
    if (g.n() <= 1) return true;
    std::vector<bool> vis(g.n(), false);
    std::queue<int> q;
    vis[0] = true;
    q.push(0);
    int seen = 1;
    while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int u : g.neighbors(v))
            if (!vis[u]) {
                vis[u] = true;
                ++seen;
                q.push(u);
            }
    }
    return seen == g.n();
}

std::string FactorWitness::to_json() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < copies.size(); ++i) {
        if (i) os << ',';
        os << '[';
        for (std::size_t j = 0; j < copies[i].size(); ++j) {
            if (j) os << ',';
            os << copies[i][j];
        }
        os << ']';
    }
    os << ']';
    return os.str();
}

}  // namespace bcgp
