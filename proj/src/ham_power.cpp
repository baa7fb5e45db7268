#include "bcgp/ham_power.hpp"

#include "bcgp/factor_strategies.hpp"
#include "bcgp/max_density.hpp"
#include "bcgp/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bcgp {

namespace {

bool is_prime(long long q) {
    if (q < 2) return false;
    for (long long d = 2; d * d <= q; ++d)
        if (q % d == 0) return false;
    return true;
}

// d(P_q^k) = (k(q-k) + C(k,2)) / (q-1); path powers attain d* at the whole
// graph (cross-checked against the flow-based exact routine in the tests)
double path_power_density(int q, int k) {
    return (static_cast<double>(k) * (q - k) + k * (k - 1) / 2.0) / (q - 1);
}

}  // namespace

HamPowerParams derive_params(int n, long long t, const HamPowerConfig& cfg) {
    HamPowerParams P;
    P.n = n;
    P.t = t;
    P.cfg = cfg;
    P.M = complete_edge_count(n);
    if (t < 4 || t > P.M) throw std::invalid_argument("derive_params: t out of range");

    Absorber tmpl = build_absorber_template(cfg.j, cfg.ell, cfg.k);
    check_absorber_invariants(tmpl);
    P.s = tmpl.s;
    int S = P.s + 1;
    if (!is_prime(cfg.q)) throw std::invalid_argument("derive_params: q must be prime");
    if (cfg.q <= S + cfg.r) throw std::invalid_argument("derive_params: need q > s+1+r");
    if (n <= 2 * cfg.k) throw std::invalid_argument("derive_params: need n > 2k");

    long long q1 = t / 4;
    P.t_stage[0] = P.t_stage[1] = P.t_stage[2] = q1;
    P.t_stage[3] = t - 3 * q1;

    // eta window: descend from floor(n / 3(s+1)) until the residue divides
    long long top = n / (3LL * S);
    long long found = -1;
    for (long long eta = top; eta >= std::max<long long>(1, top - cfg.q + 1); --eta) {
        long long rem = n - eta * S - (eta - 1) * cfg.r;
        if (rem < 0) continue;
        if (rem % cfg.q == 0) {
            found = eta;
            P.nu = rem / cfg.q;
            break;
        }
    }
    if (found < 0)
        throw std::invalid_argument("derive_params: no valid eta in the window (n too small for q?)");
    P.eta = found;

    double tn2 = static_cast<double>(t) / (static_cast<double>(n) * n);
    P.xi_formula = static_cast<long long>(std::floor(std::pow(tn2, cfg.k / (1.0 - cfg.eps / 2.0)) * n));

    P.dstar_absorber = max_one_density_exact(tmpl.edges).to_double();
    double u1 = static_cast<double>(P.eta * S);
    double p1 = static_cast<double>(P.t_stage[0]) / static_cast<double>(P.M);
    P.pi_formula = std::pow(p1, P.dstar_absorber) *
                 std::pow(u1, 1.0 - cfg.eps_prime * P.dstar_absorber / 2.0);
    double u3 = static_cast<double>(P.nu * cfg.q);
    double p3 = static_cast<double>(P.t_stage[2]) / static_cast<double>(P.M);
    double dq = path_power_density(cfg.q, cfg.k);
    P.sigma_formula = u3 > 0 ? std::pow(p3, dq) * std::pow(u3, 1.0 - cfg.eps_prime * dq / 2.0) : 0.0;

    // effective part/group counts, clamped to feasible desk-scale ranges
    long long g1 = std::max(1, cfg.stage1_part_gadgets);
    P.pi_eff = std::max<long long>(1, P.eta / g1);
    P.sigma_eff = P.nu > 0 ? std::max<long long>(1, std::min<long long>(
                                 P.nu, static_cast<long long>(std::floor(P.sigma_formula)) > 0
                                           ? static_cast<long long>(std::floor(P.sigma_formula))
                                           : 1))
                           : 0;

    long long jobs2 = P.eta - 1;
    long long u2 = n / 3;
    if (cfg.stage2_groups > 0) {
        P.xi2_eff = std::min<long long>(cfg.stage2_groups, std::max<long long>(jobs2, 1));
    } else {
        P.xi2_eff = std::max<long long>(1, std::min<long long>(P.xi_formula, jobs2));
        while (P.xi2_eff > 1) {
            long long per = (jobs2 + P.xi2_eff - 1) / P.xi2_eff;
            if (u2 / P.xi2_eff >= 4LL * cfg.r * per) break;
            --P.xi2_eff;
        }
    }
    if (jobs2 == 0) P.xi2_eff = 0;

    long long jobs4 = P.nu + 1;
    if (cfg.stage4_groups > 0) {
        P.xi4_eff = std::min<long long>(cfg.stage4_groups, jobs4);
    } else {
        P.xi4_eff = std::max<long long>(1, std::min<long long>(P.xi_formula, jobs4));
        while (P.xi4_eff > 1) {
            long long per = (jobs4 + P.xi4_eff - 1) / P.xi4_eff;
            if (P.eta / P.xi4_eff >= 4LL * cfg.r * per) break;
            --P.xi4_eff;
        }
    }

    long long zeta = P.eta / std::max<long long>(1, P.xi4_eff);
    double p_prev = static_cast<double>(P.t_stage[0] + P.t_stage[1] + P.t_stage[2]) /
                    static_cast<double>(P.M);
    double logn = std::log(static_cast<double>(n));
    P.threshold_formula = 2.0 * p_prev * static_cast<double>(zeta) / std::pow(logn, 5.0);
    P.threshold_eff = cfg.stage4_threshold_scale * p_prev * static_cast<double>(zeta) / logn;

    P.budget_formula = std::pow(static_cast<double>(n), 2.0 * cfg.k - 1.0 + cfg.eps) /
                       std::pow(static_cast<double>(t), cfg.k - 1.0);
    P.budget = std::min<long long>(static_cast<long long>(std::floor(P.budget_formula)), t);
    return P;
}

std::string HamPowerParams::to_json() const {
    std::ostringstream os;
    os << "{\"n\":" << n << ",\"t\":" << t << ",\"k\":" << cfg.k << ",\"eps\":" << cfg.eps
       << ",\"j\":" << cfg.j << ",\"ell\":" << cfg.ell << ",\"s\":" << s << ",\"q\":" << cfg.q
       << ",\"r\":" << cfg.r << ",\"eta\":" << eta << ",\"nu\":" << nu
       << ",\"t_stage\":[" << t_stage[0] << ',' << t_stage[1] << ',' << t_stage[2] << ','
       << t_stage[3] << "]"
       << ",\"xi_formula\":" << xi_formula << ",\"pi_formula\":" << pi_formula
       << ",\"sigma_formula\":" << sigma_formula << ",\"threshold_formula\":" << threshold_formula
       << ",\"pi_eff\":" << pi_eff << ",\"sigma_eff\":" << sigma_eff << ",\"xi2_eff\":" << xi2_eff
       << ",\"xi4_eff\":" << xi4_eff << ",\"threshold_eff\":" << threshold_eff
       << ",\"dstar_absorber\":" << dstar_absorber << ",\"budget\":" << budget
       << ",\"budget_formula\":" << budget_formula << "}";
    return os.str();
}

namespace {

// Hopcroft-Karp on an explicit bipartite adjacency
struct BipartiteMatcher {
    int nl, nr;
    std::vector<std::vector<int>> adj;
    std::vector<int> match_l, match_r, dist;

    BipartiteMatcher(int l, int r) : nl(l), nr(r), adj(l), match_l(l, -1), match_r(r, -1), dist(l) {}

    bool bfs() {
        std::vector<int> queue;
        for (int u = 0; u < nl; ++u) {
            if (match_l[u] < 0) {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = -1;
            }
        }
        bool found = false;
        for (std::size_t h = 0; h < queue.size(); ++h) {
            int u = queue[h];
            for (int v : adj[u]) {
                int w = match_r[v];
                if (w < 0) found = true;
                else if (dist[w] < 0) {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        return found;
    }

    bool dfs(int u) {
        for (int v : adj[u]) {
            int w = match_r[v];
            if (w < 0 || (dist[w] == dist[u] + 1 && dfs(w))) {
                match_l[u] = v;
                match_r[v] = u;
                return true;
            }
        }
        dist[u] = -1;
        return false;
    }

    int solve() {
        int m = 0;
        while (bfs())
            for (int u = 0; u < nl; ++u)
                if (match_l[u] < 0 && dfs(u)) ++m;
        return m;
    }
};

long long pool_neighbors(const Graph& g, const std::vector<int>& x, const std::vector<char>& in_y,
                         const std::vector<char>& in_x) {
    long long c = 0;
    std::vector<int> seen;
    for (int v : x)
        for (int u : g.neighbors(v)) {
            if (in_x[u]) continue;  // N(X) excludes X itself
            if (in_y[u]) {
                // count each pool vertex once
                bool dup = false;
                for (int s : seen)
                    if (s == u) dup = true;
                if (!dup) {
                    seen.push_back(u);
                    ++c;
                }
            }
        }
    return c;
}

}  // namespace

std::optional<std::vector<std::vector<int>>> sparse_partition_match(
    const Graph& g_prev, const std::vector<std::vector<int>>& x_sets,
    const std::vector<std::vector<int>>& y_sets, long long threshold) {
    int nx = static_cast<int>(x_sets.size());
    int ny = static_cast<int>(y_sets.size());
    if (ny == 0 || nx < ny) throw std::invalid_argument("sparse_partition_match: need |X| >= |Y| >= 1");

    // quota per pool: equipartition of X indices
    std::vector<int> quota(ny, nx / ny);
    for (int a = 0; a < nx % ny; ++a) ++quota[a];

    std::vector<char> in_x(g_prev.n(), 0);
    std::vector<std::vector<char>> in_y(ny, std::vector<char>(g_prev.n(), 0));
    for (int a = 0; a < ny; ++a)
        for (int v : y_sets[a]) in_y[a][v] = 1;

    std::vector<std::vector<char>> compatible(nx, std::vector<char>(ny, 0));
    for (int i = 0; i < nx; ++i) {
        for (int v : x_sets[i]) in_x[v] = 1;
        for (int a = 0; a < ny; ++a)
            compatible[i][a] = pool_neighbors(g_prev, x_sets[i], in_y[a], in_x) <= threshold;
        for (int v : x_sets[i]) in_x[v] = 0;
    }

    // canonical interval partition first; matching only when it fails
    {
        std::vector<std::vector<int>> intervals(ny);
        int i = 0;
        bool ok = true;
        for (int a = 0; a < ny && ok; ++a)
            for (int c = 0; c < quota[a]; ++c, ++i)
                if (!compatible[i][a]) ok = false;
        if (ok) {
            i = 0;
            for (int a = 0; a < ny; ++a)
                for (int c = 0; c < quota[a]; ++c) intervals[a].push_back(i++);
            return intervals;
        }
    }

    // slots: pool a replicated quota[a] times
    std::vector<int> slot_pool;
    for (int a = 0; a < ny; ++a)
        for (int c = 0; c < quota[a]; ++c) slot_pool.push_back(a);
    BipartiteMatcher hk(nx, nx);
    for (int i = 0; i < nx; ++i)
        for (int sidx = 0; sidx < nx; ++sidx)
            if (compatible[i][slot_pool[sidx]]) hk.adj[i].push_back(sidx);
    if (hk.solve() != nx) return std::nullopt;
    std::vector<std::vector<int>> out(ny);
    for (int i = 0; i < nx; ++i) out[slot_pool[hk.match_l[i]]].push_back(i);
    return out;
}

std::vector<int> absorb(const std::vector<int>& cycle_order, const Absorber& tmpl,
                        const std::vector<EmbeddedAbsorber>& absorbers,
                        const std::vector<int>& leftover) {
    std::vector<int> order = cycle_order;
    std::vector<int> owner;  // absorption host -> absorber index
    std::vector<int> owner_host;
    for (std::size_t i = 0; i < absorbers.size(); ++i) {
        owner_host.push_back(absorbers[i].absorption_host(tmpl));
        owner.push_back(static_cast<int>(i));
    }
    for (int v : leftover) {
        int ai = -1;
        for (std::size_t i = 0; i < owner_host.size(); ++i)
            if (owner_host[i] == v) ai = owner[i];
        if (ai < 0) throw std::logic_error("absorb: leftover vertex is not an absorption vertex");
        const EmbeddedAbsorber& emb = absorbers[static_cast<std::size_t>(ai)];
        std::vector<int> spine = emb.spine_hosts(tmpl);
        std::vector<int> aug = emb.augmented_hosts(tmpl);

        int len = static_cast<int>(order.size());
        std::vector<int> pos(static_cast<std::size_t>(*std::max_element(order.begin(), order.end())) + 1,
                             -1);
        for (int i2 = 0; i2 < len; ++i2) pos[order[i2]] = i2;

        auto matches = [&](const std::vector<int>& seq) -> int {
            int start = pos[seq[0]];
            if (start < 0) return -1;
            for (std::size_t i2 = 0; i2 < seq.size(); ++i2)
                if (order[(start + static_cast<int>(i2)) % len] != seq[i2]) return -1;
            return start;
        };

        std::vector<int> rev_spine(spine.rbegin(), spine.rend());
        std::vector<int> rev_aug(aug.rbegin(), aug.rend());
        int start = matches(spine);
        const std::vector<int>* replacement = &aug;
        if (start < 0) {
            start = matches(rev_spine);
            replacement = &rev_aug;
        }
        if (start < 0) throw std::logic_error("absorb: spine not contiguous in the cycle order");

        std::vector<int> next;
        next.reserve(order.size() + 1);
        next.insert(next.end(), replacement->begin(), replacement->end());
        for (int i2 = (start + static_cast<int>(spine.size())) % len; i2 != start; i2 = (i2 + 1) % len)
            next.push_back(order[i2]);
        order = std::move(next);
    }
    return order;
}

namespace {

// ---- randomized gadget embedding with rip-up repair ----

struct FreeSet {
    std::vector<std::uint64_t> words;
    int n;
    explicit FreeSet(int n_) : words((n_ + 63) / 64, 0), n(n_) {}
    bool has(int v) const { return words[v >> 6] >> (v & 63) & 1; }
    void set(int v) { words[v >> 6] |= 1ULL << (v & 63); }
    void clear(int v) { words[v >> 6] &= ~(1ULL << (v & 63)); }
};

int free_degree(const Graph& g, const FreeSet& free, int v) {
    const std::uint64_t* row = g.row(v);
    int d = 0;
    for (std::size_t w = 0; w < free.words.size(); ++w)
        d += __builtin_popcountll(row[w] & free.words[w]);
    return d;
}

// Grows the spine as a k-power path with most-constrained-first candidate
// ordering. In absorber mode the absorption vertex is drawn before the
// spine: forcing it last would leave a single candidate that must hit all
// 2k window vertices (probability ~ p^{2k}), whereas an up-front choice
// only thins the window steps to N(v).
struct EmbedDfs {
    const Graph& g;
    int len, k;
    bool absorber_mode;
    int mid;
    FreeSet& free;
    Rng& rng;
    long long budget;
    long long nodes = 0;
    int absorption = -1;
    std::vector<int> path;

    bool window_step(int depth) const {
        return absorber_mode && depth >= mid - k && depth < mid + k;
    }

    bool grow(int depth, const std::vector<int>& part) {
        if (++nodes > budget) return false;
        if (depth == len) return true;

        std::vector<int> cands;
        if (depth == 0) {
            for (int v : part)
                if (free.has(v)) cands.push_back(v);
        } else {
            int last = path.back();
            const std::uint64_t* row = g.row(last);
            const std::uint64_t* vrow = window_step(depth) ? g.row(absorption) : nullptr;
            for (std::size_t w = 0; w < free.words.size(); ++w) {
                std::uint64_t x = row[w] & free.words[w];
                if (vrow) x &= vrow[w];
                while (x) {
                    int c = static_cast<int>(w) * 64 + __builtin_ctzll(x);
                    x &= x - 1;
                    bool ok = true;
                    for (int b = 2; b <= k && depth - b >= 0; ++b)
                        if (!g.has_edge(c, path[depth - b])) {
                            ok = false;
                            break;
                        }
                    if (ok) cands.push_back(c);
                }
            }
        }
        if (cands.empty()) return false;

        // most-constrained first: fewest free neighbors, random tie-break
        std::vector<std::pair<long long, int>> scored;
        scored.reserve(cands.size());
        for (int c : cands)
            scored.emplace_back(static_cast<long long>(free_degree(g, free, c)) * 1024 +
                                    static_cast<long long>(rng.below(1024)),
                                c);
        std::sort(scored.begin(), scored.end());

        for (const auto& [score, c] : scored) {
            free.clear(c);
            path.push_back(c);
            if (grow(depth + 1, part)) return true;
            path.pop_back();
            free.set(c);
            if (nodes > budget) return false;
        }
        return false;
    }

    // returns host ids in template local order: spine 0..len-1, then v
    bool run(const std::vector<int>& part) {
        if (!absorber_mode) return grow(0, part);
        // try absorption-vertex choices in random order
        std::vector<int> vs;
        for (int v : part)
            if (free.has(v)) vs.push_back(v);
        for (std::size_t i = vs.size(); i > 1; --i)
            std::swap(vs[i - 1], vs[rng.below(i)]);
        for (int v : vs) {
            absorption = v;
            free.clear(v);
            if (grow(0, part)) {
                path.push_back(v);
                return true;
            }
            free.set(v);
            if (nodes > budget) return false;
        }
        return false;
    }
};

}  // namespace

std::optional<std::vector<std::vector<int>>> cover_with_gadgets(
    const Graph& g, const std::vector<int>& part, int gadget_len, int k, bool absorber_mode,
    Rng& rng, long long embed_budget, int attempts) {
    int order = gadget_len + (absorber_mode ? 1 : 0);
    if (part.size() % static_cast<std::size_t>(order) != 0)
        throw std::invalid_argument("cover_with_gadgets: part size not divisible by gadget order");
    std::size_t want = part.size() / static_cast<std::size_t>(order);

    FreeSet free(g.n());
    for (int v : part) free.set(v);
    std::vector<std::vector<int>> placements;
    int attempt = 0;
    while (placements.size() < want) {
        EmbedDfs dfs{g, gadget_len, k, absorber_mode, gadget_len / 2, free, rng, embed_budget, 0, -1, {}};
        if (dfs.run(part)) {
            placements.push_back(dfs.path);  // free bits already cleared by the DFS
            for (int v : dfs.path) free.clear(v);
        } else {
            if (++attempt > attempts) return std::nullopt;
            // rip up a few random placements and retry
            int rip = 1 + attempt / 10;
            while (rip-- > 0 && !placements.empty()) {
                std::size_t at = rng.below(placements.size());
                for (int v : placements[at]) free.set(v);
                placements[at] = std::move(placements.back());
                placements.pop_back();
            }
        }
    }
    return placements;
}


// ---- the four-stage strategy ----

namespace {
constexpr std::uint64_t kStrategyStream = 0x68616dULL;
}

HamPowerStrategy::HamPowerStrategy(const HamPowerParams& params, std::uint64_t seed)
    : P_(params), tmpl_(build_absorber_template(params.cfg.j, params.cfg.ell, params.cfg.k)),
      rng_(splitmix64(seed ^ kStrategyStream)), pool_(params.n, -1) {
    int S = P_.s + 1;
    long long u1 = P_.eta * S;
    std::vector<int> u1_verts(static_cast<std::size_t>(u1));
    std::iota(u1_verts.begin(), u1_verts.end(), 0);
    stage1_parts_ = f_equipartition(u1_verts, static_cast<int>(P_.pi_eff), S);
    for (std::size_t a = 0; a < stage1_parts_.size(); ++a)
        for (int v : stage1_parts_[a]) pool_[v] = static_cast<int>(a);

    long long u2 = std::min<long long>(P_.n / 3, P_.n - u1);
    u2_verts_.resize(static_cast<std::size_t>(u2));
    std::iota(u2_verts_.begin(), u2_verts_.end(), static_cast<int>(u1));

    boundaries_[0] = P_.t_stage[0];
    boundaries_[1] = boundaries_[0] + P_.t_stage[1];
    boundaries_[2] = boundaries_[1] + P_.t_stage[2];
    boundaries_[3] = boundaries_[2] + P_.t_stage[3];
}

double HamPowerStrategy::decide(long long, const DecisionHistory&, Edge e) {
    if (dead_) return 0.0;
    int pu = pool_[e.u];
    return (pu >= 0 && pu == pool_[e.v]) ? 1.0 : 0.0;
}

void HamPowerStrategy::observe(long long time, Edge, bool bought, const Graph& bought_graph,
                               const Graph& presented_graph) {
    if (bought) ++stage_bought_[std::min(stage_, 3)];
    if (stage_ == 0 && time == boundaries_[0]) {
        if (!dead_) stage1_end(bought_graph);
        stage_ = 1;
    } else if (stage_ == 1 && time == boundaries_[1]) {
        if (!dead_) stage2_end(bought_graph);
        stage_ = 2;
    } else if (stage_ == 2 && time == boundaries_[2]) {
        if (!dead_) stage3_end(bought_graph, presented_graph);
        stage_ = 3;
    }
}

void HamPowerStrategy::finish(const Graph& bought_graph, const Graph&,
                              std::vector<StageRecord>& out) {
    if (!dead_) stage4_end(bought_graph);
    for (auto& r : log_) out.push_back(r);
    StageRecord b;
    b.label = "budget";
    b.success = true;
    std::ostringstream os;
    os << "bought_per_stage=[" << stage_bought_[0] << ',' << stage_bought_[1] << ','
       << stage_bought_[2] << ',' << stage_bought_[3] << "]";
    b.detail = os.str();
    out.push_back(b);
}

const std::vector<int>* HamPowerStrategy::cycle_witness() const {
    return witness_.empty() ? nullptr : &witness_;
}

void HamPowerStrategy::fail(const std::string& label, const std::string& detail) {
    log_.push_back(StageRecord{label, false, detail});
    dead_ = true;
    std::fill(pool_.begin(), pool_.end(), -1);
}

void HamPowerStrategy::pass(const std::string& label, const std::string& detail) {
    log_.push_back(StageRecord{label, true, detail});
}

std::vector<int> HamPowerStrategy::spine_hosts(std::size_t i) const {
    return absorbers_[i].spine_hosts(tmpl_);
}

std::vector<int> HamPowerStrategy::initial_endseq(const std::vector<int>& path_hosts) const {
    return std::vector<int>(path_hosts.begin(), path_hosts.begin() + P_.cfg.k);
}

std::vector<int> HamPowerStrategy::final_endseq(const std::vector<int>& path_hosts) const {
    return std::vector<int>(path_hosts.end() - P_.cfg.k, path_hosts.end());
}

void HamPowerStrategy::stage1_end(const Graph& bought) {
    for (const auto& part : stage1_parts_) {
        // search on the induced part graph: the embedding DFS scans bitset
        // rows, which are 30x wider on the full host
        Graph sub = induced_subgraph(bought, part);
        std::vector<int> local(part.size());
        std::iota(local.begin(), local.end(), 0);
        auto cover = cover_with_gadgets(sub, local, P_.s, P_.cfg.k, true, rng_,
                                        P_.cfg.embed_budget, P_.cfg.cover_attempts);
        if (!cover) {
            fail("stage1_absorber_factor",
                 "no absorber factor in a part of size " + std::to_string(part.size()));
            return;
        }
        for (const auto& host_local : *cover) {
            EmbeddedAbsorber emb;
            emb.host.reserve(host_local.size());
            for (int lv : host_local) emb.host.push_back(part[static_cast<std::size_t>(lv)]);
            if (!embedded_absorber_ok(bought, tmpl_, emb))
                throw std::logic_error("ham_power: embedded absorber fails edge check");
            absorbers_.push_back(std::move(emb));
        }
    }
    if (static_cast<long long>(absorbers_.size()) != P_.eta)
        throw std::logic_error("ham_power: absorber count mismatch");
    {
        std::vector<char> seen(P_.n, 0);
        for (const auto& a : absorbers_)
            for (int v : a.host) {
                if (seen[v]) throw std::logic_error("ham_power: absorbers overlap");
                seen[v] = 1;
            }
    }
    pass("stage1_absorber_factor",
         "eta=" + std::to_string(P_.eta) + " parts=" + std::to_string(stage1_parts_.size()));

    // stage II pools
    std::fill(pool_.begin(), pool_.end(), -1);
    long long jobs = P_.eta - 1;
    if (jobs == 0) return;
    w_pools_ = f_equipartition(u2_verts_, static_cast<int>(P_.xi2_eff), 1);
    std::vector<int> job_ids(static_cast<std::size_t>(jobs));
    std::iota(job_ids.begin(), job_ids.end(), 0);
    jobs2_by_group_ = f_equipartition(job_ids, static_cast<int>(P_.xi2_eff), 1);
    for (std::size_t a = 0; a < w_pools_.size(); ++a) {
        for (int v : w_pools_[a]) pool_[v] = static_cast<int>(a);
        for (int job : jobs2_by_group_[a]) {
            for (int v : final_endseq(spine_hosts(static_cast<std::size_t>(job))))
                pool_[v] = static_cast<int>(a);
            for (int v : initial_endseq(spine_hosts(static_cast<std::size_t>(job) + 1)))
                pool_[v] = static_cast<int>(a);
        }
    }
}

void HamPowerStrategy::stage2_end(const Graph& bought) {
    long long jobs = P_.eta - 1;
    links2_.assign(static_cast<std::size_t>(std::max<long long>(jobs, 0)), Linkage{});
    if (jobs > 0) {
        for (std::size_t a = 0; a < jobs2_by_group_.size(); ++a) {
            LinkageFamily fam;
            for (int job : jobs2_by_group_[a])
                fam.pairs.push_back(
                    EndsequencePair{final_endseq(spine_hosts(static_cast<std::size_t>(job))),
                                    initial_endseq(spine_hosts(static_cast<std::size_t>(job) + 1))});
            if (4LL * P_.cfg.r * static_cast<long long>(fam.pairs.size()) >
                static_cast<long long>(w_pools_[a].size())) {
                fail("stage2_linkages", "pool " + std::to_string(a) + " smaller than 4 r |family|");
                return;
            }
            LinkageSearchStats stats;
            auto found = find_linkage_family(bought, fam, P_.cfg.r, P_.cfg.k, w_pools_[a],
                                             P_.cfg.linkage_budget, &stats);
            if (!found) {
                fail("stage2_linkages",
                     "group " + std::to_string(a) +
                         (stats.budget_exceeded ? " search budget exceeded" : " no linkage"));
                return;
            }
            for (std::size_t i = 0; i < jobs2_by_group_[a].size(); ++i)
                links2_[static_cast<std::size_t>(jobs2_by_group_[a][i])] = (*found)[i];
        }
    }
    // chain spines and linkage internals into the power of one long path
    q0_.clear();
    for (std::size_t i = 0; i < absorbers_.size(); ++i) {
        std::vector<int> sp = spine_hosts(i);
        q0_.insert(q0_.end(), sp.begin(), sp.end());
        if (static_cast<long long>(i) < jobs)
            q0_.insert(q0_.end(), links2_[i].internal.begin(), links2_[i].internal.end());
    }
    for (std::size_t i = 0; i < q0_.size(); ++i)
        for (int d = 1; d <= P_.cfg.k && i + d < q0_.size(); ++d)
            if (!bought.has_edge(q0_[i], q0_[i + static_cast<std::size_t>(d)]))
                throw std::logic_error("ham_power: chained path power misses an edge");
    pass("stage2_linkages", "jobs=" + std::to_string(jobs));

    // stage III pools over U3 = everything outside U1 that is not a linkage internal
    std::fill(pool_.begin(), pool_.end(), -1);
    std::vector<char> used(P_.n, 0);
    long long u1 = P_.eta * (P_.s + 1);
    for (const Linkage& l : links2_)
        for (int v : l.internal) used[v] = 1;
    std::vector<int> u3;
    for (int v = static_cast<int>(u1); v < P_.n; ++v)
        if (!used[v]) u3.push_back(v);
    if (static_cast<long long>(u3.size()) != P_.nu * P_.cfg.q)
        throw std::logic_error("ham_power: |U3| != nu*q");
    u3_ = std::move(u3);
    if (P_.nu > 0) {
        stage3_parts_ = f_equipartition(u3_, static_cast<int>(P_.sigma_eff), P_.cfg.q);
        for (std::size_t a = 0; a < stage3_parts_.size(); ++a)
            for (int v : stage3_parts_[a]) pool_[v] = static_cast<int>(a);
    }
}

void HamPowerStrategy::stage3_end(const Graph& bought, const Graph& presented) {
    q_paths_.clear();
    for (const auto& part : stage3_parts_) {
        Graph sub = induced_subgraph(bought, part);
        std::vector<int> local(part.size());
        std::iota(local.begin(), local.end(), 0);
        auto cover = cover_with_gadgets(sub, local, P_.cfg.q, P_.cfg.k, false, rng_,
                                        P_.cfg.embed_budget, P_.cfg.cover_attempts);
        if (!cover) {
            fail("stage3_path_factor",
                 "no P_q^k factor in a part of size " + std::to_string(part.size()));
            return;
        }
        for (auto& host_local : *cover) {
            std::vector<int> host;
            host.reserve(host_local.size());
            for (int lv : host_local) host.push_back(part[static_cast<std::size_t>(lv)]);
            q_paths_.push_back(std::move(host));
        }
    }
    if (static_cast<long long>(q_paths_.size()) != P_.nu)
        throw std::logic_error("ham_power: path count mismatch");
    pass("stage3_path_factor", "nu=" + std::to_string(P_.nu));

    // stage IV preparation: split A' into pools and assign jobs by the
    // neighborhood-threshold matching against everything presented so far
    std::vector<int> A;
    for (const auto& emb : absorbers_) A.push_back(emb.absorption_host(tmpl_));
    long long xi4 = std::max<long long>(1, P_.xi4_eff);
    long long a2 = static_cast<long long>(A.size()) % xi4;  // |A''|
    std::vector<int> a_prime(A.begin(), A.end() - a2);
    y_pools_ = f_equipartition(a_prime, static_cast<int>(xi4), 1);

    long long jobs = P_.nu + 1;
    segments_.clear();
    segments_.push_back(q0_);
    for (const auto& p : q_paths_) segments_.push_back(p);
    x_sets_.clear();
    for (long long i = 0; i < jobs; ++i) {
        std::vector<int> x = final_endseq(segments_[static_cast<std::size_t>(i)]);
        std::vector<int> s2 = initial_endseq(segments_[static_cast<std::size_t>((i + 1) % jobs)]);
        x.insert(x.end(), s2.begin(), s2.end());
        x_sets_.push_back(std::move(x));
    }
    thr_used_ = static_cast<long long>(std::floor(P_.threshold_eff));
    auto assignment = sparse_partition_match(presented, x_sets_, y_pools_, thr_used_);
    if (!assignment) {
        fail("stage4_partition_match",
             "no neighborhood-threshold assignment at threshold " + std::to_string(thr_used_));
        return;
    }
    j_groups_ = *assignment;
    pass("stage4_partition_match",
         "xi4=" + std::to_string(xi4) + " threshold=" + std::to_string(thr_used_));

    std::fill(pool_.begin(), pool_.end(), -1);
    for (std::size_t a = 0; a < y_pools_.size(); ++a) {
        for (int v : y_pools_[a]) pool_[v] = static_cast<int>(a);
        for (int job : j_groups_[a])
            for (int v : x_sets_[static_cast<std::size_t>(job)]) pool_[v] = static_cast<int>(a);
    }
}

void HamPowerStrategy::stage4_end(const Graph& bought) {
    long long jobs = P_.nu + 1;
    links4_.assign(static_cast<std::size_t>(jobs), Linkage{});
    for (std::size_t a = 0; a < j_groups_.size(); ++a) {
        if (j_groups_[a].empty()) continue;
        LinkageFamily fam;
        for (int job : j_groups_[a]) {
            EndsequencePair p;
            p.A = final_endseq(segments_[static_cast<std::size_t>(job)]);
            p.B = initial_endseq(segments_[static_cast<std::size_t>((job + 1) % jobs)]);
            fam.pairs.push_back(std::move(p));
        }
        if (4LL * P_.cfg.r * static_cast<long long>(fam.pairs.size()) >
            static_cast<long long>(y_pools_[a].size())) {
            fail("stage4_linkages", "pool " + std::to_string(a) + " smaller than 4 r |family|");
            return;
        }
        LinkageSearchStats stats;
        auto found = find_linkage_family(bought, fam, P_.cfg.r, P_.cfg.k, y_pools_[a],
                                         P_.cfg.linkage_budget, &stats);
        if (!found) {
            fail("stage4_linkages",
                 "group " + std::to_string(a) +
                     (stats.budget_exceeded ? " search budget exceeded" : " no linkage"));
            return;
        }
        for (std::size_t i = 0; i < j_groups_[a].size(); ++i)
            links4_[static_cast<std::size_t>(j_groups_[a][i])] = (*found)[i];
    }
    pass("stage4_linkages", "jobs=" + std::to_string(jobs));

    // assemble the power of a cycle, then absorb the leftover vertices
    std::vector<int> cycle;
    for (long long i = 0; i < jobs; ++i) {
        const auto& seg = segments_[static_cast<std::size_t>(i)];
        cycle.insert(cycle.end(), seg.begin(), seg.end());
        const auto& internal = links4_[static_cast<std::size_t>(i)].internal;
        cycle.insert(cycle.end(), internal.begin(), internal.end());
    }
    std::vector<char> on_cycle(P_.n, 0);
    for (int v : cycle) on_cycle[v] = 1;
    std::vector<int> leftover;
    for (const auto& emb : absorbers_) {
        int v = emb.absorption_host(tmpl_);
        if (!on_cycle[v]) leftover.push_back(v);
    }
    std::vector<int> order = bcgp::absorb(cycle, tmpl_, absorbers_, leftover);
    if (!verify_final(bought, order))
        throw std::logic_error("ham_power: final witness fails verification");
    witness_ = std::move(order);
    pass("absorption", "leftover=" + std::to_string(leftover.size()));
}

bool HamPowerStrategy::verify_final(const Graph& g, const std::vector<int>& order) const {
    if (static_cast<int>(order.size()) != P_.n) return false;
    std::vector<char> seen(P_.n, 0);
    for (int v : order) {
        if (v < 0 || v >= P_.n || seen[v]) return false;
        seen[v] = 1;
    }
    int n = P_.n;
    for (int i = 0; i < n; ++i)
        for (int d = 1; d <= P_.cfg.k; ++d)
            if (!g.has_edge(order[i], order[(i + d) % n])) return false;
    return true;
}

std::pair<StrategySpec, HamPowerParams> make_ham_power_strategy(int n, long long t,
                                                                const HamPowerConfig& cfg) {
    HamPowerParams P = derive_params(n, t, cfg);
    StrategySpec spec;
    spec.name = "ham_power[k=" + std::to_string(cfg.k) + "]";
    spec.budget = P.budget;
    spec.make = [P](const TrialSetup& s) { return std::make_unique<HamPowerStrategy>(P, s.seed); };
    return {spec, P};
}

}  // namespace bcgp
