#include "bcgp/max_density.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <stdexcept>
#include <vector>

namespace bcgp {

namespace {

struct Dinic {
    struct Arc {
        int to;
        long long cap;
        int rev;
    };
    std::vector<std::vector<Arc>> adj;
    std::vector<int> level, iter;

    explicit Dinic(int n) : adj(n), level(n), iter(n) {}

    void add(int a, int b, long long c) {
        adj[a].push_back({b, c, static_cast<int>(adj[b].size())});
        adj[b].push_back({a, 0, static_cast<int>(adj[a].size()) - 1});
    }

    bool bfs(int s, int t) {
        std::fill(level.begin(), level.end(), -1);
        std::queue<int> q;
        level[s] = 0;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (const Arc& a : adj[v])
                if (a.cap > 0 && level[a.to] < 0) {
                    level[a.to] = level[v] + 1;
                    q.push(a.to);
                }
        }
        return level[t] >= 0;
    }

    long long dfs(int v, int t, long long f) {
        if (v == t) return f;
        for (int& i = iter[v]; i < static_cast<int>(adj[v].size()); ++i) {
            Arc& a = adj[v][i];
            if (a.cap > 0 && level[v] < level[a.to]) {
                long long d = dfs(a.to, t, std::min(f, a.cap));
                if (d > 0) {
                    a.cap -= d;
                    adj[a.to][a.rev].cap += d;
                    return d;
                }
            }
        }
        return 0;
    }

    long long max_flow(int s, int t) {
        long long flow = 0;
        while (bfs(s, t)) {
            std::fill(iter.begin(), iter.end(), 0);
            long long f;
            while ((f = dfs(s, t, std::numeric_limits<long long>::max())) > 0) flow += f;
        }
        return flow;
    }

    // vertices reachable from s in the residual graph (source side of a min cut)
    std::vector<bool> min_cut_side(int s) {
        std::vector<bool> vis(adj.size(), false);
        std::queue<int> q;
        vis[s] = true;
        q.push(s);
        while (!q.empty()) {
            int v = q.front();
            q.pop();
            for (const Arc& a : adj[v])
                if (a.cap > 0 && !vis[a.to]) {
                    vis[a.to] = true;
                    q.push(a.to);
                }
        }
        return vis;
    }
};

// For a fixed anchor v, subsets S containing v with |S| >= 2 rewrite as
// S = {v} + T, and e(S)/(|S|-1) = (e(T) + |N(v) cap T|)/|T|. Whether some
// nonempty T beats a guess g = a/b reduces to a min cut: maximize
// b*(e(T) + w(T)) - a*|T|, strict positivity <=> improvement.
struct Anchored {
    const Graph& g;
    int v;
    std::vector<int> verts;       // V minus v
    std::vector<int> pos;         // vertex id -> index in verts
    std::vector<Edge> inner;      // edges within verts

    Anchored(const Graph& graph, int anchor) : g(graph), v(anchor), pos(graph.n(), -1) {
        for (int u = 0; u < g.n(); ++u)
            if (u != v) {
                pos[u] = static_cast<int>(verts.size());
                verts.push_back(u);
            }
        for (const Edge& e : g.edges())
            if (e.u != v && e.v != v) inner.push_back(e);
    }

    // returns true and fills T if some nonempty T has (e(T)+w(T))/|T| > a/b
    bool improve(long long a, long long b, std::vector<int>& T) const {
        int nv = static_cast<int>(verts.size());
        int ne = static_cast<int>(inner.size());
        int S = nv + ne, Tk = S + 1;
        Dinic net(S + 2);
        long long total = 0;
        for (int i = 0; i < ne; ++i) {
            net.add(S, nv + i, b);
            total += b;
            net.add(nv + i, pos[inner[i].u], std::numeric_limits<long long>::max() / 4);
            net.add(nv + i, pos[inner[i].v], std::numeric_limits<long long>::max() / 4);
        }
        for (int i = 0; i < nv; ++i) {
            if (g.has_edge(v, verts[i])) {
                net.add(S, i, b);
                total += b;
            }
            net.add(i, Tk, a);
        }
        long long cut = net.max_flow(S, Tk);
        if (total - cut <= 0) return false;
        std::vector<bool> side = net.min_cut_side(S);
        T.clear();
        for (int i = 0; i < nv; ++i)
            if (side[i]) T.push_back(verts[i]);
        return !T.empty();
    }

    Rational value(const std::vector<int>& T) const {
        std::vector<bool> in(g.n(), false);
        for (int u : T) in[u] = true;
        long long e = 0;
        for (const Edge& ed : inner)
            if (in[ed.u] && in[ed.v]) ++e;
        long long w = 0;
        for (int u : T)
            if (g.has_edge(v, u)) ++w;
        return Rational(e + w, static_cast<long long>(T.size()));
    }
};

}  // namespace

Rational max_one_density_exact(const Graph& g) {
    if (g.n() < 2) throw std::invalid_argument("max_one_density_exact: needs >= 2 vertices");
    if (g.edge_count() == 0) return Rational(0);
    Rational best(1);  // a single edge
    for (int v = 0; v < g.n(); ++v) {
        if (g.degree(v) == 0) continue;
        Anchored a(g, v);
        for (;;) {
            std::vector<int> T;
            if (!a.improve(best.num(), best.den(), T)) break;
            Rational cand = a.value(T);
            if (!(cand > best)) break;  // defensive; Dinkelbach strictly improves
            best = cand;
        }
    }
    return best;
}

}  // namespace bcgp
