#include "bcgp/pattern.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace bcgp {

namespace {

void require_pattern(const Graph& f) {
    if (f.n() < 2) throw std::invalid_argument("pattern: needs at least 2 vertices");
    if (f.n() > kMaxPatternVertices) throw std::length_error("pattern: exceeds 12-vertex cap");
}

int induced_edges(const Graph& f, unsigned mask) {
    int e = 0;
    for (int v = 0; v < f.n(); ++v) {
        if (!(mask >> v & 1)) continue;
        for (int u = 0; u < v; ++u)
            if ((mask >> u & 1) && f.has_edge(u, v)) ++e;
    }
    return e;
}

}  // namespace

Rational one_density(const Graph& f) {
    if (f.n() < 2) throw std::invalid_argument("one_density: needs at least 2 vertices");
    return Rational(f.edge_count(), f.n() - 1);
}

// The maximizing subgraph may be taken induced: restricting to a vertex set
// and keeping all edges only increases e(F')/(v(F')-1).
Rational max_one_density(const Graph& f) {
    require_pattern(f);
    Rational best(0, 1);
    unsigned full = 1u << f.n();
    for (unsigned mask = 0; mask < full; ++mask) {
        int k = __builtin_popcount(mask);
        if (k < 2) continue;
        Rational d(induced_edges(f, mask), k - 1);
        if (d > best) best = d;
    }
    return best;
}

Rational max_one_density_at(const Graph& f, int v) {
    require_pattern(f);
    if (v < 0 || v >= f.n()) throw std::invalid_argument("max_one_density_at: vertex out of range");
    Rational best(0, 1);
    unsigned full = 1u << f.n();
    for (unsigned mask = 0; mask < full; ++mask) {
        if (!(mask >> v & 1)) continue;
        int k = __builtin_popcount(mask);
        if (k < 2) continue;
        Rational d(induced_edges(f, mask), k - 1);
        if (d > best) best = d;
    }
    return best;
}

// Proper subgraphs split into (a) spanning ones missing an edge, which have
// d = (e-j)/(v-1) < d(F) automatically, and (b) those on a proper vertex
// subset, where the densest choice is induced. So it suffices to check
// induced proper subsets.
bool is_strictly_one_balanced(const Graph& f) {
    require_pattern(f);
    Rational d = one_density(f);
    unsigned full = 1u << f.n();
    for (unsigned mask = 0; mask + 1 < full; ++mask) {
        int k = __builtin_popcount(mask);
        if (k < 2) continue;
        if (Rational(induced_edges(f, mask), k - 1) >= d) return false;
    }
    return true;
}

bool is_vertex_balanced(const Graph& f) {
    require_pattern(f);
    Rational dstar = max_one_density(f);
    for (int v = 0; v < f.n(); ++v)
        if (max_one_density_at(f, v) != dstar) return false;
    return true;
}

PatternStats PatternStats::analyze(const Graph& f) {
    PatternStats s;
    s.pattern = f;
    s.one_density = bcgp::one_density(f);
    s.max_one_density = bcgp::max_one_density(f);
    s.strictly_one_balanced = bcgp::is_strictly_one_balanced(f);
    s.vertex_balanced = bcgp::is_vertex_balanced(f);
    return s;
}

std::vector<std::vector<int>> f_equipartition(const std::vector<int>& universe, int parts, int block) {
    long long n = static_cast<long long>(universe.size());
    if (parts < 1) throw std::invalid_argument("f_equipartition: parts must be >= 1");
    if (block < 1) throw std::invalid_argument("f_equipartition: block must be >= 1");
    if (n % block != 0) throw std::invalid_argument("f_equipartition: size not divisible by block");
    long long units = n / block;
    if (units < parts) throw std::invalid_argument("f_equipartition: more parts than blocks");
    long long lo = units / parts, hi = lo + (units % parts ? 1 : 0);
    long long big = units % parts;  // this many parts get hi units
    std::vector<std::vector<int>> out;
    out.reserve(static_cast<std::size_t>(parts));
    std::size_t pos = 0;
    for (int i = 0; i < parts; ++i) {
        long long u = (i < big) ? hi : lo;
        std::vector<int> part;
        part.reserve(static_cast<std::size_t>(u * block));
        for (long long j = 0; j < u * block; ++j) part.push_back(universe[pos++]);
        out.push_back(std::move(part));
    }
    return out;
}

Graph path_power(int q, int k) {
    if (q < 1 || k < 1) throw std::invalid_argument("path_power: bad parameters");
    Graph g(q);
    for (int i = 0; i < q; ++i)
        for (int d = 1; d <= k && i + d < q; ++d) g.add_edge(i, i + d);
    return g;
}

Graph cycle_power(int n, int k) {
    if (n < 3 || k < 1 || n <= 2 * k) throw std::invalid_argument("cycle_power: need n > 2k");
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int d = 1; d <= k; ++d) g.add_edge(i, (i + d) % n);
    return g;
}

Graph builtin_pattern(const std::string& name) {
    if (name.size() >= 2 && name[0] == 'K') {
        int r = std::stoi(name.substr(1));
        if (r < 2 || r > kMaxPatternVertices) throw std::invalid_argument("builtin_pattern: bad clique size");
        return Graph::complete(r);
    }
    if (name.rfind("Pq^k:", 0) == 0) {
        int q = -1, k = -1;
        std::string rest = name.substr(5);
        std::istringstream is(rest);
        std::string tok;
        while (std::getline(is, tok, ',')) {
            auto eq = tok.find('=');
            if (eq == std::string::npos) throw std::invalid_argument("builtin_pattern: bad Pq^k parameters");
            std::string key = tok.substr(0, eq);
            int val = std::stoi(tok.substr(eq + 1));
            if (key == "q") q = val;
            else if (key == "k") k = val;
            else throw std::invalid_argument("builtin_pattern: unknown key " + key);
        }
        if (q < 2 || k < 1) throw std::invalid_argument("builtin_pattern: Pq^k needs q>=2,k>=1");
        return path_power(q, k);
    }
    throw std::invalid_argument("builtin_pattern: unknown pattern " + name);
}

Graph parse_pattern(const std::string& text) {
    if (!text.empty() && (text[0] == 'K' || text.rfind("Pq^k:", 0) == 0)) return builtin_pattern(text);
    return Graph::from_edge_list(text);
}

}  // namespace bcgp
