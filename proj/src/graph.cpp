#include "bcgp/graph.hpp"

#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

namespace bcgp {

long long complete_edge_count(long long n) {
    if (n < 1) throw std::invalid_argument("complete_edge_count: n must be >= 1");
    return n * (n - 1) / 2;
}

Edge edge_from_index(long long idx) {
    // invert idx = v(v-1)/2 + u with 0 <= u < v
    long long v = static_cast<long long>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(idx))) / 2.0);
    while (v * (v - 1) / 2 > idx) --v;
    while ((v + 1) * v / 2 <= idx) ++v;
    long long u = idx - v * (v - 1) / 2;
    return Edge{static_cast<int>(u), static_cast<int>(v)};
}

Graph::Graph(int n) : n_(n), words_((n + 63) / 64), edges_(0) {
    if (n < 0) throw std::invalid_argument("Graph: negative vertex count");
    bits_.assign(static_cast<std::size_t>(n_) * words_, 0);
}

void Graph::add_edge(int u, int v) {
    if (u == v) throw std::invalid_argument("Graph: loop");
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw std::invalid_argument("Graph: vertex out of range");
    if (has_edge(u, v)) return;
    bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] |= 1ULL << (v & 63);
    bits_[static_cast<std::size_t>(v) * words_ + (u >> 6)] |= 1ULL << (u & 63);
    ++edges_;
}

void Graph::remove_edge(int u, int v) {
    if (!has_edge(u, v)) return;
    bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] &= ~(1ULL << (v & 63));
    bits_[static_cast<std::size_t>(v) * words_ + (u >> 6)] &= ~(1ULL << (u & 63));
    --edges_;
}

int Graph::degree(int v) const {
    const std::uint64_t* r = row(v);
    int d = 0;
    for (int w = 0; w < words_; ++w) d += __builtin_popcountll(r[w]);
    return d;
}

std::vector<int> Graph::neighbors(int v) const {
    std::vector<int> out;
    const std::uint64_t* r = row(v);
    for (int w = 0; w < words_; ++w) {
        std::uint64_t x = r[w];
        while (x) {
            int b = __builtin_ctzll(x);
            out.push_back(w * 64 + b);
            x &= x - 1;
        }
    }
    return out;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(static_cast<std::size_t>(edges_));
    for (int v = 1; v < n_; ++v) {
        const std::uint64_t* r = row(v);
        for (int w = 0; w <= (v - 1) >> 6; ++w) {
            std::uint64_t x = r[w];
            while (x) {
                int b = __builtin_ctzll(x);
                int u = w * 64 + b;
                if (u < v) out.push_back(Edge{u, v});
                x &= x - 1;
            }
        }
    }
    return out;
}

std::string Graph::to_edge_list() const {
    std::ostringstream os;
    os << n_ << ' ' << edges_ << '\n';
    for (const Edge& e : edges()) os << e.u << ' ' << e.v << '\n';
    return os.str();
}

Graph Graph::from_edge_list(std::istream& in) {
    int n;
    long long m;
    if (!(in >> n >> m)) throw std::invalid_argument("edge list: bad header");
    Graph g(n);
    for (long long i = 0; i < m; ++i) {
        int u, v;
        if (!(in >> u >> v)) throw std::invalid_argument("edge list: truncated");
        g.add_edge(u, v);
    }
    if (g.edge_count() != m) throw std::invalid_argument("edge list: duplicate edges");
    return g;
}

Graph Graph::from_edge_list(const std::string& text) {
    std::istringstream is(text);
    return from_edge_list(is);
}

Graph Graph::complete(int n) {
    Graph g(n);
    for (int v = 1; v < n; ++v)
        for (int u = 0; u < v; ++u) g.add_edge(u, v);
    return g;
}

Graph Graph::from_edges(int n, const std::vector<Edge>& edges) {
    Graph g(n);
    for (const Edge& e : edges) g.add_edge(e.u, e.v);
    return g;
}

Graph EdgeSequence::as_graph() const {
    Graph g(n);
    for (const Edge& e : edges) g.add_edge(e.u, e.v);
    return g;
}

bool EdgeSequence::valid() const {
    std::set<long long> seen;
    for (const Edge& e : edges) {
        if (e.u == e.v) return false;
        if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) return false;
        if (!seen.insert(edge_index(e)).second) return false;
    }
    return true;
}

}  // namespace bcgp
