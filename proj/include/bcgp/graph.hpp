#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace bcgp {

struct Edge {
    int u;
    int v;
    bool operator==(const Edge& o) const { return u == o.u && v == o.v; }
    bool operator<(const Edge& o) const { return u < o.u || (u == o.u && v < o.v); }
};

// normalized so the stored pair is (min,max)
inline Edge make_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

// canonical linear index of the edge {u,v}, u < v: C(v,2) + u
inline long long edge_index(int u, int v) {
    if (u > v) std::swap(u, v);
    return static_cast<long long>(v) * (v - 1) / 2 + u;
}
inline long long edge_index(const Edge& e) { return edge_index(e.u, e.v); }
Edge edge_from_index(long long idx);

long long complete_edge_count(long long n);

// Undirected simple graph on [n] with per-vertex neighbor bitsets.
// Construction is single-writer; sampled graphs are treated as immutable
// afterwards and may be shared read-only across trials.
class Graph {
public:
    Graph() : n_(0), words_(0), edges_(0) {}
    explicit Graph(int n);

    int n() const { return n_; }
    long long edge_count() const { return edges_; }

    bool has_edge(int u, int v) const {
        return (bits_[static_cast<std::size_t>(u) * words_ + (v >> 6)] >> (v & 63)) & 1;
    }
    void add_edge(int u, int v);
    void remove_edge(int u, int v);

    int degree(int v) const;
    std::vector<int> neighbors(int v) const;

    // raw row access for set algebra in the search code
    const std::uint64_t* row(int v) const { return bits_.data() + static_cast<std::size_t>(v) * words_; }
    int words() const { return words_; }

    std::vector<Edge> edges() const;

    bool operator==(const Graph& o) const { return n_ == o.n_ && bits_ == o.bits_; }

    // edge-list text format: first line "n m", then m lines "u v" with u < v
    std::string to_edge_list() const;
    static Graph from_edge_list(std::istream& in);
    static Graph from_edge_list(const std::string& text);

    static Graph complete(int n);
    static Graph from_edges(int n, const std::vector<Edge>& edges);

private:
    int n_;
    int words_;
    long long edges_;
    std::vector<std::uint64_t> bits_;
};

// Ordered sequence of distinct edges of K_n (a prefix of the process).
struct EdgeSequence {
    int n = 0;
    std::vector<Edge> edges;

    Graph as_graph() const;
    // distinctness, range and loop-freeness
    bool valid() const;
};

}  // namespace bcgp
