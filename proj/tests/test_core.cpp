#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bcgp/graph.hpp"
#include "bcgp/max_density.hpp"
#include "bcgp/pattern.hpp"
#include "bcgp/rational.hpp"
#include "bcgp/rng.hpp"
#include "bcgp/sampling.hpp"
#include "bcgp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

using namespace bcgp;

namespace {

// definition-faithful oracle: maximum of e(F')/(v(F')-1) over ALL subgraphs
// (vertex subset plus edge subset), not just induced ones
Rational oracle_max_one_density(const Graph& f) {
    Rational best(0, 1);
    for (unsigned mask = 0; mask < (1u << f.n()); ++mask) {
        int k = __builtin_popcount(mask);
        if (k < 2) continue;
        std::vector<Edge> inner;
        for (const Edge& e : f.edges())
            if ((mask >> e.u & 1) && (mask >> e.v & 1)) inner.push_back(e);
        for (unsigned emask = 0; emask < (1u << inner.size()); ++emask) {
            Rational d(__builtin_popcount(emask), k - 1);
            if (d > best) best = d;
        }
    }
    return best;
}

bool subset_connected(const Graph& g, unsigned mask) {
    int start = __builtin_ctz(mask);
    unsigned seen = 1u << start;
    std::vector<int> stack{start};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int u : g.neighbors(v))
            if ((mask >> u & 1) && !(seen >> u & 1)) {
                seen |= 1u << u;
                stack.push_back(u);
            }
    }
    return seen == mask;
}

Rational connected_max_one_density(const Graph& f) {
    Rational best(0, 1);
    for (unsigned mask = 0; mask < (1u << f.n()); ++mask) {
        int k = __builtin_popcount(mask);
        if (k < 2 || !subset_connected(f, mask)) continue;
        int e = 0;
        for (const Edge& ed : f.edges())
            if ((mask >> ed.u & 1) && (mask >> ed.v & 1)) ++e;
        Rational d(e, k - 1);
        if (d > best) best = d;
    }
    return best;
}

Graph random_pattern(int n, double p, Rng& rng) {
    Graph g(n);
    for (int v = 1; v < n; ++v)
        for (int u = 0; u < v; ++u)
            if (rng.bernoulli(p)) g.add_edge(u, v);
    return g;
}

}  // namespace

TEST_CASE("rational arithmetic and ordering") {
    Rational a(1, 2), b(1, 3);
    CHECK((a + b) == Rational(5, 6));
    CHECK((a - b) == Rational(1, 6));
    CHECK((a * b) == Rational(1, 6));
    CHECK((a / b) == Rational(3, 2));
    CHECK(a > b);
    CHECK(Rational(-2, -4) == Rational(1, 2));
    CHECK(Rational(2, -4) == Rational(-1, 2));
    CHECK(Rational(7, 2).str() == "7/2");
    CHECK(Rational(4, 2).str() == "2");
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("rng determinism and bounds") {
    Rng a(123), b(123);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    Rng c(5);
    for (int i = 0; i < 1000; ++i) {
        auto x = c.below(7);
        CHECK(x < 7);
    }
    CHECK(child_seed(1, 0) != child_seed(1, 1));
    CHECK(child_seed(1, 0) == child_seed(1, 0));
}

TEST_CASE("complete_edge_count") {
    CHECK(complete_edge_count(1) == 0);
    CHECK(complete_edge_count(3) == 3);
    CHECK(complete_edge_count(100) == 4950);
    CHECK_THROWS_AS(complete_edge_count(0), std::invalid_argument);
}

TEST_CASE("edge index round trip") {
    int n = 40;
    long long idx = 0;
    for (int v = 1; v < n; ++v)
        for (int u = 0; u < v; ++u) {
            CHECK(edge_index(u, v) == idx);
            Edge e = edge_from_index(idx);
            CHECK(e.u == u);
            CHECK(e.v == v);
            ++idx;
        }
}

TEST_CASE("graph basics and edge-list round trip") {
    Graph g(5);
    g.add_edge(0, 1);
    g.add_edge(3, 1);
    g.add_edge(4, 2);
    CHECK(g.edge_count() == 3);
    CHECK(g.has_edge(1, 0));
    CHECK(g.degree(1) == 2);
    CHECK_THROWS_AS(g.add_edge(2, 2), std::invalid_argument);
    Graph h = Graph::from_edge_list(g.to_edge_list());
    CHECK(h == g);
    int degsum = 0;
    for (int v = 0; v < 5; ++v) degsum += g.degree(v);
    CHECK(degsum == 2 * g.edge_count());
}

TEST_CASE("process prefix: uniform over orderings at n=3, t=3") {
    // oracle: exact enumeration -- 3 edges, 3! = 6 equally likely orders
    Rng rng(2024);
    std::map<std::vector<long long>, long long> counts;
    const long long N = 60000;
    for (long long i = 0; i < N; ++i) {
        EdgeSequence s = sample_process_prefix(3, 3, rng);
        std::vector<long long> key;
        for (const Edge& e : s.edges) key.push_back(edge_index(e));
        ++counts[key];
    }
    CHECK(counts.size() == 6);
    double expect = N / 6.0;
    double sigma = std::sqrt(N * (1.0 / 6) * (5.0 / 6));
    for (const auto& kv : counts) CHECK(std::fabs(kv.second - expect) <= 3 * sigma);
}

TEST_CASE("process prefix: trivial cases") {
    Rng rng(1);
    EdgeSequence empty = sample_process_prefix(5, 0, rng);
    CHECK(empty.edges.empty());
    for (int rep = 0; rep < 50; ++rep) {
        EdgeSequence full = sample_process_prefix(4, 6, rng);
        CHECK(full.valid());
        CHECK(full.as_graph() == Graph::complete(4));
    }
    CHECK_THROWS_AS(sample_process_prefix(3, 4, rng), std::invalid_argument);
}

TEST_CASE("gnp: trivial and mean edge count") {
    Rng rng(7);
    CHECK(sample_gnp(6, 0.0, rng).edge_count() == 0);
    CHECK(sample_gnp(6, 1.0, rng) == Graph::complete(6));
    CHECK_THROWS_AS(sample_gnp(4, 1.5, rng), std::invalid_argument);
    const long long N = 40000;
    double total = 0;
    for (long long i = 0; i < N; ++i) total += static_cast<double>(sample_gnp(4, 0.5, rng).edge_count());
    double mean = total / N;
    double sigma_mean = std::sqrt(6 * 0.25 / N);
    CHECK(std::fabs(mean - 3.0) <= 3 * sigma_mean);
}

TEST_CASE("gnm: trivial, uniformity, and process-prefix agreement") {
    Rng rng(11);
    CHECK(sample_gnm(5, 0, rng).edge_count() == 0);
    CHECK(sample_gnm(5, 10, rng) == Graph::complete(5));
    CHECK_THROWS_AS(sample_gnm(4, 7, rng), std::invalid_argument);

    // oracle: the C(6,3) = 20 graphs with 3 edges on 4 vertices are equally likely
    auto key_of = [](const Graph& g) {
        long long k = 0;
        for (const Edge& e : g.edges()) k |= 1LL << edge_index(e);
        return k;
    };
    const long long N = 20000;
    std::map<long long, long long> counts;
    for (long long i = 0; i < N; ++i) ++counts[key_of(sample_gnm(4, 3, rng))];
    CHECK(counts.size() == 20);
    std::vector<long long> obs;
    for (const auto& kv : counts) obs.push_back(kv.second);
    std::vector<double> expect(20, N / 20.0);
    double pval = chi_square_p_value(chi_square_stat(obs, expect), 19);
    CHECK(pval > 0.01);

    // truncated process prefix has the same law
    std::map<long long, long long> counts2;
    for (long long i = 0; i < N; ++i) {
        EdgeSequence s = sample_process_prefix(4, 5, rng);
        Graph g(4);
        for (int j = 0; j < 3; ++j) g.add_edge(s.edges[j].u, s.edges[j].v);
        ++counts2[key_of(g)];
    }
    CHECK(counts2.size() == 20);
    std::vector<long long> obs2;
    for (const auto& kv : counts2) obs2.push_back(kv.second);
    double pval2 = chi_square_p_value(chi_square_stat(obs2, expect), 19);
    CHECK(pval2 > 0.01);
}

TEST_CASE("one_density examples") {
    CHECK(one_density(Graph::complete(2)) == Rational(1));
    CHECK(one_density(Graph::complete(3)) == Rational(3, 2));
    CHECK(one_density(path_power(4, 1)) == Rational(1));
    CHECK_THROWS_AS(one_density(Graph(1)), std::invalid_argument);
}

TEST_CASE("max_one_density examples") {
    CHECK(max_one_density(Graph::complete(4)) == Rational(2));
    CHECK(max_one_density(Graph::complete(2)) == Rational(1));
    // P_5^2: 5 vertices, 7 edges; oracle by full subgraph enumeration
    Graph p52 = path_power(5, 2);
    CHECK(p52.edge_count() == 7);
    CHECK(max_one_density(p52) == Rational(7, 4));
    CHECK(oracle_max_one_density(p52) == Rational(7, 4));
    CHECK(max_one_density(p52) < Rational(2));  // d*(P_q^k) < k
    Graph too_big(13);
    CHECK_THROWS_AS(max_one_density(too_big), std::length_error);
}

TEST_CASE("strict 1-balancedness examples") {
    CHECK(is_strictly_one_balanced(Graph::complete(3)));
    CHECK_FALSE(is_strictly_one_balanced(path_power(3, 1)));  // an edge ties d = 1
    Graph two_triangles(6);
    for (int base : {0, 3}) {
        two_triangles.add_edge(base, base + 1);
        two_triangles.add_edge(base + 1, base + 2);
        two_triangles.add_edge(base, base + 2);
    }
    CHECK_FALSE(is_strictly_one_balanced(two_triangles));
}

TEST_CASE("vertex balancedness examples") {
    CHECK(is_vertex_balanced(Graph::complete(3)));
    CHECK(is_vertex_balanced(Graph::complete(2)));
    Graph pendant(4);  // triangle with a pendant vertex
    pendant.add_edge(0, 1);
    pendant.add_edge(1, 2);
    pendant.add_edge(0, 2);
    pendant.add_edge(2, 3);
    CHECK_FALSE(is_vertex_balanced(pendant));
}

TEST_CASE("balancedness properties on small patterns") {
    Rng rng(31);
    // exhaustive on all graphs with 4 vertices, random beyond
    for (unsigned mask = 0; mask < 64; ++mask) {
        Graph g(4);
        for (long long b = 0; b < 6; ++b)
            if (mask >> b & 1) {
                Edge e = edge_from_index(b);
                g.add_edge(e.u, e.v);
            }
        if (g.edge_count() == 0) continue;
        CHECK(max_one_density(g) == oracle_max_one_density(g));
        CHECK(max_one_density(g) == connected_max_one_density(g));
        if (is_strictly_one_balanced(g)) CHECK(is_vertex_balanced(g));
    }
    for (int rep = 0; rep < 60; ++rep) {
        Graph g = random_pattern(7, 0.45, rng);
        if (g.edge_count() == 0) continue;
        CHECK(max_one_density(g) == connected_max_one_density(g));
        if (is_strictly_one_balanced(g)) CHECK(is_vertex_balanced(g));
    }
}

TEST_CASE("flow-based exact density agrees with enumeration and extends past the cap") {
    Rng rng(77);
    for (int rep = 0; rep < 40; ++rep) {
        Graph g = random_pattern(9, 0.35, rng);
        if (g.edge_count() == 0) continue;
        CHECK(max_one_density_exact(g) == max_one_density(g));
    }
    for (int r = 2; r <= 8; ++r) CHECK(max_one_density_exact(Graph::complete(r)) == Rational(r, 2));
    // a 30-vertex path square, far beyond the enumeration cap
    Graph big = path_power(30, 2);
    Rational d = max_one_density_exact(big);
    CHECK(d == Rational(big.edge_count(), big.n() - 1));
    CHECK(d < Rational(2));
}

TEST_CASE("f_equipartition examples") {
    std::vector<int> v12(12);
    for (int i = 0; i < 12; ++i) v12[i] = i;
    auto parts = f_equipartition(v12, 3, 3);
    REQUIRE(parts.size() == 3);
    CHECK(parts[0].size() == 6);
    CHECK(parts[1].size() == 3);
    CHECK(parts[2].size() == 3);

    auto quarters = f_equipartition(v12, 4, 3);
    for (const auto& p : quarters) CHECK(p.size() == 3);

    std::vector<int> v10(10);
    for (int i = 0; i < 10; ++i) v10[i] = i;
    auto halves = f_equipartition(v10, 2, 2);
    CHECK(halves[0].size() == 6);
    CHECK(halves[1].size() == 4);

    CHECK_THROWS_AS(f_equipartition(v10, 2, 3), std::invalid_argument);
    CHECK_THROWS_AS(f_equipartition(v12, 5, 3), std::invalid_argument);
}

TEST_CASE("builtin patterns") {
    CHECK(builtin_pattern("K3") == Graph::complete(3));
    Graph p = builtin_pattern("Pq^k:q=5,k=2");
    CHECK(p == path_power(5, 2));
    CHECK_THROWS_AS(builtin_pattern("Q8"), std::invalid_argument);
    // patterns are also accepted as edge-list text
    CHECK(parse_pattern("3 3\n0 1\n0 2\n1 2\n") == Graph::complete(3));
    CHECK(parse_pattern("K4") == Graph::complete(4));
}
