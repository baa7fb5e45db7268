#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bcgp/couplings.hpp"
#include "bcgp/checkers.hpp"
#include "bcgp/graph.hpp"
#include "bcgp/stats.hpp"

#include <cmath>
#include <map>

using namespace bcgp;

namespace {

bool subgraph_of(const Graph& a, const Graph& b) {
    for (const Edge& e : a.edges())
        if (!b.has_edge(e.u, e.v)) return false;
    return true;
}

Graph minus(const Graph& a, const std::vector<Graph>& subtract) {
    Graph out(a.n());
    for (const Edge& e : a.edges()) {
        bool hit = false;
        for (const Graph& s : subtract)
            if (s.has_edge(e.u, e.v)) hit = true;
        if (!hit) out.add_edge(e.u, e.v);
    }
    return out;
}

Graph unite(const Graph& a, const Graph& b) {
    Graph out = a;
    for (const Edge& e : b.edges()) out.add_edge(e.u, e.v);
    return out;
}

}  // namespace

TEST_CASE("multistage: constructive invariants on no-failure runs") {
    Rng rng(100);
    int checked = 0;
    for (int rep = 0; rep < 600; ++rep) {
        MultistageSample ms = sample_multistage(8, {4, 5}, {0.12, 0.15}, {0.10, 0.10}, rng);
        CHECK(ms.Hhat[0].edge_count() == 4);
        CHECK(ms.Hhat[1].edge_count() == 5);
        // pairwise edge-disjoint
        for (const Edge& e : ms.Hhat[0].edges()) CHECK_FALSE(ms.Hhat[1].has_edge(e.u, e.v));
        if (ms.failure_step.has_value()) continue;
        ++checked;
        // Lemma 3.3(iv) containments hold exactly
        CHECK(subgraph_of(minus(ms.H[0], {}), ms.Hhat[0]));
        CHECK(subgraph_of(ms.Hhat[0], unite(ms.H[0], ms.Hbar[0])));
        CHECK(subgraph_of(minus(ms.H[1], {ms.Hhat[0]}), ms.Hhat[1]));
        CHECK(subgraph_of(ms.Hhat[1], unite(ms.H[1], ms.Hbar[1])));
    }
    CHECK(checked > 100);
}

TEST_CASE("multistage: failure frequency falls as p approaches t/M from below") {
    Rng rng(300);
    long long M = complete_edge_count(10);  // 45
    long long t1 = 6, t2 = 6;               // t/M = 0.1333
    const int N = 3000;
    std::vector<long long> failures;
    for (double p : {0.04, 0.08, 0.12}) {
        long long f = 0;
        for (int i = 0; i < N; ++i) {
            MultistageSample ms = sample_multistage(10, {t1, t2}, {p, p}, {0.05, 0.05}, rng);
            if (ms.failure_step.has_value()) ++f;
        }
        failures.push_back(f);
    }
    double sigma = std::sqrt(N * 0.25);
    CHECK(failures[1] <= failures[0] + 3 * sigma);
    CHECK(failures[2] <= failures[1] + 3 * sigma);
    CHECK(failures[2] < failures[0]);  // clear separation at these parameters
    (void)M;
}

TEST_CASE("two-stage joint law matches the exact process law") {
    Rng rng(2711);
    CouplingValidation rep = validate_two_stage(4, 2, 2, 0.3, 0.3, 0.05, 0.05, 30000, rng);
    CHECK(rep.containment_violations == 0);
    CHECK(rep.dof == 89);
    CHECK(rep.p_value > 0.01);
}

TEST_CASE("sandwich sample") {
    Rng rng(41);
    long long M = complete_edge_count(6);
    int ok_count = 0;
    for (int rep = 0; rep < 300; ++rep) {
        SandwichSample s = sample_sandwich(6, 5, 0.25, 0.45, rng);
        CHECK(s.Ghat.edge_count() == 5);
        if (s.ok) {
            ++ok_count;
            CHECK(subgraph_of(s.H, s.Ghat));
            CHECK(subgraph_of(s.Ghat, s.Hprime));
        }
    }
    CHECK(ok_count > 150);

    // p = 0: lower containment always holds
    for (int rep = 0; rep < 50; ++rep) {
        SandwichSample s = sample_sandwich(6, 5, 0.0, 0.5, rng);
        CHECK(s.H.edge_count() == 0);
        CHECK(s.ok);
    }
    CHECK_THROWS_AS(sample_sandwich(6, 5, 0.9, 0.95, rng), std::invalid_argument);
    (void)M;
}

TEST_CASE("sandwich marginal is uniform over m-edge graphs") {
    Rng rng(99);
    auto key_of = [](const Graph& g) {
        long long k = 0;
        for (const Edge& e : g.edges()) k |= 1LL << edge_index(e);
        return k;
    };
    const long long N = 20000;
    std::map<long long, long long> counts;
    for (long long i = 0; i < N; ++i) ++counts[key_of(sample_sandwich(4, 3, 0.3, 0.7, rng).Ghat)];
    CHECK(counts.size() == 20);
    std::vector<long long> obs;
    for (const auto& kv : counts) obs.push_back(kv.second);
    std::vector<double> expect(20, N / 20.0);
    CHECK(chi_square_p_value(chi_square_stat(obs, expect), 19) > 0.01);
}

TEST_CASE("fkg exact: single-edge predicate at n=2") {
    auto has_edge = [](const Graph& g) { return g.edge_count() >= 1; };
    FkgReport rep = check_fkg_exact(2, Rational(1, 2), has_edge, has_edge);
    CHECK(rep.e_f == Rational(1, 2));
    CHECK(rep.e_fg == Rational(1, 2));
    CHECK(rep.holds);
}

TEST_CASE("fkg exact: triangle vs min degree at n=3") {
    auto triangle = [](const Graph& g) { return g.edge_count() == 3; };
    auto min_deg1 = [](const Graph& g) { return min_degree(g) >= 1; };
    FkgReport rep = check_fkg_exact(3, Rational(1, 2), triangle, min_deg1);
    CHECK(rep.e_f == Rational(1, 8));
    CHECK(rep.e_g == Rational(4, 8));
    CHECK(rep.e_fg == Rational(1, 8));
    CHECK(rep.holds);
}

TEST_CASE("fkg exact: constant predicate gives equality") {
    auto one = [](const Graph&) { return true; };
    auto tri = [](const Graph& g) { return count_copies(g, Graph::complete(3)) > 0; };
    FkgReport rep = check_fkg_exact(4, Rational(1, 4), one, tri);
    CHECK(rep.e_fg == rep.e_f * rep.e_g);
    CHECK(rep.holds);
}

TEST_CASE("fkg exact rejects non-increasing predicates") {
    auto exactly_one = [](const Graph& g) { return g.edge_count() == 1; };
    auto any = [](const Graph&) { return true; };
    CHECK_THROWS_AS(check_fkg_exact(3, Rational(1, 2), exactly_one, any), std::invalid_argument);
}

TEST_CASE("default stage probabilities mirror the proof's lambda choice") {
    std::vector<double> p, pbar;
    default_stage_probabilities(20, {16, 16}, p, pbar);
    double M = 190.0;
    double lam = std::pow(16.0, -0.25);
    CHECK(p[0] == doctest::Approx(16.0 / M * (1 - lam)));
    CHECK(pbar[0] == doctest::Approx(16.0 / M * lam));
}
