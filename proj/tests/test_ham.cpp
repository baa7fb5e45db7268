#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bcgp/absorber.hpp"
#include "bcgp/checkers.hpp"
#include "bcgp/ham_power.hpp"
#include "bcgp/linkage.hpp"
#include "bcgp/max_density.hpp"
#include "bcgp/pattern.hpp"
#include "bcgp/sampling.hpp"
#include "support/ham_soundness.hpp"

#include <cmath>
#include <set>

using namespace bcgp;

TEST_CASE("absorber template: size, invariants, density") {
    Absorber a = build_absorber_template(3, 4, 2);
    CHECK(a.s == 40);
    CHECK(a.order() == 41);
    CHECK_NOTHROW(check_absorber_invariants(a, 1.0 / 3));
    Rational d = max_one_density_exact(a.edges);
    CHECK(d <= Rational(2) + Rational(1, 3));
    CHECK(d == Rational(9, 4));  // the insertion construction lands exactly here

    CHECK_THROWS_AS(build_absorber_template(2, 4, 2), std::invalid_argument);
    CHECK_THROWS_AS(build_absorber_template(3, 3, 2), std::invalid_argument);
    CHECK_THROWS_AS(build_absorber_template(3, 8, 1), std::invalid_argument);
}

TEST_CASE("absorber density bound across the committed configs") {
    // sweeping l upward: the first l >= 2k already meets k + 1/3
    for (int k : {2, 3}) {
        int ell0 = -1;
        for (int ell = 2 * k; ell <= 2 * k + 3; ++ell) {
            Absorber a = build_absorber_template(3, ell, k);
            if (max_one_density_exact(a.edges) <= Rational(k) + Rational(1, 3)) {
                ell0 = ell;
                break;
            }
        }
        CHECK(ell0 == 2 * k);
    }
}

TEST_CASE("absorb swaps a spine for its augmented path on a synthetic host") {
    Absorber tmpl = build_absorber_template(3, 4, 2);
    int s = tmpl.s;
    // host: template vertices 0..s (with s the absorption vertex) plus a pad ring
    int pad = 10;
    int hn = s + 1 + pad;
    std::vector<int> ring;
    for (int i = 0; i < s; ++i) ring.push_back(i);
    for (int i = 0; i < pad; ++i) ring.push_back(s + 1 + i);
    Graph host(hn);
    for (std::size_t i = 0; i < ring.size(); ++i)
        for (int d = 1; d <= 2; ++d)
            host.add_edge(ring[i], ring[(i + static_cast<std::size_t>(d)) % ring.size()]);
    for (const Edge& e : tmpl.edges.edges()) host.add_edge(e.u, e.v);

    EmbeddedAbsorber emb;
    emb.host.resize(static_cast<std::size_t>(s + 1));
    for (int i = 0; i <= s; ++i) emb.host[static_cast<std::size_t>(i)] = i;
    REQUIRE(embedded_absorber_ok(host, tmpl, emb));

    std::vector<int> leftover{tmpl.absorption_vertex};
    std::vector<int> absorbed = absorb(ring, tmpl, {emb}, leftover);
    CHECK(absorbed.size() == ring.size() + 1);
    // the host graph contains every required edge of the new cyclic order
    Graph full = host;
    CHECK(verify_ham_power(full, absorbed, 2));

    // empty leftover is the identity
    CHECK(absorb(ring, tmpl, {emb}, {}) == ring);
}

TEST_CASE("absorb handles two absorbers and reversed spines") {
    Absorber tmpl = build_absorber_template(3, 4, 2);
    int s = tmpl.s;
    int hn = 2 * (s + 1) + 12;
    // two embedded copies: identity and shifted by s+1
    EmbeddedAbsorber e1, e2;
    for (int i = 0; i <= s; ++i) e1.host.push_back(i);
    for (int i = 0; i <= s; ++i) e2.host.push_back(s + 1 + i);
    std::vector<int> ring;
    for (int i = 0; i < s; ++i) ring.push_back(i);
    // the second spine traversed backwards
    for (int i = s - 1; i >= 0; --i) ring.push_back(s + 1 + i);
    for (int i = 2 * (s + 1); i < hn; ++i) ring.push_back(i);
    Graph host(hn);
    for (std::size_t i = 0; i < ring.size(); ++i)
        for (int d = 1; d <= 2; ++d)
            host.add_edge(ring[i], ring[(i + static_cast<std::size_t>(d)) % ring.size()]);
    for (const Edge& e : tmpl.edges.edges()) {
        host.add_edge(e.u, e.v);
        host.add_edge(s + 1 + e.u, s + 1 + e.v);
    }
    std::vector<int> leftover{tmpl.absorption_vertex, s + 1 + tmpl.absorption_vertex};
    std::vector<int> absorbed = absorb(ring, tmpl, {e1, e2}, leftover);
    CHECK(absorbed.size() == ring.size() + 2);
    CHECK(verify_ham_power(host, absorbed, 2));
}

TEST_CASE("find_linkage basics") {
    // k=1, r=1: needs a middle vertex adjacent to both endpoints
    Graph g(5);
    g.add_edge(0, 2);
    g.add_edge(2, 1);
    EndsequencePair pair{{0}, {1}};
    auto l = find_linkage(g, pair, 1, 1, {2, 3, 4});
    REQUIRE(l.has_value());
    CHECK(l->internal == std::vector<int>{2});

    Graph empty(5);
    CHECK_FALSE(find_linkage(empty, pair, 1, 1, {2, 3, 4}).has_value());

    // complete host: always found for any r fitting the pool
    Graph k12 = Graph::complete(12);
    EndsequencePair p2{{0, 1}, {2, 3}};
    for (int r = 0; r <= 5; ++r) {
        std::vector<int> allowed;
        for (int v = 4; v < 12; ++v) allowed.push_back(v);
        auto lk = find_linkage(k12, p2, r, 2, allowed);
        REQUIRE(lk.has_value());
        CHECK(static_cast<int>(lk->internal.size()) == r);
        // no edge of the linkage lies inside A or inside B
        for (const Edge& e : lk->edges) {
            bool inA = (e.u == 0 || e.u == 1) && (e.v == 0 || e.v == 1);
            bool inB = (e.u == 2 || e.u == 3) && (e.v == 2 || e.v == 3);
            CHECK_FALSE(inA);
            CHECK_FALSE(inB);
        }
    }
    CHECK_THROWS_AS(find_linkage(k12, p2, 2, 2, {0, 5}), std::invalid_argument);
}

TEST_CASE("linkage edge sets match the definition") {
    // k=2, r=2: power of a 6-path minus the edges inside the endsequences
    EndsequencePair p{{10, 11}, {12, 13}};
    std::vector<int> internal{20, 21};
    std::vector<Edge> edges = linkage_edges(p, internal, 2);
    std::set<std::pair<int, int>> got;
    for (const Edge& e : edges) got.insert({e.u, e.v});
    std::set<std::pair<int, int>> expect{{10, 20}, {11, 20}, {11, 21}, {20, 21},
                                         {12, 20}, {12, 21}, {13, 21}};
    // normalize expected pairs
    std::set<std::pair<int, int>> expect_norm;
    for (auto [a, b] : expect) expect_norm.insert({std::min(a, b), std::max(a, b)});
    CHECK(got == expect_norm);
}

TEST_CASE("find_linkage_family") {
    Graph k14 = Graph::complete(14);
    LinkageFamily fam;
    fam.pairs.push_back(EndsequencePair{{0, 1}, {2, 3}});
    fam.pairs.push_back(EndsequencePair{{4, 5}, {6, 7}});
    // allowed pool of exactly 2r hosts two disjoint linkages in a complete graph
    int r = 3;
    std::vector<int> allowed{8, 9, 10, 11, 12, 13};
    auto res = find_linkage_family(k14, fam, r, 2, allowed);
    REQUIRE(res.has_value());
    CHECK(res->size() == 2);
    std::set<int> used;
    for (const Linkage& l : *res)
        for (int v : l.internal) CHECK(used.insert(v).second);

    // single pair reduces to find_linkage
    LinkageFamily one;
    one.pairs.push_back(EndsequencePair{{0, 1}, {2, 3}});
    auto res1 = find_linkage_family(k14, one, 2, 2, allowed);
    REQUIRE(res1.has_value());
    CHECK(res1->size() == 1);
}

TEST_CASE("sparse_partition_match") {
    // empty previous graph: the canonical interval partition comes back
    Graph empty(12);
    std::vector<std::vector<int>> xs{{0, 1}, {2, 3}, {4, 5}, {6, 7}};
    std::vector<std::vector<int>> ys{{8, 9}, {10, 11}};
    auto res = sparse_partition_match(empty, xs, ys, 0);
    REQUIRE(res.has_value());
    CHECK((*res)[0] == std::vector<int>{0, 1});
    CHECK((*res)[1] == std::vector<int>{2, 3});

    // threshold at pool size always succeeds
    Graph dense = Graph::complete(12);
    auto res2 = sparse_partition_match(dense, xs, ys, 2);
    CHECK(res2.has_value());

    // one X adjacent to everything with threshold 0: no valid assignment
    Graph adv(12);
    for (int y : {8, 9, 10, 11}) adv.add_edge(0, y);
    std::vector<std::vector<int>> xs_adv{{0, 1}, {2, 3}};
    auto res3 = sparse_partition_match(adv, xs_adv, ys, 0);
    CHECK_FALSE(res3.has_value());

    // matcher beats the greedy interval assignment when intervals fail
    Graph skew(12);
    for (int y : {8, 9}) skew.add_edge(0, y);  // X_0 incompatible with Y_0 only
    auto res4 = sparse_partition_match(skew, xs_adv, ys, 0);
    REQUIRE(res4.has_value());
    CHECK((*res4)[0] == std::vector<int>{1});
    CHECK((*res4)[1] == std::vector<int>{0});
}

TEST_CASE("derive_params on the documented example") {
    HamPowerConfig cfg;
    cfg.k = 2;
    cfg.j = 3;
    cfg.ell = 4;
    cfg.q = 47;
    cfg.r = 3;
    int n = 10000;
    long long M = complete_edge_count(n);
    HamPowerParams P = derive_params(n, M / 5, cfg);
    CHECK(P.s == 40);
    // the defining constraint of the eta window
    CHECK((n - P.eta * (P.s + 1) - (P.eta - 1) * cfg.r) % cfg.q == 0);
    CHECK(P.eta >= n / (3 * 41) - cfg.q + 1);
    CHECK(P.eta <= n / (3 * 41));
    CHECK(P.nu == (n - P.eta * 41 - (P.eta - 1) * 3) / 47);
    // xi formula echo
    double tn2 = static_cast<double>(M / 5) / (static_cast<double>(n) * n);
    long long xi = static_cast<long long>(std::floor(std::pow(tn2, cfg.k / (1.0 - cfg.eps / 2.0)) * n));
    CHECK(P.xi_formula == xi);
    CHECK(P.to_json().find("\"eta\"") != std::string::npos);

    HamPowerConfig bad = cfg;
    bad.q = 48;  // not prime
    CHECK_THROWS_AS(derive_params(n, M / 5, bad), std::invalid_argument);
    bad.q = 43;  // not > s+1+r
    CHECK_THROWS_AS(derive_params(n, M / 5, bad), std::invalid_argument);
}

TEST_CASE("cover_with_gadgets: path factors in dense graphs") {
    Rng rng(606);
    Rng sample_rng(607);
    // three disjoint spanning P_8^2 in a dense random graph on 24 vertices
    Graph g = sample_gnp(24, 0.85, sample_rng);
    std::vector<int> part(24);
    for (int i = 0; i < 24; ++i) part[i] = i;
    auto cover = cover_with_gadgets(g, part, 8, 2, false, rng, 500'000, 40);
    REQUIRE(cover.has_value());
    CHECK(cover->size() == 3);
    std::set<int> seen;
    for (const auto& path : *cover) {
        CHECK(path.size() == 8);
        for (int v : path) CHECK(seen.insert(v).second);
        for (std::size_t i = 0; i < path.size(); ++i)
            for (int d = 1; d <= 2 && i + d < path.size(); ++d)
                CHECK(g.has_edge(path[i], path[i + static_cast<std::size_t>(d)]));
    }
}

TEST_CASE("cover_with_gadgets: absorber embedding in a dense graph") {
    Rng rng(707);
    Rng sample_rng(708);
    Absorber tmpl = build_absorber_template(3, 4, 2);
    Graph g = sample_gnp(41, 0.9, sample_rng);
    std::vector<int> part(41);
    for (int i = 0; i < 41; ++i) part[i] = i;
    auto cover = cover_with_gadgets(g, part, tmpl.s, 2, true, rng, 2'000'000, 60);
    REQUIRE(cover.has_value());
    REQUIRE(cover->size() == 1);
    EmbeddedAbsorber emb{(*cover)[0]};
    CHECK(embedded_absorber_ok(g, tmpl, emb));
}

TEST_CASE("four-stage strategy: structural soundness on a small instance") {
    HamPowerConfig cfg;
    cfg.k = 2;
    cfg.j = 3;
    cfg.ell = 4;
    cfg.q = 83;
    cfg.r = 2;
    cfg.stage1_part_gadgets = 1;
    int n = 124;
    long long M = complete_edge_count(n);
    long long t = (M * 9) / 10;
    auto [spec, params] = make_ham_power_strategy(n, t, cfg);
    CHECK(params.eta == 1);
    CHECK(params.nu == 1);

    int sound = 0;
    Checker soundness{"ham_soundness", [&](const CheckContext& ctx) {
                          const auto* hs = dynamic_cast<const HamPowerStrategy*>(&ctx.strategy);
                          REQUIRE(hs != nullptr);
                          std::string err = bcgp_test::verify_ham_stage_structures(
                              *hs, ctx.bought, ctx.presented, ctx.stage_log);
                          if (!err.empty()) FAIL(err);
                          ++sound;
                          return true;
                      }};
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        TrialOutcome o = run_trial(n, t, spec, soundness, seed);
        CHECK_FALSE(o.errored);
        CHECK(o.budget_used <= params.budget);
        CHECK_FALSE(o.stage_log.empty());
    }
    CHECK(sound == 4);
}
