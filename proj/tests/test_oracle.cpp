#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bcgp/checkers.hpp"
#include "bcgp/small_oracle.hpp"

#include <cmath>

using namespace bcgp;

namespace {

GraphPredicate contains_edge() {
    return [](const Graph& g) { return g.edge_count() >= 1; };
}
GraphPredicate contains_triangle() {
    return [](const Graph& g) { return count_embeddings(g, Graph::complete(3)) > 0; };
}
GraphPredicate min_degree_one() {
    return [](const Graph& g) { return min_degree(g) >= 1; };
}

}  // namespace

TEST_CASE("oracle trivial values") {
    CHECK(optimal_success(3, 1, 1, contains_edge()) == Rational(1));
    // a triangle needs three bought edges
    CHECK(optimal_success(3, 3, 2, contains_triangle()) == Rational(0));
    CHECK(optimal_success(4, 3, 2, contains_triangle()) == Rational(0));
}

TEST_CASE("oracle matches the uncollapsed sequence recursion") {
    // the state collapse (presented set instead of ordered history) is the
    // optimization under test; the sequence route never collapses
    CHECK(optimal_success(4, 3, 3, contains_triangle()) ==
          SmallOracle::sequence_value(4, 3, 3, contains_triangle()));
    CHECK(optimal_success(4, 4, 3, contains_triangle()) ==
          SmallOracle::sequence_value(4, 4, 3, contains_triangle()));
    CHECK(optimal_success(4, 4, 2, contains_edge()) ==
          SmallOracle::sequence_value(4, 4, 2, contains_edge()));
    CHECK(optimal_success(3, 3, 2, min_degree_one()) ==
          SmallOracle::sequence_value(3, 3, 2, min_degree_one()));
}

TEST_CASE("oracle value is sandwiched by simulation of its own policy") {
    SmallOracle o(4, 4, 3, contains_triangle());
    Rng rng(12);
    const long long N = 100000;
    double rate = o.simulate(N, rng);
    double v = o.value().to_double();
    double sigma = std::sqrt(v * (1 - v) / static_cast<double>(N));
    CHECK(std::fabs(rate - v) <= 3 * sigma);
}

TEST_CASE("trivial policies simulate to their exact values") {
    SmallOracle zero(3, 3, 2, contains_triangle());
    Rng rng(5);
    CHECK(zero.simulate(2000, rng) == 0.0);
    SmallOracle one(3, 1, 1, contains_edge());
    CHECK(one.simulate(2000, rng) == 1.0);
}

TEST_CASE("monotone in t and b over the full n=4 grid") {
    for (const GraphPredicate& checker : {contains_triangle(), min_degree_one()}) {
        double prev_t[7][7];
        for (long long t = 0; t <= 6; ++t)
            for (long long b = 0; b <= t; ++b) {
                Rational v = optimal_success(4, t, b, checker);
                if (b > 0) {
                    Rational v_less_b = optimal_success(4, t, b - 1, checker);
                    CHECK(v >= v_less_b);
                }
                if (t > 0 && b <= t - 1) {
                    Rational v_less_t = optimal_success(4, t - 1, b, checker);
                    CHECK(v >= v_less_t);
                }
                prev_t[t][b] = v.to_double();
            }
        (void)prev_t;
    }
}

TEST_CASE("free budget equals the plain random graph probability") {
    for (long long t = 0; t <= 6; ++t) {
        CHECK(optimal_success(4, t, t, contains_triangle()) ==
              SmallOracle::gnm_probability(4, t, contains_triangle()));
        CHECK(optimal_success(4, t, t, min_degree_one()) ==
              SmallOracle::gnm_probability(4, t, min_degree_one()));
    }
}

TEST_CASE("non-monotone checker is rejected") {
    GraphPredicate exactly_one = [](const Graph& g) { return g.edge_count() == 1; };
    CHECK_THROWS_AS(optimal_success(3, 2, 2, exactly_one), std::invalid_argument);
}

TEST_CASE("oversize instance is rejected") {
    CHECK_THROWS_AS(optimal_success(5, 3, 2, contains_edge()), std::length_error);
}

TEST_CASE("oracle table serializes") {
    SmallOracle o(3, 2, 1, contains_edge());
    std::string json = o.table_json();
    CHECK(json.find("\"value\":\"1\"") != std::string::npos);
    CHECK(json.find("\"states\"") != std::string::npos);
}
