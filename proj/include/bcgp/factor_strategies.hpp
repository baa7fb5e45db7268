#pragma once

#include "bcgp/engine.hpp"
#include "bcgp/pattern.hpp"

#include <string>
#include <utility>
#include <vector>

namespace bcgp {

Graph induced_subgraph(const Graph& g, const std::vector<int>& verts);

StrategySpec make_buy_all(long long budget);
StrategySpec make_fixed_subgraph(const Graph& h, long long budget);
StrategySpec make_min_degree_greedy(int kdeg, long long budget);
StrategySpec make_forest(long long budget);

enum class PartitionMode { FullStrictlyBalanced, Partial, FullNonBalanced };

std::string to_string(PartitionMode mode);

struct PartitionStrategyParams {
    PatternStats f;
    PartitionMode mode = PartitionMode::Partial;
    double K = 1.0;
    double alpha = 0.9;  // partial-mode coverage fraction
    double p = 0.0;      // t / M
    int part_count = 0;
    std::vector<std::vector<int>> parts;
    double budget_formula = 0.0;
    long long budget = 0;  // floor of budget_formula, enforced by the engine

    std::string to_json() const;
};

// Fixes an F-equipartition into k parts and buys exactly the presented edges
// that fall inside one part, while budget remains. Part count and budget:
//   full (strictly 1-balanced): k = floor(p^d(F) n / (K ln^{1/(v-1)} n)),
//                               b = 9K t^{1-d} n^{2d-1} ln^{1/(v-1)} n
//   partial / full (non-vertex-balanced): k = floor(p^d* n / K),
//                               b = 9K t^{1-d*} n^{2d*-1}
std::pair<StrategySpec, PartitionStrategyParams> make_partition_factor(
    const Graph& f, int n, long long t, double K, PartitionMode mode, double alpha = 0.9);

// success checkers for the partition strategies (capacity overruns in the
// underlying searches surface as exceptions -> errored trials)
Checker partition_success_checker(const PartitionStrategyParams& params);

// plain graph-property checkers used across experiments
Checker min_degree_checker(int k);
Checker connected_checker();
Checker contains_edge_checker();
Checker contains_pattern_checker(const Graph& f);
Checker ham_power_witness_checker(int k);

}  // namespace bcgp
