#pragma once

#include "bcgp/graph.hpp"
#include "bcgp/rational.hpp"

#include <string>
#include <vector>

namespace bcgp {

// Patterns are capped at 12 vertices: every classification below goes
// through exhaustive vertex-subset enumeration (2^12 subsets is instant, and
// the fixed graphs F in play are constant-size).
inline constexpr int kMaxPatternVertices = 12;

Rational one_density(const Graph& f);       // e(F)/(v(F)-1)
Rational max_one_density(const Graph& f);   // max over subgraphs with >= 2 vertices
bool is_strictly_one_balanced(const Graph& f);
bool is_vertex_balanced(const Graph& f);

// max 1-density over subgraphs containing v (subset enumeration, <= 12 vertices)
Rational max_one_density_at(const Graph& f, int v);

struct PatternStats {
    Graph pattern;
    Rational one_density;
    Rational max_one_density;
    bool strictly_one_balanced = false;
    bool vertex_balanced = false;

    static PatternStats analyze(const Graph& f);
};

// Partition of `universe` into `parts` sets, each of size divisible by
// `block`, with sizes taking at most two values that differ by exactly
// `block`. Sizes come out sorted descending.
std::vector<std::vector<int>> f_equipartition(const std::vector<int>& universe, int parts, int block);

// Named built-ins: "K2".."K12" and "Pq^k:q=<q>,k=<k>".
Graph builtin_pattern(const std::string& name);

// Accepts either a named built-in or edge-list text ("n m" then "u v" rows).
Graph parse_pattern(const std::string& text);

// k-th power of a path on q vertices (vertices 0..q-1 in path order)
Graph path_power(int q, int k);
// k-th power of a cycle on n vertices
Graph cycle_power(int n, int k);

}  // namespace bcgp
