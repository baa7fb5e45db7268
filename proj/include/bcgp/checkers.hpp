#pragma once

#include "bcgp/graph.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bcgp {

// A factor witness: pairwise vertex-disjoint tuples, each listed in the
// pattern's vertex order so the tuple doubles as an embedding.
struct FactorWitness {
    std::vector<std::vector<int>> copies;
    std::string to_json() const;
};

enum class SearchStatus { Found, Exhausted, Budget };

struct FactorResult {
    SearchStatus status = SearchStatus::Exhausted;
    FactorWitness witness;
    bool found() const { return status == SearchStatus::Found; }
};

struct PackingResult {
    SearchStatus status = SearchStatus::Exhausted;  // Exhausted = exact maximum proven
    long long count = 0;
    FactorWitness witness;
};

// labeled embeddings F -> G (injective homomorphisms)
long long count_embeddings(const Graph& g, const Graph& f);
long long automorphism_count(const Graph& f);

// number of unlabeled subgraph copies of F in G containing v; labeled
// embeddings divided by aut(F). Thm-4.1-style statistics use this, which
// rescales the lambda constant by aut(F) relative to labeled counting.
long long count_copies_at(const Graph& g, const Graph& f, int v);
long long count_copies(const Graph& g, const Graph& f);
// all per-vertex counts from a single enumeration pass
std::vector<long long> count_copies_at_all(const Graph& g, const Graph& f);

// every vertex-set of size v(F) hosting a copy, one embedding tuple each
std::vector<std::vector<int>> enumerate_copy_sets(const Graph& g, const Graph& f,
                                                  long long node_budget = 50'000'000);

// exact cover search for a spanning set of disjoint copies; Budget means the
// search ran out, which is distinct from a definitive no
FactorResult has_f_factor(const Graph& g, const Graph& f, long long node_budget = 20'000'000);

// early-exits with a witness once `target` disjoint copies are found,
// otherwise branch-and-bound for the exact maximum
PackingResult max_disjoint_copies(const Graph& g, const Graph& f, long long target,
                                  long long node_budget = 20'000'000);

bool verify_ham_power(const Graph& g, const std::vector<int>& order, int k);

int min_degree(const Graph& g);
bool is_connected(const Graph& g);

}  // namespace bcgp
