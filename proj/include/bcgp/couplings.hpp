#pragma once

#include "bcgp/graph.hpp"
#include "bcgp/rational.hpp"
#include "bcgp/rng.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace bcgp {

// Multi-stage coupling sample. When failure_step is empty the containments
//   H_i \ union_{j<i} Hhat_j  <=  Hhat_i  <=  H_i union Hbar_i
// hold exactly by construction, and the Hhat_i are pairwise edge-disjoint
// with e(Hhat_i) = t_i. On failure the Hhat_i come from a fresh process
// split into stages, independent of everything sampled before.
struct MultistageSample {
    std::vector<Graph> H;
    std::vector<Graph> Hbar;
    std::vector<Graph> Hhat;
    std::optional<int> failure_step;  // 0-based stage index
};

MultistageSample sample_multistage(int n, const std::vector<long long>& stage_lengths,
                                   const std::vector<double>& p_list,
                                   const std::vector<double>& pbar_list, Rng& rng);

// proof-mirroring defaults p_i = (t_i/M)(1 - t_i^{-1/4}), pbar_i = (t_i/M) t_i^{-1/4}
void default_stage_probabilities(int n, const std::vector<long long>& stage_lengths,
                                 std::vector<double>& p_list, std::vector<double>& pbar_list);

struct SandwichSample {
    Graph H;
    Graph Ghat;
    Graph Hprime;
    bool ok;  // H subseteq Ghat subseteq Hprime
};

SandwichSample sample_sandwich(int n, long long m, double p, double p_prime, Rng& rng);

// Exact FKG check over all 2^M graphs on [n] with rational p. Predicates
// must be increasing; this is verified exhaustively over edge-addition pairs.
struct FkgReport {
    Rational e_fg;
    Rational e_f;
    Rational e_g;
    bool holds;
};

using GraphPredicate = std::function<bool(const Graph&)>;

FkgReport check_fkg_exact(int n, const Rational& p, const GraphPredicate& f, const GraphPredicate& g);

// validator output shared by the CLI and the tests
struct CouplingValidation {
    double chi_square = 0.0;
    int dof = 0;
    double p_value = 1.0;
    long long samples = 0;
    long long failures = 0;
    long long containment_violations = 0;
    std::string to_json() const;
};

// chi-square of the no-failure joint law of (Hhat_1, Hhat_2) at n=4 against
// the exact two-stage process law (uniform over ordered disjoint pairs)
CouplingValidation validate_two_stage(int n, long long t1, long long t2, double p1, double p2,
                                      double pbar1, double pbar2, long long samples, Rng& rng);

}  // namespace bcgp
