#pragma once

#include "bcgp/couplings.hpp"  // GraphPredicate
#include "bcgp/graph.hpp"
#include "bcgp/rational.hpp"
#include "bcgp/rng.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bcgp {

// Optimal success probability over all (t,b)-strategies on tiny instances
// (n <= 4, so M <= 6), by backward induction over (presented-set, bought-set)
// states. The uniform next-edge law depends only on the presented set, which
// justifies collapsing ordered histories to sets; the uncollapsed
// sequence_value route below validates exactly that.
class SmallOracle {
public:
    SmallOracle(int n, long long t, long long b, const GraphPredicate& checker);

    Rational value() const;
    // optimal decision at a reachable state (buy iff it strictly improves)
    bool decide(unsigned presented_mask, unsigned bought_mask, unsigned edge_bit) const;
    // Monte Carlo estimate of the extracted policy's success rate
    double simulate(long long trials, Rng& rng) const;

    std::string table_json() const;

    // independent route: full recursion over ordered histories, no state
    // collapse and no memoisation
    static Rational sequence_value(int n, long long t, long long b, const GraphPredicate& checker);

    // exact P[G-hat(n,m) satisfies checker] by enumeration of m-subsets
    static Rational gnm_probability(int n, long long m, const GraphPredicate& checker);

    int n() const { return n_; }
    long long t() const { return t_; }
    long long b() const { return b_; }

private:
    Rational val(unsigned pmask, unsigned bmask);

    int n_;
    long long M_;
    long long t_;
    long long b_;
    std::vector<bool> checker_table_;             // indexed by edge mask
    std::vector<std::optional<Rational>> memo_;   // key = pmask*64 + bmask
};

Rational optimal_success(int n, long long t, long long b, const GraphPredicate& checker);

// throws std::invalid_argument unless the predicate is increasing on [n]
std::vector<bool> monotone_checker_table(int n, const GraphPredicate& checker);

}  // namespace bcgp
