#include "bcgp/engine.hpp"

#include "bcgp/sampling.hpp"

#include <cassert>
#include <cmath>

namespace bcgp {

namespace {

// Separate streams so the edge order is a function of the seed alone,
// independent of strategy randomization and purchase coins.
constexpr std::uint64_t kProcessStream = 0x70726f63ULL;
constexpr std::uint64_t kCoinStream = 0x636f696eULL;

}  // namespace

TrialOutcome run_trial(int n, long long t, const StrategySpec& spec, const Checker& checker,
                       std::uint64_t seed, const TrialOptions& opts) {
    TrialOutcome out;
    out.n = n;
    out.t = t;
    out.budget = spec.budget;
    out.seed = seed;

    Rng process_rng(splitmix64(seed ^ kProcessStream));
    Rng coin_rng(splitmix64(seed ^ kCoinStream));

    TrialSetup setup{n, t, spec.budget, seed};
    std::unique_ptr<Strategy> strat = spec.make(setup);

    Graph bought(n);
    Graph presented(n);
    DecisionHistory hist;
    hist.n = n;
    hist.presented.reserve(static_cast<std::size_t>(t));
    hist.purchased.reserve(static_cast<std::size_t>(t));

    ProcessSampler sampler(n, t, process_rng);
    long long used = 0;

    try {
        for (long long i = 1; i <= t; ++i) {
            Edge e = sampler.next();
            presented.add_edge(e.u, e.v);
            bool buy = false;
            if (used < spec.budget) {
                double p = strat->decide(i, hist, e);
                if (std::isnan(p) || p < 0.0 || p > 1.0)
                    throw StrategyContractError(spec.name + ": decide returned value outside [0,1]");
                buy = (p >= 1.0) ? true : (p <= 0.0 ? false : coin_rng.bernoulli(p));
            }
            if (buy) {
                assert(used < spec.budget);  // the engine, not the strategy, owns the cap
                bought.add_edge(e.u, e.v);
                ++used;
            }
            hist.push(e, buy);
            strat->observe(i, e, buy, bought, presented);
        }
        strat->finish(bought, presented, out.stage_log);
        if (const std::vector<int>* w = strat->cycle_witness()) out.witness = *w;

        out.budget_used = used;
        CheckContext ctx{bought, presented, *strat, out.stage_log};
        out.success = checker.fn(ctx);
    } catch (const std::exception& ex) {
        out.errored = true;
        out.error = ex.what();
        out.success = false;
        out.budget_used = used;
    }

    if (opts.keep_history) out.history = std::move(hist);
    if (opts.keep_graphs) {
        out.bought = std::move(bought);
        out.presented = std::move(presented);
    }
    return out;
}

std::vector<std::uint8_t> replay_decisions(const TrialOutcome& outcome, const StrategySpec& spec) {
    TrialSetup setup{outcome.n, outcome.t, spec.budget, outcome.seed};
    std::unique_ptr<Strategy> strat = spec.make(setup);
    Rng coin_rng(splitmix64(outcome.seed ^ kCoinStream));

    Graph bought(outcome.n);
    Graph presented(outcome.n);
    DecisionHistory hist;
    hist.n = outcome.n;
    std::vector<std::uint8_t> bits;
    bits.reserve(outcome.history.presented.size());
    long long used = 0;
    long long i = 0;
    for (const Edge& e : outcome.history.presented) {
        ++i;
        presented.add_edge(e.u, e.v);
        bool buy = false;
        if (used < spec.budget) {
            double p = strat->decide(i, hist, e);
            buy = (p >= 1.0) ? true : (p <= 0.0 ? false : coin_rng.bernoulli(p));
        }
        if (buy) {
            bought.add_edge(e.u, e.v);
            ++used;
        }
        bits.push_back(buy ? 1 : 0);
        hist.push(e, buy);
        strat->observe(i, e, buy, bought, presented);
    }
    return bits;
}

}  // namespace bcgp
