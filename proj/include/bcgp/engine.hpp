#pragma once

#include "bcgp/graph.hpp"
#include "bcgp/rng.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace bcgp {

// Presented-edge prefix with purchase bits. The engine appends after each
// decision, so a strategy queried at time i sees exactly the first i-1 rows.
struct DecisionHistory {
    int n = 0;
    std::vector<Edge> presented;
    std::vector<std::uint8_t> purchased;
    long long purchases = 0;

    void push(Edge e, bool bought) {
        presented.push_back(e);
        purchased.push_back(bought ? 1 : 0);
        if (bought) ++purchases;
    }
    std::size_t size() const { return presented.size(); }
};

struct StageRecord {
    std::string label;
    bool success = false;
    std::string detail;
};

struct TrialSetup {
    int n = 0;
    long long t = 0;
    long long budget = 0;
    std::uint64_t seed = 0;
};

// Per-trial strategy instance. decide() returns a purchase probability; the
// engine owns the Bernoulli draw and the budget, matching the model where
// the coin is independent of everything else in the process. Deterministic
// strategies return only 0 or 1.
class Strategy {
public:
    virtual ~Strategy() = default;
    virtual double decide(long long time, const DecisionHistory& hist, Edge next) = 0;
    // called after the purchase outcome of step `time` is fixed
    virtual void observe(long long /*time*/, Edge /*e*/, bool /*bought*/,
                         const Graph& /*bought_graph*/, const Graph& /*presented_graph*/) {}
    // end-of-trial hook for stage summaries and witness emission
    virtual void finish(const Graph& /*bought_graph*/, const Graph& /*presented_graph*/,
                        std::vector<StageRecord>& /*stage_log*/) {}
    // cyclic vertex order, for strategies that construct powers of Hamilton cycles
    virtual const std::vector<int>* cycle_witness() const { return nullptr; }
};

// Factory: one fresh Strategy per trial, seeded from the trial.
struct StrategySpec {
    std::string name;
    long long budget = 0;
    std::function<std::unique_ptr<Strategy>(const TrialSetup&)> make;
};

struct CheckContext {
    const Graph& bought;
    const Graph& presented;
    const Strategy& strategy;
    const std::vector<StageRecord>& stage_log;
};

struct Checker {
    std::string name;
    std::function<bool(const CheckContext&)> fn;
};

struct TrialOutcome {
    int n = 0;
    long long t = 0;
    long long budget = 0;
    std::uint64_t seed = 0;
    Graph bought;
    Graph presented;
    long long budget_used = 0;
    DecisionHistory history;
    std::vector<StageRecord> stage_log;
    std::vector<int> witness;
    bool success = false;
    bool errored = false;
    std::string error;
};

struct TrialOptions {
    bool keep_history = true;
    bool keep_graphs = true;
};

class StrategyContractError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

TrialOutcome run_trial(int n, long long t, const StrategySpec& spec, const Checker& checker,
                       std::uint64_t seed, const TrialOptions& opts = {});

// Re-derives the purchase bits of a recorded trial by driving a fresh
// strategy instance over the recorded edge order. For deterministic
// strategies this must reproduce history.purchased exactly.
std::vector<std::uint8_t> replay_decisions(const TrialOutcome& outcome, const StrategySpec& spec);

}  // namespace bcgp
