#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bcgp/batch.hpp"
#include "bcgp/engine.hpp"
#include "bcgp/factor_strategies.hpp"

#include <functional>

using namespace bcgp;

namespace {

class LambdaStrategy : public Strategy {
public:
    using Fn = std::function<double(long long, const DecisionHistory&, Edge)>;
    explicit LambdaStrategy(Fn fn) : fn_(std::move(fn)) {}
    double decide(long long t, const DecisionHistory& h, Edge e) override { return fn_(t, h, e); }

private:
    Fn fn_;
};

StrategySpec lambda_spec(const std::string& name, long long budget, LambdaStrategy::Fn fn) {
    return StrategySpec{name, budget,
                        [fn](const TrialSetup&) { return std::make_unique<LambdaStrategy>(fn); }};
}

Checker always_true() {
    return Checker{"true", [](const CheckContext&) { return true; }};
}

}  // namespace

TEST_CASE("buy-all with full budget buys everything") {
    StrategySpec spec = make_buy_all(20);
    TrialOutcome o = run_trial(10, 20, spec, contains_edge_checker(), 99);
    CHECK(o.budget_used == 20);
    CHECK(o.bought == o.presented);
    CHECK(o.success);
    CHECK_FALSE(o.errored);
}

TEST_CASE("buy-nothing leaves the bought graph empty") {
    StrategySpec spec = lambda_spec("buy_nothing", 10, [](long long, const DecisionHistory&, Edge) {
        return 0.0;
    });
    TrialOutcome o = run_trial(8, 12, spec, always_true(), 1);
    CHECK(o.bought.edge_count() == 0);
    CHECK(o.budget_used == 0);
}

TEST_CASE("budget exhaustion: first b presented edges bought") {
    StrategySpec spec = make_buy_all(5);
    TrialOutcome o = run_trial(8, 9, spec, always_true(), 7);
    CHECK(o.budget_used == 5);
    for (int i = 0; i < 9; ++i) {
        const Edge& e = o.history.presented[static_cast<std::size_t>(i)];
        CHECK(o.bought.has_edge(e.u, e.v) == (i < 5));
    }
}

TEST_CASE("t = 0 yields an empty trial") {
    TrialOutcome o = run_trial(6, 0, make_buy_all(0), always_true(), 5);
    CHECK(o.bought.edge_count() == 0);
    CHECK(o.history.size() == 0);
}

TEST_CASE("engine hard-stops a strategy that ignores its budget") {
    // decide always says buy; the engine stops querying at the cap
    StrategySpec spec = lambda_spec("greedy_liar", 3, [](long long, const DecisionHistory&, Edge) {
        return 1.0;
    });
    TrialOutcome o = run_trial(10, 30, spec, always_true(), 3);
    CHECK(o.budget_used == 3);
    CHECK(o.bought.edge_count() == 3);
}

TEST_CASE("nestedness and per-step budget invariant from the purchase bits") {
    StrategySpec spec = lambda_spec("every_third", 4, [](long long t, const DecisionHistory&, Edge) {
        return t % 3 == 0 ? 1.0 : 0.0;
    });
    TrialOutcome o = run_trial(9, 20, spec, always_true(), 11);
    long long bought = 0;
    for (std::size_t i = 0; i < o.history.size(); ++i) {
        if (o.history.purchased[i]) ++bought;
        CHECK(bought <= std::min<long long>(static_cast<long long>(i) + 1, 4));
    }
    CHECK(bought == o.budget_used);
}

TEST_CASE("decide outside [0,1] marks the trial errored") {
    StrategySpec spec = lambda_spec("broken", 5, [](long long, const DecisionHistory&, Edge) {
        return 1.5;
    });
    TrialOutcome o = run_trial(6, 5, spec, always_true(), 1);
    CHECK(o.errored);
    CHECK_FALSE(o.success);
}

TEST_CASE("checker exception marks the trial errored, not failed") {
    Checker bad{"thrower", [](const CheckContext&) -> bool { throw std::length_error("overrun"); }};
    TrialOutcome o = run_trial(6, 5, make_buy_all(5), bad, 1);
    CHECK(o.errored);
    CHECK(o.error == std::string("overrun"));
}

TEST_CASE("randomized decisions draw through the engine coin") {
    StrategySpec spec = lambda_spec("coin_half", 1000, [](long long, const DecisionHistory&, Edge) {
        return 0.5;
    });
    TrialOutcome o = run_trial(40, 300, spec, always_true(), 17);
    CHECK(o.budget_used > 90);
    CHECK(o.budget_used < 210);
    // same seed reproduces the same purchases
    TrialOutcome o2 = run_trial(40, 300, spec, always_true(), 17);
    CHECK(o2.history.purchased == o.history.purchased);
}

TEST_CASE("deterministic replay reproduces the purchase bits") {
    StrategySpec greedy = make_min_degree_greedy(2, 100);
    TrialOutcome o = run_trial(20, 80, greedy, min_degree_checker(2), 23);
    std::vector<std::uint8_t> replayed = replay_decisions(o, greedy);
    CHECK(replayed == o.history.purchased);

    StrategySpec forest = make_forest(100);
    TrialOutcome of = run_trial(20, 80, forest, connected_checker(), 29);
    CHECK(replay_decisions(of, forest) == of.history.purchased);
}

TEST_CASE("run_batch: determinism, empty batch, and full success") {
    Config cfg = Config::parse(
        "[process]\nn = 50\nt = 100\ntrials = 200\n\n[strategy]\nname = buy_all\nbudget = "
        "100\n\n[checker]\ntype = contains_edge\n");
    BatchSpec spec = build_batch(cfg);
    auto a = run_batch(spec, 424242);
    auto b = run_batch(spec, 424242);
    REQUIRE(a.size() == 200);
    long long successes = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].seed == b[i].seed);
        CHECK(a[i].budget_used == b[i].budget_used);
        CHECK(a[i].success == b[i].success);
        CHECK(a[i].history.purchased == b[i].history.purchased);
        if (a[i].success) ++successes;
    }
    CHECK(successes == 200);  // contains_edge under buy-all

    BatchSpec empty = spec;
    empty.trials = 0;
    CHECK(run_batch(empty, 1).empty());

    // parallel schedule produces identical results
    BatchSpec par = spec;
    par.jobs = 3;
    auto c = run_batch(par, 424242);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(c[i].history.purchased == a[i].history.purchased);
        CHECK(c[i].success == a[i].success);
    }
}

TEST_CASE("jsonl and csv outputs carry the header comment") {
    Config cfg = Config::parse(
        "[process]\nn = 10\nt = 5\ntrials = 3\n\n[strategy]\nname = buy_all\n\n[checker]\ntype = "
        "contains_edge\n");
    BatchSpec spec = build_batch(cfg);
    auto outcomes = run_batch(spec, 7);
    std::string header = output_header_comment(cfg, 7);
    std::string jsonl = trials_jsonl(outcomes, header);
    std::string csv = summary_csv(summarize(spec, outcomes, 0.5), header);
    CHECK(jsonl.rfind("# bcgp", 0) == 0);
    CHECK(csv.rfind("# bcgp", 0) == 0);
    CHECK(csv.find("strategy,n,t,b,trials,successes,mean_budget_used,seconds") != std::string::npos);
    // success count in the csv equals the number of success=true lines
    long long json_successes = 0;
    std::size_t pos = 0;
    while ((pos = jsonl.find("\"success\":true", pos)) != std::string::npos) {
        ++json_successes;
        pos += 10;
    }
    CHECK(json_successes == 3);
    CHECK(csv.find(",3,3,") != std::string::npos);
}

TEST_CASE("config errors") {
    CHECK_THROWS_AS(Config::parse("[process\nn=1\n"), ConfigError);
    Config cfg = Config::parse("[process]\nn = 10\nt = 200\ntrials = 1\n");
    CHECK_THROWS_AS(build_batch(cfg), ConfigError);  // t > M
    Config cfg2 = Config::parse(
        "[process]\nn = 10\nt = 5\ntrials = 1\n[strategy]\nname = nope\n[checker]\ntype = "
        "contains_edge\n");
    CHECK_THROWS_AS(build_batch(cfg2), ConfigError);
}
