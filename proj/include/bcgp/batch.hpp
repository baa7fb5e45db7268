#pragma once

#include "bcgp/config.hpp"
#include "bcgp/engine.hpp"

#include <string>
#include <vector>

namespace bcgp {

inline constexpr const char* kToolVersion = "0.1.0";

struct BatchSpec {
    int n = 0;
    long long t = 0;
    long long trials = 0;
    int jobs = 1;
    StrategySpec strategy;
    Checker checker;
    TrialOptions trial_options;
    std::string strategy_params_json;  // derived parameters, logged with the results
};

// resolves [process]/[strategy]/[checker] sections into a runnable spec
BatchSpec build_batch(const Config& cfg);

// trial i always uses child_seed(master_seed, i); results are identical for
// any jobs count
std::vector<TrialOutcome> run_batch(const BatchSpec& spec, std::uint64_t master_seed);

struct BatchSummary {
    std::string strategy;
    int n = 0;
    long long t = 0;
    long long budget = 0;
    long long trials = 0;
    long long successes = 0;
    long long errors = 0;
    double mean_budget_used = 0.0;
    double seconds = 0.0;
};

BatchSummary summarize(const BatchSpec& spec, const std::vector<TrialOutcome>& outcomes,
                       double seconds);

// one JSON object per trial: seed, budget_used, success, stage_log
std::string trials_jsonl(const std::vector<TrialOutcome>& outcomes, const std::string& header_comment);
std::string summary_csv(const BatchSummary& s, const std::string& header_comment);
std::string output_header_comment(const Config& cfg, std::uint64_t master_seed);

}  // namespace bcgp
