#include "bcgp/batch.hpp"

#include "bcgp/factor_strategies.hpp"
#include "bcgp/ham_power.hpp"
#include "bcgp/pattern.hpp"
#include "bcgp/rng.hpp"

#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <sstream>
#include <thread>

namespace bcgp {

namespace {

PartitionMode parse_mode(const std::string& m) {
    if (m == "full" || m == "full_strictly_balanced") return PartitionMode::FullStrictlyBalanced;
    if (m == "partial") return PartitionMode::Partial;
    if (m == "full_nonbalanced") return PartitionMode::FullNonBalanced;
    throw ConfigError("config: unknown partition mode '" + m + "'");
}

Checker checker_from_config(const Config& cfg, int k_for_ham) {
    std::string type = cfg.get("checker", "type");
    if (type == "min_degree") return min_degree_checker(static_cast<int>(cfg.get_int("checker", "k")));
    if (type == "connected") return connected_checker();
    if (type == "contains_edge") return contains_edge_checker();
    if (type == "contains_pattern")
        return contains_pattern_checker(parse_pattern(cfg.get("checker", "pattern")));
    if (type == "ham_power_witness") return ham_power_witness_checker(k_for_ham);
    throw ConfigError("config: unknown checker type '" + type + "'");
}

}  // namespace

BatchSpec build_batch(const Config& cfg) {
    BatchSpec spec;
    spec.n = static_cast<int>(cfg.get_int("process", "n"));
    spec.t = cfg.get_int("process", "t");
    spec.trials = cfg.get_int("process", "trials");
    spec.jobs = static_cast<int>(cfg.get_int_or("process", "jobs", 1));
    spec.trial_options.keep_history = cfg.get_int_or("process", "keep_history", 1) != 0;
    spec.trial_options.keep_graphs = cfg.get_int_or("process", "keep_graphs", 1) != 0;
    if (spec.n < 1) throw ConfigError("config: n must be positive");
    if (spec.t < 0 || spec.t > complete_edge_count(spec.n))
        throw ConfigError("config: t out of range for n");
    if (spec.trials < 0) throw ConfigError("config: trials must be >= 0");

    std::string name = cfg.get("strategy", "name");
    if (name == "buy_all") {
        spec.strategy = make_buy_all(cfg.get_int_or("strategy", "budget", spec.t));
        spec.checker = checker_from_config(cfg, 0);
    } else if (name == "forest") {
        spec.strategy = make_forest(cfg.get_int_or("strategy", "budget", spec.n));
        spec.checker = checker_from_config(cfg, 0);
    } else if (name == "min_degree_greedy") {
        int kdeg = static_cast<int>(cfg.get_int("strategy", "kdeg"));
        spec.strategy = make_min_degree_greedy(
            kdeg, cfg.get_int_or("strategy", "budget", static_cast<long long>(spec.n) * kdeg));
        spec.checker = checker_from_config(cfg, 0);
    } else if (name == "fixed_subgraph") {
        Graph h = Graph::from_edge_list(cfg.get("strategy", "edges"));
        spec.strategy = make_fixed_subgraph(h, cfg.get_int_or("strategy", "budget", h.edge_count()));
        spec.checker = checker_from_config(cfg, 0);
    } else if (name == "partition_factor") {
        Graph f = parse_pattern(cfg.get("strategy", "pattern"));
        PartitionMode mode = parse_mode(cfg.get("strategy", "mode"));
        double K = cfg.get_double_or("strategy", "K", 1.0);
        double alpha = cfg.get_double_or("strategy", "alpha", 0.9);
        auto [s, params] = make_partition_factor(f, spec.n, spec.t, K, mode, alpha);
        spec.strategy = std::move(s);
        spec.strategy_params_json = params.to_json();
        if (cfg.get_or("checker", "type", "partition_factor") == "partition_factor")
            spec.checker = partition_success_checker(params);
        else
            spec.checker = checker_from_config(cfg, 0);
    } else if (name == "ham_power") {
        HamPowerConfig hc;
        hc.k = static_cast<int>(cfg.get_int_or("strategy", "k", hc.k));
        hc.eps = cfg.get_double_or("strategy", "eps", hc.eps);
        hc.eps_prime = cfg.get_double_or("strategy", "eps_prime", hc.eps_prime);
        hc.j = static_cast<int>(cfg.get_int_or("strategy", "j", hc.j));
        hc.ell = static_cast<int>(cfg.get_int_or("strategy", "ell", hc.ell));
        hc.q = static_cast<int>(cfg.get_int_or("strategy", "q", hc.q));
        hc.r = static_cast<int>(cfg.get_int_or("strategy", "r", hc.r));
        hc.stage1_part_gadgets =
            static_cast<int>(cfg.get_int_or("strategy", "stage1_part_gadgets", hc.stage1_part_gadgets));
        hc.stage2_groups = static_cast<int>(cfg.get_int_or("strategy", "stage2_groups", hc.stage2_groups));
        hc.stage4_groups = static_cast<int>(cfg.get_int_or("strategy", "stage4_groups", hc.stage4_groups));
        hc.stage4_threshold_scale =
            cfg.get_double_or("strategy", "stage4_threshold_scale", hc.stage4_threshold_scale);
        hc.embed_budget = cfg.get_int_or("strategy", "embed_budget", hc.embed_budget);
        hc.cover_attempts = static_cast<int>(cfg.get_int_or("strategy", "cover_attempts", hc.cover_attempts));
        hc.linkage_budget = cfg.get_int_or("strategy", "linkage_budget", hc.linkage_budget);
        auto [s, params] = make_ham_power_strategy(spec.n, spec.t, hc);
        spec.strategy = std::move(s);
        spec.strategy_params_json = params.to_json();
        if (cfg.get_or("checker", "type", "ham_power_witness") == "ham_power_witness")
            spec.checker = ham_power_witness_checker(hc.k);
        else
            spec.checker = checker_from_config(cfg, hc.k);
    } else {
        throw ConfigError("config: unknown strategy name '" + name + "'");
    }
    if (cfg.has("strategy", "budget_override")) spec.strategy.budget = cfg.get_int("strategy", "budget_override");
    return spec;
}

std::vector<TrialOutcome> run_batch(const BatchSpec& spec, std::uint64_t master_seed) {
    std::vector<TrialOutcome> out(static_cast<std::size_t>(spec.trials));
    auto work = [&](long long begin, long long end) {
        for (long long i = begin; i < end; ++i)
            out[static_cast<std::size_t>(i)] = run_trial(spec.n, spec.t, spec.strategy, spec.checker,
                                                         child_seed(master_seed, static_cast<std::uint64_t>(i)),
                                                         spec.trial_options);
    };
    int jobs = std::max(1, spec.jobs);
    if (jobs == 1 || spec.trials <= 1) {
        work(0, spec.trials);
    } else {
        std::vector<std::thread> threads;
        long long per = (spec.trials + jobs - 1) / jobs;
        for (int j = 0; j < jobs; ++j) {
            long long b = j * per, e = std::min<long long>(spec.trials, b + per);
            if (b >= e) break;
            threads.emplace_back(work, b, e);
        }
        for (auto& th : threads) th.join();
    }
    return out;
}

BatchSummary summarize(const BatchSpec& spec, const std::vector<TrialOutcome>& outcomes,
                       double seconds) {
    BatchSummary s;
    s.strategy = spec.strategy.name;
    s.n = spec.n;
    s.t = spec.t;
    s.budget = spec.strategy.budget;
    s.trials = static_cast<long long>(outcomes.size());
    double used = 0.0;
    for (const TrialOutcome& o : outcomes) {
        if (o.success) ++s.successes;
        if (o.errored) ++s.errors;
        used += static_cast<double>(o.budget_used);
    }
    s.mean_budget_used = outcomes.empty() ? 0.0 : used / static_cast<double>(outcomes.size());
    s.seconds = seconds;
    return s;
}

std::string output_header_comment(const Config& cfg, std::uint64_t master_seed) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(cfg.hash()));
    std::ostringstream os;
    os << "# bcgp " << kToolVersion << " config_hash=" << buf << " seed=" << master_seed;
    return os.str();
}

std::string trials_jsonl(const std::vector<TrialOutcome>& outcomes, const std::string& header_comment) {
    std::ostringstream os;
    os << header_comment << '\n';
    for (const TrialOutcome& o : outcomes) {
        nlohmann::json j;
        j["seed"] = o.seed;
        j["budget_used"] = o.budget_used;
        j["success"] = o.success;
        if (o.errored) j["error"] = o.error;
        nlohmann::json stages = nlohmann::json::array();
        for (const StageRecord& r : o.stage_log)
            stages.push_back({{"stage", r.label}, {"success", r.success}, {"detail", r.detail}});
        j["stage_log"] = stages;
        os << j.dump() << '\n';
    }
    return os.str();
}

std::string summary_csv(const BatchSummary& s, const std::string& header_comment) {
    std::ostringstream os;
    os << header_comment << '\n';
    os << "strategy,n,t,b,trials,successes,mean_budget_used,seconds\n";
    char buf[64];
    os << s.strategy << ',' << s.n << ',' << s.t << ',' << s.budget << ',' << s.trials << ','
       << s.successes << ',';
    std::snprintf(buf, sizeof buf, "%.3f", s.mean_budget_used);
    os << buf << ',';
    std::snprintf(buf, sizeof buf, "%.3f", s.seconds);
    os << buf << '\n';
    return os.str();
}

}  // namespace bcgp
