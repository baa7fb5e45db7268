#include "bcgp/batch.hpp"
#include "bcgp/bounds.hpp"
#include "bcgp/checkers.hpp"
#include "bcgp/couplings.hpp"
#include "bcgp/factor_strategies.hpp"
#include "bcgp/pattern.hpp"
#include "bcgp/small_oracle.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

int write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot write " << path << '\n';
        return 2;
    }
    out << content;
    return 0;
}

bcgp::GraphPredicate oracle_checker(const std::string& name) {
    if (name == "contains_edge")
        return [](const bcgp::Graph& g) { return g.edge_count() >= 1; };
    if (name == "triangle")
        return [](const bcgp::Graph& g) {
            return bcgp::count_embeddings(g, bcgp::Graph::complete(3)) > 0;
        };
    if (name == "min_degree_1")
        return [](const bcgp::Graph& g) { return g.n() > 0 && bcgp::min_degree(g) >= 1; };
    if (name == "connected")
        return [](const bcgp::Graph& g) { return bcgp::is_connected(g); };
    throw bcgp::ConfigError("unknown oracle checker '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"budget-constrained random graph process simulator"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "run a strategy batch from a config file");
    std::string config_path, out_dir = ".";
    std::uint64_t seed = 0;
    bool seed_given = false;
    int jobs = 0;
    sim->add_option("--config", config_path, "config file")->required();
    sim->add_option("--seed", seed, "master seed")->each([&](const std::string&) { seed_given = true; });
    sim->add_option("--jobs", jobs, "parallel trial workers");
    sim->add_option("--out-dir", out_dir, "output directory");

    // curves
    auto* curves = app.add_subcommand("curves", "budget-exponent tables for the tradeoff figures");
    std::string clique_list, ham_list, dstar_list;
    int grid = 50, curves_n = 0;
    std::string curves_out;
    curves->add_option("--clique", clique_list, "comma-separated clique orders r");
    curves->add_option("--ham", ham_list, "comma-separated powers k");
    curves->add_option("--dstar", dstar_list, "comma-separated d* values as p/q");
    curves->add_option("--grid", grid, "grid points per line");
    curves->add_option("--n", curves_n, "recorded n (informational; exponents are n-free)");
    curves->add_option("--out", curves_out, "output CSV path (default stdout)");

    // oracle
    auto* oracle = app.add_subcommand("oracle", "exact optimal success probability on tiny instances");
    int on = 4;
    long long ot = 3, ob = 2;
    std::string ochecker = "triangle";
    long long osim = 0;
    std::uint64_t oseed = 0;
    oracle->add_option("--n", on, "vertices (<= 4)");
    oracle->add_option("--t", ot, "time");
    oracle->add_option("--b", ob, "budget");
    oracle->add_option("--checker", ochecker, "contains_edge|triangle|min_degree_1|connected");
    oracle->add_option("--simulate", osim, "Monte Carlo trials of the extracted policy");
    oracle->add_option("--seed", oseed, "seed for --simulate");

    // coupling-test
    auto* coup = app.add_subcommand("coupling-test", "coupling samplers and validators");
    int cn = 4;
    long long ct1 = 2, ct2 = 2, csamples = 10000;
    double cp1 = 0.3, cp2 = 0.3, cpb1 = 0.05, cpb2 = 0.05;
    std::uint64_t cseed = 0;
    bool cseed_given = false;
    coup->add_option("--n", cn, "vertices");
    coup->add_option("--t1", ct1, "stage 1 length");
    coup->add_option("--t2", ct2, "stage 2 length");
    coup->add_option("--p1", cp1, "stage 1 lower probability");
    coup->add_option("--p2", cp2, "stage 2 lower probability");
    coup->add_option("--pbar1", cpb1, "stage 1 slack probability");
    coup->add_option("--pbar2", cpb2, "stage 2 slack probability");
    coup->add_option("--samples", csamples, "sample count");
    coup->add_option("--seed", cseed, "master seed")->each([&](const std::string&) { cseed_given = true; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;  // help exits 0; any parse problem exits 2
    }

    try {
        if (sim->parsed()) {
            if (!seed_given) {
                std::cerr << "simulate: --seed is required (all randomness flows from it)\n";
                return 2;
            }
            bcgp::Config cfg = bcgp::Config::parse_file(config_path);
            bcgp::BatchSpec spec = bcgp::build_batch(cfg);
            if (jobs > 0) spec.jobs = jobs;
            auto start = std::chrono::steady_clock::now();
            std::vector<bcgp::TrialOutcome> outcomes = bcgp::run_batch(spec, seed);
            double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            bcgp::BatchSummary summary = bcgp::summarize(spec, outcomes, secs);
            std::string header = bcgp::output_header_comment(cfg, seed);
            std::filesystem::create_directories(out_dir);
            int rc = write_file(std::filesystem::path(out_dir) / "trials.jsonl",
                                bcgp::trials_jsonl(outcomes, header));
            if (rc) return rc;
            rc = write_file(std::filesystem::path(out_dir) / "summary.csv",
                            bcgp::summary_csv(summary, header));
            if (rc) return rc;
            if (!spec.strategy_params_json.empty()) {
                rc = write_file(std::filesystem::path(out_dir) / "params.json",
                                header + "\n" + spec.strategy_params_json + "\n");
                if (rc) return rc;
            }
            std::cout << "trials=" << summary.trials << " successes=" << summary.successes
                      << " errors=" << summary.errors << '\n';
            return 0;
        }
        if (curves->parsed()) {
            std::vector<bcgp::BoundSpec> specs;
            auto split_ints = [](const std::string& s) {
                std::vector<int> out;
                std::istringstream is(s);
                std::string tok;
                while (std::getline(is, tok, ',')) out.push_back(std::stoi(tok));
                return out;
            };
            for (int r : clique_list.empty() ? std::vector<int>{} : split_ints(clique_list)) {
                bcgp::BoundSpec s;
                s.family = bcgp::BoundFamily::CliqueFactor;
                s.r = r;
                specs.push_back(s);
            }
            for (int k : ham_list.empty() ? std::vector<int>{} : split_ints(ham_list)) {
                bcgp::BoundSpec s;
                s.family = bcgp::BoundFamily::HamPower;
                s.k = k;
                specs.push_back(s);
            }
            if (!dstar_list.empty()) {
                std::istringstream is(dstar_list);
                std::string tok;
                while (std::getline(is, tok, ',')) {
                    auto slash = tok.find('/');
                    long long num = std::stoll(tok.substr(0, slash));
                    long long den = slash == std::string::npos ? 1 : std::stoll(tok.substr(slash + 1));
                    bcgp::BoundSpec s;
                    s.family = bcgp::BoundFamily::FFactor;
                    s.dstar = bcgp::Rational(num, den);
                    specs.push_back(s);
                }
            }
            std::string csv = bcgp::curve_table_csv(bcgp::curve_table(specs, grid));
            if (curves_out.empty()) {
                std::cout << csv;
            } else {
                int rc = write_file(curves_out, csv);
                if (rc) return rc;
            }
            return 0;
        }
        if (oracle->parsed()) {
            bcgp::SmallOracle o(on, ot, ob, oracle_checker(ochecker));
            std::cout << "{\"n\":" << on << ",\"t\":" << ot << ",\"b\":" << ob << ",\"checker\":\""
                      << ochecker << "\",\"value\":\"" << o.value().str() << "\",\"value_float\":"
                      << o.value().to_double();
            if (osim > 0) {
                bcgp::Rng rng(oseed);
                std::cout << ",\"simulated\":" << o.simulate(osim, rng);
            }
            std::cout << "}\n";
            return 0;
        }
        if (coup->parsed()) {
            if (!cseed_given) {
                std::cerr << "coupling-test: --seed is required\n";
                return 2;
            }
            bcgp::Rng rng(cseed);
            bcgp::CouplingValidation rep =
                bcgp::validate_two_stage(cn, ct1, ct2, cp1, cp2, cpb1, cpb2, csamples, rng);
            std::cout << rep.to_json() << '\n';
            return 0;
        }
    } catch (const bcgp::ConfigError& ex) {
        std::cerr << "config error: " << ex.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& ex) {
        std::cerr << "parameter error: " << ex.what() << '\n';
        return 2;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << '\n';
        return 1;
    }
    return 2;
}
