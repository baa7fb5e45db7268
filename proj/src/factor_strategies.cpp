#include "bcgp/factor_strategies.hpp"

#include "bcgp/checkers.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace bcgp {

Graph induced_subgraph(const Graph& g, const std::vector<int>& verts) {
    Graph out(static_cast<int>(verts.size()));
    for (std::size_t i = 0; i < verts.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (g.has_edge(verts[i], verts[j]))
                out.add_edge(static_cast<int>(i), static_cast<int>(j));
    return out;
}

namespace {

class BuyAll : public Strategy {
public:
    double decide(long long, const DecisionHistory&, Edge) override { return 1.0; }
};

class FixedSubgraph : public Strategy {
public:
    explicit FixedSubgraph(Graph h) : h_(std::move(h)) {}
    double decide(long long, const DecisionHistory&, Edge e) override {
        return h_.has_edge(e.u, e.v) ? 1.0 : 0.0;
    }

private:
    Graph h_;
};

class MinDegreeGreedy : public Strategy {
public:
    MinDegreeGreedy(int n, int kdeg) : deg_(n, 0), kdeg_(kdeg) {}
    double decide(long long, const DecisionHistory&, Edge e) override {
        return (deg_[e.u] < kdeg_ || deg_[e.v] < kdeg_) ? 1.0 : 0.0;
    }
    void observe(long long, Edge e, bool bought, const Graph&, const Graph&) override {
        if (bought) {
            ++deg_[e.u];
            ++deg_[e.v];
        }
    }

private:
    std::vector<int> deg_;
    int kdeg_;
};

class ForestStrategy : public Strategy {
public:
    explicit ForestStrategy(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
    double decide(long long, const DecisionHistory&, Edge e) override {
        return find(e.u) != find(e.v) ? 1.0 : 0.0;
    }
    void observe(long long, Edge e, bool bought, const Graph&, const Graph&) override {
        if (bought) parent_[find(e.u)] = find(e.v);
    }

private:
    int find(int x) {
        while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
        return x;
    }
    std::vector<int> parent_;
};

class PartitionStrategy : public Strategy {
public:
    PartitionStrategy(int n, const PartitionStrategyParams& params) : part_(n, -1) {
        for (std::size_t a = 0; a < params.parts.size(); ++a)
            for (int v : params.parts[a]) part_[v] = static_cast<int>(a);
    }
    double decide(long long, const DecisionHistory&, Edge e) override {
        return (part_[e.u] >= 0 && part_[e.u] == part_[e.v]) ? 1.0 : 0.0;
    }

private:
    std::vector<int> part_;
};

}  // namespace

StrategySpec make_buy_all(long long budget) {
    return StrategySpec{"buy_all", budget,
                        [](const TrialSetup&) { return std::make_unique<BuyAll>(); }};
}

StrategySpec make_fixed_subgraph(const Graph& h, long long budget) {
    return StrategySpec{"fixed_subgraph", budget,
                        [h](const TrialSetup&) { return std::make_unique<FixedSubgraph>(h); }};
}

StrategySpec make_min_degree_greedy(int kdeg, long long budget) {
    if (kdeg < 1) throw std::invalid_argument("make_min_degree_greedy: kdeg must be >= 1");
    return StrategySpec{"min_degree_greedy", budget, [kdeg](const TrialSetup& s) {
                            return std::make_unique<MinDegreeGreedy>(s.n, kdeg);
                        }};
}

StrategySpec make_forest(long long budget) {
    return StrategySpec{"forest", budget,
                        [](const TrialSetup& s) { return std::make_unique<ForestStrategy>(s.n); }};
}

std::string to_string(PartitionMode mode) {
    switch (mode) {
        case PartitionMode::FullStrictlyBalanced: return "full_strictly_balanced";
        case PartitionMode::Partial: return "partial";
        case PartitionMode::FullNonBalanced: return "full_nonbalanced";
    }
    return "?";
}

std::string PartitionStrategyParams::to_json() const {
    std::ostringstream os;
    os << "{\"mode\":\"" << bcgp::to_string(mode) << "\",\"K\":" << K << ",\"p\":" << p
       << ",\"k\":" << part_count << ",\"b\":" << budget << ",\"b_formula\":" << budget_formula
       << ",\"part_sizes\":[";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) os << ',';
        os << parts[i].size();
    }
    os << "]}";
    return os.str();
}

std::pair<StrategySpec, PartitionStrategyParams> make_partition_factor(
    const Graph& f, int n, long long t, double K, PartitionMode mode, double alpha) {
    PartitionStrategyParams params;
    params.f = PatternStats::analyze(f);
    params.mode = mode;
    params.K = K;
    params.alpha = alpha;
    long long M = complete_edge_count(n);
    if (t < 0 || t > M) throw std::invalid_argument("make_partition_factor: t out of range");
    params.p = static_cast<double>(t) / static_cast<double>(M);

    int vf = f.n();
    if (mode == PartitionMode::FullStrictlyBalanced) {
        if (!params.f.strictly_one_balanced)
            throw std::invalid_argument("make_partition_factor: F is not strictly 1-balanced");
        if (n % vf != 0) throw std::invalid_argument("make_partition_factor: v(F) must divide n");
        double d = params.f.one_density.to_double();
        double logterm = std::pow(std::log(n), 1.0 / (vf - 1));
        double kreal = std::pow(params.p, d) * n / (K * logterm);
        params.part_count = static_cast<int>(std::floor(kreal));
        params.budget_formula =
            9.0 * K * std::pow(static_cast<double>(t), 1.0 - d) * std::pow(n, 2.0 * d - 1.0) * logterm;
    } else {
        if (mode == PartitionMode::FullNonBalanced) {
            if (params.f.vertex_balanced)
                throw std::invalid_argument("make_partition_factor: F is vertex-balanced");
            if (n % vf != 0) throw std::invalid_argument("make_partition_factor: v(F) must divide n");
        }
        double ds = params.f.max_one_density.to_double();
        double kreal = std::pow(params.p, ds) * n / K;
        params.part_count = static_cast<int>(std::floor(kreal));
        params.budget_formula =
            9.0 * K * std::pow(static_cast<double>(t), 1.0 - ds) * std::pow(n, 2.0 * ds - 1.0);
    }
    if (params.part_count < 1) {
        std::ostringstream os;
        os << "make_partition_factor: derived part count " << params.part_count
           << " < 1 (t too small for n at K=" << K << ")";
        throw std::invalid_argument(os.str());
    }
    // partial mode has no divisibility requirement on n; round the universe
    // down to a multiple of v(F) so the equipartition is well-formed
    std::vector<int> universe(static_cast<std::size_t>(n - (n % vf)));
    std::iota(universe.begin(), universe.end(), 0);
    long long units = static_cast<long long>(universe.size()) / vf;
    if (units < params.part_count) params.part_count = static_cast<int>(units);
    params.parts = f_equipartition(universe, params.part_count, vf);
    params.budget = static_cast<long long>(std::floor(params.budget_formula));

    StrategySpec spec;
    spec.name = "partition_factor[" + to_string(mode) + "]";
    spec.budget = params.budget;
    PartitionStrategyParams for_make = params;
    spec.make = [for_make](const TrialSetup& s) {
        return std::make_unique<PartitionStrategy>(s.n, for_make);
    };
    return {spec, params};
}

Checker partition_success_checker(const PartitionStrategyParams& params) {
    Checker c;
    c.name = "partition_factor_success";
    PartitionStrategyParams p = params;
    c.fn = [p](const CheckContext& ctx) {
        const Graph& f = p.f.pattern;
        if (p.mode == PartitionMode::Partial) {
            long long need = static_cast<long long>(
                std::ceil(p.alpha * ctx.bought.n() / static_cast<double>(f.n())));
            long long have = 0;
            for (const auto& part : p.parts) {
                if (have >= need) break;
                Graph sub = induced_subgraph(ctx.bought, part);
                long long cap = static_cast<long long>(part.size()) / f.n();
                PackingResult r = max_disjoint_copies(sub, f, std::min(cap, need - have));
                if (r.status == SearchStatus::Budget && r.count == 0)
                    throw std::length_error("partition checker: packing search budget exceeded");
                have += r.count;
            }
            return have >= need;
        }
        for (const auto& part : p.parts) {
            Graph sub = induced_subgraph(ctx.bought, part);
            FactorResult r = has_f_factor(sub, f);
            if (r.status == SearchStatus::Budget)
                throw std::length_error("partition checker: factor search budget exceeded");
            if (!r.found()) return false;
        }
        return true;
    };
    return c;
}

Checker min_degree_checker(int k) {
    return Checker{"min_degree>=" + std::to_string(k),
                   [k](const CheckContext& ctx) { return min_degree(ctx.bought) >= k; }};
}

Checker connected_checker() {
    return Checker{"connected", [](const CheckContext& ctx) { return is_connected(ctx.bought); }};
}

Checker contains_edge_checker() {
    return Checker{"contains_edge", [](const CheckContext& ctx) { return ctx.bought.edge_count() >= 1; }};
}

Checker contains_pattern_checker(const Graph& f) {
    Graph pattern = f;
    return Checker{"contains_pattern", [pattern](const CheckContext& ctx) {
                       return count_embeddings(ctx.bought, pattern) > 0;
                   }};
}

Checker ham_power_witness_checker(int k) {
    return Checker{"ham_power_witness:k=" + std::to_string(k), [k](const CheckContext& ctx) {
                       const std::vector<int>* order = ctx.strategy.cycle_witness();
                       if (!order || order->empty()) return false;
                       return verify_ham_power(ctx.bought, *order, k);
                   }};
}

}  // namespace bcgp
