#include "bcgp/batch.hpp"
#include "bcgp/bounds.hpp"
#include "bcgp/checkers.hpp"
#include "bcgp/engine.hpp"
#include "bcgp/factor_strategies.hpp"
#include "bcgp/pattern.hpp"
#include "bcgp/rng.hpp"
#include "bcgp/sampling.hpp"
#include "bcgp/small_oracle.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace bcgp;

namespace {

Graph graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    Graph g(n);
    for (auto [u, v] : edges) g.add_edge(u, v);
    return g;
}

std::vector<std::pair<int, int>> edges_of(const Graph& g) {
    std::vector<std::pair<int, int>> out;
    for (const Edge& e : g.edges()) out.emplace_back(e.u, e.v);
    return out;
}

}  // namespace

PYBIND11_MODULE(_bcgp, m) {
    m.doc() = "budget-constrained random graph process: core operations";

    py::class_<Graph>(m, "Graph")
        .def(py::init(&graph_from_edges), py::arg("n"), py::arg("edges"))
        .def_property_readonly("n", &Graph::n)
        .def_property_readonly("edge_count", &Graph::edge_count)
        .def("has_edge", &Graph::has_edge)
        .def("degree", &Graph::degree)
        .def("edges", &edges_of)
        .def("to_edge_list", &Graph::to_edge_list)
        .def_static("complete", &Graph::complete)
        .def_static("from_edge_list",
                    static_cast<Graph (*)(const std::string&)>(&Graph::from_edge_list));

    m.def("complete_edge_count", &complete_edge_count);
    m.def("builtin_pattern", &builtin_pattern);
    m.def("path_power", &path_power);

    m.def("sample_gnp", [](int n, double p, std::uint64_t seed) {
        Rng rng(seed);
        return sample_gnp(n, p, rng);
    });
    m.def("sample_gnm", [](int n, long long mm, std::uint64_t seed) {
        Rng rng(seed);
        return sample_gnm(n, mm, rng);
    });
    m.def("sample_process_prefix", [](int n, long long t, std::uint64_t seed) {
        Rng rng(seed);
        EdgeSequence seq = sample_process_prefix(n, t, rng);
        std::vector<std::pair<int, int>> out;
        for (const Edge& e : seq.edges) out.emplace_back(e.u, e.v);
        return out;
    });

    m.def("one_density", [](const Graph& f) { return one_density(f).to_double(); });
    m.def("one_density_str", [](const Graph& f) { return one_density(f).str(); });
    m.def("max_one_density", [](const Graph& f) { return max_one_density(f).to_double(); });
    m.def("max_one_density_str", [](const Graph& f) { return max_one_density(f).str(); });
    m.def("is_strictly_one_balanced", &is_strictly_one_balanced);
    m.def("is_vertex_balanced", &is_vertex_balanced);

    m.def("count_copies_at", &count_copies_at);
    m.def("has_f_factor", [](const Graph& g, const Graph& f) {
        FactorResult r = has_f_factor(g, f);
        if (r.status == SearchStatus::Budget) throw std::runtime_error("search budget exceeded");
        return py::make_tuple(r.found(), r.witness.copies);
    });
    m.def("verify_ham_power", &verify_ham_power);
    m.def("min_degree", &min_degree);
    m.def("is_connected", &is_connected);

    m.def("budget_exponent", [](const std::string& family, int param, double x) {
        BoundSpec s;
        if (family == "clique_factor") {
            s.family = BoundFamily::CliqueFactor;
            s.r = param;
        } else if (family == "ham_power") {
            s.family = BoundFamily::HamPower;
            s.k = param;
        } else {
            throw std::invalid_argument("family must be clique_factor or ham_power");
        }
        // x on a coarse rational grid keeps the evaluation exact
        Rational xr(static_cast<long long>(x * 720000 + (x >= 0 ? 0.5 : -0.5)), 720000);
        return budget_exponent(s, xr).to_double();
    });

    m.def("optimal_success", [](int n, long long t, long long b, const std::string& checker) {
        GraphPredicate pred;
        if (checker == "contains_edge")
            pred = [](const Graph& g) { return g.edge_count() >= 1; };
        else if (checker == "triangle")
            pred = [](const Graph& g) { return count_embeddings(g, Graph::complete(3)) > 0; };
        else if (checker == "min_degree_1")
            pred = [](const Graph& g) { return g.n() > 0 && min_degree(g) >= 1; };
        else
            throw std::invalid_argument("unknown checker");
        Rational v = optimal_success(n, t, b, pred);
        return py::make_tuple(v.num(), v.den());
    });

    m.def("run_simulation", [](const std::string& config_text, std::uint64_t seed) {
        Config cfg = Config::parse(config_text);
        BatchSpec spec = build_batch(cfg);
        std::vector<TrialOutcome> outcomes = run_batch(spec, seed);
        BatchSummary s = summarize(spec, outcomes, 0.0);
        py::dict d;
        d["strategy"] = s.strategy;
        d["n"] = s.n;
        d["t"] = s.t;
        d["b"] = s.budget;
        d["trials"] = s.trials;
        d["successes"] = s.successes;
        d["errors"] = s.errors;
        d["mean_budget_used"] = s.mean_budget_used;
        return d;
    });
}
