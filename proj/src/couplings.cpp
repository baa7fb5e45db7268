#include "bcgp/couplings.hpp"

#include "bcgp/sampling.hpp"
#include "bcgp/stats.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace bcgp {

namespace {

// edges of a \ b as index list
std::vector<long long> edge_diff(const Graph& a, const std::vector<Graph>& subtract) {
    std::vector<long long> out;
    for (const Edge& e : a.edges()) {
        bool hit = false;
        for (const Graph& s : subtract)
            if (s.has_edge(e.u, e.v)) {
                hit = true;
                break;
            }
        if (!hit) out.push_back(edge_index(e));
    }
    return out;
}

}  // namespace

void default_stage_probabilities(int n, const std::vector<long long>& stage_lengths,
                                 std::vector<double>& p_list, std::vector<double>& pbar_list) {
    double M = static_cast<double>(complete_edge_count(n));
    p_list.clear();
    pbar_list.clear();
    for (long long t : stage_lengths) {
        double lam = std::pow(static_cast<double>(t), -0.25);
        p_list.push_back(t / M * (1.0 - lam));
        pbar_list.push_back(t / M * lam);
    }
}

MultistageSample sample_multistage(int n, const std::vector<long long>& stage_lengths,
                                   const std::vector<double>& p_list,
                                   const std::vector<double>& pbar_list, Rng& rng) {
    std::size_t k = stage_lengths.size();
    if (p_list.size() != k || pbar_list.size() != k)
        throw std::invalid_argument("sample_multistage: list length mismatch");
    long long M = complete_edge_count(n);
    long long total = 0;
    for (long long t : stage_lengths) total += t;
    if (total > M) throw std::invalid_argument("sample_multistage: sum of stage lengths exceeds M");
    for (std::size_t i = 0; i < k; ++i)
        if (p_list[i] < 0 || p_list[i] > 1 || pbar_list[i] < 0 || pbar_list[i] > 1)
            throw std::invalid_argument("sample_multistage: probability outside [0,1]");

    MultistageSample out;
    // the binomial graphs are sampled up front, independent of everything else
    for (std::size_t i = 0; i < k; ++i) {
        out.H.push_back(sample_gnp(n, p_list[i], rng));
        out.Hbar.push_back(sample_gnp(n, pbar_list[i], rng));
    }

    for (std::size_t i = 0; i < k; ++i) {
        std::vector<long long> lower = edge_diff(out.H[i], out.Hhat);           // H_i \ union Hhat_j
        Graph hi_union = out.H[i];
        for (const Edge& e : out.Hbar[i].edges()) hi_union.add_edge(e.u, e.v);  // H_i' = H_i cup Hbar_i
        std::vector<long long> upper = edge_diff(hi_union, out.Hhat);           // H_i' \ union Hhat_j
        long long ti = stage_lengths[i];
        if (static_cast<long long>(lower.size()) > ti || static_cast<long long>(upper.size()) < ti) {
            // failure: discard the iterative construction and emit a fresh
            // process, split into the stage lengths
            out.failure_step = static_cast<int>(i);
            out.Hhat.clear();
            EdgeSequence seq = sample_process_prefix(n, total, rng);
            std::size_t pos = 0;
            for (std::size_t j = 0; j < k; ++j) {
                Graph stage(n);
                for (long long c = 0; c < stage_lengths[j]; ++c) {
                    const Edge& e = seq.edges[pos++];
                    stage.add_edge(e.u, e.v);
                }
                out.Hhat.push_back(std::move(stage));
            }
            return out;
        }
        // top-up: uniform set of (t_i - |lower|) edges from upper \ lower
        std::vector<long long> pool;
        {
            std::vector<bool> in_lower_set;
            std::sort(lower.begin(), lower.end());
            for (long long idx : upper)
                if (!std::binary_search(lower.begin(), lower.end(), idx)) pool.push_back(idx);
        }
        long long need = ti - static_cast<long long>(lower.size());
        // partial Fisher-Yates over the pool
        for (long long j = 0; j < need; ++j) {
            std::size_t swap_at = static_cast<std::size_t>(j) +
                                  static_cast<std::size_t>(rng.below(pool.size() - static_cast<std::size_t>(j)));
            std::swap(pool[static_cast<std::size_t>(j)], pool[swap_at]);
        }
        Graph hhat(n);
        for (long long idx : lower) {
            Edge e = edge_from_index(idx);
            hhat.add_edge(e.u, e.v);
        }
        for (long long j = 0; j < need; ++j) {
            Edge e = edge_from_index(pool[static_cast<std::size_t>(j)]);
            hhat.add_edge(e.u, e.v);
        }
        out.Hhat.push_back(std::move(hhat));
    }
    return out;
}

SandwichSample sample_sandwich(int n, long long m, double p, double p_prime, Rng& rng) {
    long long M = complete_edge_count(n);
    double mdens = static_cast<double>(m) / static_cast<double>(M);
    if (p > mdens || mdens > p_prime)
        throw std::invalid_argument("sample_sandwich: need p <= m/M <= p'");
    // upper graph of the single-stage coupling gets a margin above m/M so the
    // top-up pool is usually large enough
    double margin = std::max(mdens - p, mdens * std::pow(std::max<double>(m, 2), -0.25));
    double pu = std::min(1.0, mdens + margin);
    double pbar = p >= 1.0 ? 0.0 : (pu - p) / (1.0 - p);
    pbar = std::clamp(pbar, 0.0, 1.0);
    MultistageSample ms = sample_multistage(n, {m}, {p}, {pbar}, rng);
    // single-stage lower coupling; then an independent up-coupling to H'
    SandwichSample out{ms.H[0], ms.Hhat[0], Graph(n), false};
    out.Hprime = out.Ghat;
    double extra = (p_prime - mdens) / (1.0 - mdens);
    for (int v = 1; v < n; ++v)
        for (int u = 0; u < v; ++u)
            if (!out.Hprime.has_edge(u, v) && rng.bernoulli(extra)) out.Hprime.add_edge(u, v);
    bool lower_ok = !ms.failure_step.has_value();
    if (lower_ok)
        for (const Edge& e : out.H.edges())
            if (!out.Ghat.has_edge(e.u, e.v)) {
                lower_ok = false;
                break;
            }
    out.ok = lower_ok;  // upper containment holds by construction
    return out;
}

FkgReport check_fkg_exact(int n, const Rational& p, const GraphPredicate& f, const GraphPredicate& g) {
    if (n < 1 || n > 5) throw std::invalid_argument("check_fkg_exact: n out of supported range");
    long long M = complete_edge_count(n);
    long long total = 1LL << M;

    std::vector<Graph> graphs;
    graphs.reserve(static_cast<std::size_t>(total));
    for (long long mask = 0; mask < total; ++mask) {
        Graph gr(n);
        for (long long b = 0; b < M; ++b)
            if (mask >> b & 1) {
                Edge e = edge_from_index(b);
                gr.add_edge(e.u, e.v);
            }
        graphs.push_back(std::move(gr));
    }

    // verify both predicates increasing over all edge-addition pairs
    for (long long mask = 0; mask < total; ++mask)
        for (long long b = 0; b < M; ++b) {
            if (mask >> b & 1) continue;
            long long up = mask | (1LL << b);
            const Graph& lo = graphs[static_cast<std::size_t>(mask)];
            const Graph& hi = graphs[static_cast<std::size_t>(up)];
            if (f(lo) && !f(hi)) throw std::invalid_argument("check_fkg_exact: f is not increasing");
            if (g(lo) && !g(hi)) throw std::invalid_argument("check_fkg_exact: g is not increasing");
        }

    Rational q = Rational(1) - p;
    FkgReport rep{Rational(0), Rational(0), Rational(0), false};
    for (long long mask = 0; mask < total; ++mask) {
        int e = __builtin_popcountll(static_cast<unsigned long long>(mask));
        Rational w(1);
        for (int i = 0; i < e; ++i) w = w * p;
        for (long long i = e; i < M; ++i) w = w * q;
        bool fv = f(graphs[static_cast<std::size_t>(mask)]);
        bool gv = g(graphs[static_cast<std::size_t>(mask)]);
        if (fv) rep.e_f = rep.e_f + w;
        if (gv) rep.e_g = rep.e_g + w;
        if (fv && gv) rep.e_fg = rep.e_fg + w;
    }
    rep.holds = rep.e_fg >= rep.e_f * rep.e_g;
    return rep;
}

std::string CouplingValidation::to_json() const {
    std::ostringstream os;
    os << "{\"chi_square\":" << chi_square << ",\"dof\":" << dof << ",\"p_value\":" << p_value
       << ",\"samples\":" << samples << ",\"failures\":" << failures
       << ",\"containment_violations\":" << containment_violations << "}";
    return os.str();
}

CouplingValidation validate_two_stage(int n, long long t1, long long t2, double p1, double p2,
                                      double pbar1, double pbar2, long long samples, Rng& rng) {
    long long M = complete_edge_count(n);
    CouplingValidation rep;
    rep.samples = samples;

    // enumerate the exact law: Hhat_1 any t1-subset, Hhat_2 any t2-subset of
    // the remaining edges, all equally likely
    std::map<std::pair<long long, long long>, long long> counts;
    auto key_of = [](const Graph& a, const Graph& b) {
        long long ka = 0, kb = 0;
        for (const Edge& e : a.edges()) ka |= 1LL << edge_index(e);
        for (const Edge& e : b.edges()) kb |= 1LL << edge_index(e);
        return std::make_pair(ka, kb);
    };

    for (long long s = 0; s < samples; ++s) {
        MultistageSample ms = sample_multistage(n, {t1, t2}, {p1, p2}, {pbar1, pbar2}, rng);
        // the law of (Hhat_1, Hhat_2) is exact unconditionally (the failure
        // branch resamples a fresh process), so every sample counts
        ++counts[key_of(ms.Hhat[0], ms.Hhat[1])];
        if (ms.failure_step.has_value()) {
            ++rep.failures;
            continue;
        }
        // conditional on no failure the containments hold with probability 1
        for (std::size_t i = 0; i < 2; ++i) {
            for (const Edge& e : ms.H[i].edges()) {
                bool seen_before = false;
                for (std::size_t j = 0; j < i; ++j)
                    if (ms.Hhat[j].has_edge(e.u, e.v)) seen_before = true;
                if (!seen_before && !ms.Hhat[i].has_edge(e.u, e.v)) ++rep.containment_violations;
            }
            for (const Edge& e : ms.Hhat[i].edges())
                if (!ms.H[i].has_edge(e.u, e.v) && !ms.Hbar[i].has_edge(e.u, e.v))
                    ++rep.containment_violations;
        }
    }
    long long kept = samples;

    // expected: uniform over C(M,t1)*C(M-t1,t2) outcomes
    auto binom = [](long long a, long long b) {
        long long r = 1;
        for (long long i = 0; i < b; ++i) r = r * (a - i) / (i + 1);
        return r;
    };
    long long cells = binom(M, t1) * binom(M - t1, t2);
    std::vector<long long> observed;
    observed.reserve(static_cast<std::size_t>(cells));
    for (const auto& kv : counts) observed.push_back(kv.second);
    // cells never hit still contribute
    while (static_cast<long long>(observed.size()) < cells) observed.push_back(0);
    std::vector<double> expected(static_cast<std::size_t>(cells),
                                 static_cast<double>(kept) / static_cast<double>(cells));
    rep.chi_square = chi_square_stat(observed, expected);
    rep.dof = static_cast<int>(cells - 1);
    rep.p_value = chi_square_p_value(rep.chi_square, rep.dof);
    return rep;
}

}  // namespace bcgp
