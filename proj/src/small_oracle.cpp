#include "bcgp/small_oracle.hpp"

#include "bcgp/sampling.hpp"

#include <sstream>
#include <stdexcept>

namespace bcgp {

namespace {

Graph graph_of_mask(int n, unsigned mask) {
    Graph g(n);
    long long M = complete_edge_count(n);
    for (long long b = 0; b < M; ++b)
        if (mask >> b & 1) {
            Edge e = edge_from_index(b);
            g.add_edge(e.u, e.v);
        }
    return g;
}

}  // namespace

std::vector<bool> monotone_checker_table(int n, const GraphPredicate& checker) {
    long long M = complete_edge_count(n);
    std::vector<bool> table(static_cast<std::size_t>(1) << M);
    for (unsigned mask = 0; mask < table.size(); ++mask)
        table[mask] = checker(graph_of_mask(n, mask));
    for (unsigned mask = 0; mask < table.size(); ++mask)
        for (long long b = 0; b < M; ++b) {
            if (mask >> b & 1) continue;
            if (table[mask] && !table[mask | (1u << b)])
                throw std::invalid_argument("small_oracle: checker is not monotone increasing");
        }
    return table;
}

SmallOracle::SmallOracle(int n, long long t, long long b, const GraphPredicate& checker)
    : n_(n), M_(complete_edge_count(n)), t_(t), b_(b) {
    if (n > 4) throw std::length_error("small_oracle: instances capped at n = 4");
    if (t < 0 || t > M_) throw std::invalid_argument("small_oracle: t out of range");
    checker_table_ = monotone_checker_table(n, checker);
    memo_.assign(static_cast<std::size_t>(64 * 64), std::nullopt);
    val(0, 0);
}

Rational SmallOracle::val(unsigned pmask, unsigned bmask) {
    std::size_t key = static_cast<std::size_t>(pmask) * 64 + bmask;
    if (memo_[key]) return *memo_[key];
    Rational result;
    long long presented = __builtin_popcount(pmask);
    if (presented == t_) {
        result = checker_table_[bmask] ? Rational(1) : Rational(0);
    } else {
        Rational sum(0);
        long long bought = __builtin_popcount(bmask);
        for (long long e = 0; e < M_; ++e) {
            if (pmask >> e & 1) continue;
            Rational skip = val(pmask | (1u << e), bmask);
            Rational best = skip;
            if (bought < b_) {
                Rational buy = val(pmask | (1u << e), bmask | (1u << e));
                if (buy > best) best = buy;
            }
            sum = sum + best;
        }
        result = sum / Rational(M_ - presented);
    }
    memo_[key] = result;
    return result;
}

Rational SmallOracle::value() const { return *memo_[0]; }

bool SmallOracle::decide(unsigned pmask, unsigned bmask, unsigned edge_bit) const {
    long long bought = __builtin_popcount(bmask);
    if (bought >= b_) return false;
    std::size_t skip_key = static_cast<std::size_t>(pmask | edge_bit) * 64 + bmask;
    std::size_t buy_key = static_cast<std::size_t>(pmask | edge_bit) * 64 + (bmask | edge_bit);
    if (!memo_[skip_key] || !memo_[buy_key])
        throw std::logic_error("small_oracle: unreachable state queried");
    return *memo_[buy_key] > *memo_[skip_key];
}

double SmallOracle::simulate(long long trials, Rng& rng) const {
    long long hits = 0;
    for (long long i = 0; i < trials; ++i) {
        unsigned pmask = 0, bmask = 0;
        ProcessSampler sampler(n_, t_, rng);
        for (long long s = 0; s < t_; ++s) {
            Edge e = sampler.next();
            unsigned bit = 1u << edge_index(e);
            if (decide(pmask, bmask, bit)) bmask |= bit;
            pmask |= bit;
        }
        if (checker_table_[bmask]) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(trials);
}

std::string SmallOracle::table_json() const {
    std::ostringstream os;
    os << "{\"n\":" << n_ << ",\"t\":" << t_ << ",\"b\":" << b_ << ",\"value\":\"" << value().str()
       << "\",\"states\":[";
    bool first = true;
    for (unsigned pmask = 0; pmask < 64; ++pmask)
        for (unsigned bmask = 0; bmask < 64; ++bmask) {
            std::size_t key = static_cast<std::size_t>(pmask) * 64 + bmask;
            if (!memo_[key]) continue;
            if (!first) os << ',';
            first = false;
            os << "{\"presented\":" << pmask << ",\"bought\":" << bmask << ",\"value\":\""
               << memo_[key]->str() << "\"}";
        }
    os << "]}";
    return os.str();
}

namespace {

Rational seq_val(long long M, long long t, long long b, const std::vector<bool>& table,
                 std::vector<int>& seq, unsigned pmask, unsigned bmask) {
    long long i = static_cast<long long>(seq.size());
    if (i == t) return table[bmask] ? Rational(1) : Rational(0);
    Rational sum(0);
    long long bought = __builtin_popcount(bmask);
    for (int e = 0; e < M; ++e) {
        if (pmask >> e & 1) continue;
        seq.push_back(e);
        Rational skip = seq_val(M, t, b, table, seq, pmask | (1u << e), bmask);
        Rational best = skip;
        if (bought < b) {
            Rational buy = seq_val(M, t, b, table, seq, pmask | (1u << e), bmask | (1u << e));
            if (buy > best) best = buy;
        }
        seq.pop_back();
        sum = sum + best;
    }
    return sum / Rational(M - i);
}

}  // namespace

Rational SmallOracle::sequence_value(int n, long long t, long long b, const GraphPredicate& checker) {
    long long M = complete_edge_count(n);
    if (n > 4 || t > M) throw std::length_error("sequence_value: instance too large");
    std::vector<bool> table = monotone_checker_table(n, checker);
    std::vector<int> seq;
    return seq_val(M, t, b, table, seq, 0, 0);
}

Rational SmallOracle::gnm_probability(int n, long long m, const GraphPredicate& checker) {
    long long M = complete_edge_count(n);
    if (M > 26) throw std::length_error("gnm_probability: instance too large");
    long long total = 0, good = 0;
    for (unsigned mask = 0; mask < (1u << M); ++mask) {
        if (__builtin_popcount(mask) != m) continue;
        ++total;
        if (checker(graph_of_mask(n, mask))) ++good;
    }
    return Rational(good, total);
}

Rational optimal_success(int n, long long t, long long b, const GraphPredicate& checker) {
    SmallOracle o(n, t, b, checker);
    return o.value();
}

}  // namespace bcgp
