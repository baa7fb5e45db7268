#include "bcgp/absorber.hpp"

#include "bcgp/checkers.hpp"
#include "bcgp/max_density.hpp"
#include "bcgp/pattern.hpp"
#include "bcgp/rational.hpp"

#include <algorithm>
#include <stdexcept>

namespace bcgp {

std::vector<int> Absorber::initial_endsequence() const {
    return std::vector<int>(spine.begin(), spine.begin() + k);
}

std::vector<int> Absorber::final_endsequence() const {
    return std::vector<int>(spine.end() - k, spine.end());
}

std::vector<int> Absorber::absorption_window() const {
    int mid = s / 2;
    std::vector<int> w;
    for (int i = mid - k; i < mid + k; ++i) w.push_back(spine[i]);
    return w;
}

namespace {

void add_path_power(Graph& g, const std::vector<int>& order, int k) {
    int len = static_cast<int>(order.size());
    for (int i = 0; i < len; ++i)
        for (int d = 1; d <= k && i + d < len; ++d) g.add_edge(order[i], order[i + d]);
}

// cyclic power-edge check for an order that need not span the host
bool cycle_power_edges_present(const Graph& g, const std::vector<int>& order, int k) {
    int len = static_cast<int>(order.size());
    for (int i = 0; i < len; ++i)
        for (int d = 1; d <= k; ++d)
            if (!g.has_edge(order[i], order[(i + d) % len])) return false;
    return true;
}

}  // namespace

Absorber build_absorber_template(int j, int ell, int k) {
    if (j < 3) throw std::invalid_argument("build_absorber_template: j must be >= 3");
    if (k < 2) throw std::invalid_argument("build_absorber_template: k must be >= 2");
    if (ell < 2 * k) throw std::invalid_argument("build_absorber_template: l must be >= 2k");
    Absorber a;
    a.j = j;
    a.ell = ell;
    a.k = k;
    a.s = j * (2 * ell + 4) + ell;
    a.spine.resize(a.s);
    for (int i = 0; i < a.s; ++i) a.spine[i] = i;
    a.absorption_vertex = a.s;
    int mid = a.s / 2;
    a.augmented.reserve(a.s + 1);
    a.augmented.insert(a.augmented.end(), a.spine.begin(), a.spine.begin() + mid);
    a.augmented.push_back(a.absorption_vertex);
    a.augmented.insert(a.augmented.end(), a.spine.begin() + mid, a.spine.end());
    a.edges = Graph(a.s + 1);
    add_path_power(a.edges, a.spine, k);
    add_path_power(a.edges, a.augmented, k);
    return a;
}

void check_absorber_invariants(const Absorber& a, double delta) {
    if (a.s != a.j * (2 * a.ell + 4) + a.ell)
        throw std::logic_error("absorber: spine length violates s = j(2l+4)+l");
    if (static_cast<int>(a.spine.size()) != a.s || static_cast<int>(a.augmented.size()) != a.s + 1)
        throw std::logic_error("absorber: wrong path lengths");
    for (int i = 0; i < a.k; ++i) {
        if (a.augmented[i] != a.spine[i]) throw std::logic_error("absorber: initial endsequences differ");
        if (a.augmented[a.s - a.k + 1 + i] != a.spine[a.s - a.k + i])
            throw std::logic_error("absorber: final endsequences differ");
    }
    {
        std::vector<int> sorted = a.augmented;
        std::sort(sorted.begin(), sorted.end());
        for (int i = 0; i <= a.s; ++i)
            if (sorted[i] != i) throw std::logic_error("absorber: augmented path is not a permutation");
    }
    // edge set is exactly spine^k union augmented^k
    {
        Graph expect(a.s + 1);
        add_path_power(expect, a.spine, a.k);
        add_path_power(expect, a.augmented, a.k);
        if (!(expect == a.edges)) throw std::logic_error("absorber: edge set mismatch");
    }
    // mechanical swap check on a synthetic host: a power of a cycle through
    // the spine plus ring filler, with the absorber's own edges added
    {
        int pad = 3 * a.k + 2;
        int hn = a.s + 1 + pad;
        std::vector<int> ring;
        for (int i = 0; i < a.s; ++i) ring.push_back(i);
        for (int i = 0; i < pad; ++i) ring.push_back(a.s + 1 + i);
        Graph host(hn);
        int len = static_cast<int>(ring.size());
        for (int i = 0; i < len; ++i)
            for (int d = 1; d <= a.k; ++d) host.add_edge(ring[i], ring[(i + d) % len]);
        for (const Edge& e : a.edges.edges()) host.add_edge(e.u, e.v);
        // the ring avoids the absorption vertex, so check its power edges
        // directly; the swapped order spans the host and goes through the
        // full permutation verifier
        if (!cycle_power_edges_present(host, ring, a.k))
            throw std::logic_error("absorber: synthetic host is not a power of a cycle");
        std::vector<int> swapped;
        swapped.insert(swapped.end(), a.augmented.begin(), a.augmented.end());
        for (int i = 0; i < pad; ++i) swapped.push_back(a.s + 1 + i);
        if (!verify_ham_power(host, swapped, a.k))
            throw std::logic_error("absorber: swap verification failed");
    }
    // exact density bound
    {
        Rational bound = Rational(a.k) + Rational(static_cast<long long>(delta * 12), 12);
        Rational dstar = max_one_density_exact(a.edges);
        if (dstar > bound) throw std::logic_error("absorber: d* exceeds k + delta");
    }
}

std::vector<int> EmbeddedAbsorber::spine_hosts(const Absorber& tmpl) const {
    std::vector<int> out;
    out.reserve(tmpl.spine.size());
    for (int local : tmpl.spine) out.push_back(host[local]);
    return out;
}

std::vector<int> EmbeddedAbsorber::augmented_hosts(const Absorber& tmpl) const {
    std::vector<int> out;
    out.reserve(tmpl.augmented.size());
    for (int local : tmpl.augmented) out.push_back(host[local]);
    return out;
}

bool embedded_absorber_ok(const Graph& g, const Absorber& tmpl, const EmbeddedAbsorber& emb) {
    if (emb.host.size() != static_cast<std::size_t>(tmpl.order())) return false;
    for (const Edge& e : tmpl.edges.edges())
        if (!g.has_edge(emb.host[e.u], emb.host[e.v])) return false;
    return true;
}

}  // namespace bcgp
