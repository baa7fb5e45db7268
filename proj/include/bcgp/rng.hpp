#pragma once

#include <cstdint>
#include <random>

namespace bcgp {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Counter-based child seed derivation: trial i of a batch always gets the
// same stream regardless of execution order or parallelism.
inline std::uint64_t child_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master ^ splitmix64(index + 1));
}

// mt19937_64 with hand-rolled draws. The standard distributions are
// implementation-defined, which would break bit-exact replay across
// toolchains; these are not.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : gen_(seed) {}

    std::uint64_t next_u64() { return gen_(); }

    // uniform in [0, n)
    std::uint64_t below(std::uint64_t n) {
        // rejection from the top to avoid modulo bias
        std::uint64_t lim = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do { x = gen_(); } while (x >= lim);
        return x % n;
    }

    // uniform in [0, 1) with 53 random bits
    double uniform() { return (gen_() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) {
        if (p <= 0.0) return false;
        if (p >= 1.0) return true;
        return uniform() < p;
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace bcgp
