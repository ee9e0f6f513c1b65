#pragma once

#include <cstdint>
#include <random>

namespace vc {

// Deterministic random source. All sampling in the library flows through an
// explicit Rng handle so that every key, query and tamper strategy is
// reproducible from a 64-bit seed. mt19937_64 output is pinned by the
// standard, so sequences are identical across platforms; we avoid
// std::uniform_int_distribution (implementation-defined) and do our own
// rejection sampling.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // Uniform value in [0, bound). bound must be nonzero.
    std::uint64_t below(std::uint64_t bound) {
        if (bound == 0) return 0;
        // rejection sampling on the top of the range to kill modulo bias
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t v;
        do {
            v = eng_();
        } while (v >= limit);
        return v % bound;
    }

    // Uniform value with exactly `bits` significant bits (top bit set).
    std::uint64_t exact_bits(unsigned bits) {
        if (bits == 0) return 0;
        if (bits == 1) return 1;
        const std::uint64_t top = std::uint64_t{1} << (bits - 1);
        return top | below(top);
    }

    bool coin() { return (eng_() & 1u) != 0; }

private:
    std::mt19937_64 eng_;
};

} // namespace vc
