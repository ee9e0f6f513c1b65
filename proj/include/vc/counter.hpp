#pragma once

#include <cstdint>

namespace vc {

// Tallies of group operations. Counting is by abstract group op (one mul, one
// pow, one pairing), not by underlying word operations, which is what the
// client/server cost comparisons are stated in.
struct OpCounter {
    std::uint64_t muls = 0;
    std::uint64_t pows = 0;
    std::uint64_t pairings = 0;

    std::uint64_t total() const { return muls + pows + pairings; }

    void reset() { muls = pows = pairings = 0; }

    OpCounter& operator+=(const OpCounter& other) {
        muls += other.muls;
        pows += other.pows;
        pairings += other.pairings;
        return *this;
    }
};

// Per-phase counters for a full protocol life-cycle.
struct PhaseCounters {
    OpCounter keygen;
    OpCounter probgen;
    OpCounter compute;
    OpCounter verify;

    OpCounter client() const {
        OpCounter c = probgen;
        c += verify;
        return c;
    }
};

} // namespace vc
