#pragma once

// Leveled multilinear-map abstraction with a transparent reference backend.
//
// The backend stores each group element as its discrete log: an element of
// G_i is a pair (level, exp) meaning g_i^exp, where all groups share the
// composite order N = p*q. Pairings multiply exponents and add levels. This
// is functionally exact and intentionally non-hiding: it exists so that the
// protocol algebra built on top can be tested bit-for-bit, not to provide
// security. A hardened graded encoding could be substituted behind the same
// surface.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vc/counter.hpp"
#include "vc/errors.hpp"
#include "vc/modmath.hpp"
#include "vc/rng.hpp"

namespace vc::mgroup {

inline constexpr const char* kTransparentBackend = "transparent";

// A k-multilinear group instance: groups G_1..G_k of order N = p*q with
// canonical generators g_i (exponent 1 at each level).
struct MlmParams {
    unsigned lambda_bits = 0; // bit length of each prime
    unsigned k = 0;           // multilinearity level
    u64 p = 0;
    u64 q = 0;
    u64 N = 0;                // p*q
    std::string backend = kTransparentBackend;

    friend bool operator==(const MlmParams&, const MlmParams&) = default;
};

struct GroupElement {
    unsigned level = 1;
    u64 exp = 0; // discrete log to base g_level, in [0, N)

    friend bool operator==(const GroupElement&, const GroupElement&) = default;
};

// Samples a fresh instance: two distinct probable primes of exactly
// lambda_bits bits (Miller–Rabin, 64 rounds) and k levels. Deterministic
// given the Rng state.
inline MlmParams gen_params(unsigned lambda_bits, unsigned k, Rng& rng) {
    if (lambda_bits < 8)
        throw DomainError("gen_params: lambda_bits must be at least 8");
    if (lambda_bits > 32)
        throw DomainError("gen_params: lambda_bits above backend word width (32)");
    if (k < 2) throw DomainError("gen_params: multilinearity level k must be at least 2");
    MlmParams params;
    params.lambda_bits = lambda_bits;
    params.k = k;
    params.p = random_prime(lambda_bits, rng);
    do {
        params.q = random_prime(lambda_bits, rng);
    } while (params.q == params.p);
    params.N = params.p * params.q;
    return params;
}

inline MlmParams gen_params(unsigned lambda_bits, unsigned k, u64 seed) {
    Rng rng(seed);
    return gen_params(lambda_bits, k, rng);
}

// Group-law surface over one instance. Holds an optional OpCounter that
// tallies every mul/pow/pairing executed through it.
class Group {
public:
    explicit Group(const MlmParams& params, OpCounter* counter = nullptr)
        : params_(&params), counter_(counter) {}

    const MlmParams& params() const { return *params_; }
    u64 order() const { return params_->N; }

    GroupElement generator(unsigned level) const {
        check_level(level);
        return {level, 1};
    }

    GroupElement identity(unsigned level) const {
        check_level(level);
        return {level, 0};
    }

    // g_level^e. Costs one exponentiation.
    GroupElement pow_gen(unsigned level, u64 e) const {
        check_level(level);
        bump_pow();
        return {level, e % params_->N};
    }

    GroupElement mul(const GroupElement& a, const GroupElement& b) const {
        if (a.level != b.level)
            throw LevelError("mul: operands at different levels");
        check_level(a.level);
        bump_mul();
        return {a.level, add_mod(a.exp, b.exp, params_->N)};
    }

    GroupElement pow(const GroupElement& a, u64 e) const {
        check_level(a.level);
        bump_pow();
        return {a.level, mul_mod(a.exp, e % params_->N, params_->N)};
    }

    // Negative exponents go through the inverse: a^e = (a^-1)^|e|.
    GroupElement pow_signed(const GroupElement& a, std::int64_t e) const {
        if (e >= 0) return pow(a, static_cast<u64>(e));
        u64 mag = static_cast<u64>(-(e + 1)) + 1;
        check_level(a.level);
        bump_pow();
        u64 reduced = mul_mod(a.exp, mag % params_->N, params_->N);
        return {a.level, reduced == 0 ? 0 : params_->N - reduced};
    }

    GroupElement inv(const GroupElement& a) const {
        check_level(a.level);
        bump_mul();
        return {a.level, a.exp == 0 ? 0 : params_->N - a.exp};
    }

    bool eq(const GroupElement& a, const GroupElement& b) const {
        if (a.level != b.level)
            throw LevelError("eq: operands at different levels");
        return a.exp == b.exp;
    }

    // e(g_i^a, g_j^b) = g_{i+j}^{ab}; requires i + j <= k.
    GroupElement pair(const GroupElement& a, const GroupElement& b) const {
        unsigned target = a.level + b.level;
        if (target > params_->k)
            throw LevelError("pair: level overflow (graded structure exhausted)");
        bump_pairing();
        return {target, mul_mod(a.exp, b.exp, params_->N)};
    }

    // e_i: G_1 x ... x G_1 -> G_i as a left fold of pair. 2 <= i <= k and
    // every input must be at level 1.
    GroupElement multi_pair(std::span<const GroupElement> elems) const {
        if (elems.size() < 2)
            throw LevelError("multi_pair: needs at least two inputs");
        if (elems.size() > params_->k)
            throw LevelError("multi_pair: level overflow");
        for (const auto& e : elems)
            if (e.level != 1)
                throw LevelError("multi_pair: all inputs must be at level 1");
        GroupElement acc = elems[0];
        for (std::size_t i = 1; i < elems.size(); ++i) acc = pair(acc, elems[i]);
        return acc;
    }

    GroupElement sample_uniform(unsigned level, Rng& rng) const {
        check_level(level);
        return {level, rng.below(params_->N)};
    }

    // h = u^q for uniform u in G_1; h has order dividing p (h^p = identity).
    GroupElement order_q_element(Rng& rng) const {
        GroupElement u = sample_uniform(1, rng);
        return pow(u, params_->q);
    }

private:
    void check_level(unsigned level) const {
        if (level < 1 || level > params_->k)
            throw LevelError("level outside [1, k]");
    }
    void bump_mul() const {
        if (counter_) ++counter_->muls;
    }
    void bump_pow() const {
        if (counter_) ++counter_->pows;
    }
    void bump_pairing() const {
        if (counter_) ++counter_->pairings;
    }

    const MlmParams* params_;
    OpCounter* counter_;
};

// Exact total-variation-style distance sum for Z = p*X*Y mod q with X, Y
// uniform over Z_N, computed by brute force over all (x, y) pairs:
//   sum_w | Pr[Z = w] - 1/q |
// Closed form: 2(q-1)/q^2, independent of p.
inline Rational statistical_distance_pxy(u64 p, u64 q) {
    Rng probe(1);
    if (p == q) throw DomainError("statistical_distance_pxy: primes must be distinct");
    if (!is_probable_prime(p, kMillerRabinRounds, probe) ||
        !is_probable_prime(q, kMillerRabinRounds, probe))
        throw DomainError("statistical_distance_pxy: arguments must be prime");
    const u64 N = p * q;
    if (N > 4096)
        throw DomainError("statistical_distance_pxy: N too large to enumerate");

    std::vector<u64> count(q, 0);
    for (u64 x = 0; x < N; ++x)
        for (u64 y = 0; y < N; ++y) ++count[p * mul_mod(x, y, N) % q];

    // sum over w of |count[w]/N^2 - 1/q| with common denominator q*N^2
    const u64 total = N * N;
    u64 numerator = 0;
    for (u64 w = 0; w < q; ++w) {
        u64 lhs = q * count[w];
        numerator += lhs > total ? lhs - total : total - lhs;
    }
    return Rational(numerator, q * total);
}

inline Rational statistical_distance_closed_form(u64 q) {
    return Rational(2 * (q - 1), q * q);
}

} // namespace vc::mgroup
