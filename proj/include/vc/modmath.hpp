#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "vc/errors.hpp"
#include "vc/rng.hpp"

namespace vc {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Residue arithmetic modulo an up-to-64-bit modulus, 128-bit intermediates.

constexpr u64 add_mod(u64 a, u64 b, u64 m) {
    u128 s = u128{a} + b;
    return static_cast<u64>(s % m);
}

constexpr u64 sub_mod(u64 a, u64 b, u64 m) {
    u64 br = b % m;
    u64 ar = a % m;
    return ar >= br ? ar - br : ar + (m - br);
}

constexpr u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((u128{a} * b) % m);
}

constexpr u64 pow_mod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 result = 1;
    u64 b = base % m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, b, m);
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    return result;
}

// Modular inverse via extended Euclid. Throws if gcd(a, m) != 1.
inline u64 inv_mod(u64 a, u64 m) {
    std::int64_t t = 0, new_t = 1;
    u64 r = m, new_r = a % m;
    while (new_r != 0) {
        u64 quot = r / new_r;
        std::int64_t tmp_t = t - static_cast<std::int64_t>(quot) * new_t;
        t = new_t;
        new_t = tmp_t;
        u64 tmp_r = r - quot * new_r;
        r = new_r;
        new_r = tmp_r;
    }
    if (r != 1) throw DomainError("inv_mod: value not invertible");
    return t < 0 ? static_cast<u64>(t + static_cast<std::int64_t>(m)) : static_cast<u64>(t);
}

// Miller–Rabin with `rounds` random bases; error probability < 4^-rounds.
inline bool is_probable_prime(u64 n, int rounds, Rng& rng) {
    if (n < 2) return false;
    for (u64 small : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
        if (n == small) return true;
        if (n % small == 0) return false;
    }
    u64 d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (int round = 0; round < rounds; ++round) {
        u64 a = 2 + rng.below(n - 3); // base in [2, n-2]
        u64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < r; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

inline constexpr int kMillerRabinRounds = 64;

// Random probable prime of exactly `bits` bits (top bit set).
inline u64 random_prime(unsigned bits, Rng& rng) {
    if (bits < 8 || bits > 32)
        throw DomainError("random_prime: bit length must be in [8, 32]");
    for (;;) {
        u64 candidate = rng.exact_bits(bits) | 1u;
        if (is_probable_prime(candidate, kMillerRabinRounds, rng)) return candidate;
    }
}

// Exact nonnegative rational, kept in lowest terms.
struct Rational {
    u64 num = 0;
    u64 den = 1;

    Rational() = default;
    Rational(u64 n, u64 d) : num(n), den(d) {
        if (den == 0) throw DomainError("Rational: zero denominator");
        normalize();
    }

    void normalize() {
        if (num == 0) {
            den = 1;
            return;
        }
        u64 g = std::gcd(num, den);
        num /= g;
        den /= g;
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return a.num == b.num && a.den == b.den;
    }

    std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }
};

} // namespace vc
