#pragma once

// Exact univariate polynomial arithmetic over Z_q: Horner evaluation,
// quotient-polynomial coefficients c(x) = (f(x) - f(a))/(x - a), Lagrange
// interpolation, and binary index decompositions.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "vc/errors.hpp"
#include "vc/modmath.hpp"

namespace vc::polyarith {

// f(x) = coeffs[0] + coeffs[1] x + ... + coeffs[n] x^n over Z_modulus.
// The coefficient vector length fixes the nominal degree: trailing zeros are
// kept, since derived quantities (k = ceil(log2(n+1))) depend on the declared
// degree rather than the mathematical one.
struct Polynomial {
    u64 modulus = 0;
    std::vector<u64> coeffs;

    unsigned degree() const {
        if (coeffs.empty()) throw DomainError("Polynomial: empty coefficient vector");
        return static_cast<unsigned>(coeffs.size() - 1);
    }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

inline Polynomial make_polynomial(u64 modulus, std::vector<u64> coeffs) {
    if (modulus == 0) throw DomainError("make_polynomial: zero modulus");
    if (coeffs.empty()) throw DomainError("make_polynomial: empty coefficient vector");
    for (auto& c : coeffs) c %= modulus;
    return Polynomial{modulus, std::move(coeffs)};
}

inline u64 eval(const Polynomial& f, u64 x) {
    u64 acc = 0;
    u64 xr = x % f.modulus;
    for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it)
        acc = add_mod(mul_mod(acc, xr, f.modulus), *it, f.modulus);
    return acc;
}

// Quotient c(x) with f(x) - f(alpha) = (x - alpha) c(x), degree n-1, by
// synthetic division: c_{n-1} = f_n, c_{i-1} = f_i + alpha * c_i.
inline Polynomial quotient_coeffs(const Polynomial& f, u64 alpha) {
    unsigned n = f.degree();
    if (n == 0) throw DomainError("quotient_coeffs: degree-0 polynomial has no quotient");
    u64 a = alpha % f.modulus;
    std::vector<u64> c(n);
    c[n - 1] = f.coeffs[n];
    for (unsigned i = n - 1; i >= 1; --i)
        c[i - 1] = add_mod(f.coeffs[i], mul_mod(a, c[i], f.modulus), f.modulus);
    return Polynomial{f.modulus, std::move(c)};
}

// One term of the expanded double sum: f_{i+1} * alpha^j, reduced mod m.
// The sum over 0 <= j <= i < n of term(i,j) * s^{i-j} equals c(s); the server
// side aggregates its proof exactly in this term-by-term shape.
inline u64 quotient_term(std::span<const u64> coeffs, unsigned i, unsigned j, u64 alpha, u64 m) {
    return mul_mod(coeffs[i + 1] % m, pow_mod(alpha % m, j, m), m);
}

// Direct evaluation of c(s) as sum_{i=0}^{n-1} sum_{j=0}^{i} f_{i+1} a^j s^{i-j}
// modulo m. Quadratic; kept as the independent cross-check of the synthetic
// division route. Works over any modulus m (the exponent-side identities are
// checked mod N, the coefficient-side ones mod q).
inline u64 quotient_double_sum(std::span<const u64> coeffs, u64 alpha, u64 s, u64 m) {
    if (coeffs.size() < 2)
        throw DomainError("quotient_double_sum: degree-0 polynomial has no quotient");
    unsigned n = static_cast<unsigned>(coeffs.size() - 1);
    u64 acc = 0;
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j <= i; ++j) {
            u64 term = mul_mod(quotient_term(coeffs, i, j, alpha, m), pow_mod(s % m, i - j, m), m);
            acc = add_mod(acc, term, m);
        }
    return acc;
}

// Unique polynomial of degree < points.size() through the given points.
// Requires distinct x_i and a prime modulus.
inline Polynomial interpolate(std::span<const std::pair<u64, u64>> points, u64 q) {
    if (points.empty()) throw DomainError("interpolate: no points");
    if (points.size() > q) throw DomainError("interpolate: more points than field elements");
    const std::size_t m = points.size();
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (points[i].first % q == points[j].first % q)
                throw DomainError("interpolate: duplicate x coordinate");

    // full product P(x) = prod (x - x_j)
    std::vector<u64> prod(m + 1, 0);
    prod[0] = 1;
    for (std::size_t j = 0; j < m; ++j) {
        u64 xj = points[j].first % q;
        u64 neg = xj == 0 ? 0 : q - xj;
        // multiply prod by (x - x_j): new[d+1] += old[d], new[d] += neg*old[d]
        std::vector<u64> next(m + 1, 0);
        for (std::size_t d = 0; d <= j; ++d) {
            next[d + 1] = add_mod(next[d + 1], prod[d], q);
            next[d] = add_mod(next[d], mul_mod(neg, prod[d], q), q);
        }
        prod = std::move(next);
    }

    std::vector<u64> result(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        u64 xi = points[i].first % q;
        u64 yi = points[i].second % q;
        // basis_i(x) = P(x) / (x - x_i) by synthetic division
        std::vector<u64> basis(m, 0);
        u64 carry = 0;
        for (std::size_t d = m; d-- > 0;) {
            carry = add_mod(prod[d + 1], mul_mod(carry, xi, q), q);
            basis[d] = carry;
        }
        // scale by y_i / basis_i(x_i)
        u64 denom = 0;
        u64 xpow = 1;
        for (std::size_t d = 0; d < m; ++d) {
            denom = add_mod(denom, mul_mod(basis[d], xpow, q), q);
            xpow = mul_mod(xpow, xi, q);
        }
        u64 scale = mul_mod(yi, inv_mod(denom, q), q);
        for (std::size_t d = 0; d < m; ++d)
            result[d] = add_mod(result[d], mul_mod(scale, basis[d], q), q);
    }
    return Polynomial{q, std::move(result)};
}

// Little-endian binary representation (i_1, ..., i_k) with
// i = sum i_l * 2^(l-1). Errors when i does not fit in k bits.
struct BinaryIndex {
    std::vector<std::uint8_t> bits;

    u64 value() const {
        u64 v = 0;
        for (std::size_t l = bits.size(); l-- > 0;) v = (v << 1) | bits[l];
        return v;
    }
};

inline BinaryIndex binary_rep(u64 i, unsigned k) {
    if (k >= 64 || i >= (u64{1} << k))
        throw DomainError("binary_rep: index does not fit in k bits");
    BinaryIndex out;
    out.bits.resize(k);
    for (unsigned l = 0; l < k; ++l) out.bits[l] = static_cast<std::uint8_t>((i >> l) & 1);
    return out;
}

// Expand (x - alpha) * c(x) + r. Test/oracle helper for the division identity.
inline Polynomial expand_linear_times(const Polynomial& c, u64 alpha, u64 r) {
    u64 q = c.modulus;
    u64 a = alpha % q;
    std::vector<u64> out(c.coeffs.size() + 1, 0);
    for (std::size_t d = 0; d < c.coeffs.size(); ++d) {
        out[d + 1] = add_mod(out[d + 1], c.coeffs[d], q);
        out[d] = sub_mod(out[d], mul_mod(a, c.coeffs[d], q), q);
    }
    out[0] = add_mod(out[0], r % q, q);
    return Polynomial{q, std::move(out)};
}

} // namespace vc::polyarith
