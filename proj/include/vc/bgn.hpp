#pragma once

// Generalized BGN encryption over a k-multilinear instance: unlimited
// homomorphic additions, up to k-1 homomorphic multiplications via pairings.
// A ciphertext of m at level i is g_i^m * h_i^r where h has order dividing p,
// so raising to p strips the randomness and leaves (g_i^p)^m.

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "vc/mgroup.hpp"

namespace vc::bgn {

using mgroup::Group;
using mgroup::GroupElement;
using mgroup::MlmParams;

struct BgnPublicKey {
    MlmParams params;
    GroupElement g; // level-1 generator
    GroupElement h; // order-q element, exp = q*delta
};

struct BgnSecretKey {
    u64 p = 0;
};

struct Ciphertext {
    GroupElement elem;

    friend bool operator==(const Ciphertext&, const Ciphertext&) = default;
};

// Decryptable plaintexts live in [0, bound). Decryption is a discrete-log
// search, so the bound must stay poly-size.
struct MessageDomain {
    u64 bound = u64{1} << 16;
};

inline std::pair<BgnPublicKey, BgnSecretKey> keygen(unsigned lambda_bits, unsigned k, Rng& rng,
                                                    OpCounter* counter = nullptr) {
    MlmParams params = mgroup::gen_params(lambda_bits, k, rng);
    Group G(params, counter);
    BgnPublicKey pk{params, G.generator(1), G.order_q_element(rng)};
    BgnSecretKey sk{params.p};
    return {std::move(pk), std::move(sk)};
}

// c = g_level^m * h_level^r with explicit randomness r. The order-q element
// is lifted across levels by keeping its exponent, which coincides with
// e_level(h, g_1, ..., g_1).
inline Ciphertext encrypt_with_randomness(const BgnPublicKey& pk, u64 m, u64 r, unsigned level = 1,
                                          OpCounter* counter = nullptr) {
    Group G(pk.params, counter);
    GroupElement h_level{level, pk.h.exp};
    GroupElement gm = G.pow_gen(level, m);
    GroupElement hr = G.pow(h_level, r);
    return Ciphertext{G.mul(gm, hr)};
}

// Encrypts any residue mod N. Protocol layers use this for encoded values
// (powers of the input) that are not themselves constrained to the message
// domain.
inline Ciphertext encrypt_residue(const BgnPublicKey& pk, u64 m, unsigned level, Rng& rng,
                                  OpCounter* counter = nullptr) {
    return encrypt_with_randomness(pk, m % pk.params.N, rng.below(pk.params.N), level, counter);
}

// Encrypts a message from the declared domain.
inline Ciphertext encrypt(const BgnPublicKey& pk, u64 m, const MessageDomain& domain,
                          unsigned level, Rng& rng, OpCounter* counter = nullptr) {
    if (m >= domain.bound) throw DomainError("encrypt: message outside domain");
    return encrypt_residue(pk, m, level, rng, counter);
}

inline Ciphertext encrypt(const BgnPublicKey& pk, u64 m, const MessageDomain& domain, Rng& rng,
                          OpCounter* counter = nullptr) {
    return encrypt(pk, m, domain, 1, rng, counter);
}

// Baby-step giant-step search for the unique m in [0, min(bound, q)) with
// c^p = (g_level^p)^m. Returns nullopt when the plaintext is outside the
// domain (out-of-range value or tampered ciphertext). The search runs through
// the group surface so its cost shows up in the operation counters like any
// other client work.
inline std::optional<u64> try_decrypt_raw(const MlmParams& params, u64 p, const Ciphertext& c,
                                          const MessageDomain& domain,
                                          OpCounter* counter = nullptr) {
    Group G(params, counter);
    const u64 bound = std::min(domain.bound, params.q);
    if (bound == 0) return std::nullopt;
    GroupElement base = G.pow(G.generator(c.elem.level), p);
    GroupElement target = G.pow(c.elem, p);

    const u64 m = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(bound))));
    std::unordered_map<u64, u64> baby;
    baby.reserve(m);
    GroupElement cur = G.identity(c.elem.level);
    for (u64 j = 0; j < m; ++j) {
        baby.emplace(cur.exp, j);
        cur = G.mul(cur, base);
    }
    GroupElement giant = G.inv(G.pow(base, m));
    GroupElement walk = target;
    for (u64 t = 0; t * m < bound; ++t) {
        auto it = baby.find(walk.exp);
        if (it != baby.end()) {
            u64 value = t * m + it->second;
            if (value < bound) return value;
        }
        walk = G.mul(walk, giant);
    }
    return std::nullopt;
}

inline std::optional<u64> try_decrypt(const BgnSecretKey& sk, const BgnPublicKey& pk,
                                      const Ciphertext& c, const MessageDomain& domain,
                                      OpCounter* counter = nullptr) {
    return try_decrypt_raw(pk.params, sk.p, c, domain, counter);
}

inline u64 decrypt(const BgnSecretKey& sk, const BgnPublicKey& pk, const Ciphertext& c,
                   const MessageDomain& domain, OpCounter* counter = nullptr) {
    auto m = try_decrypt(sk, pk, c, domain, counter);
    if (!m) throw DecodeError("decrypt: no plaintext in domain matches ciphertext");
    return *m;
}

inline Ciphertext hom_add(const BgnPublicKey& pk, const Ciphertext& c1, const Ciphertext& c2,
                          OpCounter* counter = nullptr) {
    Group G(pk.params, counter);
    return Ciphertext{G.mul(c1.elem, c2.elem)};
}

inline Ciphertext hom_scale(const BgnPublicKey& pk, const Ciphertext& c, u64 factor,
                            OpCounter* counter = nullptr) {
    Group G(pk.params, counter);
    return Ciphertext{G.pow(c.elem, factor)};
}

// Enc(m_1 * ... * m_j) from level-1 ciphertexts via e_j; consumes j levels of
// multiplicative depth.
inline Ciphertext hom_mul(const BgnPublicKey& pk, std::span<const Ciphertext> cs,
                          OpCounter* counter = nullptr) {
    Group G(pk.params, counter);
    std::vector<GroupElement> elems;
    elems.reserve(cs.size());
    for (const auto& c : cs) elems.push_back(c.elem);
    return Ciphertext{G.multi_pair(elems)};
}

} // namespace vc::bgn
