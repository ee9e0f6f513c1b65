#pragma once

// Verifiable outsourced evaluation of a univariate polynomial f over Z_q.
//
// The client encrypts the squared powers of its input alpha (k = ceil(log2(n+1))
// ciphertexts); the server homomorphically assembles Enc(f(alpha)) together
// with a proof Enc(c(s)) for the quotient c(x) = (f(x)-f(alpha))/(x-alpha) at
// a secret point s embedded in the public key's power tower. The client
// decrypts and checks one pairing equation. A function-private variant hands
// the server only encryptions of f's coefficients and spends one extra level.
// A repetition variant runs several independent instances and accepts only
// unanimous, individually verified results.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "vc/bgn.hpp"
#include "vc/mgroup.hpp"
#include "vc/polyarith.hpp"

namespace vc::vcpe {

using bgn::BgnPublicKey;
using bgn::BgnSecretKey;
using bgn::Ciphertext;
using bgn::MessageDomain;
using mgroup::Group;
using mgroup::GroupElement;
using mgroup::MlmParams;
using polyarith::Polynomial;

enum class Mode { plain, function_private };

struct PeOptions {
    u64 message_bound = u64{1} << 16; // output domain for decryption
    u64 input_bound = 256;            // inputs alpha come from [0, input_bound)
};

struct PeSecretKey {
    MlmParams params;
    u64 p = 0;
    u64 q = 0;
    u64 s = 0;      // evaluation point hidden in the power tower
    GroupElement t; // g_1^{f(s)}, the client's commitment to f
    Mode mode = Mode::plain;
    MessageDomain domain;
};

struct PePublicKey {
    BgnPublicKey bgn_pk;
    Mode mode = Mode::plain;
    unsigned k = 0; // ceil(log2(n+1))
    unsigned n = 0; // declared degree of f
    u64 input_bound = 0;
    std::vector<GroupElement> power_tower; // g_1^{s^{2^(l-1)}}, l = 1..k
    std::optional<Polynomial> f;           // plain payload
    std::vector<Ciphertext> gamma;         // function-private payload, n+1 entries
};

struct PeKeyPair {
    PePublicKey pk;
    PeSecretKey sk;
};

// Client-side output of ProbGen. Only sigma crosses the wire; alpha stays
// with the client as the per-query verification key.
struct PeQuery {
    std::vector<Ciphertext> sigma;
    u64 alpha_retained = 0;
};

struct PeResponse {
    Ciphertext rho;   // Enc(f(alpha)), level k (plain) or k+1 (fp)
    GroupElement pi;  // Enc(c(s)),     level 2k (plain) or 2k+1 (fp)

    friend bool operator==(const PeResponse&, const PeResponse&) = default;
};

enum class VerifyStatus { accepted, level_mismatch, decode_failure, equation_failure, disagreement };

struct PeVerifyResult {
    std::optional<u64> value;
    VerifyStatus status = VerifyStatus::equation_failure;

    bool accepted() const { return value.has_value(); }
};

inline unsigned ceil_log2(u64 v) {
    unsigned k = 0;
    u64 cap = 1;
    while (cap < v) {
        cap <<= 1;
        ++k;
    }
    return k;
}

inline unsigned levels_for(unsigned k, Mode mode) {
    return mode == Mode::plain ? 2 * k + 1 : 2 * k + 2;
}

// Key generation over a pre-built instance; f.modulus must equal params.q.
inline PeKeyPair pe_keygen_with_params(const MlmParams& params, const Polynomial& f, Mode mode,
                                       Rng& rng, const PeOptions& opts = {},
                                       OpCounter* counter = nullptr) {
    unsigned n = f.degree();
    if (n < 1) throw DomainError("pe_keygen: polynomial must have degree at least 1");
    if (f.modulus != params.q)
        throw DomainError("pe_keygen: polynomial modulus does not match instance");
    unsigned k = ceil_log2(u64{n} + 1);
    if (params.k != levels_for(k, mode))
        throw DomainError("pe_keygen: instance level count does not match degree/mode");

    Group G(params, counter);
    const u64 N = params.N;

    PeKeyPair kp;
    kp.sk.params = params;
    kp.sk.p = params.p;
    kp.sk.q = params.q;
    kp.sk.s = rng.below(N);
    kp.sk.mode = mode;
    kp.sk.domain = MessageDomain{opts.message_bound};

    // t = g_1^{f(s)} with f(s) evaluated in Z_N on the lifted coefficients
    u64 fs = 0;
    for (auto it = f.coeffs.rbegin(); it != f.coeffs.rend(); ++it)
        fs = add_mod(mul_mod(fs, kp.sk.s, N), *it, N);
    kp.sk.t = G.pow_gen(1, fs);

    kp.pk.bgn_pk = BgnPublicKey{params, G.generator(1), G.order_q_element(rng)};
    kp.pk.mode = mode;
    kp.pk.k = k;
    kp.pk.n = n;
    kp.pk.input_bound = std::min(opts.input_bound, params.q);
    kp.pk.power_tower.reserve(k);
    u64 spow = kp.sk.s;
    for (unsigned l = 0; l < k; ++l) {
        kp.pk.power_tower.push_back(G.pow_gen(1, spow));
        spow = mul_mod(spow, spow, N);
    }
    if (mode == Mode::plain) {
        kp.pk.f = f;
    } else {
        kp.pk.gamma.reserve(n + 1);
        for (u64 coeff : f.coeffs)
            kp.pk.gamma.push_back(bgn::encrypt_residue(kp.pk.bgn_pk, coeff, 1, rng, counter));
    }
    return kp;
}

// Convenience path: samples a fresh instance of the right level count and
// reduces the given integer coefficients modulo the generated q.
inline PeKeyPair pe_keygen(const std::vector<u64>& coeffs, unsigned lambda_bits, Mode mode,
                           Rng& rng, const PeOptions& opts = {}, OpCounter* counter = nullptr) {
    if (coeffs.size() < 2) throw DomainError("pe_keygen: polynomial must have degree at least 1");
    unsigned n = static_cast<unsigned>(coeffs.size() - 1);
    unsigned k = ceil_log2(u64{n} + 1);
    MlmParams params = mgroup::gen_params(lambda_bits, levels_for(k, mode), rng);
    return pe_keygen_with_params(params, polyarith::make_polynomial(params.q, coeffs), mode, rng,
                                 opts, counter);
}

// sigma_l = Enc(alpha^{2^(l-1)}), powers taken in Z_N.
inline PeQuery pe_probgen(const PeSecretKey& sk, const PePublicKey& pk, u64 alpha, Rng& rng,
                          OpCounter* counter = nullptr) {
    if (alpha >= pk.input_bound) throw DomainError("pe_probgen: input outside declared domain");
    PeQuery query;
    query.alpha_retained = alpha;
    query.sigma.reserve(pk.k);
    u64 apow = alpha % sk.params.N;
    for (unsigned l = 0; l < pk.k; ++l) {
        query.sigma.push_back(bgn::encrypt_residue(pk.bgn_pk, apow, 1, rng, counter));
        apow = mul_mod(apow, apow, sk.params.N);
    }
    return query;
}

// e_k-fold with per-position selection: position l contributes on[l] when
// bits[l] is set and g_1 otherwise. Result sits at level bits.size().
inline GroupElement fold_selected(const Group& G, std::span<const GroupElement> on,
                                  const polyarith::BinaryIndex& bits) {
    GroupElement acc = bits.bits[0] ? on[0] : G.generator(1);
    for (std::size_t l = 1; l < bits.bits.size(); ++l)
        acc = G.pair(acc, bits.bits[l] ? on[l] : G.generator(1));
    return acc;
}

// Server side: assembles rho = Enc(f(alpha)) and pi = Enc(c(s)) from the
// query and public key alone. Every power alpha^i is reassembled from the
// encrypted squared powers via the binary decomposition of i; every c(s) term
// alpha^j s^{i-j} pairs a sigma-selection for j against a tower-selection for
// i-j.
inline PeResponse pe_compute(const PePublicKey& pk, std::span<const Ciphertext> sigma,
                             OpCounter* counter = nullptr) {
    if (sigma.size() != pk.k) throw DomainError("pe_compute: query length must equal k");
    for (const auto& c : sigma)
        if (c.elem.level != 1) throw LevelError("pe_compute: query elements must be at level 1");
    const bool fp = pk.mode == Mode::function_private;
    if (!fp && !pk.f) throw DecodeError("pe_compute: plain public key missing polynomial");
    if (fp && pk.gamma.size() != pk.n + 1)
        throw DecodeError("pe_compute: function-private key has wrong payload size");

    Group G(pk.bgn_pk.params, counter);
    std::vector<GroupElement> sigma_elems;
    sigma_elems.reserve(sigma.size());
    for (const auto& c : sigma) sigma_elems.push_back(c.elem);

    const unsigned k = pk.k;
    const unsigned n = pk.n;

    GroupElement rho = G.identity(fp ? k + 1 : k);
    for (unsigned i = 0; i <= n; ++i) {
        GroupElement rho_i = fold_selected(G, sigma_elems, polyarith::binary_rep(i, k));
        if (fp)
            rho = G.mul(rho, G.pair(pk.gamma[i].elem, rho_i));
        else
            rho = G.mul(rho, G.pow(rho_i, pk.f->coeffs[i]));
    }

    GroupElement pi = G.identity(fp ? 2 * k + 1 : 2 * k);
    for (unsigned i = 0; i < n; ++i) {
        for (unsigned j = 0; j <= i; ++j) {
            GroupElement phi = fold_selected(G, sigma_elems, polyarith::binary_rep(j, k));
            GroupElement psi = fold_selected(G, pk.power_tower, polyarith::binary_rep(i - j, k));
            GroupElement pi_ij = G.pair(phi, psi);
            if (fp)
                pi = G.mul(pi, G.pair(pk.gamma[i + 1].elem, pi_ij));
            else
                pi = G.mul(pi, G.pow(pi_ij, pk.f->coeffs[i + 1]));
        }
    }
    return PeResponse{Ciphertext{rho}, pi};
}

// Decrypts rho and checks e(t/g_1^y, g_m^p) = e(g_1^s/g_1^alpha, pi^p), where
// m is 2k in plain mode and 2k+1 in function-private mode. All failure paths
// reject; the status distinguishes a decode failure from an equation failure
// for diagnostics.
inline PeVerifyResult pe_verify(const PeSecretKey& sk, const PePublicKey& pk, u64 alpha,
                                const PeResponse& response, OpCounter* counter = nullptr) {
    const bool fp = sk.mode == Mode::function_private;
    const unsigned k = pk.k;
    const unsigned rho_level = fp ? k + 1 : k;
    const unsigned pi_level = fp ? 2 * k + 1 : 2 * k;
    if (response.rho.elem.level != rho_level || response.pi.level != pi_level)
        return {std::nullopt, VerifyStatus::level_mismatch};

    BgnSecretKey bsk{sk.p};
    auto y = bgn::try_decrypt(bsk, pk.bgn_pk, response.rho, sk.domain, counter);
    if (!y) return {std::nullopt, VerifyStatus::decode_failure};

    Group G(sk.params, counter);
    GroupElement lhs =
        G.pair(G.mul(sk.t, G.inv(G.pow_gen(1, *y))), G.pow_gen(pi_level, sk.p));
    GroupElement rhs = G.pair(G.mul(G.pow_gen(1, sk.s), G.inv(G.pow_gen(1, alpha))),
                              G.pow(response.pi, sk.p));
    if (!G.eq(lhs, rhs)) return {std::nullopt, VerifyStatus::equation_failure};
    return {y, VerifyStatus::accepted};
}

// ---- repetition variant: several independent instances, unanimous accept ----

struct PeRepKeys {
    Mode mode = Mode::plain;
    std::vector<PeKeyPair> instances;

    unsigned reps() const { return static_cast<unsigned>(instances.size()); }
};

inline PeRepKeys pe_rep_keygen(const std::vector<u64>& coeffs, unsigned lambda_bits, Mode mode,
                               unsigned reps, Rng& rng, const PeOptions& opts = {},
                               OpCounter* counter = nullptr) {
    if (reps < 1) throw DomainError("pe_rep_keygen: need at least one instance");
    PeRepKeys keys;
    keys.mode = mode;
    keys.instances.reserve(reps);
    for (unsigned r = 0; r < reps; ++r)
        keys.instances.push_back(pe_keygen(coeffs, lambda_bits, mode, rng, opts, counter));
    return keys;
}

inline std::vector<PeQuery> pe_rep_probgen(const PeRepKeys& keys, u64 alpha, Rng& rng,
                                           OpCounter* counter = nullptr) {
    std::vector<PeQuery> queries;
    queries.reserve(keys.reps());
    for (const auto& kp : keys.instances)
        queries.push_back(pe_probgen(kp.sk, kp.pk, alpha, rng, counter));
    return queries;
}

inline std::vector<PeResponse> pe_rep_compute(std::span<const PePublicKey> pks,
                                              std::span<const std::vector<Ciphertext>> sigmas,
                                              OpCounter* counter = nullptr) {
    if (pks.size() != sigmas.size())
        throw DomainError("pe_rep_compute: instance count mismatch");
    std::vector<PeResponse> responses;
    responses.reserve(pks.size());
    for (std::size_t r = 0; r < pks.size(); ++r)
        responses.push_back(pe_compute(pks[r], sigmas[r], counter));
    return responses;
}

// Accepts iff every instance verifies and all decrypted values agree.
inline PeVerifyResult pe_rep_verify(const PeRepKeys& keys, u64 alpha,
                                    std::span<const PeResponse> responses,
                                    OpCounter* counter = nullptr) {
    if (responses.size() != keys.reps())
        return {std::nullopt, VerifyStatus::level_mismatch};
    std::optional<u64> agreed;
    for (unsigned r = 0; r < keys.reps(); ++r) {
        PeVerifyResult res =
            pe_verify(keys.instances[r].sk, keys.instances[r].pk, alpha, responses[r], counter);
        if (!res.accepted()) return res;
        if (agreed && *agreed != *res.value) return {std::nullopt, VerifyStatus::disagreement};
        agreed = res.value;
    }
    return {agreed, VerifyStatus::accepted};
}

} // namespace vc::vcpe
