#pragma once

// Verifiable outsourced matrix-vector multiplication over a trilinear
// instance. The public key carries the matrix (or its entrywise encryption in
// function-private mode) together with a blinded copy T_ij = g_1^{p^2 a M_ij}
// * F_K(i,j); the client's per-query verification keys tau_i are computed
// with the PRF's closed-form efficiency in O(n) exponentiations. The server
// returns per-row ciphertexts and pairing proofs; the client checks
// e(pi_i, g_1^p) = eta^{p y_i} * tau_i for every row.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "vc/bgn.hpp"
#include "vc/mgroup.hpp"
#include "vc/prfcfe.hpp"
#include "vc/vcpe.hpp"

namespace vc::vcmm {

using bgn::BgnPublicKey;
using bgn::BgnSecretKey;
using bgn::Ciphertext;
using bgn::MessageDomain;
using mgroup::Group;
using mgroup::GroupElement;
using mgroup::MlmParams;
using vcpe::Mode;
using vcpe::PeVerifyResult;
using vcpe::VerifyStatus;

// Square matrix over Z_q, row-major, 0-based internal indexing.
struct Matrix {
    unsigned n = 0;
    std::vector<u64> entries; // n*n

    u64 at(unsigned i, unsigned j) const { return entries[std::size_t{i} * n + j]; }
    u64& at(unsigned i, unsigned j) { return entries[std::size_t{i} * n + j]; }

    friend bool operator==(const Matrix&, const Matrix&) = default;
};

inline Matrix make_matrix(unsigned n, std::vector<u64> entries, u64 modulus) {
    if (n == 0) throw DomainError("make_matrix: empty matrix");
    if (entries.size() != std::size_t{n} * n)
        throw DomainError("make_matrix: entry count must be n*n");
    for (auto& e : entries) e %= modulus;
    return Matrix{n, std::move(entries)};
}

struct MmOptions {
    u64 message_bound = u64{1} << 16;
    u64 input_bound = 256;
};

struct MmSecretKey {
    MlmParams params;
    u64 p = 0;
    u64 q = 0;
    prfcfe::PrfKey prf_key;
    u64 a = 0;        // blinding exponent, fixed for all entries
    GroupElement eta; // g_3^{p^2 a}
    Mode mode = Mode::plain;
    MessageDomain domain;
};

struct MmPublicKey {
    BgnPublicKey bgn_pk;
    Mode mode = Mode::plain;
    unsigned n = 0;
    u64 input_bound = 0;
    std::optional<Matrix> M;       // plain payload
    std::vector<Ciphertext> gamma; // fp payload, n*n row-major
    std::vector<GroupElement> T;   // blinded matrix, n*n row-major, level 1
};

struct MmKeyPair {
    MmPublicKey pk;
    MmSecretKey sk;
};

struct MmQuery {
    std::vector<Ciphertext> sigma;  // Enc(x_j), crosses the wire
    std::vector<GroupElement> tau;  // level-3 verification keys, client-retained
};

struct MmResponse {
    std::vector<Ciphertext> rho;  // level 1 (plain) or 2 (fp)
    std::vector<GroupElement> pi; // level 2

    friend bool operator==(const MmResponse&, const MmResponse&) = default;
};

struct MmVerifyResult {
    std::optional<std::vector<u64>> value;
    VerifyStatus status = VerifyStatus::equation_failure;
    unsigned failing_row = 0; // meaningful when rejected on a per-row check

    bool accepted() const { return value.has_value(); }
};

inline MmKeyPair mm_keygen_with_params(const MlmParams& params, const Matrix& M, Mode mode,
                                       Rng& rng, const MmOptions& opts = {},
                                       OpCounter* counter = nullptr) {
    if (M.n == 0) throw DomainError("mm_keygen: empty matrix");
    if (params.k != 3) throw DomainError("mm_keygen: needs a trilinear instance");
    Group G(params, counter);
    const u64 N = params.N;
    const unsigned n = M.n;

    MmKeyPair kp;
    kp.sk.params = params;
    kp.sk.p = params.p;
    kp.sk.q = params.q;
    kp.sk.prf_key = prfcfe::prf_kg(params, n, rng, counter);
    kp.sk.a = rng.below(N);
    const u64 p2a = mul_mod(mul_mod(params.p, params.p, N), kp.sk.a, N);
    kp.sk.eta = G.pow_gen(3, p2a);
    kp.sk.mode = mode;
    kp.sk.domain = MessageDomain{opts.message_bound};

    kp.pk.bgn_pk = BgnPublicKey{params, G.generator(1), G.order_q_element(rng)};
    kp.pk.mode = mode;
    kp.pk.n = n;
    kp.pk.input_bound = std::min(opts.input_bound, params.q);
    kp.pk.T.reserve(std::size_t{n} * n);
    for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) {
            GroupElement mask = prfcfe::prf_eval(kp.sk.prf_key, i + 1, j + 1, counter);
            kp.pk.T.push_back(G.mul(G.pow_gen(1, mul_mod(p2a, M.at(i, j), N)), mask));
        }
    if (mode == Mode::plain) {
        kp.pk.M = M;
    } else {
        kp.pk.gamma.reserve(std::size_t{n} * n);
        for (u64 entry : M.entries)
            kp.pk.gamma.push_back(bgn::encrypt_residue(kp.pk.bgn_pk, entry, 1, rng, counter));
    }
    return kp;
}

// Convenience path: fresh trilinear instance, entries reduced mod the
// generated q.
inline MmKeyPair mm_keygen(unsigned n, const std::vector<u64>& entries, unsigned lambda_bits,
                           Mode mode, Rng& rng, const MmOptions& opts = {},
                           OpCounter* counter = nullptr) {
    MlmParams params = mgroup::gen_params(lambda_bits, 3, rng);
    return mm_keygen_with_params(params, make_matrix(n, entries, params.q), mode, rng, opts,
                                 counter);
}

// Encrypts x and derives the verification keys tau_i = e(prod_j F_K(i,j)^{x_j},
// g_2^p) through the closed-form evaluation, never the naive double product.
inline MmQuery mm_probgen(const MmSecretKey& sk, const MmPublicKey& pk, std::span<const u64> x,
                          Rng& rng, OpCounter* counter = nullptr) {
    if (x.size() != pk.n) throw DomainError("mm_probgen: input length mismatch");
    for (u64 xj : x)
        if (xj >= pk.input_bound) throw DomainError("mm_probgen: input outside declared domain");
    MmQuery query;
    query.sigma.reserve(pk.n);
    for (u64 xj : x)
        query.sigma.push_back(bgn::encrypt_residue(pk.bgn_pk, xj, 1, rng, counter));

    Group G(sk.params, counter);
    GroupElement g2p = G.pow_gen(2, sk.p);
    std::vector<GroupElement> masks = prfcfe::cfe(sk.prf_key, x, counter);
    query.tau.reserve(pk.n);
    for (const auto& mask : masks) query.tau.push_back(G.pair(mask, g2p));
    return query;
}

// Server side: rho_i is the homomorphic inner product of row i with the
// encrypted input, pi_i = prod_j e(T_ij, sigma_j). Uses only the public key.
inline MmResponse mm_compute(const MmPublicKey& pk, std::span<const Ciphertext> sigma,
                             OpCounter* counter = nullptr) {
    if (sigma.size() != pk.n) throw DomainError("mm_compute: query length mismatch");
    for (const auto& c : sigma)
        if (c.elem.level != 1) throw LevelError("mm_compute: query elements must be at level 1");
    const bool fp = pk.mode == Mode::function_private;
    if (!fp && !pk.M) throw DecodeError("mm_compute: plain public key missing matrix");
    if (fp && pk.gamma.size() != std::size_t{pk.n} * pk.n)
        throw DecodeError("mm_compute: function-private key has wrong payload size");

    Group G(pk.bgn_pk.params, counter);
    const unsigned n = pk.n;
    MmResponse response;
    response.rho.reserve(n);
    response.pi.reserve(n);
    for (unsigned i = 0; i < n; ++i) {
        GroupElement rho_i = G.identity(fp ? 2 : 1);
        GroupElement pi_i = G.identity(2);
        for (unsigned j = 0; j < n; ++j) {
            if (fp)
                rho_i = G.mul(rho_i, G.pair(pk.gamma[std::size_t{i} * n + j].elem, sigma[j].elem));
            else
                rho_i = G.mul(rho_i, G.pow(sigma[j].elem, pk.M->at(i, j)));
            pi_i = G.mul(pi_i, G.pair(pk.T[std::size_t{i} * n + j], sigma[j].elem));
        }
        response.rho.push_back(Ciphertext{rho_i});
        response.pi.push_back(pi_i);
    }
    return response;
}

// Decrypts every row and checks e(pi_i, g_1^p) = eta^{p y_i} * tau_i.
inline MmVerifyResult mm_verify(const MmSecretKey& sk, std::span<const GroupElement> tau,
                                const MmResponse& response, OpCounter* counter = nullptr) {
    const bool fp = sk.mode == Mode::function_private;
    const unsigned n = sk.prf_key.n();
    const unsigned rho_level = fp ? 2 : 1;
    if (tau.size() != n || response.rho.size() != n || response.pi.size() != n)
        return {std::nullopt, VerifyStatus::level_mismatch, 0};
    for (unsigned i = 0; i < n; ++i)
        if (response.rho[i].elem.level != rho_level || response.pi[i].level != 2)
            return {std::nullopt, VerifyStatus::level_mismatch, i};

    Group G(sk.params, counter);
    std::vector<u64> y(n);
    for (unsigned i = 0; i < n; ++i) {
        auto yi = bgn::try_decrypt_raw(sk.params, sk.p, response.rho[i], sk.domain, counter);
        if (!yi) return {std::nullopt, VerifyStatus::decode_failure, i};
        y[i] = *yi;
    }
    for (unsigned i = 0; i < n; ++i) {
        GroupElement lhs = G.pair(response.pi[i], G.pow_gen(1, sk.p));
        GroupElement rhs =
            G.mul(G.pow(sk.eta, mul_mod(sk.p, y[i], sk.params.N)), tau[i]);
        if (!G.eq(lhs, rhs)) return {std::nullopt, VerifyStatus::equation_failure, i};
    }
    return {std::move(y), VerifyStatus::accepted, 0};
}

// Reference evaluation for tests and the application layer.
inline std::vector<u64> mat_vec(const Matrix& M, std::span<const u64> x, u64 q) {
    std::vector<u64> y(M.n, 0);
    for (unsigned i = 0; i < M.n; ++i)
        for (unsigned j = 0; j < M.n; ++j)
            y[i] = add_mod(y[i], mul_mod(M.at(i, j) % q, x[j] % q, q), q);
    return y;
}

} // namespace vc::vcmm
