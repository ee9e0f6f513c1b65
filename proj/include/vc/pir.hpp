#pragma once

// Outsourced private information retrieval on top of the two VC schemes.
//
// Polynomial route: interpolate f with f(i) = w_i over the 1-based bit
// positions and retrieve by evaluating at i; queries are k = ceil(log2 n)
// group elements. Matrix route: pack w row-major into a sqrt(n) x sqrt(n)
// matrix (zero-padded) and retrieve M_ij by multiplying with the j-th unit
// vector; queries are sqrt(n) group elements. Either way the verifier
// returns the true bit or rejects; it never returns a wrong bit.

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "vc/polyarith.hpp"
#include "vc/tamper.hpp"
#include "vc/vcmm.hpp"
#include "vc/vcpe.hpp"

namespace vc::app {

struct Database {
    std::string bits; // '0'/'1' characters, 1-based positions w_1..w_n

    unsigned n() const { return static_cast<unsigned>(bits.size()); }

    unsigned bit(unsigned i) const { // 1-based
        if (i < 1 || i > n()) throw DomainError("database index out of range");
        return bits[i - 1] == '1' ? 1u : 0u;
    }
};

inline Database parse_database(const std::string& s) {
    if (s.empty()) throw DomainError("database must have at least one bit");
    for (char c : s)
        if (c != '0' && c != '1') throw DomainError("database must be a 0/1 string");
    return Database{s};
}

struct PirOutcome {
    std::optional<unsigned> bit;
    vcpe::VerifyStatus status = vcpe::VerifyStatus::accepted;

    bool accepted() const { return bit.has_value(); }
};

// ---- polynomial-evaluation route ----

struct PirPeState {
    vcpe::PeKeyPair keys;
    unsigned db_size = 0;
};

inline PirPeState pir_pe_setup(const Database& db, unsigned lambda_bits, vcpe::Mode mode,
                               Rng& rng) {
    const unsigned n = db.n();
    if (n < 2) throw DomainError("pir_pe_setup: database needs at least 2 bits");
    if (lambda_bits < vcpe::ceil_log2(n) + 2)
        throw DomainError("pir_pe_setup: lambda_bits too small for this database size");

    // degree n-1 interpolant through (i, w_i); k follows the declared degree
    unsigned k = vcpe::ceil_log2(n);
    mgroup::MlmParams params =
        mgroup::gen_params(lambda_bits, vcpe::levels_for(k, mode), rng);
    std::vector<std::pair<u64, u64>> points;
    points.reserve(n);
    for (unsigned i = 1; i <= n; ++i) points.push_back({i, db.bit(i)});
    polyarith::Polynomial f = polyarith::interpolate(points, params.q);

    vcpe::PeOptions opts;
    opts.message_bound = 2;      // retrieved values are bits
    opts.input_bound = n + 1;    // queried positions are 1..n
    PirPeState state;
    state.db_size = n;
    state.keys = vcpe::pe_keygen_with_params(params, f, mode, rng, opts);
    return state;
}

inline PirOutcome pir_pe_retrieve(const PirPeState& state, unsigned i, Rng& rng,
                                  Tamper strategy = Tamper::none) {
    if (i < 1 || i > state.db_size) throw DomainError("pir_pe_retrieve: index out of range");
    vcpe::PeQuery query = vcpe::pe_probgen(state.keys.sk, state.keys.pk, i, rng);
    vcpe::PeResponse response = pe_compute_tampered(state.keys.pk, query.sigma, strategy, rng);
    vcpe::PeVerifyResult res =
        vcpe::pe_verify(state.keys.sk, state.keys.pk, query.alpha_retained, response);
    if (!res.accepted()) return {std::nullopt, res.status};
    return {static_cast<unsigned>(*res.value), res.status};
}

// ---- matrix route ----

struct PirMmState {
    vcmm::MmKeyPair keys;
    unsigned db_size = 0;
    unsigned side = 0; // matrix order, ceil(sqrt(db_size))
};

inline unsigned square_side(unsigned n) {
    unsigned side = static_cast<unsigned>(std::lround(std::ceil(std::sqrt(double(n)))));
    while (side * side < n) ++side;
    return side;
}

inline PirMmState pir_mm_setup(const Database& db, unsigned lambda_bits, vcpe::Mode mode,
                               Rng& rng) {
    const unsigned n = db.n();
    const unsigned side = square_side(n);
    std::vector<u64> entries(std::size_t{side} * side, 0);
    for (unsigned pos = 1; pos <= n; ++pos)
        entries[pos - 1] = db.bit(pos); // row-major: M_ij = w_{(i-1)*side + j}

    vcmm::MmOptions opts;
    opts.message_bound = 2;
    opts.input_bound = 2; // unit-vector queries
    PirMmState state;
    state.db_size = n;
    state.side = side;
    state.keys = vcmm::mm_keygen(side, entries, lambda_bits, mode, rng, opts);
    return state;
}

// Retrieves M_ij (1-based). Padding cells read as 0.
inline PirOutcome pir_mm_retrieve(const PirMmState& state, unsigned i, unsigned j, Rng& rng,
                                  Tamper strategy = Tamper::none) {
    if (i < 1 || i > state.side || j < 1 || j > state.side)
        throw DomainError("pir_mm_retrieve: index out of range");
    std::vector<u64> x(state.side, 0);
    x[j - 1] = 1;
    vcmm::MmQuery query = vcmm::mm_probgen(state.keys.sk, state.keys.pk, x, rng);
    vcmm::MmResponse response = mm_compute_tampered(state.keys.pk, query.sigma, strategy, rng);
    vcmm::MmVerifyResult res = vcmm::mm_verify(state.keys.sk, query.tau, response);
    if (!res.accepted()) return {std::nullopt, res.status};
    return {static_cast<unsigned>((*res.value)[i - 1]), res.status};
}

} // namespace vc::app
