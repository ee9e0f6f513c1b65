#pragma once

// Scripted malicious-server strategies. Each one runs with exactly the
// material a real compute role holds (public key + query), so the rejection
// tests exercise the verification equations rather than implementation
// accidents.

#include <algorithm>
#include <span>
#include <string>
#include <vector>

#include "vc/vcmm.hpp"
#include "vc/vcpe.hpp"

namespace vc::app {

enum class Tamper {
    none,
    flip_rho,     // shift the encoded result by one plaintext unit
    random_pi,    // replace the proof with a uniform group element
    permute_rows, // rotate rows (mm) or instances (pe repetition)
    replay,       // answer a different, well-formed query instead
};

inline Tamper parse_tamper(const std::string& name) {
    if (name == "none" || name.empty()) return Tamper::none;
    if (name == "flip-rho") return Tamper::flip_rho;
    if (name == "random-pi") return Tamper::random_pi;
    if (name == "permute-rows") return Tamper::permute_rows;
    if (name == "replay") return Tamper::replay;
    throw DomainError("unknown tamper strategy: " + name);
}

// The replay strategy without a stored foreign query: homomorphically shift
// every query ciphertext by one before answering honestly. The response is
// then the honest answer to a different well-formed query.
inline std::vector<bgn::Ciphertext> shift_sigma(const bgn::BgnPublicKey& pk,
                                                std::span<const bgn::Ciphertext> sigma) {
    mgroup::Group G(pk.params);
    std::vector<bgn::Ciphertext> out;
    out.reserve(sigma.size());
    for (const auto& c : sigma)
        out.push_back(bgn::Ciphertext{G.mul(c.elem, G.generator(c.elem.level))});
    return out;
}

inline vcpe::PeResponse pe_compute_tampered(const vcpe::PePublicKey& pk,
                                            std::span<const bgn::Ciphertext> sigma,
                                            Tamper strategy, Rng& rng) {
    if (strategy == Tamper::replay) {
        auto shifted = shift_sigma(pk.bgn_pk, sigma);
        return vcpe::pe_compute(pk, shifted);
    }
    vcpe::PeResponse response = vcpe::pe_compute(pk, sigma);
    mgroup::Group G(pk.bgn_pk.params);
    switch (strategy) {
        case Tamper::none:
            break;
        case Tamper::flip_rho:
            response.rho.elem = G.mul(response.rho.elem, G.generator(response.rho.elem.level));
            break;
        case Tamper::random_pi:
            response.pi = G.sample_uniform(response.pi.level, rng);
            break;
        case Tamper::permute_rows:
            throw DomainError("permute-rows needs several pe instances (use --reps >= 2)");
        case Tamper::replay:
            break;
    }
    return response;
}

inline std::vector<vcpe::PeResponse> pe_rep_compute_tampered(
    std::span<const vcpe::PePublicKey> pks, std::span<const std::vector<bgn::Ciphertext>> sigmas,
    Tamper strategy, Rng& rng) {
    if (strategy == Tamper::permute_rows) {
        if (pks.size() < 2)
            throw DomainError("permute-rows needs several pe instances (use --reps >= 2)");
        auto responses = vcpe::pe_rep_compute(pks, sigmas);
        std::rotate(responses.begin(), responses.begin() + 1, responses.end());
        return responses;
    }
    // tamper exactly one instance; the rest answer honestly
    std::vector<vcpe::PeResponse> responses;
    responses.reserve(pks.size());
    for (std::size_t r = 0; r < pks.size(); ++r) {
        if (r == 0 && strategy != Tamper::none)
            responses.push_back(pe_compute_tampered(pks[r], sigmas[r], strategy, rng));
        else
            responses.push_back(vcpe::pe_compute(pks[r], sigmas[r]));
    }
    return responses;
}

inline vcmm::MmResponse mm_compute_tampered(const vcmm::MmPublicKey& pk,
                                            std::span<const bgn::Ciphertext> sigma,
                                            Tamper strategy, Rng& rng) {
    if (strategy == Tamper::replay) {
        auto shifted = shift_sigma(pk.bgn_pk, sigma);
        return vcmm::mm_compute(pk, shifted);
    }
    vcmm::MmResponse response = vcmm::mm_compute(pk, sigma);
    mgroup::Group G(pk.bgn_pk.params);
    switch (strategy) {
        case Tamper::none:
            break;
        case Tamper::flip_rho: {
            auto& elem = response.rho[rng.below(response.rho.size())].elem;
            elem = G.mul(elem, G.generator(elem.level));
            break;
        }
        case Tamper::random_pi: {
            auto& elem = response.pi[rng.below(response.pi.size())];
            elem = G.sample_uniform(elem.level, rng);
            break;
        }
        case Tamper::permute_rows:
            if (response.rho.size() < 2)
                throw DomainError("permute-rows needs a matrix of order >= 2");
            std::rotate(response.rho.begin(), response.rho.begin() + 1, response.rho.end());
            std::rotate(response.pi.begin(), response.pi.begin() + 1, response.pi.end());
            break;
        case Tamper::replay:
            break;
    }
    return response;
}

} // namespace vc::app
