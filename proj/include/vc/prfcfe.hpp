#pragma once

// Algebraic PRF over a trilinear instance, F_K(i,j) = A_j^{a_i} * B_j^{b_i},
// with its closed-form-efficiency evaluation: all n products
// prod_j F_K(i,j)^{x_j} from O(n) exponentiations instead of O(n^2).

#include <cstdint>
#include <span>
#include <vector>

#include "vc/mgroup.hpp"

namespace vc::prfcfe {

using mgroup::Group;
using mgroup::GroupElement;
using mgroup::MlmParams;

struct PrfKey {
    MlmParams params;
    std::vector<u64> alphas;
    std::vector<u64> betas;
    std::vector<GroupElement> As; // level 1
    std::vector<GroupElement> Bs; // level 1

    unsigned n() const { return static_cast<unsigned>(alphas.size()); }
};

struct CfePrecomp {
    GroupElement A; // prod A_j^{x_j}
    GroupElement B; // prod B_j^{x_j}
};

inline PrfKey prf_kg(const MlmParams& params, unsigned n, Rng& rng,
                     OpCounter* counter = nullptr) {
    if (n < 1) throw DomainError("prf_kg: dimension must be at least 1");
    Group G(params, counter);
    PrfKey key;
    key.params = params;
    key.alphas.reserve(n);
    key.betas.reserve(n);
    key.As.reserve(n);
    key.Bs.reserve(n);
    for (unsigned i = 0; i < n; ++i) {
        key.alphas.push_back(rng.below(params.N));
        key.betas.push_back(rng.below(params.N));
        key.As.push_back(G.sample_uniform(1, rng));
        key.Bs.push_back(G.sample_uniform(1, rng));
    }
    return key;
}

// F_K(i, j) with 1-based indices in [1, n].
inline GroupElement prf_eval(const PrfKey& key, unsigned i, unsigned j,
                             OpCounter* counter = nullptr) {
    if (i < 1 || i > key.n() || j < 1 || j > key.n())
        throw DomainError("prf_eval: index out of range");
    Group G(key.params, counter);
    return G.mul(G.pow(key.As[j - 1], key.alphas[i - 1]),
                 G.pow(key.Bs[j - 1], key.betas[i - 1]));
}

inline CfePrecomp cfe_precompute(const PrfKey& key, std::span<const u64> x,
                                 OpCounter* counter = nullptr) {
    if (x.size() != key.n()) throw DomainError("cfe: input length mismatch");
    Group G(key.params, counter);
    GroupElement A = G.identity(1);
    GroupElement B = G.identity(1);
    for (unsigned j = 0; j < key.n(); ++j) {
        A = G.mul(A, G.pow(key.As[j], x[j]));
        B = G.mul(B, G.pow(key.Bs[j], x[j]));
    }
    return {A, B};
}

// out[i-1] = prod_j F_K(i,j)^{x_j} = A^{a_i} * B^{b_i} for every i, using one
// precomputation pass: 4n exponentiations total.
inline std::vector<GroupElement> cfe(const PrfKey& key, std::span<const u64> x,
                                     OpCounter* counter = nullptr) {
    CfePrecomp pre = cfe_precompute(key, x, counter);
    Group G(key.params, counter);
    std::vector<GroupElement> out;
    out.reserve(key.n());
    for (unsigned i = 0; i < key.n(); ++i)
        out.push_back(G.mul(G.pow(pre.A, key.alphas[i]), G.pow(pre.B, key.betas[i])));
    return out;
}

} // namespace vc::prfcfe
