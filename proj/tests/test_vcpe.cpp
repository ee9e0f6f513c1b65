#include <doctest.h>

#include "vc/vcpe.hpp"

using namespace vc;
using namespace vc::vcpe;
using bgn::Ciphertext;
using bgn::MessageDomain;
using mgroup::Group;
using mgroup::GroupElement;
using mgroup::MlmParams;
using polyarith::Polynomial;

namespace {

std::vector<u64> random_coeffs(Rng& rng, unsigned degree, u64 bound) {
    std::vector<u64> coeffs(degree + 1);
    for (auto& c : coeffs) c = rng.below(bound);
    return coeffs;
}

} // namespace

TEST_CASE("keygen pins level counts to the degree") {
    Rng rng(1);
    PeKeyPair plain = pe_keygen({1, 2, 3, 4}, 16, Mode::plain, rng); // n=3, k=2
    CHECK(plain.pk.k == 2);
    CHECK(plain.pk.n == 3);
    CHECK(plain.pk.bgn_pk.params.k == 5);
    CHECK(plain.pk.power_tower.size() == 2);
    CHECK(plain.pk.f.has_value());

    PeKeyPair fp = pe_keygen({1, 2, 3, 4}, 16, Mode::function_private, rng);
    CHECK(fp.pk.bgn_pk.params.k == 6);
    CHECK(fp.pk.gamma.size() == 4);
    CHECK(!fp.pk.f.has_value());

    CHECK_THROWS_AS(pe_keygen({7}, 16, Mode::plain, rng), DomainError);
}

TEST_CASE("commitment exponent is f(s) in Z_N") {
    Rng rng(2);
    PeKeyPair kp = pe_keygen({11, 22}, 16, Mode::plain, rng);
    const u64 N = kp.sk.params.N;
    CHECK(kp.sk.t == GroupElement{1, add_mod(11, mul_mod(22, kp.sk.s, N), N)});
    // tower entries are the squared powers of s
    CHECK(kp.pk.power_tower[0] == GroupElement{1, kp.sk.s});
}

TEST_CASE("function-private payload decrypts back to the coefficients") {
    Rng rng(3);
    std::vector<u64> coeffs{5, 0, 1234, 999};
    PeKeyPair kp = pe_keygen(coeffs, 16, Mode::function_private, rng);
    bgn::BgnSecretKey bsk{kp.sk.p};
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        CHECK(bgn::decrypt(bsk, kp.pk.bgn_pk, kp.pk.gamma[i], kp.sk.domain) == coeffs[i]);
}

TEST_CASE("probgen encodes the squared powers of alpha") {
    Rng rng(4);
    PeKeyPair kp = pe_keygen({1, 2, 3, 4}, 16, Mode::plain, rng); // k=2
    bgn::BgnSecretKey bsk{kp.sk.p};
    MessageDomain domain{1 << 16};

    PeQuery q0 = pe_probgen(kp.sk, kp.pk, 0, rng);
    for (const auto& c : q0.sigma) CHECK(bgn::decrypt(bsk, kp.pk.bgn_pk, c, domain) == 0);

    PeQuery q1 = pe_probgen(kp.sk, kp.pk, 1, rng);
    for (const auto& c : q1.sigma) CHECK(bgn::decrypt(bsk, kp.pk.bgn_pk, c, domain) == 1);

    PeQuery q3 = pe_probgen(kp.sk, kp.pk, 3, rng);
    CHECK(q3.sigma.size() == 2);
    CHECK(bgn::decrypt(bsk, kp.pk.bgn_pk, q3.sigma[0], domain) == 3);
    CHECK(bgn::decrypt(bsk, kp.pk.bgn_pk, q3.sigma[1], domain) == 9);
    CHECK(q3.alpha_retained == 3);

    CHECK_THROWS_AS(pe_probgen(kp.sk, kp.pk, 256, rng), DomainError);
}

TEST_CASE("all-zero selection folds to the bare generator") {
    Rng rng(5);
    PeKeyPair kp = pe_keygen({1, 2, 3, 4}, 16, Mode::plain, rng);
    Group G(kp.sk.params);
    PeQuery q = pe_probgen(kp.sk, kp.pk, 2, rng);
    std::vector<GroupElement> sigma{q.sigma[0].elem, q.sigma[1].elem};
    GroupElement rho_0 = fold_selected(G, sigma, polyarith::binary_rep(0, 2));
    CHECK(rho_0 == GroupElement{2, 1}); // g_k
}

TEST_CASE("degree-1 scheme end to end") {
    Rng rng(6);
    PeKeyPair kp = pe_keygen({4, 1}, 16, Mode::plain, rng); // f(x) = x + 4, k = 1
    CHECK(kp.pk.k == 1);
    for (u64 alpha : {0ull, 1ull, 9ull, 200ull}) {
        PeQuery q = pe_probgen(kp.sk, kp.pk, alpha, rng);
        PeResponse r = pe_compute(kp.pk, q.sigma);
        PeVerifyResult res = pe_verify(kp.sk, kp.pk, q.alpha_retained, r);
        REQUIRE(res.accepted());
        CHECK(*res.value == alpha + 4);
    }
}

TEST_CASE("hand-built small-prime instance matches direct evaluation") {
    // p=103, q=101, n=3 (k=2, five levels)
    MlmParams params{8, 5, 103, 101, 103 * 101};
    Rng rng(7);
    Polynomial f = polyarith::make_polynomial(101, {17, 30, 99, 4});
    PeKeyPair kp = pe_keygen_with_params(params, f, Mode::plain, rng, PeOptions{101, 101});
    PeQuery q = pe_probgen(kp.sk, kp.pk, 2, rng);
    PeResponse r = pe_compute(kp.pk, q.sigma);

    bgn::BgnSecretKey bsk{kp.sk.p};
    CHECK(bgn::decrypt(bsk, kp.pk.bgn_pk, r.rho, kp.sk.domain) == polyarith::eval(f, 2));

    PeVerifyResult res = pe_verify(kp.sk, kp.pk, 2, r);
    REQUIRE(res.accepted());
    CHECK(*res.value == polyarith::eval(f, 2));
}

TEST_CASE("compute validates the query shape") {
    Rng rng(8);
    PeKeyPair kp = pe_keygen({1, 2, 3, 4}, 16, Mode::plain, rng);
    PeQuery q = pe_probgen(kp.sk, kp.pk, 5, rng);
    std::vector<Ciphertext> short_sigma{q.sigma[0]};
    CHECK_THROWS_AS(pe_compute(kp.pk, short_sigma), DomainError);
    std::vector<Ciphertext> bad_level = q.sigma;
    bad_level[0].elem.level = 2;
    CHECK_THROWS_AS(pe_compute(kp.pk, bad_level), LevelError);
}

TEST_CASE("completeness on random polynomials in both modes") {
    Rng rng(9);
    for (Mode mode : {Mode::plain, Mode::function_private}) {
        for (unsigned n : {1u, 2u, 3u, 7u, 15u}) {
            PeKeyPair kp = pe_keygen(random_coeffs(rng, n, 1 << 15), 16, mode, rng);
            const Polynomial f = polyarith::make_polynomial(
                kp.sk.q, mode == Mode::plain ? kp.pk.f->coeffs : [&] {
                    bgn::BgnSecretKey bsk{kp.sk.p};
                    std::vector<u64> cs;
                    for (const auto& g : kp.pk.gamma)
                        cs.push_back(bgn::decrypt(bsk, kp.pk.bgn_pk, g, kp.sk.domain));
                    return cs;
                }());
            for (int trial = 0; trial < 4; ++trial) {
                u64 alpha = rng.below(256);
                PeQuery q = pe_probgen(kp.sk, kp.pk, alpha, rng);
                PeResponse r = pe_compute(kp.pk, q.sigma);
                PeVerifyResult res = pe_verify(kp.sk, kp.pk, q.alpha_retained, r);
                REQUIRE(res.accepted());
                CHECK(*res.value == polyarith::eval(f, alpha));
            }
        }
    }
}

TEST_CASE("transparent-backend exponent identities") {
    Rng rng(10);
    PeKeyPair kp = pe_keygen(random_coeffs(rng, 7, 1 << 15), 16, Mode::plain, rng);
    const u64 N = kp.sk.params.N;
    const u64 p = kp.sk.p;
    Group G(kp.sk.params);
    u64 alpha = 19;
    PeQuery q = pe_probgen(kp.sk, kp.pk, alpha, rng);
    PeResponse r = pe_compute(kp.pk, q.sigma);

    // rho^p = (g_k^p)^{f(alpha) computed in Z_N}
    u64 falpha = 0;
    for (auto it = kp.pk.f->coeffs.rbegin(); it != kp.pk.f->coeffs.rend(); ++it)
        falpha = add_mod(mul_mod(falpha, alpha, N), *it, N);
    CHECK(G.pow(r.rho.elem, p) == G.pow_gen(kp.pk.k, mul_mod(p, falpha, N)));

    // pi^p = (g_2k)^{p * c(s)} with the double sum taken in Z_N
    u64 cs = polyarith::quotient_double_sum(kp.pk.f->coeffs, alpha, kp.sk.s, N);
    CHECK(G.pow(r.pi, p) == G.pow_gen(2 * kp.pk.k, mul_mod(p, cs, N)));

    // and the mod-q route through the coefficient-side quotient agrees
    u64 cs_q = polyarith::eval(polyarith::quotient_coeffs(*kp.pk.f, alpha % kp.sk.q),
                               kp.sk.s % kp.sk.q);
    CHECK(G.pow(r.pi, p) == G.pow_gen(2 * kp.pk.k, mul_mod(p, cs_q, N)));
}

TEST_CASE("plaintext shifts of rho are rejected") {
    Rng rng(11);
    for (Mode mode : {Mode::plain, Mode::function_private}) {
        PeKeyPair kp = pe_keygen(random_coeffs(rng, 3, 1 << 10), 16, mode, rng);
        PeQuery q = pe_probgen(kp.sk, kp.pk, 7, rng);
        PeResponse r = pe_compute(kp.pk, q.sigma);
        Group G(kp.sk.params);
        r.rho.elem = G.mul(r.rho.elem, G.generator(r.rho.elem.level));
        PeVerifyResult res = pe_verify(kp.sk, kp.pk, q.alpha_retained, r);
        CHECK_FALSE(res.accepted());
    }
}

TEST_CASE("random proofs are rejected") {
    Rng rng(12);
    PeKeyPair kp = pe_keygen(random_coeffs(rng, 7, 1 << 12), 16, Mode::plain, rng);
    PeQuery q = pe_probgen(kp.sk, kp.pk, 33, rng);
    PeResponse honest = pe_compute(kp.pk, q.sigma);
    Group G(kp.sk.params);
    u64 truth = *pe_verify(kp.sk, kp.pk, q.alpha_retained, honest).value;
    int accepts = 0;
    for (int trial = 0; trial < 100; ++trial) {
        PeResponse r = honest;
        r.pi = G.sample_uniform(r.pi.level, rng);
        PeVerifyResult res = pe_verify(kp.sk, kp.pk, q.alpha_retained, r);
        if (res.accepted() && *res.value != truth) ++accepts;
    }
    CHECK(accepts == 0);
}

TEST_CASE("responses at the wrong level are rejected, not fatal") {
    Rng rng(13);
    PeKeyPair kp = pe_keygen(random_coeffs(rng, 3, 1 << 10), 16, Mode::plain, rng);
    PeQuery q = pe_probgen(kp.sk, kp.pk, 5, rng);
    PeResponse r = pe_compute(kp.pk, q.sigma);
    r.pi.level += 1;
    PeVerifyResult res = pe_verify(kp.sk, kp.pk, q.alpha_retained, r);
    CHECK_FALSE(res.accepted());
    CHECK(res.status == VerifyStatus::level_mismatch);
}

TEST_CASE("replaying another query's response is rejected") {
    Rng rng(14);
    PeKeyPair kp = pe_keygen({0, 1}, 16, Mode::plain, rng); // f(x) = x
    PeQuery qa = pe_probgen(kp.sk, kp.pk, 1, rng);
    PeQuery qb = pe_probgen(kp.sk, kp.pk, 2, rng);
    PeResponse rb = pe_compute(kp.pk, qb.sigma);
    // honest for alpha=2, presented against the alpha=1 verification key
    PeVerifyResult res = pe_verify(kp.sk, kp.pk, qa.alpha_retained, rb);
    CHECK_FALSE(res.accepted());
}

TEST_CASE("repetition accepts unanimity and rejects a single tampered instance") {
    Rng rng(15);
    // keep integer evaluations below every possible 16-bit q so honest
    // instances agree on the decrypted value
    std::vector<u64> coeffs{9, 3, 0, 7};
    PeRepKeys keys = pe_rep_keygen(coeffs, 16, Mode::plain, 3, rng);
    CHECK(keys.reps() == 3);

    u64 alpha = 1;
    auto queries = pe_rep_probgen(keys, alpha, rng);
    std::vector<PePublicKey> pks;
    std::vector<std::vector<Ciphertext>> sigmas;
    for (unsigned rdx = 0; rdx < 3; ++rdx) {
        pks.push_back(keys.instances[rdx].pk);
        sigmas.push_back(queries[rdx].sigma);
    }
    auto responses = pe_rep_compute(pks, sigmas);
    PeVerifyResult res = pe_rep_verify(keys, alpha, responses);
    REQUIRE(res.accepted());
    CHECK(*res.value == 19); // 9 + 3 + 7

    // tampering any single instance forces a reject
    Group G(keys.instances[1].sk.params);
    auto tampered = responses;
    tampered[1].rho.elem = G.mul(tampered[1].rho.elem, G.generator(tampered[1].rho.elem.level));
    CHECK_FALSE(pe_rep_verify(keys, alpha, tampered).accepted());
}

TEST_CASE("a single repetition reduces to plain verification") {
    Rng rng(16);
    PeRepKeys keys = pe_rep_keygen({2, 5}, 16, Mode::plain, 1, rng);
    auto queries = pe_rep_probgen(keys, 3, rng);
    PeResponse r = pe_compute(keys.instances[0].pk, queries[0].sigma);
    std::vector<PeResponse> responses{r};
    PeVerifyResult rep = pe_rep_verify(keys, 3, responses);
    PeVerifyResult one = pe_verify(keys.instances[0].sk, keys.instances[0].pk, 3, r);
    REQUIRE(rep.accepted());
    REQUIRE(one.accepted());
    CHECK(*rep.value == *one.value);
    CHECK(*rep.value == 17);
}
