#pragma once

// Canonical JSON encodings for every persisted or wire-crossing type.
// Integers that can exceed 2^53 are always carried as decimal strings so no
// JSON reader silently rounds them.

#include <charconv>
#include <cstdio>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "vc/bgn.hpp"
#include "vc/mgroup.hpp"
#include "vc/polyarith.hpp"
#include "vc/prfcfe.hpp"
#include "vc/vcmm.hpp"
#include "vc/vcpe.hpp"

namespace vc::serial {

using json = nlohmann::json;

inline std::string dec(u64 v) { return std::to_string(v); }

inline u64 parse_u64(const json& j, const char* what) {
    if (!j.is_string()) throw DecodeError(std::string("expected decimal string for ") + what);
    const std::string& s = j.get_ref<const std::string&>();
    u64 value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw DecodeError(std::string("malformed decimal string for ") + what);
    return value;
}

inline const json& field(const json& j, const char* name) {
    auto it = j.find(name);
    if (it == j.end()) throw DecodeError(std::string("missing field: ") + name);
    return *it;
}

// ---- mgroup ----

inline json encode(const mgroup::GroupElement& e) {
    return json{{"level", e.level}, {"exp", dec(e.exp)}};
}

inline mgroup::GroupElement decode_group_element(const json& j) {
    const json& lvl = field(j, "level");
    if (!lvl.is_number_unsigned()) throw DecodeError("group element level must be an integer");
    return {lvl.get<unsigned>(), parse_u64(field(j, "exp"), "exp")};
}

inline json encode(const mgroup::MlmParams& p) {
    return json{{"lambda_bits", p.lambda_bits},
                {"k", p.k},
                {"p", dec(p.p)},
                {"q", dec(p.q)},
                {"backend", p.backend}};
}

inline mgroup::MlmParams decode_params(const json& j) {
    mgroup::MlmParams p;
    p.lambda_bits = field(j, "lambda_bits").get<unsigned>();
    p.k = field(j, "k").get<unsigned>();
    p.p = parse_u64(field(j, "p"), "p");
    p.q = parse_u64(field(j, "q"), "q");
    p.backend = field(j, "backend").get<std::string>();
    if (p.backend != mgroup::kTransparentBackend)
        throw DecodeError("unknown backend: " + p.backend);
    if (p.p == 0 || p.q == 0 || p.p == p.q) throw DecodeError("invalid prime pair");
    if (p.p >> 32 || p.q >> 32) throw DecodeError("prime exceeds backend word width");
    p.N = p.p * p.q;
    return p;
}

// Binding hash so a secret-key file can be matched against its public key.
inline std::string params_hash(const mgroup::MlmParams& p) {
    const std::string material =
        dec(p.p) + "|" + dec(p.q) + "|" + std::to_string(p.k) + "|" + std::to_string(p.lambda_bits);
    u64 h = 1469598103934665603ull; // FNV-1a
    for (unsigned char c : material) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

// ---- bgn ----

inline json encode(const bgn::Ciphertext& c) { return encode(c.elem); }

inline bgn::Ciphertext decode_ciphertext(const json& j) {
    return bgn::Ciphertext{decode_group_element(j)};
}

// ---- polyarith ----

inline json encode(const polyarith::Polynomial& f) {
    json coeffs = json::array();
    for (u64 c : f.coeffs) coeffs.push_back(dec(c));
    return json{{"q", dec(f.modulus)}, {"coeffs", coeffs}};
}

inline polyarith::Polynomial decode_polynomial(const json& j) {
    polyarith::Polynomial f;
    f.modulus = parse_u64(field(j, "q"), "q");
    const json& coeffs = field(j, "coeffs");
    if (!coeffs.is_array() || coeffs.empty()) throw DecodeError("polynomial needs coefficients");
    for (const auto& c : coeffs) f.coeffs.push_back(parse_u64(c, "coefficient"));
    return f;
}

// ---- prfcfe ----

inline json encode(const prfcfe::PrfKey& key) {
    json alphas = json::array(), betas = json::array(), as = json::array(), bs = json::array();
    for (u64 v : key.alphas) alphas.push_back(dec(v));
    for (u64 v : key.betas) betas.push_back(dec(v));
    for (const auto& e : key.As) as.push_back(encode(e));
    for (const auto& e : key.Bs) bs.push_back(encode(e));
    return json{{"params", encode(key.params)},
                {"alphas", alphas},
                {"betas", betas},
                {"As", as},
                {"Bs", bs}};
}

inline prfcfe::PrfKey decode_prf_key(const json& j) {
    prfcfe::PrfKey key;
    key.params = decode_params(field(j, "params"));
    for (const auto& v : field(j, "alphas")) key.alphas.push_back(parse_u64(v, "alpha"));
    for (const auto& v : field(j, "betas")) key.betas.push_back(parse_u64(v, "beta"));
    for (const auto& v : field(j, "As")) key.As.push_back(decode_group_element(v));
    for (const auto& v : field(j, "Bs")) key.Bs.push_back(decode_group_element(v));
    if (key.alphas.size() != key.betas.size() || key.alphas.size() != key.As.size() ||
        key.alphas.size() != key.Bs.size())
        throw DecodeError("prf key component lengths differ");
    return key;
}

// ---- modes and schemes ----

inline std::string mode_tag(vcpe::Mode mode) {
    return mode == vcpe::Mode::plain ? "plain" : "fp";
}

inline vcpe::Mode decode_mode(const json& j) {
    std::string tag = j.get<std::string>();
    if (tag == "plain") return vcpe::Mode::plain;
    if (tag == "fp") return vcpe::Mode::function_private;
    throw DecodeError("unknown mode: " + tag);
}

// ---- vcpe keys ----

inline json encode(const vcpe::PePublicKey& pk) {
    json tower = json::array();
    for (const auto& e : pk.power_tower) tower.push_back(encode(e));
    json j{{"params", encode(pk.bgn_pk.params)},
           {"g", encode(pk.bgn_pk.g)},
           {"h", encode(pk.bgn_pk.h)},
           {"mode", mode_tag(pk.mode)},
           {"k", pk.k},
           {"n", pk.n},
           {"input_bound", dec(pk.input_bound)},
           {"power_tower", tower}};
    if (pk.mode == vcpe::Mode::plain) {
        j["f"] = encode(*pk.f);
    } else {
        json gamma = json::array();
        for (const auto& c : pk.gamma) gamma.push_back(encode(c));
        j["gamma"] = gamma;
    }
    return j;
}

inline vcpe::PePublicKey decode_pe_public_key(const json& j) {
    vcpe::PePublicKey pk;
    pk.bgn_pk.params = decode_params(field(j, "params"));
    pk.bgn_pk.g = decode_group_element(field(j, "g"));
    pk.bgn_pk.h = decode_group_element(field(j, "h"));
    pk.mode = decode_mode(field(j, "mode"));
    pk.k = field(j, "k").get<unsigned>();
    pk.n = field(j, "n").get<unsigned>();
    pk.input_bound = parse_u64(field(j, "input_bound"), "input_bound");
    for (const auto& e : field(j, "power_tower")) pk.power_tower.push_back(decode_group_element(e));
    if (pk.power_tower.size() != pk.k) throw DecodeError("power tower length must equal k");
    if (pk.mode == vcpe::Mode::plain) {
        pk.f = decode_polynomial(field(j, "f"));
        if (pk.f->degree() != pk.n) throw DecodeError("payload degree does not match n");
    } else {
        for (const auto& c : field(j, "gamma")) pk.gamma.push_back(decode_ciphertext(c));
        if (pk.gamma.size() != std::size_t{pk.n} + 1)
            throw DecodeError("gamma length must equal n+1");
    }
    return pk;
}

inline json encode(const vcpe::PeSecretKey& sk) {
    return json{{"params", encode(sk.params)},
                {"params_hash", params_hash(sk.params)},
                {"p", dec(sk.p)},
                {"q", dec(sk.q)},
                {"s", dec(sk.s)},
                {"t", encode(sk.t)},
                {"mode", mode_tag(sk.mode)},
                {"message_bound", dec(sk.domain.bound)}};
}

inline vcpe::PeSecretKey decode_pe_secret_key(const json& j) {
    vcpe::PeSecretKey sk;
    sk.params = decode_params(field(j, "params"));
    if (j.contains("params_hash") && j["params_hash"].get<std::string>() != params_hash(sk.params))
        throw DecodeError("secret key params hash mismatch");
    sk.p = parse_u64(field(j, "p"), "p");
    sk.q = parse_u64(field(j, "q"), "q");
    sk.s = parse_u64(field(j, "s"), "s");
    sk.t = decode_group_element(field(j, "t"));
    sk.mode = decode_mode(field(j, "mode"));
    sk.domain.bound = parse_u64(field(j, "message_bound"), "message_bound");
    return sk;
}

// ---- vcmm keys ----

inline json encode(const vcmm::MmPublicKey& pk) {
    json T = json::array();
    for (const auto& e : pk.T) T.push_back(encode(e));
    json j{{"params", encode(pk.bgn_pk.params)},
           {"g", encode(pk.bgn_pk.g)},
           {"h", encode(pk.bgn_pk.h)},
           {"mode", mode_tag(pk.mode)},
           {"n", pk.n},
           {"input_bound", dec(pk.input_bound)},
           {"T", T}};
    if (pk.mode == vcpe::Mode::plain) {
        json entries = json::array();
        for (u64 e : pk.M->entries) entries.push_back(dec(e));
        j["M"] = entries;
    } else {
        json gamma = json::array();
        for (const auto& c : pk.gamma) gamma.push_back(encode(c));
        j["gamma"] = gamma;
    }
    return j;
}

inline vcmm::MmPublicKey decode_mm_public_key(const json& j) {
    vcmm::MmPublicKey pk;
    pk.bgn_pk.params = decode_params(field(j, "params"));
    pk.bgn_pk.g = decode_group_element(field(j, "g"));
    pk.bgn_pk.h = decode_group_element(field(j, "h"));
    pk.mode = decode_mode(field(j, "mode"));
    pk.n = field(j, "n").get<unsigned>();
    pk.input_bound = parse_u64(field(j, "input_bound"), "input_bound");
    for (const auto& e : field(j, "T")) pk.T.push_back(decode_group_element(e));
    const std::size_t nn = std::size_t{pk.n} * pk.n;
    if (pk.T.size() != nn) throw DecodeError("T must have n*n entries");
    if (pk.mode == vcpe::Mode::plain) {
        vcmm::Matrix M;
        M.n = pk.n;
        for (const auto& e : field(j, "M")) M.entries.push_back(parse_u64(e, "matrix entry"));
        if (M.entries.size() != nn) throw DecodeError("M must have n*n entries");
        pk.M = std::move(M);
    } else {
        for (const auto& c : field(j, "gamma")) pk.gamma.push_back(decode_ciphertext(c));
        if (pk.gamma.size() != nn) throw DecodeError("gamma must have n*n entries");
    }
    return pk;
}

inline json encode(const vcmm::MmSecretKey& sk) {
    return json{{"params", encode(sk.params)},
                {"params_hash", params_hash(sk.params)},
                {"p", dec(sk.p)},
                {"q", dec(sk.q)},
                {"prf_key", encode(sk.prf_key)},
                {"a", dec(sk.a)},
                {"eta", encode(sk.eta)},
                {"mode", mode_tag(sk.mode)},
                {"message_bound", dec(sk.domain.bound)}};
}

inline vcmm::MmSecretKey decode_mm_secret_key(const json& j) {
    vcmm::MmSecretKey sk;
    sk.params = decode_params(field(j, "params"));
    if (j.contains("params_hash") && j["params_hash"].get<std::string>() != params_hash(sk.params))
        throw DecodeError("secret key params hash mismatch");
    sk.p = parse_u64(field(j, "p"), "p");
    sk.q = parse_u64(field(j, "q"), "q");
    sk.prf_key = decode_prf_key(field(j, "prf_key"));
    sk.a = parse_u64(field(j, "a"), "a");
    sk.eta = decode_group_element(field(j, "eta"));
    sk.mode = decode_mode(field(j, "mode"));
    sk.domain.bound = parse_u64(field(j, "message_bound"), "message_bound");
    return sk;
}

// ---- wire messages ----
//
// Every query/response crossing the client/server boundary travels in one
// envelope: {"kind", "scheme", "query_id", "body"}. pe bodies always hold an
// instance array (the repetition variant runs several independent instances);
// mm bodies are flat.

struct WireMessage {
    std::string kind;     // "query" | "response"
    std::string scheme;   // "pe" | "pe-fp" | "mm" | "mm-fp"
    std::string query_id;
    json body;
};

inline std::string scheme_tag(const std::string& base, vcpe::Mode mode) {
    return mode == vcpe::Mode::plain ? base : base + "-fp";
}

inline json encode(const WireMessage& msg) {
    if (msg.kind != "query" && msg.kind != "response")
        throw DecodeError("wire message kind must be query or response");
    return json{{"kind", msg.kind},
                {"scheme", msg.scheme},
                {"query_id", msg.query_id},
                {"body", msg.body}};
}

inline WireMessage decode_wire(const json& j) {
    WireMessage msg;
    msg.kind = field(j, "kind").get<std::string>();
    msg.scheme = field(j, "scheme").get<std::string>();
    msg.query_id = field(j, "query_id").get<std::string>();
    msg.body = field(j, "body");
    if (msg.kind != "query" && msg.kind != "response")
        throw DecodeError("wire message kind must be query or response");
    if (msg.scheme != "pe" && msg.scheme != "pe-fp" && msg.scheme != "mm" && msg.scheme != "mm-fp")
        throw DecodeError("unknown scheme: " + msg.scheme);
    return msg;
}

inline json encode_pe_query_body(std::span<const std::vector<bgn::Ciphertext>> sigmas) {
    json instances = json::array();
    for (const auto& sigma : sigmas) {
        json arr = json::array();
        for (const auto& c : sigma) arr.push_back(encode(c));
        instances.push_back(json{{"sigma", arr}});
    }
    return json{{"instances", instances}};
}

inline std::vector<std::vector<bgn::Ciphertext>> decode_pe_query_body(const json& body) {
    std::vector<std::vector<bgn::Ciphertext>> sigmas;
    for (const auto& inst : field(body, "instances")) {
        std::vector<bgn::Ciphertext> sigma;
        for (const auto& c : field(inst, "sigma")) sigma.push_back(decode_ciphertext(c));
        sigmas.push_back(std::move(sigma));
    }
    if (sigmas.empty()) throw DecodeError("query carries no instances");
    return sigmas;
}

inline json encode_pe_response_body(std::span<const vcpe::PeResponse> responses) {
    json instances = json::array();
    for (const auto& r : responses)
        instances.push_back(json{{"rho", encode(r.rho)}, {"pi", encode(r.pi)}});
    return json{{"instances", instances}};
}

inline std::vector<vcpe::PeResponse> decode_pe_response_body(const json& body) {
    std::vector<vcpe::PeResponse> responses;
    for (const auto& inst : field(body, "instances"))
        responses.push_back(vcpe::PeResponse{decode_ciphertext(field(inst, "rho")),
                                             decode_group_element(field(inst, "pi"))});
    if (responses.empty()) throw DecodeError("response carries no instances");
    return responses;
}

inline json encode_mm_query_body(std::span<const bgn::Ciphertext> sigma) {
    json arr = json::array();
    for (const auto& c : sigma) arr.push_back(encode(c));
    return json{{"sigma", arr}};
}

inline std::vector<bgn::Ciphertext> decode_mm_query_body(const json& body) {
    std::vector<bgn::Ciphertext> sigma;
    for (const auto& c : field(body, "sigma")) sigma.push_back(decode_ciphertext(c));
    if (sigma.empty()) throw DecodeError("query carries no ciphertexts");
    return sigma;
}

inline json encode_mm_response_body(const vcmm::MmResponse& response) {
    json rho = json::array(), pi = json::array();
    for (const auto& c : response.rho) rho.push_back(encode(c));
    for (const auto& e : response.pi) pi.push_back(encode(e));
    return json{{"rho", rho}, {"pi", pi}};
}

inline vcmm::MmResponse decode_mm_response_body(const json& body) {
    vcmm::MmResponse response;
    for (const auto& c : field(body, "rho")) response.rho.push_back(decode_ciphertext(c));
    for (const auto& e : field(body, "pi")) response.pi.push_back(decode_group_element(e));
    if (response.rho.size() != response.pi.size())
        throw DecodeError("response rho/pi length mismatch");
    return response;
}

// ---- counters ----

inline json encode(const OpCounter& c) {
    return json{{"muls", c.muls}, {"pows", c.pows}, {"pairings", c.pairings}};
}

inline json encode(const PhaseCounters& c) {
    return json{{"keygen", encode(c.keygen)},
                {"probgen", encode(c.probgen)},
                {"compute", encode(c.compute)},
                {"verify", encode(c.verify)}};
}

} // namespace vc::serial
