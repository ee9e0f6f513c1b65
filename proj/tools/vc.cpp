// vc: verifiable-computation workbench over the transparent multilinear
// backend. Client roles (keygen/probgen/verify) and the server role (compute)
// exchange JSON files; compute only ever sees public keys and queries.
//
// Exit codes: 0 accepted / success, 1 usage or file error, 2 verification
// rejected.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vc/pir.hpp"
#include "vc/serial.hpp"
#include "vc/tamper.hpp"

using namespace vc;
using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitReject = 2;

json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DecodeError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DecodeError(path + ": " + e.what());
    }
    return j;
}

void write_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw DecodeError("cannot write " + path);
    out << j.dump(2) << "\n";
}

std::vector<u64> parse_u64_list(const std::string& text) {
    std::vector<u64> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
            throw DomainError("expected a nonnegative integer, got '" + item + "'");
        out.push_back(std::stoull(item));
    }
    if (out.empty()) throw DomainError("empty list");
    return out;
}

// rows separated by ';', entries by ','
vcmm::Matrix parse_matrix_text(const std::string& text) {
    std::vector<std::vector<u64>> rows;
    std::stringstream ss(text);
    std::string row;
    while (std::getline(ss, row, ';')) rows.push_back(parse_u64_list(row));
    const unsigned n = static_cast<unsigned>(rows.size());
    std::vector<u64> entries;
    for (const auto& r : rows) {
        if (r.size() != n) throw DomainError("matrix must be square");
        entries.insert(entries.end(), r.begin(), r.end());
    }
    return vcmm::Matrix{n, std::move(entries)};
}

std::string fresh_query_id(Rng& rng) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "q-%016llx", static_cast<unsigned long long>(rng.next()));
    return buf;
}

u64 default_seed() { return std::random_device{}(); }

std::string status_name(vcpe::VerifyStatus s) {
    switch (s) {
        case vcpe::VerifyStatus::accepted: return "accepted";
        case vcpe::VerifyStatus::level_mismatch: return "level-mismatch";
        case vcpe::VerifyStatus::decode_failure: return "decode-failure";
        case vcpe::VerifyStatus::equation_failure: return "equation-failure";
        case vcpe::VerifyStatus::disagreement: return "instance-disagreement";
    }
    return "unknown";
}

// ---- pe commands ----

struct PeFiles {
    std::string pk = "pe_pk.json";
    std::string sk = "pe_sk.json";
    std::string query = "query.json";
    std::string tau = "tau.json";
    std::string response = "response.json";
};

json encode_pe_rep_pk(const vcpe::PeRepKeys& keys) {
    json instances = json::array();
    for (const auto& kp : keys.instances) instances.push_back(serial::encode(kp.pk));
    return json{{"scheme", "pe"},
                {"mode", serial::mode_tag(keys.mode)},
                {"reps", keys.reps()},
                {"instances", instances}};
}

json encode_pe_rep_sk(const vcpe::PeRepKeys& keys) {
    json instances = json::array();
    for (const auto& kp : keys.instances) instances.push_back(serial::encode(kp.sk));
    return json{{"scheme", "pe"},
                {"mode", serial::mode_tag(keys.mode)},
                {"reps", keys.reps()},
                {"instances", instances}};
}

std::vector<vcpe::PePublicKey> decode_pe_rep_pk(const json& j) {
    std::vector<vcpe::PePublicKey> pks;
    for (const auto& inst : serial::field(j, "instances"))
        pks.push_back(serial::decode_pe_public_key(inst));
    if (pks.empty()) throw DecodeError("public key file has no instances");
    return pks;
}

std::vector<vcpe::PeSecretKey> decode_pe_rep_sk(const json& j) {
    std::vector<vcpe::PeSecretKey> sks;
    for (const auto& inst : serial::field(j, "instances"))
        sks.push_back(serial::decode_pe_secret_key(inst));
    if (sks.empty()) throw DecodeError("secret key file has no instances");
    return sks;
}

vcpe::PeRepKeys assemble_pe_keys(const std::string& pk_path, const std::string& sk_path) {
    auto pks = decode_pe_rep_pk(read_json(pk_path));
    auto sks = decode_pe_rep_sk(read_json(sk_path));
    if (pks.size() != sks.size()) throw DecodeError("pk/sk instance counts differ");
    vcpe::PeRepKeys keys;
    keys.mode = pks[0].mode;
    for (std::size_t r = 0; r < pks.size(); ++r) {
        if (serial::params_hash(sks[r].params) != serial::params_hash(pks[r].bgn_pk.params))
            throw DecodeError("pk/sk instance " + std::to_string(r) + " are not a pair");
        keys.instances.push_back(vcpe::PeKeyPair{pks[r], sks[r]});
    }
    return keys;
}

int run_pe_keygen(const PeFiles& files, const std::vector<u64>& coeffs, unsigned random_degree,
                  unsigned lambda_bits, const std::string& mode_tag, unsigned reps, u64 seed,
                  u64 domain_bound, u64 input_bound) {
    Rng rng(seed);
    std::vector<u64> cs = coeffs;
    if (cs.empty()) {
        if (random_degree < 1) throw DomainError("provide --coeffs or --random-degree");
        cs.resize(random_degree + 1);
        for (auto& c : cs) c = rng.below(u64{1} << 15);
    }
    vcpe::Mode mode = serial::decode_mode(json(mode_tag));
    vcpe::PeOptions opts{domain_bound, input_bound};
    vcpe::PeRepKeys keys = vcpe::pe_rep_keygen(cs, lambda_bits, mode, reps, rng, opts);
    write_json(files.pk, encode_pe_rep_pk(keys));
    write_json(files.sk, encode_pe_rep_sk(keys));
    std::cout << "wrote " << files.pk << " and " << files.sk << " (degree "
              << keys.instances[0].pk.n << ", k=" << keys.instances[0].pk.k << ", reps " << reps
              << ")\n";
    return kExitOk;
}

int run_pe_probgen(const PeFiles& files, u64 alpha, u64 seed, std::string query_id) {
    Rng rng(seed);
    vcpe::PeRepKeys keys = assemble_pe_keys(files.pk, files.sk);
    auto queries = vcpe::pe_rep_probgen(keys, alpha, rng);
    if (query_id.empty()) query_id = fresh_query_id(rng);

    std::vector<std::vector<bgn::Ciphertext>> sigmas;
    for (const auto& q : queries) sigmas.push_back(q.sigma);
    serial::WireMessage msg{"query", serial::scheme_tag("pe", keys.mode), query_id,
                            serial::encode_pe_query_body(sigmas)};
    write_json(files.query, serial::encode(msg));
    write_json(files.tau, json{{"scheme", "pe"},
                               {"query_id", query_id},
                               {"alpha", serial::dec(alpha)}});
    std::cout << "wrote " << files.query << " and " << files.tau << " (query " << query_id
              << ")\n";
    return kExitOk;
}

int run_pe_compute(const PeFiles& files, const std::string& tamper_name,
                   const std::string& replay_query, u64 seed) {
    Rng rng(seed);
    auto pks = decode_pe_rep_pk(read_json(files.pk));
    serial::WireMessage msg = serial::decode_wire(read_json(files.query));
    if (msg.kind != "query" || (msg.scheme != "pe" && msg.scheme != "pe-fp"))
        throw DecodeError("expected a pe query file");
    auto sigmas = serial::decode_pe_query_body(msg.body);
    if (sigmas.size() != pks.size())
        throw DecodeError("query instance count does not match public key");

    app::Tamper strategy = app::parse_tamper(tamper_name);
    std::vector<vcpe::PeResponse> responses;
    if (strategy == app::Tamper::replay && !replay_query.empty()) {
        // answer the other query, stamp it with this query's id
        serial::WireMessage other = serial::decode_wire(read_json(replay_query));
        auto other_sigmas = serial::decode_pe_query_body(other.body);
        if (other_sigmas.size() != pks.size())
            throw DecodeError("replay query instance count does not match public key");
        responses = vcpe::pe_rep_compute(pks, other_sigmas);
    } else {
        responses = app::pe_rep_compute_tampered(pks, sigmas, strategy, rng);
    }

    serial::WireMessage out{"response", msg.scheme, msg.query_id,
                            serial::encode_pe_response_body(responses)};
    write_json(files.response, serial::encode(out));
    std::cout << "wrote " << files.response << " (query " << msg.query_id << ")\n";
    return kExitOk;
}

int run_pe_verify(const PeFiles& files) {
    vcpe::PeRepKeys keys = assemble_pe_keys(files.pk, files.sk);
    json tau = read_json(files.tau);
    u64 alpha = serial::parse_u64(serial::field(tau, "alpha"), "alpha");
    serial::WireMessage msg = serial::decode_wire(read_json(files.response));
    if (msg.kind != "response" || (msg.scheme != "pe" && msg.scheme != "pe-fp"))
        throw DecodeError("expected a pe response file");
    if (serial::field(tau, "query_id").get<std::string>() != msg.query_id)
        std::cerr << "warning: response answers a different query id\n";
    auto responses = serial::decode_pe_response_body(msg.body);

    vcpe::PeVerifyResult res = vcpe::pe_rep_verify(keys, alpha, responses);
    if (!res.accepted()) {
        std::cerr << "REJECT (" << status_name(res.status) << ")\n";
        return kExitReject;
    }
    std::cout << *res.value << "\n";
    return kExitOk;
}

// ---- mm commands ----

struct MmFiles {
    std::string pk = "mm_pk.json";
    std::string sk = "mm_sk.json";
    std::string query = "query.json";
    std::string tau = "tau.json";
    std::string response = "response.json";
};

int run_mm_keygen(const MmFiles& files, const std::string& matrix_text, unsigned random_size,
                  unsigned lambda_bits, const std::string& mode_tag, u64 seed, u64 domain_bound,
                  u64 input_bound) {
    Rng rng(seed);
    vcmm::Matrix M;
    if (!matrix_text.empty()) {
        M = parse_matrix_text(matrix_text);
    } else {
        if (random_size < 1) throw DomainError("provide --matrix or --random-size");
        M.n = random_size;
        M.entries.resize(std::size_t{random_size} * random_size);
        for (auto& e : M.entries) e = rng.below(u64{1} << 15);
    }
    vcpe::Mode mode = serial::decode_mode(json(mode_tag));
    vcmm::MmOptions opts{domain_bound, input_bound};
    vcmm::MmKeyPair kp = vcmm::mm_keygen(M.n, M.entries, lambda_bits, mode, rng, opts);
    json pk_json = serial::encode(kp.pk);
    pk_json["scheme"] = "mm";
    json sk_json = serial::encode(kp.sk);
    sk_json["scheme"] = "mm";
    write_json(files.pk, pk_json);
    write_json(files.sk, sk_json);
    std::cout << "wrote " << files.pk << " and " << files.sk << " (order " << M.n << ")\n";
    return kExitOk;
}

int run_mm_probgen(const MmFiles& files, const std::string& x_text, u64 seed,
                   std::string query_id) {
    Rng rng(seed);
    vcmm::MmPublicKey pk = serial::decode_mm_public_key(read_json(files.pk));
    vcmm::MmSecretKey sk = serial::decode_mm_secret_key(read_json(files.sk));
    if (serial::params_hash(sk.params) != serial::params_hash(pk.bgn_pk.params))
        throw DecodeError("pk/sk are not a pair");
    std::vector<u64> x = parse_u64_list(x_text);
    vcmm::MmQuery query = vcmm::mm_probgen(sk, pk, x, rng);
    if (query_id.empty()) query_id = fresh_query_id(rng);

    serial::WireMessage msg{"query", serial::scheme_tag("mm", pk.mode), query_id,
                            serial::encode_mm_query_body(query.sigma)};
    write_json(files.query, serial::encode(msg));
    json tau_arr = json::array();
    for (const auto& t : query.tau) tau_arr.push_back(serial::encode(t));
    write_json(files.tau, json{{"scheme", "mm"}, {"query_id", query_id}, {"tau", tau_arr}});
    std::cout << "wrote " << files.query << " and " << files.tau << " (query " << query_id
              << ")\n";
    return kExitOk;
}

int run_mm_compute(const MmFiles& files, const std::string& tamper_name,
                   const std::string& replay_query, u64 seed) {
    Rng rng(seed);
    vcmm::MmPublicKey pk = serial::decode_mm_public_key(read_json(files.pk));
    serial::WireMessage msg = serial::decode_wire(read_json(files.query));
    if (msg.kind != "query" || (msg.scheme != "mm" && msg.scheme != "mm-fp"))
        throw DecodeError("expected an mm query file");
    auto sigma = serial::decode_mm_query_body(msg.body);

    app::Tamper strategy = app::parse_tamper(tamper_name);
    vcmm::MmResponse response;
    if (strategy == app::Tamper::replay && !replay_query.empty()) {
        serial::WireMessage other = serial::decode_wire(read_json(replay_query));
        response = vcmm::mm_compute(pk, serial::decode_mm_query_body(other.body));
    } else {
        response = app::mm_compute_tampered(pk, sigma, strategy, rng);
    }

    serial::WireMessage out{"response", msg.scheme, msg.query_id,
                            serial::encode_mm_response_body(response)};
    write_json(files.response, serial::encode(out));
    std::cout << "wrote " << files.response << " (query " << msg.query_id << ")\n";
    return kExitOk;
}

int run_mm_verify(const MmFiles& files) {
    vcmm::MmSecretKey sk = serial::decode_mm_secret_key(read_json(files.sk));
    json tau_json = read_json(files.tau);
    std::vector<mgroup::GroupElement> tau;
    for (const auto& t : serial::field(tau_json, "tau"))
        tau.push_back(serial::decode_group_element(t));
    serial::WireMessage msg = serial::decode_wire(read_json(files.response));
    if (msg.kind != "response" || (msg.scheme != "mm" && msg.scheme != "mm-fp"))
        throw DecodeError("expected an mm response file");
    if (serial::field(tau_json, "query_id").get<std::string>() != msg.query_id)
        std::cerr << "warning: response answers a different query id\n";
    vcmm::MmResponse response = serial::decode_mm_response_body(msg.body);

    vcmm::MmVerifyResult res = vcmm::mm_verify(sk, tau, response);
    if (!res.accepted()) {
        std::cerr << "REJECT (" << status_name(res.status) << " at row " << res.failing_row
                  << ")\n";
        return kExitReject;
    }
    std::string sep;
    for (u64 y : *res.value) {
        std::cout << sep << y;
        sep = " ";
    }
    std::cout << "\n";
    return kExitOk;
}

// ---- pir / stats / lemma22 ----

int run_pir(const std::string& scheme, const std::string& db_text, unsigned index, unsigned row,
            unsigned col, const std::string& mode_tag, unsigned lambda_bits, u64 seed,
            const std::string& tamper_name) {
    Rng rng(seed);
    app::Database db = app::parse_database(db_text);
    vcpe::Mode mode = serial::decode_mode(json(mode_tag));
    app::Tamper strategy = app::parse_tamper(tamper_name);

    app::PirOutcome outcome;
    if (scheme == "pe") {
        if (index == 0) throw DomainError("pe retrieval needs --index (1-based)");
        app::PirPeState state = app::pir_pe_setup(db, lambda_bits, mode, rng);
        outcome = app::pir_pe_retrieve(state, index, rng, strategy);
    } else if (scheme == "mm") {
        app::PirMmState state = app::pir_mm_setup(db, lambda_bits, mode, rng);
        unsigned i = row, j = col;
        if (i == 0 || j == 0) {
            if (index == 0) throw DomainError("mm retrieval needs --row/--col or --index");
            i = (index - 1) / state.side + 1;
            j = (index - 1) % state.side + 1;
        }
        outcome = app::pir_mm_retrieve(state, i, j, rng, strategy);
    } else {
        throw DomainError("unknown scheme: " + scheme);
    }

    if (!outcome.accepted()) {
        std::cerr << "REJECT (" << status_name(outcome.status) << ")\n";
        return kExitReject;
    }
    std::cout << *outcome.bit << "\n";
    return kExitOk;
}

int run_stats(const std::string& scheme, unsigned degree, unsigned size, unsigned lambda_bits,
              u64 seed) {
    Rng rng(seed);
    PhaseCounters counters;
    if (scheme == "pe") {
        if (degree < 1) throw DomainError("pe stats need --degree");
        std::vector<u64> coeffs(degree + 1);
        for (auto& c : coeffs) c = rng.below(u64{1} << 15);
        vcpe::PeKeyPair kp =
            vcpe::pe_keygen(coeffs, lambda_bits, vcpe::Mode::plain, rng, {}, &counters.keygen);
        u64 alpha = rng.below(kp.pk.input_bound);
        vcpe::PeQuery q = vcpe::pe_probgen(kp.sk, kp.pk, alpha, rng, &counters.probgen);
        vcpe::PeResponse r = vcpe::pe_compute(kp.pk, q.sigma, &counters.compute);
        vcpe::PeVerifyResult res =
            vcpe::pe_verify(kp.sk, kp.pk, q.alpha_retained, r, &counters.verify);
        if (!res.accepted()) throw Error("honest pe run failed to verify");
    } else if (scheme == "mm") {
        if (size < 1) throw DomainError("mm stats need --size");
        std::vector<u64> entries(std::size_t{size} * size);
        for (auto& e : entries) e = rng.below(u64{1} << 15);
        vcmm::MmKeyPair kp = vcmm::mm_keygen(size, entries, lambda_bits, vcpe::Mode::plain, rng,
                                             {}, &counters.keygen);
        std::vector<u64> x(size);
        for (auto& v : x) v = rng.below(kp.pk.input_bound);
        vcmm::MmQuery q = vcmm::mm_probgen(kp.sk, kp.pk, x, rng, &counters.probgen);
        vcmm::MmResponse r = vcmm::mm_compute(kp.pk, q.sigma, &counters.compute);
        vcmm::MmVerifyResult res = vcmm::mm_verify(kp.sk, q.tau, r, &counters.verify);
        if (!res.accepted()) throw Error("honest mm run failed to verify");
    } else {
        throw DomainError("unknown scheme: " + scheme);
    }
    std::cout << serial::encode(counters).dump(2) << "\n";
    return kExitOk;
}

int run_lemma22(u64 p, u64 q) {
    Rational measured = mgroup::statistical_distance_pxy(p, q);
    Rational closed = mgroup::statistical_distance_closed_form(q);
    if (!(measured == closed)) {
        std::cerr << "enumeration " << measured.str() << " disagrees with closed form "
                  << closed.str() << "\n";
        return kExitUsage;
    }
    std::cout << measured.str() << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"verifiable outsourcing of polynomial evaluation and matrix-vector products"};
    app.require_subcommand(1);

    u64 seed = default_seed();
    unsigned lambda_bits = 16;
    std::string mode_tag = "plain";
    u64 domain_bound = u64{1} << 16;
    u64 input_bound = 256;
    std::string tamper_name = "none";
    std::string replay_query;
    std::string query_id;

    int rc = kExitOk;

    // ---- pe ----
    auto* pe = app.add_subcommand("pe", "univariate polynomial evaluation scheme");
    pe->require_subcommand(1);
    PeFiles pef;

    std::string coeffs_text;
    unsigned random_degree = 0;
    unsigned reps = 1;
    auto* pe_keygen = pe->add_subcommand("keygen", "generate key material");
    pe_keygen->add_option("--coeffs", coeffs_text, "comma-separated coefficients, constant first");
    pe_keygen->add_option("--random-degree", random_degree, "sample a random polynomial");
    pe_keygen->add_option("--lambda-bits", lambda_bits, "prime bit length")->capture_default_str();
    pe_keygen->add_option("--mode", mode_tag, "plain|fp")->capture_default_str();
    pe_keygen->add_option("--reps", reps, "independent instances")->capture_default_str();
    pe_keygen->add_option("--seed", seed, "rng seed");
    pe_keygen->add_option("--domain-bound", domain_bound, "output domain bound")
        ->capture_default_str();
    pe_keygen->add_option("--input-bound", input_bound, "input domain bound")
        ->capture_default_str();
    pe_keygen->add_option("--pk", pef.pk, "public key file")->capture_default_str();
    pe_keygen->add_option("--sk", pef.sk, "secret key file")->capture_default_str();
    pe_keygen->callback([&] {
        std::vector<u64> cs =
            coeffs_text.empty() ? std::vector<u64>{} : parse_u64_list(coeffs_text);
        rc = run_pe_keygen(pef, cs, random_degree, lambda_bits, mode_tag, reps, seed,
                           domain_bound, input_bound);
    });

    u64 alpha = 0;
    auto* pe_probgen = pe->add_subcommand("probgen", "encode an input");
    pe_probgen->add_option("--alpha", alpha, "evaluation point")->required();
    pe_probgen->add_option("--seed", seed, "rng seed");
    pe_probgen->add_option("--query-id", query_id, "override query id");
    pe_probgen->add_option("--pk", pef.pk, "public key file")->capture_default_str();
    pe_probgen->add_option("--sk", pef.sk, "secret key file")->capture_default_str();
    pe_probgen->add_option("--query", pef.query, "query file to write")->capture_default_str();
    pe_probgen->add_option("--tau", pef.tau, "client-retained verification file")
        ->capture_default_str();
    pe_probgen->callback([&] { rc = run_pe_probgen(pef, alpha, seed, query_id); });

    auto* pe_compute = pe->add_subcommand("compute", "server role: answer a query");
    pe_compute->add_option("--pk", pef.pk, "public key file")->capture_default_str();
    pe_compute->add_option("--query", pef.query, "query file")->capture_default_str();
    pe_compute->add_option("--response", pef.response, "response file to write")
        ->capture_default_str();
    pe_compute->add_option("--tamper", tamper_name, "none|flip-rho|random-pi|permute-rows|replay")
        ->capture_default_str();
    pe_compute->add_option("--replay-query", replay_query, "other query to answer instead");
    pe_compute->add_option("--seed", seed, "rng seed");
    pe_compute->callback([&] { rc = run_pe_compute(pef, tamper_name, replay_query, seed); });

    auto* pe_verify = pe->add_subcommand("verify", "check a response");
    pe_verify->add_option("--pk", pef.pk, "public key file")->capture_default_str();
    pe_verify->add_option("--sk", pef.sk, "secret key file")->capture_default_str();
    pe_verify->add_option("--tau", pef.tau, "client-retained verification file")
        ->capture_default_str();
    pe_verify->add_option("--response", pef.response, "response file")->capture_default_str();
    pe_verify->callback([&] { rc = run_pe_verify(pef); });

    // ---- mm ----
    auto* mm = app.add_subcommand("mm", "matrix-vector multiplication scheme");
    mm->require_subcommand(1);
    MmFiles mmf;

    std::string matrix_text;
    unsigned random_size = 0;
    auto* mm_keygen = mm->add_subcommand("keygen", "generate key material");
    mm_keygen->add_option("--matrix", matrix_text, "rows ';'-separated, entries ','-separated");
    mm_keygen->add_option("--random-size", random_size, "sample a random matrix of this order");
    mm_keygen->add_option("--lambda-bits", lambda_bits, "prime bit length")->capture_default_str();
    mm_keygen->add_option("--mode", mode_tag, "plain|fp")->capture_default_str();
    mm_keygen->add_option("--seed", seed, "rng seed");
    mm_keygen->add_option("--domain-bound", domain_bound, "output domain bound")
        ->capture_default_str();
    mm_keygen->add_option("--input-bound", input_bound, "input domain bound")
        ->capture_default_str();
    mm_keygen->add_option("--pk", mmf.pk, "public key file")->capture_default_str();
    mm_keygen->add_option("--sk", mmf.sk, "secret key file")->capture_default_str();
    mm_keygen->callback([&] {
        rc = run_mm_keygen(mmf, matrix_text, random_size, lambda_bits, mode_tag, seed,
                           domain_bound, input_bound);
    });

    std::string x_text;
    auto* mm_probgen = mm->add_subcommand("probgen", "encode an input vector");
    mm_probgen->add_option("--x", x_text, "comma-separated input vector")->required();
    mm_probgen->add_option("--seed", seed, "rng seed");
    mm_probgen->add_option("--query-id", query_id, "override query id");
    mm_probgen->add_option("--pk", mmf.pk, "public key file")->capture_default_str();
    mm_probgen->add_option("--sk", mmf.sk, "secret key file")->capture_default_str();
    mm_probgen->add_option("--query", mmf.query, "query file to write")->capture_default_str();
    mm_probgen->add_option("--tau", mmf.tau, "client-retained verification file")
        ->capture_default_str();
    mm_probgen->callback([&] { rc = run_mm_probgen(mmf, x_text, seed, query_id); });

    auto* mm_compute = mm->add_subcommand("compute", "server role: answer a query");
    mm_compute->add_option("--pk", mmf.pk, "public key file")->capture_default_str();
    mm_compute->add_option("--query", mmf.query, "query file")->capture_default_str();
    mm_compute->add_option("--response", mmf.response, "response file to write")
        ->capture_default_str();
    mm_compute->add_option("--tamper", tamper_name, "none|flip-rho|random-pi|permute-rows|replay")
        ->capture_default_str();
    mm_compute->add_option("--replay-query", replay_query, "other query to answer instead");
    mm_compute->add_option("--seed", seed, "rng seed");
    mm_compute->callback([&] { rc = run_mm_compute(mmf, tamper_name, replay_query, seed); });

    auto* mm_verify = mm->add_subcommand("verify", "check a response");
    mm_verify->add_option("--sk", mmf.sk, "secret key file")->capture_default_str();
    mm_verify->add_option("--tau", mmf.tau, "client-retained verification file")
        ->capture_default_str();
    mm_verify->add_option("--response", mmf.response, "response file")->capture_default_str();
    mm_verify->callback([&] { rc = run_mm_verify(mmf); });

    // ---- pir ----
    std::string pir_scheme = "pe";
    std::string db_text;
    unsigned index = 0, row = 0, col = 0;
    auto* pir = app.add_subcommand("pir", "retrieve one database bit verifiably");
    pir->add_option("--scheme", pir_scheme, "pe|mm")->capture_default_str();
    pir->add_option("--db", db_text, "0/1 database string")->required();
    pir->add_option("--index", index, "1-based bit position");
    pir->add_option("--row", row, "1-based matrix row (mm)");
    pir->add_option("--col", col, "1-based matrix column (mm)");
    pir->add_option("--mode", mode_tag, "plain|fp")->capture_default_str();
    pir->add_option("--lambda-bits", lambda_bits, "prime bit length")->capture_default_str();
    pir->add_option("--seed", seed, "rng seed");
    pir->add_option("--tamper", tamper_name, "simulate a malicious server")
        ->capture_default_str();
    pir->callback([&] {
        rc = run_pir(pir_scheme, db_text, index, row, col, mode_tag, lambda_bits, seed,
                     tamper_name);
    });

    // ---- stats ----
    std::string stats_scheme = "pe";
    unsigned degree = 0, size = 0;
    auto* stats = app.add_subcommand("stats", "run one life-cycle and report op counters");
    stats->add_option("--scheme", stats_scheme, "pe|mm")->capture_default_str();
    stats->add_option("--degree", degree, "polynomial degree (pe)");
    stats->add_option("--size", size, "matrix order (mm)");
    stats->add_option("--lambda-bits", lambda_bits, "prime bit length")->capture_default_str();
    stats->add_option("--seed", seed, "rng seed");
    stats->callback([&] { rc = run_stats(stats_scheme, degree, size, lambda_bits, seed); });

    // ---- lemma22 ----
    u64 lp = 0, lq = 0;
    auto* lemma22 =
        app.add_subcommand("lemma22", "exact statistical distance of p*X*Y mod q from uniform");
    lemma22->add_option("--p", lp, "prime p")->required();
    lemma22->add_option("--q", lq, "prime q")->required();
    lemma22->callback([&] { rc = run_lemma22(lp, lq); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return rc;
}
