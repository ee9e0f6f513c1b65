// End-to-end tests of the vc binary: file workflows, exit-code contract,
// tamper strategies. Each case runs in its own scratch directory.

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#ifndef VC_BIN_PATH
#error "VC_BIN_PATH must point at the built vc binary"
#endif

namespace {

struct CmdResult {
    int code = -1;
    std::string out;
};

CmdResult run_in(const std::string& dir, const std::string& args) {
    std::string full = "cd " + dir + " && " + VC_BIN_PATH + " " + args + " 2>/dev/null";
    FILE* pipe = popen(full.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::string out;
    while (fgets(buf, sizeof buf, pipe)) out += buf;
    int status = pclose(pipe);
    CmdResult result;
    result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = out;
    return result;
}

std::string scratch_dir() {
    char tmpl[] = "/tmp/vc_cli_XXXXXX";
    char* dir = mkdtemp(tmpl);
    REQUIRE(dir != nullptr);
    return dir;
}

std::string first_line(const std::string& s) {
    auto pos = s.find('\n');
    return pos == std::string::npos ? s : s.substr(0, pos);
}

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    nlohmann::json j;
    in >> j;
    return j;
}

} // namespace

TEST_CASE("lemma22 prints the exact rational") {
    std::string dir = scratch_dir();
    CmdResult r = run_in(dir, "lemma22 --p 2 --q 3");
    CHECK(r.code == 0);
    CHECK(first_line(r.out) == "4/9");
    CmdResult r2 = run_in(dir, "lemma22 --p 3 --q 5");
    CHECK(first_line(r2.out) == "8/25");
}

TEST_CASE("pe file workflow: honest accept, tampered reject") {
    std::string dir = scratch_dir();
    CHECK(run_in(dir, "pe keygen --coeffs 1,2,3,4 --seed 11").code == 0);
    CHECK(run_in(dir, "pe probgen --alpha 5 --seed 12").code == 0);
    CHECK(run_in(dir, "pe compute --seed 13").code == 0);
    CmdResult verify = run_in(dir, "pe verify");
    CHECK(verify.code == 0);
    CHECK(first_line(verify.out) == "586"); // 1 + 2*5 + 3*25 + 4*125

    // the query crossing the wire holds exactly k = 2 ciphertexts
    auto query = load_json(dir + "/query.json");
    CHECK(query["body"]["instances"][0]["sigma"].size() == 2);
    CHECK(query["kind"] == "query");
    CHECK(query["scheme"] == "pe");

    for (std::string strategy : {"flip-rho", "random-pi", "replay"}) {
        CHECK(run_in(dir, "pe compute --seed 14 --tamper " + strategy).code == 0);
        CHECK(run_in(dir, "pe verify").code == 2);
    }
}

TEST_CASE("pe function-private workflow") {
    std::string dir = scratch_dir();
    CHECK(run_in(dir, "pe keygen --coeffs 7,0,5 --mode fp --seed 3").code == 0);
    auto pk = load_json(dir + "/pe_pk.json");
    CHECK(pk["instances"][0].contains("gamma"));
    CHECK(!pk["instances"][0].contains("f")); // the server never sees the coefficients
    CHECK(run_in(dir, "pe probgen --alpha 3 --seed 4").code == 0);
    CHECK(run_in(dir, "pe compute --seed 5").code == 0);
    CmdResult verify = run_in(dir, "pe verify");
    CHECK(verify.code == 0);
    CHECK(first_line(verify.out) == "52"); // 7 + 5*9
}

TEST_CASE("pe repetition workflow") {
    std::string dir = scratch_dir();
    CHECK(run_in(dir, "pe keygen --coeffs 9,3,0,7 --reps 3 --seed 21").code == 0);
    CHECK(run_in(dir, "pe probgen --alpha 1 --seed 22").code == 0);
    CHECK(run_in(dir, "pe compute --seed 23").code == 0);
    CmdResult verify = run_in(dir, "pe verify");
    CHECK(verify.code == 0);
    CHECK(first_line(verify.out) == "19");

    // tampering a single instance breaks unanimity
    CHECK(run_in(dir, "pe compute --seed 24 --tamper flip-rho").code == 0);
    CHECK(run_in(dir, "pe verify").code == 2);
    CHECK(run_in(dir, "pe compute --seed 25 --tamper permute-rows").code == 0);
    CHECK(run_in(dir, "pe verify").code == 2);
}

TEST_CASE("pe true replay across queries is rejected") {
    std::string dir = scratch_dir();
    CHECK(run_in(dir, "pe keygen --coeffs 0,1 --seed 31").code == 0); // f(x) = x
    CHECK(run_in(dir,
                 "pe probgen --alpha 2 --seed 32 --query other_query.json --tau other_tau.json")
              .code == 0);
    CHECK(run_in(dir, "pe probgen --alpha 1 --seed 33").code == 0);
    CHECK(run_in(dir, "pe compute --seed 34 --tamper replay --replay-query other_query.json")
              .code == 0);
    CHECK(run_in(dir, "pe verify").code == 2);
}

TEST_CASE("mm file workflow") {
    std::string dir = scratch_dir();
    CHECK(run_in(dir, "mm keygen --matrix \"1,0;1,1\" --seed 41").code == 0);
    CHECK(run_in(dir, "mm probgen --x 1,0 --seed 42").code == 0);
    CHECK(run_in(dir, "mm compute --seed 43").code == 0);
    CmdResult verify = run_in(dir, "mm verify");
    CHECK(verify.code == 0);
    CHECK(first_line(verify.out) == "1 1");

    for (std::string strategy : {"flip-rho", "random-pi", "permute-rows", "replay"}) {
        CHECK(run_in(dir, "mm compute --seed 44 --tamper " + strategy).code == 0);
        CHECK(run_in(dir, "mm verify").code == 2);
    }
}

TEST_CASE("mm function-private workflow") {
    std::string dir = scratch_dir();
    CHECK(run_in(dir, "mm keygen --matrix \"2,1;0,3\" --mode fp --seed 51").code == 0);
    auto pk = load_json(dir + "/mm_pk.json");
    CHECK(pk.contains("gamma"));
    CHECK(!pk.contains("M"));
    CHECK(run_in(dir, "mm probgen --x 2,5 --seed 52").code == 0);
    CHECK(run_in(dir, "mm compute --seed 53").code == 0);
    CmdResult verify = run_in(dir, "mm verify");
    CHECK(verify.code == 0);
    CHECK(first_line(verify.out) == "9 15");
}

TEST_CASE("pir subcommand covers both schemes") {
    std::string dir = scratch_dir();
    CmdResult pe1 = run_in(dir, "pir --scheme pe --db 1011 --index 1 --seed 5");
    CHECK(pe1.code == 0);
    CHECK(first_line(pe1.out) == "1");
    CmdResult pe2 = run_in(dir, "pir --scheme pe --db 1011 --index 2 --seed 5");
    CHECK(pe2.code == 0);
    CHECK(first_line(pe2.out) == "0");
    CmdResult mm1 = run_in(dir, "pir --scheme mm --db 1011 --row 2 --col 1 --seed 5");
    CHECK(mm1.code == 0);
    CHECK(first_line(mm1.out) == "1");
    CmdResult mm2 = run_in(dir, "pir --scheme mm --db 1011 --index 2 --seed 5");
    CHECK(mm2.code == 0);
    CHECK(first_line(mm2.out) == "0");
    CHECK(run_in(dir, "pir --scheme pe --db 1011 --index 3 --seed 5 --tamper flip-rho").code == 2);
    CHECK(run_in(dir, "pir --scheme mm --db 1011 --index 3 --seed 5 --tamper random-pi").code == 2);
}

TEST_CASE("stats reports per-phase counters as JSON") {
    std::string dir = scratch_dir();
    CmdResult r = run_in(dir, "stats --scheme pe --degree 7 --seed 9");
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    for (std::string phase : {"keygen", "probgen", "compute", "verify"}) {
        REQUIRE(j.contains(phase));
        CHECK(j[phase].contains("muls"));
        CHECK(j[phase].contains("pows"));
        CHECK(j[phase].contains("pairings"));
    }
    CHECK(j["compute"]["pairings"].get<std::uint64_t>() > 0);

    CmdResult m = run_in(dir, "stats --scheme mm --size 4 --seed 9");
    CHECK(m.code == 0);
    CHECK(nlohmann::json::parse(m.out)["probgen"]["pows"].get<std::uint64_t>() > 0);
}

TEST_CASE("exit-code contract for usage and file errors") {
    std::string dir = scratch_dir();
    CHECK(run_in(dir, "definitely-not-a-command").code == 1);
    CHECK(run_in(dir, "pe probgen --alpha 1").code == 1); // no key files yet
    CHECK(run_in(dir, "pe keygen").code == 1);            // neither coeffs nor degree
    CHECK(run_in(dir, "lemma22 --p 4 --q 9").code == 1);  // not primes

    std::ofstream(dir + "/query.json") << "{ not json";
    CHECK(run_in(dir, "pe keygen --coeffs 1,2 --seed 1").code == 0);
    CHECK(run_in(dir, "pe compute").code == 1);

    // mismatched key pair is refused
    CHECK(run_in(dir, "pe keygen --coeffs 1,2 --seed 2 --pk other_pk.json --sk other_sk.json")
              .code == 0);
    CHECK(run_in(dir, "pe probgen --alpha 1 --seed 3 --pk pe_pk.json --sk other_sk.json").code ==
          1);
}

TEST_CASE("help exits zero") {
    std::string dir = scratch_dir();
    CHECK(run_in(dir, "--help").code == 0);
    CHECK(run_in(dir, "pe --help").code == 0);
}
