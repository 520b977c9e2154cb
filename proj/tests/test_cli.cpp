#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

std::string bin() {
    const char* p = std::getenv("PG3_BIN");
    REQUIRE_MESSAGE(p != nullptr, "PG3_BIN must point at the pg3 binary");
    return p;
}

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string out_path = "cli_test_stdout.tmp";
    const std::string cmd = bin() + " " + args + " > " + out_path + " 2> cli_test_stderr.tmp";
    const int rc = std::system(cmd.c_str());
    std::ifstream in(out_path);
    std::stringstream ss;
    ss << in.rdbuf();
    int code = -1;
    if (WIFEXITED(rc)) code = WEXITSTATUS(rc);
    return {code, ss.str()};
}

} // namespace

TEST_CASE("info prints the closed-form counts") {
    const auto r = run("info --q 3");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "points=40 lines=130 planes=40\n");

    const auto r9 = run("info --p 3 --e 2");
    CHECK(r9.exit_code == 0);
    CHECK(r9.out == "q=9 points=820 lines=7462 planes=820\n");
}

TEST_CASE("info rejects even or non-prime-power q") {
    CHECK(run("info --q 4").exit_code == 2);
    CHECK(run("info --q 15").exit_code == 2);
    CHECK(run("info").exit_code == 2);
}

TEST_CASE("quadric census") {
    const auto r = run("quadric --q 3 --emit-census");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "external=18 tangent=32 secant=72 generator=8\n");
}

TEST_CASE("quadric emit, check round trip, perturb breaks it") {
    CHECK(run("quadric --q 3 --emit-family cli_fam.txt").exit_code == 0);

    const auto good = run("check --q 3 --family cli_fam.txt");
    CHECK(good.exit_code == 0);
    CHECK(good.out.find("verdict=SecantFamily") == 0);

    const auto json = run("check --q 3 --family cli_fam.txt --json");
    CHECK(json.exit_code == 0);
    CHECK(json.out.find("\"verdict\": \"SecantFamily\"") != std::string::npos);

    CHECK(run("perturb --family cli_fam.txt --swaps 1 --seed 7 --out cli_bad.txt").exit_code == 0);
    const auto bad = run("check --q 3 --family cli_bad.txt");
    CHECK(bad.exit_code == 20);
    CHECK(bad.out.find("verdict=Violation") == 0);

    // zero swaps reproduce the family byte for byte
    CHECK(run("perturb --family cli_fam.txt --swaps 0 --seed 7 --out cli_same.txt").exit_code == 0);
    std::ifstream a("cli_fam.txt"), b("cli_same.txt");
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
}

TEST_CASE("check rejects malformed and mismatched families") {
    {
        std::ofstream f("cli_malformed.txt");
        f << "pg3-family v1 p=3 e=1 poly n=1\n0\n";
    }
    CHECK(run("check --q 3 --family cli_malformed.txt").exit_code == 2);

    CHECK(run("quadric --q 5 --emit-family cli_fam5.txt").exit_code == 0);
    CHECK(run("check --q 3 --family cli_fam5.txt").exit_code == 2);
    CHECK(run("check --q 3 --family does_not_exist.txt").exit_code == 2);
}

TEST_CASE("audit exits zero on q=3 and writes json") {
    const auto r = run("audit --q 3 --seeds 2 --json cli_audit.json");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("audit: all checks passed") != std::string::npos);
    std::ifstream j("cli_audit.json");
    std::stringstream sj;
    sj << j.rdbuf();
    CHECK(sj.str().find("\"lem-plane-point\"") != std::string::npos);
}

TEST_CASE("outputs are byte-identical across runs and thread counts") {
    CHECK(run("quadric --q 3 --emit-family cli_det.txt").exit_code == 0);
    const auto a = run("check --q 3 --family cli_det.txt --json --threads 1");
    const auto b = run("check --q 3 --family cli_det.txt --json --threads 1");
    const auto c = run("check --q 3 --family cli_det.txt --json --threads 4");
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
}
