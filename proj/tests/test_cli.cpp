#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

#ifndef GENTREE_CLI_PATH
#define GENTREE_CLI_PATH "./gentree"
#endif

namespace {

struct CliResult {
    int exit_code;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    std::string cmd = std::string(GENTREE_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    int status = pclose(pipe);
    int code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
    return {code, out};
}

} // namespace

TEST_CASE("cli: pat worked example") {
    auto r = run_cli("pat --family av1423-4123 --jumps \"-2,+1B,+1B,+1T,+1T,-7\"");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "421563\n");
}

TEST_CASE("cli: sample trivial size") {
    auto r = run_cli("sample --family av123 --n 1 --reps 3 --seed 7");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("1\n1\n1\n") != std::string::npos);
}

TEST_CASE("cli: solve-pq emits the av123 law") {
    auto r = run_cli("solve-pq --family av123");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"q\": 2") != std::string::npos);
    CHECK(r.output.find("0.25") != std::string::npos); // p and alpha_0
}

TEST_CASE("cli: determinism") {
    std::string args = "sample --family av1423-4123 --n 12 --reps 40 --seed 12345";
    auto a = run_cli(args);
    auto b = run_cli(args);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);
    // different seed, different output
    auto c = run_cli("sample --family av1423-4123 --n 12 --reps 40 --seed 54321");
    CHECK(a.output != c.output);
    // thread count must not change results
    auto d = run_cli(args + " --threads 1");
    auto e = run_cli(args + " --threads 4");
    CHECK(d.output == e.output);
}

TEST_CASE("cli: env seed fallback") {
    auto a = run_cli("sample --family av123 --n 8 --reps 5 --seed 99");
    auto b = run_cli("sample --family av123 --n 8 --reps 5");
    CHECK(a.output != b.output); // default env unset -> seed 0
    std::string cmd = std::string("env GENTREE_SEED=99 ") + GENTREE_CLI_PATH +
                      " sample --family av123 --n 8 --reps 5";
    FILE* pipe = popen((cmd + " 2>&1").c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    pclose(pipe);
    CHECK(out == a.output);
}

TEST_CASE("cli: exit codes") {
    CHECK(run_cli("sample --family nope --n 3").exit_code == 1);
    CHECK(run_cli("pat --family av123 --jumps \"+1T\"").exit_code == 1); // bad color
    CHECK(run_cli("enumerate --family av123 --n 13").exit_code == 2);    // over the cap
    CHECK(run_cli("mu --family av123 --pattern 2211").exit_code == 1);   // bad pattern
}

TEST_CASE("cli: enumerate counts csv") {
    auto r = run_cli("enumerate --family av123 --n 5 --format csv");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("config_hash=") != std::string::npos);
    CHECK(r.output.find("5,av123,42") != std::string::npos);
}

TEST_CASE("cli: gamma json shape") {
    auto r = run_cli("gamma --family av123 --pattern 21 --truncation 25");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("\"gamma2\"") != std::string::npos);
    CHECK(r.output.find("\"sigma2_step\": 2") != std::string::npos);
}
